//! Real number fields Q[t]/(p(t)) with a designated real root, given by a
//! monic irreducible integer polynomial and a rational isolation interval.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::poly::{irreducible_deg_le4, rat_int, sturm_chain, sturm_count, Int, QPoly, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("minimal polynomial must be monic with degree >= 1")]
    NotMonic,
    #[error("minimal polynomial is reducible over Q")]
    Reducible,
    #[error("irreducibility is only checked exactly up to degree 4; use a prebuilt constructor")]
    DegreeAboveCheck,
    #[error("isolation interval is empty or reversed")]
    EmptyInterval,
    #[error("polynomial does not change sign on the isolation interval")]
    NoSignChange,
    #[error("isolation interval contains {0} roots, expected exactly 1")]
    WrongRootCount(usize),
    #[error("operands belong to different number fields")]
    MixedFields,
    #[error("parameter out of range: {0}")]
    BadParameter(String),
}

#[derive(Debug)]
struct FieldData {
    /// Monic integer coefficients, low-to-high; length = degree + 1.
    min_poly: Vec<Int>,
    root_lo: Rat,
    root_hi: Rat,
    poly_q: QPoly,
}

/// A field spec handle; cheap to clone and share. Equality is structural on
/// the minimal polynomial and isolation interval.
#[derive(Clone)]
pub struct NumberFieldSpec(Arc<FieldData>);

impl fmt::Debug for NumberFieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "NumberFieldSpec(deg {}, root in ({}, {}))",
            self.degree(),
            self.0.root_lo,
            self.0.root_hi
        )
    }
}

impl PartialEq for NumberFieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.min_poly == other.0.min_poly
                && self.0.root_lo == other.0.root_lo
                && self.0.root_hi == other.0.root_hi)
    }
}
impl Eq for NumberFieldSpec {}

impl NumberFieldSpec {
    /// Checked constructor for user polynomials. Irreducibility is decided
    /// exactly for degree <= 4 and rejected above that; the prebuilt
    /// constructors cover the higher-degree fields that are verified by
    /// construction.
    pub fn new(min_poly: Vec<Int>, root_lo: Rat, root_hi: Rat) -> Result<Self, FieldError> {
        if min_poly.len() < 2 || !min_poly.last().unwrap().is_one() {
            return Err(FieldError::NotMonic);
        }
        match irreducible_deg_le4(&min_poly) {
            Some(true) => {}
            Some(false) => return Err(FieldError::Reducible),
            None => return Err(FieldError::DegreeAboveCheck),
        }
        Self::build(min_poly, root_lo, root_hi)
    }

    fn build(min_poly: Vec<Int>, root_lo: Rat, root_hi: Rat) -> Result<Self, FieldError> {
        if root_lo >= root_hi {
            return Err(FieldError::EmptyInterval);
        }
        let poly_q = QPoly::from_int_coeffs(&min_poly);
        let at_lo = poly_q.eval(&root_lo);
        let at_hi = poly_q.eval(&root_hi);
        if at_lo.is_zero() || at_hi.is_zero() || at_lo.is_positive() == at_hi.is_positive() {
            return Err(FieldError::NoSignChange);
        }
        let sturm = sturm_chain(&poly_q);
        let count = sturm_count(&sturm, &root_lo, &root_hi);
        if count != 1 {
            return Err(FieldError::WrongRootCount(count));
        }
        Ok(NumberFieldSpec(Arc::new(FieldData {
            min_poly,
            root_lo,
            root_hi,
            poly_q,
        })))
    }

    /// The degree-1 field: plain rationals, designated root 0 of t.
    pub fn rationals() -> Self {
        Self::build(
            vec![Int::zero(), Int::one()],
            rat_int(-1),
            rat_int(1),
        )
        .expect("rational field spec")
    }

    /// Q(sqrt(k)) for squarefree k >= 2, designated positive root.
    pub fn sqrt(k: i64) -> Result<Self, FieldError> {
        Self::nth_root(2, k)
    }

    /// Q(k^(1/n)) as t^n - k for n >= 2 and squarefree k >= 2; irreducible by
    /// Eisenstein at any prime dividing k. Designated root is the positive
    /// real one, isolated in (1, k).
    pub fn nth_root(n: u32, k: i64) -> Result<Self, FieldError> {
        if n < 2 {
            return Err(FieldError::BadParameter(format!("degree {n} < 2")));
        }
        if k < 2 || !is_squarefree(k) {
            return Err(FieldError::BadParameter(format!("{k} is not squarefree >= 2")));
        }
        let mut coeffs = vec![Int::zero(); n as usize + 1];
        coeffs[0] = Int::from(-k);
        coeffs[n as usize] = Int::one();
        Self::build(coeffs, rat_int(1), rat_int(k))
    }

    /// Real subfield generated by 2 cos(2 pi / n) for a few small n, with
    /// minimal polynomials verified by construction.
    pub fn real_cyclotomic(n: u32) -> Result<Self, FieldError> {
        let (coeffs, lo, hi): (Vec<i64>, Rat, Rat) = match n {
            5 => (vec![-1, 1, 1], Rat::new(Int::from(1), Int::from(2)), rat_int(1)),
            7 => (vec![-1, -2, 1, 1], rat_int(1), Rat::new(Int::from(3), Int::from(2))),
            8 => (vec![-2, 0, 1], rat_int(1), rat_int(2)),
            9 => (
                vec![1, -3, 0, 1],
                Rat::new(Int::from(3), Int::from(2)),
                Rat::new(Int::from(8), Int::from(5)),
            ),
            12 => (vec![-3, 0, 1], rat_int(1), rat_int(2)),
            _ => {
                return Err(FieldError::BadParameter(format!(
                    "real cyclotomic field not in the prebuilt set: {n}"
                )))
            }
        };
        Self::build(coeffs.into_iter().map(Int::from).collect(), lo, hi)
    }

    pub fn degree(&self) -> usize {
        self.0.min_poly.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn min_poly(&self) -> &[Int] {
        &self.0.min_poly
    }

    pub fn min_poly_q(&self) -> &QPoly {
        &self.0.poly_q
    }

    pub fn root_interval(&self) -> (&Rat, &Rat) {
        (&self.0.root_lo, &self.0.root_hi)
    }

    /// Bisect a private copy of the isolation interval until its width is
    /// below `width`; the designated root never leaves the interval.
    pub fn refined_interval(&self, width: &Rat) -> (Rat, Rat) {
        let mut lo = self.0.root_lo.clone();
        let mut hi = self.0.root_hi.clone();
        // p keeps its sign at the endpoint we move, so this never changes
        let sign_lo = self.0.poly_q.eval(&lo).is_positive();
        while &(&hi - &lo) >= width {
            let mid = (&lo + &hi) / rat_int(2);
            let at_mid = self.0.poly_q.eval(&mid);
            if at_mid.is_zero() {
                // rational root of the minimal polynomial: only possible at
                // degree 1; clamp to an exact point interval around it
                let eps = width / rat_int(4);
                return (&mid - &eps, &mid + eps);
            }
            if at_mid.is_positive() == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    }
}

fn is_squarefree(k: i64) -> bool {
    let mut k = k.abs();
    let mut p = 2i64;
    while p * p <= k {
        if k % p == 0 {
            k /= p;
            if k % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prebuilt_fields_validate() {
        assert_eq!(NumberFieldSpec::rationals().degree(), 1);
        assert_eq!(NumberFieldSpec::sqrt(2).unwrap().degree(), 2);
        assert_eq!(NumberFieldSpec::nth_root(8, 2).unwrap().degree(), 8);
        assert_eq!(NumberFieldSpec::nth_root(11, 2).unwrap().degree(), 11);
        for n in [5, 7, 8, 9, 12] {
            NumberFieldSpec::real_cyclotomic(n).unwrap();
        }
    }

    #[test]
    fn rejects_reducible() {
        // t^2 - 4 = (t-2)(t+2)
        let r = NumberFieldSpec::new(
            vec![Int::from(-4), Int::from(0), Int::from(1)],
            rat_int(1),
            rat_int(3),
        );
        assert_eq!(r.unwrap_err(), FieldError::Reducible);
    }

    #[test]
    fn rejects_bad_intervals() {
        // interval around both roots of t^2 - 2
        let r = NumberFieldSpec::new(
            vec![Int::from(-2), Int::from(0), Int::from(1)],
            rat_int(-2),
            rat_int(2),
        );
        assert!(matches!(r.unwrap_err(), FieldError::NoSignChange | FieldError::WrongRootCount(_)));
        let r = NumberFieldSpec::new(
            vec![Int::from(-2), Int::from(0), Int::from(1)],
            rat_int(2),
            rat_int(1),
        );
        assert_eq!(r.unwrap_err(), FieldError::EmptyInterval);
    }

    #[test]
    fn rejects_degree_above_check() {
        // t^5 - 2 is actually irreducible, but exceeds the exact check
        let mut c = vec![Int::zero(); 6];
        c[0] = Int::from(-2);
        c[5] = Int::from(1);
        let r = NumberFieldSpec::new(c, rat_int(1), rat_int(2));
        assert_eq!(r.unwrap_err(), FieldError::DegreeAboveCheck);
    }

    #[test]
    fn refinement_shrinks() {
        let f = NumberFieldSpec::sqrt(2).unwrap();
        let w = Rat::new(Int::from(1), Int::from(1000));
        let (lo, hi) = f.refined_interval(&w);
        assert!(&hi - &lo < w);
        // sqrt(2) stays inside
        assert!(lo < Rat::new(Int::from(1_414_214), Int::from(1_000_000)));
        assert!(hi > Rat::new(Int::from(1_414_213), Int::from(1_000_000)));
    }
}
