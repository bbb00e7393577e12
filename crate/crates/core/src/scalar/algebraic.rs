//! Elements of a designated real number field, with exact ring arithmetic
//! modulo the minimal polynomial and decidable sign at the designated root.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::field::{FieldError, NumberFieldSpec};
use super::poly::{rat_int, QPoly, Rat};

/// A residue in Q[t]/(p) read at the designated real root of p. Coefficients
/// are stored low-to-high with length exactly deg(p).
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    field: NumberFieldSpec,
    coeffs: Vec<Rat>,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Scalar {
    pub fn new(field: &NumberFieldSpec, mut coeffs: Vec<Rat>) -> Self {
        let d = field.degree();
        if coeffs.len() > d {
            coeffs = reduce_mod(&coeffs, field);
        }
        coeffs.resize(d, Rat::zero());
        Scalar {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &NumberFieldSpec) -> Self {
        Self::new(field, vec![])
    }

    pub fn one(field: &NumberFieldSpec) -> Self {
        Self::from_rat(field, Rat::one())
    }

    pub fn from_rat(field: &NumberFieldSpec, c: Rat) -> Self {
        Self::new(field, vec![c])
    }

    pub fn from_int(field: &NumberFieldSpec, n: i64) -> Self {
        Self::from_rat(field, rat_int(n))
    }

    /// The generator t (the designated root itself). For degree-1 fields this
    /// is the rational root of the linear minimal polynomial.
    pub fn generator(field: &NumberFieldSpec) -> Self {
        if field.is_rational() {
            // t - c: the root is c
            let c = -Rat::from_integer(field.min_poly()[0].clone());
            return Self::from_rat(field, c);
        }
        let mut coeffs = vec![Rat::zero(); field.degree()];
        coeffs[1] = Rat::one();
        Scalar {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &NumberFieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exact rational value of a degree-1 scalar.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.field.is_rational() {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn is_rational_value(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    /// Promote both operands to a common field. Degree-1 values embed into
    /// any field; genuinely different irrational fields are a caller bug.
    fn promoted(&self, other: &Scalar) -> Result<(Scalar, Scalar), FieldError> {
        if self.field == other.field {
            return Ok((self.clone(), other.clone()));
        }
        if self.field.is_rational() {
            return Ok((
                Scalar::from_rat(&other.field, self.coeffs[0].clone()),
                other.clone(),
            ));
        }
        if other.field.is_rational() {
            return Ok((
                self.clone(),
                Scalar::from_rat(&self.field, other.coeffs[0].clone()),
            ));
        }
        Err(FieldError::MixedFields)
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        let (a, mut b) = self.promoted(other)?;
        for (i, c) in a.coeffs.iter().enumerate() {
            b.coeffs[i] += c;
        }
        Ok(b)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        let (a, b) = self.promoted(other)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x - y)
            .collect();
        Ok(Scalar {
            field: a.field,
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        let (a, b) = self.promoted(other)?;
        let mut prod = vec![Rat::zero(); 2 * a.field.degree()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        Ok(Scalar::new(&a.field, prod))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[t].
    /// Division by zero is a caller bug and panics.
    pub fn inverse(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero field element");
        if self.field.is_rational() {
            return Scalar::from_rat(&self.field, Rat::one() / &self.coeffs[0]);
        }
        let s = QPoly::new(self.coeffs.clone());
        let p = self.field.min_poly_q().clone();
        let (g, u, _) = s.extended_gcd(&p);
        // p irreducible and s nonzero of smaller degree: gcd is 1
        assert_eq!(g.degree(), Some(0), "minimal polynomial not irreducible");
        let ginv = Rat::one() / g.coeffs()[0].clone();
        Scalar::new(&self.field, u.scale(&ginv).coeffs().to_vec())
    }

    /// Sign of the element evaluated at the designated root: -1, 0, or +1.
    ///
    /// Zero is decided exactly: a residue is zero at the root iff it reduces
    /// to the zero vector (p irreducible), with a polynomial-gcd fallback that
    /// stays sound even for a hypothetically reducible modulus. Nonzero signs
    /// come from interval evaluation with bisection refinement; the result
    /// never depends on how far the interval was refined.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if self.field.is_rational() {
            let c = &self.coeffs[0];
            return if c.is_positive() { 1 } else { -1 };
        }
        let s = QPoly::new(self.coeffs.clone());
        let g = s.gcd(self.field.min_poly_q());
        if g.degree().map_or(false, |d| d > 0) {
            // the residue shares a factor with the modulus; zero at the root
            // iff the designated root is a root of the gcd
            let (lo, hi) = self.field.root_interval();
            let chain = super::poly::sturm_chain(&g);
            if super::poly::sturm_count(&chain, lo, hi) > 0 {
                return 0;
            }
        }
        let (mut lo, mut hi) = {
            let (l, h) = self.field.root_interval();
            (l.clone(), h.clone())
        };
        let sign_lo = self.field.min_poly_q().eval(&lo).is_positive();
        for _ in 0..100_000 {
            let (elo, ehi) = s.eval_interval(&lo, &hi);
            if elo.is_positive() {
                return 1;
            }
            if ehi.is_negative() {
                return -1;
            }
            let mid = (&lo + &hi) / rat_int(2);
            let at_mid = self.field.min_poly_q().eval(&mid);
            debug_assert!(!at_mid.is_zero(), "irreducible modulus has no rational root");
            if at_mid.is_positive() == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        unreachable!("sign refinement did not terminate on a nonzero element")
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    /// Total order of real values at the designated root.
    pub fn compare(&self, other: &Scalar) -> Result<Ordering, FieldError> {
        let diff = self.checked_sub(other)?;
        Ok(match diff.sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        })
    }

    /// A rational bound strictly greater than |value| at the root.
    pub fn abs_upper_bound(&self) -> Rat {
        let eps = Rat::new(num_bigint::BigInt::from(1), num_bigint::BigInt::from(1024));
        if let Some(r) = self.as_rat() {
            return r.abs() + eps;
        }
        let s = QPoly::new(self.coeffs.clone());
        let width = Rat::new(num_bigint::BigInt::from(1), num_bigint::BigInt::from(4));
        let (lo, hi) = self.field.refined_interval(&width);
        let (elo, ehi) = s.eval_interval(&lo, &hi);
        let bound = elo.abs().max(ehi.abs());
        bound + eps
    }

    /// Compare |self| against a rational bound: |self| < r.
    pub fn abs_lt(&self, r: &Rat) -> bool {
        let upper = Scalar::from_rat(&self.field, r.clone());
        let lower = Scalar::from_rat(&self.field, -r.clone());
        self.checked_sub(&upper).unwrap().sign() < 0
            && self.checked_sub(&lower).unwrap().sign() > 0
    }

    /// |self| <= r.
    pub fn abs_le(&self, r: &Rat) -> bool {
        let upper = Scalar::from_rat(&self.field, r.clone());
        let lower = Scalar::from_rat(&self.field, -r.clone());
        self.checked_sub(&upper).unwrap().sign() <= 0
            && self.checked_sub(&lower).unwrap().sign() >= 0
    }

    /// Float rendering for display only; never used in decisions.
    pub fn to_f64(&self) -> f64 {
        let width = Rat::new(num_bigint::BigInt::from(1), num_bigint::BigInt::from(1_000_000_000i64));
        let (lo, hi) = self.field.refined_interval(&width);
        let s = QPoly::new(self.coeffs.clone());
        let mid = (s.eval(&lo) + s.eval(&hi)) / rat_int(2);
        rat_to_f64(&mid)
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // good enough for display: go through string when the parts are huge
    match (i64::try_from(n.clone()), i64::try_from(d.clone())) {
        (Ok(n), Ok(d)) => n as f64 / d as f64,
        _ => {
            let n: f64 = n.to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = d.to_string().parse().unwrap_or(f64::NAN);
            n / d
        }
    }
}

fn reduce_mod(coeffs: &[Rat], field: &NumberFieldSpec) -> Vec<Rat> {
    let s = QPoly::new(coeffs.to_vec());
    let (_, r) = s.div_rem(field.min_poly_q());
    r.coeffs().to_vec()
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("mixed number fields in arithmetic")
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(&rhs.inverse())
            .expect("mixed number fields in arithmetic")
    }
}
impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}
impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> NumberFieldSpec {
        NumberFieldSpec::sqrt(2).unwrap()
    }

    #[test]
    fn sign_examples() {
        let f = sqrt2();
        // t - 1 > 0 since sqrt(2) > 1
        let s = Scalar::generator(&f) - Scalar::one(&f);
        assert_eq!(s.sign(), 1);
        assert_eq!(Scalar::zero(&f).sign(), 0);
        // t^2 - 3 reduces to -1
        let t = Scalar::generator(&f);
        let s = &(&t * &t) - &Scalar::from_int(&f, 3);
        assert_eq!(s.coeffs(), &[rat_int(-1), rat_int(0)]);
        assert_eq!(s.sign(), -1);
    }

    #[test]
    fn compare_examples() {
        use std::cmp::Ordering::*;
        let f = sqrt2();
        let t = Scalar::generator(&f);
        let three_halves = Scalar::from_rat(&f, Rat::new(3.into(), 2.into()));
        assert_eq!(t.compare(&three_halves).unwrap(), Less);
        assert_eq!(t.compare(&t).unwrap(), Equal);
        let t1 = &t + &Scalar::one(&f);
        assert_eq!(t1.compare(&t).unwrap(), Greater);
    }

    #[test]
    fn mixed_fields_error() {
        let a = Scalar::generator(&sqrt2());
        let b = Scalar::generator(&NumberFieldSpec::sqrt(3).unwrap());
        assert_eq!(a.compare(&b).unwrap_err(), FieldError::MixedFields);
    }

    #[test]
    fn rational_embeds() {
        let q = NumberFieldSpec::rationals();
        let half = Scalar::from_rat(&q, Rat::new(1.into(), 2.into()));
        let t = Scalar::generator(&sqrt2());
        let sum = t.checked_add(&half).unwrap();
        assert_eq!(sum.field().degree(), 2);
        assert_eq!(sum.sign(), 1);
    }

    #[test]
    fn inverse_and_division() {
        let f = sqrt2();
        let t = Scalar::generator(&f);
        let prod = &t * &t.inverse();
        assert_eq!(prod, Scalar::one(&f));
        // 1/sqrt2 = sqrt2/2
        assert_eq!(t.inverse(), Scalar::new(&f, vec![rat_int(0), Rat::new(1.into(), 2.into())]));
    }

    #[test]
    fn degree_one_field_is_plain_rationals() {
        let q = NumberFieldSpec::rationals();
        let a = Scalar::from_rat(&q, Rat::new(3.into(), 4.into()));
        let b = Scalar::from_rat(&q, Rat::new((-2).into(), 1.into()));
        assert_eq!((&a * &b).as_rat().unwrap(), &Rat::new((-3).into(), 2.into()));
        assert_eq!(Scalar::generator(&q).as_rat().unwrap(), &Rat::zero());
    }

    #[test]
    fn abs_bounds() {
        let f = sqrt2();
        let t = Scalar::generator(&f);
        assert!(t.abs_lt(&rat_int(2)));
        assert!(!t.abs_lt(&rat_int(1)));
        assert!((-&t).abs_lt(&rat_int(2)));
        assert!(t.abs_le(&Rat::new(3.into(), 2.into())));
    }
}
