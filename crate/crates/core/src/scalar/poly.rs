//! Dense univariate polynomials over the rationals, plus the handful of
//! exact root tools the field layer needs: Sturm chains, interval evaluation
//! and small-degree irreducibility tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Coefficients stored low-to-high with no trailing zeros; the zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn from_int_coeffs(coeffs: &[Int]) -> Self {
        Self::new(coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(Int::from(i)))
            .collect();
        QPoly::new(coeffs)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        QPoly::new(out)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        QPoly::new(out)
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, k: &Rat) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Euclidean division; panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        while rem.len() >= divisor.coeffs.len() {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lead;
            quot[k] = factor.clone();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let v = &rem[k + i] - c * &factor;
                rem[k + i] = v;
            }
            // leading entry is exactly cancelled
            rem.pop();
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() < divisor.coeffs.len() {
                break;
            }
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, u, v) with u*self + v*other = g, g monic (or zero).
    pub fn extended_gcd(&self, other: &QPoly) -> (QPoly, QPoly, QPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = QPoly::constant(Rat::one());
        let mut s1 = QPoly::zero();
        let mut t0 = QPoly::zero();
        let mut t1 = QPoly::constant(Rat::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead = r0.leading().unwrap().clone();
        let inv = Rat::one() / lead;
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn monic(&self) -> QPoly {
        match self.leading() {
            None => QPoly::zero(),
            Some(l) => self.scale(&(Rat::one() / l)),
        }
    }

    /// Squarefree part (self / gcd(self, self')).
    pub fn squarefree(&self) -> QPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) || g.is_zero() {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    /// Interval evaluation by Horner: the result encloses f([lo, hi]).
    pub fn eval_interval(&self, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
        let mut acc_lo = Rat::zero();
        let mut acc_hi = Rat::zero();
        for c in self.coeffs.iter().rev() {
            let (mlo, mhi) = interval_mul(&acc_lo, &acc_hi, lo, hi);
            acc_lo = mlo + c;
            acc_hi = mhi + c;
        }
        (acc_lo, acc_hi)
    }
}

/// Product of intervals [a_lo, a_hi] * [b_lo, b_hi].
pub fn interval_mul(a_lo: &Rat, a_hi: &Rat, b_lo: &Rat, b_hi: &Rat) -> (Rat, Rat) {
    let p1 = a_lo * b_lo;
    let p2 = a_lo * b_hi;
    let p3 = a_hi * b_lo;
    let p4 = a_hi * b_hi;
    let mut lo = p1.clone();
    let mut hi = p1;
    for p in [p2, p3, p4] {
        if p < lo {
            lo = p.clone();
        }
        if p > hi {
            hi = p;
        }
    }
    (lo, hi)
}

/// Number of sign variations in a sequence, ignoring zeros.
fn sign_variations(values: &[Rat]) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for v in values {
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(l) = last {
            if l != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}

/// Canonical Sturm chain of the squarefree part of `p`.
pub fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let p = p.squarefree();
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        chain.push(r.neg());
    }
    chain
}

/// Count of distinct real roots of `p` in the half-open interval (lo, hi].
pub fn sturm_count(chain: &[QPoly], lo: &Rat, hi: &Rat) -> usize {
    let at_lo: Vec<Rat> = chain.iter().map(|q| q.eval(lo)).collect();
    let at_hi: Vec<Rat> = chain.iter().map(|q| q.eval(hi)).collect();
    sign_variations(&at_lo) - sign_variations(&at_hi)
}

/// Rational root test for a monic integer polynomial: any rational root is an
/// integer dividing the constant term.
fn has_integer_root(coeffs: &[Int]) -> bool {
    let c0 = &coeffs[0];
    if c0.is_zero() {
        return true; // root 0
    }
    let poly = QPoly::from_int_coeffs(coeffs);
    let mut d = Int::one();
    let bound = c0.abs();
    while d <= bound {
        if (c0 % &d).is_zero() {
            for cand in [Rat::from_integer(d.clone()), Rat::from_integer(-d.clone())] {
                if poly.eval(&cand).is_zero() {
                    return true;
                }
            }
        }
        d += 1;
    }
    false
}

fn divisors(n: &Int) -> Vec<Int> {
    let mut out = Vec::new();
    let bound = n.abs();
    let mut d = Int::one();
    while &d * &d <= bound {
        if (&bound % &d).is_zero() {
            out.push(d.clone());
            let q = &bound / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    let negs: Vec<Int> = out.iter().map(|d| -d).collect();
    out.extend(negs);
    out
}

fn int_sqrt_exact(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Irreducibility over Q for monic integer polynomials of degree <= 4.
/// Degrees above 4 are outside the exact check and return an error signal
/// (None); callers decide how to treat them.
pub fn irreducible_deg_le4(coeffs: &[Int]) -> Option<bool> {
    let deg = coeffs.len() - 1;
    assert!(coeffs[deg].is_one(), "polynomial must be monic");
    match deg {
        0 => Some(false),
        1 => Some(true),
        2 | 3 => Some(!has_integer_root(coeffs)),
        4 => {
            if has_integer_root(coeffs) {
                return Some(false);
            }
            // A monic integer quartic factors over Q iff it splits into two
            // monic integer quadratics (Gauss): x^4+a x^3+b x^2+c x+d =
            // (x^2+p x+q)(x^2+r x+s) with q s = d, p+r = a, q+s+p r = b,
            // p s + q r = c.
            let a = &coeffs[3];
            let b = &coeffs[2];
            let c = &coeffs[1];
            let d = &coeffs[0];
            if d.is_zero() {
                return Some(false); // root 0 caught above, defensive
            }
            for q in divisors(d) {
                let s = d / &q;
                // p+r = a, pr = b - q - s  =>  p,r roots of z^2 - a z + (b-q-s)
                let prod = b - &q - &s;
                let disc = a * a - Int::from(4) * &prod;
                let Some(root) = int_sqrt_exact(&disc) else {
                    continue;
                };
                for r2 in [root.clone(), -root] {
                    let two = Int::from(2);
                    let p_num = a + &r2;
                    if (&p_num % &two).is_zero() {
                        let p = p_num / &two;
                        let r = a - &p;
                        if &(&p * &s + &q * &r) == c {
                            return Some(false);
                        }
                    }
                }
            }
            Some(true)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> QPoly {
        QPoly::new(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = poly(&[1, 0, -3, 2, 5]);
        let b = poly(&[2, 1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < b.degree().unwrap());
    }

    #[test]
    fn gcd_of_multiples() {
        let g = poly(&[-2, 0, 1]); // t^2 - 2
        let a = g.mul(&poly(&[1, 1]));
        let b = g.mul(&poly(&[3, 0, 1]));
        assert_eq!(a.gcd(&b), g.monic());
    }

    #[test]
    fn extended_gcd_bezout() {
        let a = poly(&[-2, 0, 1]);
        let b = poly(&[1, 1]);
        let (g, u, v) = a.extended_gcd(&b);
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
        assert_eq!(g.degree(), Some(0)); // coprime
    }

    #[test]
    fn sturm_counts_sqrt2() {
        let p = poly(&[-2, 0, 1]);
        let chain = sturm_chain(&p);
        assert_eq!(sturm_count(&chain, &rat_int(1), &rat_int(2)), 1);
        assert_eq!(sturm_count(&chain, &rat_int(-2), &rat_int(2)), 2);
        assert_eq!(sturm_count(&chain, &rat_int(2), &rat_int(3)), 0);
    }

    #[test]
    fn interval_eval_encloses() {
        let p = poly(&[-2, 0, 1]);
        let (lo, hi) = p.eval_interval(&rat(5, 4), &rat(3, 2));
        // true range on [1.25, 1.5] is [-0.4375, 0.25]
        assert!(lo <= rat(-7, 16) && hi >= rat(1, 4));
    }

    #[test]
    fn quartic_irreducibility() {
        // t^4 - 4 t^2 + 2 is Eisenstein at 2: irreducible
        assert_eq!(irreducible_deg_le4(&int_coeffs(&[2, 0, -4, 0, 1])), Some(true));
        // t^4 - 4 = (t^2-2)(t^2+2): reducible without rational roots... it has none
        assert_eq!(irreducible_deg_le4(&int_coeffs(&[-4, 0, 0, 0, 1])), Some(false));
        // t^2 - 2
        assert_eq!(irreducible_deg_le4(&int_coeffs(&[-2, 0, 1])), Some(true));
        // t^2 - 4
        assert_eq!(irreducible_deg_le4(&int_coeffs(&[-4, 0, 1])), Some(false));
        // t^3 + t^2 - 2t - 1 (real cyclotomic, n = 7)
        assert_eq!(irreducible_deg_le4(&int_coeffs(&[-1, -2, 1, 1])), Some(true));
        assert_eq!(irreducible_deg_le4(&int_coeffs(&[0, 0, 1, 0, 0, 1])), None);
    }

    fn int_coeffs(cs: &[i64]) -> Vec<Int> {
        cs.iter().map(|&c| Int::from(c)).collect()
    }
}
