//! Vectors with number-field coordinates, the ambient elements of Λ⊗R that
//! the period and twistor layers work with.

use num_bigint::BigInt;
use num_traits::Zero;

use super::algebraic::Scalar;
use super::field::{FieldError, NumberFieldSpec};
use super::poly::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector {
    field: NumberFieldSpec,
    coords: Vec<Scalar>,
}

impl FVector {
    pub fn new(field: &NumberFieldSpec, coords: Vec<Scalar>) -> Self {
        let coords = coords
            .into_iter()
            .map(|c| {
                if c.field() == field {
                    c
                } else if c.field().is_rational() {
                    Scalar::new(field, c.coeffs().to_vec())
                } else {
                    panic!("coordinate from a different number field")
                }
            })
            .collect();
        FVector {
            field: field.clone(),
            coords,
        }
    }

    pub fn zero(field: &NumberFieldSpec, len: usize) -> Self {
        FVector {
            field: field.clone(),
            coords: vec![Scalar::zero(field); len],
        }
    }

    pub fn from_rats(field: &NumberFieldSpec, coords: &[Rat]) -> Self {
        FVector {
            field: field.clone(),
            coords: coords
                .iter()
                .map(|c| Scalar::from_rat(field, c.clone()))
                .collect(),
        }
    }

    pub fn from_ints(field: &NumberFieldSpec, coords: &[i64]) -> Self {
        FVector {
            field: field.clone(),
            coords: coords.iter().map(|&c| Scalar::from_int(field, c)).collect(),
        }
    }

    pub fn from_bigints(field: &NumberFieldSpec, coords: &[BigInt]) -> Self {
        FVector {
            field: field.clone(),
            coords: coords
                .iter()
                .map(|c| Scalar::from_rat(field, Rat::from_integer(c.clone())))
                .collect(),
        }
    }

    /// Standard basis vector e_i.
    pub fn unit(field: &NumberFieldSpec, len: usize, i: usize) -> Self {
        let mut v = Self::zero(field, len);
        v.coords[i] = Scalar::one(field);
        v
    }

    pub fn field(&self) -> &NumberFieldSpec {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// All coordinates rational (degree-1 content, whatever the field degree).
    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.is_rational_value())
    }

    /// Embed into a (possibly) larger field; rational content lifts anywhere.
    pub fn promote(&self, field: &NumberFieldSpec) -> Result<FVector, FieldError> {
        if &self.field == field {
            return Ok(self.clone());
        }
        if self.field.is_rational() {
            return Ok(FVector {
                field: field.clone(),
                coords: self
                    .coords
                    .iter()
                    .map(|c| Scalar::new(field, c.coeffs().to_vec()))
                    .collect(),
            });
        }
        Err(FieldError::MixedFields)
    }

    /// Least common field of the operands, if one exists.
    pub fn common_field(a: &NumberFieldSpec, b: &NumberFieldSpec) -> Result<NumberFieldSpec, FieldError> {
        if a == b {
            Ok(a.clone())
        } else if a.is_rational() {
            Ok(b.clone())
        } else if b.is_rational() {
            Ok(a.clone())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    pub fn add(&self, other: &FVector) -> FVector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        let field = Self::common_field(&self.field, &other.field).expect("mixed fields");
        let a = self.promote(&field).unwrap();
        let b = other.promote(&field).unwrap();
        FVector {
            field,
            coords: a
                .coords
                .iter()
                .zip(b.coords.iter())
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, other: &FVector) -> FVector {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FVector {
        FVector {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> FVector {
        let field = Self::common_field(&self.field, k.field()).expect("mixed fields");
        let v = self.promote(&field).unwrap();
        FVector {
            coords: v.coords.iter().map(|c| c * k).collect(),
            field,
        }
    }

    pub fn scale_rat(&self, k: &Rat) -> FVector {
        let k = Scalar::from_rat(&self.field, k.clone());
        self.scale(&k)
    }

    /// Affine interpolation (1-t) self + t other.
    pub fn lerp(&self, other: &FVector, t: &Rat) -> FVector {
        let one_minus = Rat::from_integer(BigInt::from(1)) - t;
        self.scale_rat(&one_minus).add(&other.scale_rat(t))
    }

    /// Max-norm distance below a strict rational bound: ||self - other||_inf < r.
    pub fn max_dist_lt(&self, other: &FVector, r: &Rat) -> bool {
        let d = self.sub(other);
        d.coords.iter().all(|c| c.abs_lt(r))
    }

    /// ||self - other||_inf <= r.
    pub fn max_dist_le(&self, other: &FVector, r: &Rat) -> bool {
        let d = self.sub(other);
        d.coords.iter().all(|c| c.abs_le(r))
    }

    /// A rational strict upper bound on ||self||_inf.
    pub fn max_norm_upper_bound(&self) -> Rat {
        let mut best = Rat::zero();
        for c in &self.coords {
            let b = c.abs_upper_bound();
            if b > best {
                best = b;
            }
        }
        best
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.to_f64()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::poly::rat_int;

    #[test]
    fn arithmetic_and_norms() {
        let q = NumberFieldSpec::rationals();
        let a = FVector::from_ints(&q, &[1, 2, 3]);
        let b = FVector::from_ints(&q, &[0, 1, -1]);
        assert_eq!(a.add(&b), FVector::from_ints(&q, &[1, 3, 2]));
        assert!(a.max_dist_lt(&b, &rat_int(5)));
        assert!(!a.max_dist_lt(&b, &rat_int(4)));
        assert!(a.max_dist_le(&b, &rat_int(4)));
    }

    #[test]
    fn lerp_endpoints() {
        let q = NumberFieldSpec::rationals();
        let a = FVector::from_ints(&q, &[1, 0]);
        let b = FVector::from_ints(&q, &[0, 1]);
        assert_eq!(a.lerp(&b, &rat_int(0)), a);
        assert_eq!(a.lerp(&b, &rat_int(1)), b);
        let mid = a.lerp(&b, &Rat::new(1.into(), 2.into()));
        assert_eq!(mid, FVector::from_rats(&q, &[Rat::new(1.into(), 2.into()), Rat::new(1.into(), 2.into())]));
    }

    #[test]
    fn promotion() {
        let q = NumberFieldSpec::rationals();
        let f = NumberFieldSpec::sqrt(2).unwrap();
        let a = FVector::from_ints(&q, &[1, 2]);
        let lifted = a.promote(&f).unwrap();
        assert_eq!(lifted.field().degree(), 2);
        let t = Scalar::generator(&f);
        let b = FVector::new(&f, vec![t.clone(), Scalar::zero(&f)]);
        let sum = lifted.add(&b);
        assert_eq!(sum.coord(0), &(Scalar::one(&f) + t));
    }
}
