//! Boundary-to-interior lines: for a point on the ball boundary, build a
//! generic twistor line through it (W = P(x) ⊕ R·alpha for a generic
//! positive alpha orthogonal to the plane) together with a second point of
//! the line strictly inside the ball.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{find_positive_orthogonal, Ball, ConnectError};
use crate::period::random::small_field_vector;
use crate::period::PeriodPoint;
use crate::scalar::{FVector, NumberFieldSpec};
use crate::twistor::{ThreeSpace, TwistorLine};

type Rat = BigRational;

#[derive(Debug)]
pub struct BoundaryLine {
    pub line: TwistorLine,
    pub interior: PeriodPoint,
}

pub fn boundary_line(
    x: &PeriodPoint,
    ball: &Ball,
    field: &NumberFieldSpec,
    seed: u64,
    budget: u32,
) -> Result<BoundaryLine, ConnectError> {
    if x.lattice() != ball.center().lattice() {
        return Err(ConnectError::LatticeMismatch);
    }
    let lattice = x.lattice().clone();
    let a = x.a().promote(field)?;
    let b = x.b().promote(field)?;
    if !ball.contains_pair_closed(&a, &b) {
        return Err(ConnectError::PointOutsideBall);
    }
    if ball.contains_pair(&a, &b) {
        return Err(ConnectError::PointNotOnBoundary);
    }

    let alpha0 = find_positive_orthogonal(&lattice, field, &[a.clone(), b.clone()])
        .ok_or(ConnectError::NoPositiveThreeSpace)?;
    let alpha0 = alpha0.scale_rat(&(Rat::one() / alpha0.max_norm_upper_bound()));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eighth = Rat::new(BigInt::from(1), BigInt::from(8));
    for attempt in 0..budget {
        // resample alpha generically, per the openness of the construction
        let eta = small_field_vector(&mut rng, field, lattice.rank(), 64).scale_rat(&eighth);
        let alpha = alpha0.add(&eta);
        let Ok(space) = ThreeSpace::new(&lattice, a.clone(), b.clone(), alpha.clone()) else {
            continue;
        };
        let line = TwistorLine::new(space).check_generic();
        if !line.is_generic() {
            continue;
        }
        // walk into the interior along in-line plane deformations
        let mut t = ball.radius() / Rat::from_integer(BigInt::from(4));
        for _ in 0..10 {
            for signed in [t.clone(), -t.clone()] {
                for (da, db) in [
                    (Some(&signed), None),
                    (None, Some(&signed)),
                    (Some(&signed), Some(&signed)),
                ] {
                    let ca = match da {
                        Some(s) => a.add(&alpha.scale_rat(s)),
                        None => a.clone(),
                    };
                    let cb = match db {
                        Some(s) => b.add(&alpha.scale_rat(s)),
                        None => b.clone(),
                    };
                    if !ball.contains_pair(&ca, &cb) {
                        continue;
                    }
                    let Ok(y) = PeriodPoint::new(&lattice, ca, cb) else {
                        continue;
                    };
                    if !ball.contains_point(&y) {
                        continue;
                    }
                    if !line.contains(&y) {
                        continue;
                    }
                    let _ = attempt;
                    return Ok(BoundaryLine {
                        line,
                        interior: y,
                    });
                }
            }
            t = t / Rat::from_integer(BigInt::from(2));
        }
    }
    Err(ConnectError::BudgetExhausted(budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::QuadLattice;
    use crate::scalar::poly::rat;
    use crate::twistor::constraint_matrix;
    use crate::twistor::Genericity;

    fn setup() -> (QuadLattice, Ball, NumberFieldSpec) {
        let l = QuadLattice::diagonal(&[1, 1, 1, -1]).unwrap();
        let q = NumberFieldSpec::rationals();
        let center = PeriodPoint::new(
            &l,
            FVector::unit(&q, 4, 0),
            FVector::unit(&q, 4, 1),
        )
        .unwrap();
        (l.clone(), Ball::new(center, rat(1, 4)), NumberFieldSpec::sqrt(2).unwrap())
    }

    #[test]
    fn boundary_point_gets_generic_line_and_interior_point() {
        let (l, ball, f) = setup();
        let q = NumberFieldSpec::rationals();
        // x on the boundary: first coordinate pair deviation exactly 1/4
        let a = FVector::from_rats(&q, &[rat(1, 1), rat(0, 1), rat(1, 4), rat(0, 1)]);
        let x = PeriodPoint::new(&l, a, FVector::unit(&q, 4, 1)).unwrap();
        assert!(ball.pair_on_boundary(x.a(), x.b()));
        let out = boundary_line(&x, &ball, &f, 9, 40).unwrap();
        // line is generic with a verifiable witness
        match out.line.genericity() {
            Genericity::Generic(w) => {
                assert!(w.verify(&constraint_matrix(out.line.space())));
            }
            other => panic!("expected generic line, got {other:?}"),
        }
        // x on the line, interior point strictly inside
        assert!(out.line.contains(&x));
        assert!(ball.contains_point(&out.interior));
        assert!(!out.interior.same_point(&x));
    }

    #[test]
    fn interior_point_is_a_precondition_error() {
        let (l, ball, f) = setup();
        let q = NumberFieldSpec::rationals();
        let x = PeriodPoint::new(
            &l,
            FVector::unit(&q, 4, 0),
            FVector::unit(&q, 4, 1),
        )
        .unwrap();
        let _ = l;
        assert_eq!(
            boundary_line(&x, &ball, &f, 1, 5).unwrap_err(),
            ConnectError::PointNotOnBoundary
        );
    }

    #[test]
    fn outside_point_is_a_precondition_error() {
        let (l, ball, f) = setup();
        let q = NumberFieldSpec::rationals();
        let a = FVector::from_rats(&q, &[rat(1, 1), rat(0, 1), rat(1, 2), rat(0, 1)]);
        let x = PeriodPoint::new(&l, a, FVector::unit(&q, 4, 1)).unwrap();
        assert_eq!(
            boundary_line(&x, &ball, &f, 1, 5).unwrap_err(),
            ConnectError::PointOutsideBall
        );
    }
}
