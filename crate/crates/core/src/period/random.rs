//! Seeded construction of generic periods: draw small field perturbations of
//! the lattice's rational positive frame, orthogonalize, and retry until the
//! Picard rank is zero.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{PeriodError, PeriodPoint};
use crate::lattice::QuadLattice;
use crate::scalar::{FVector, NumberFieldSpec, Scalar};

type Rat = BigRational;

#[derive(Debug)]
pub struct RandomPeriod {
    pub point: PeriodPoint,
    pub retries: u32,
}

/// Necessary headroom for a generic period: the two orthogonality constraints
/// expand into 2d rational equations, which can only pin down all b integer
/// unknowns when 2d >= b. Draws below the threshold can never succeed and
/// exhaust the budget.
pub fn generic_period_feasible(lattice: &QuadLattice, field: &NumberFieldSpec) -> bool {
    2 * field.degree() >= lattice.rank()
}

/// Deterministic seeded generator: perturb the first two positive frame
/// directions by small full-degree field vectors, keep draws that form a
/// positive plane, and return the first one with Picard rank zero together
/// with its retry count.
pub fn random_generic_period(
    lattice: &QuadLattice,
    field: &NumberFieldSpec,
    seed: u64,
    budget: u32,
) -> Result<RandomPeriod, PeriodError> {
    let frame = lattice.positive_frame();
    assert!(
        frame.len() >= 2,
        "lattice needs at least two positive directions"
    );
    let v1 = FVector::from_bigints(field, &frame[0]);
    let v2 = FVector::from_bigints(field, &frame[1]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for attempt in 0..budget {
        let a = v1.add(&small_field_vector(&mut rng, field, lattice.rank(), 64));
        let b = v2.add(&small_field_vector(&mut rng, field, lattice.rank(), 64));
        let Ok(point) = PeriodPoint::new(lattice, a, b) else {
            continue;
        };
        if point.is_generic() {
            return Ok(RandomPeriod {
                point,
                retries: attempt,
            });
        }
    }
    Err(PeriodError::BudgetExhausted(budget))
}

/// A vector whose coordinates have random coefficients n/denom, n in [-3, 3],
/// across the full power basis of the field.
pub fn small_field_vector(
    rng: &mut ChaCha8Rng,
    field: &NumberFieldSpec,
    len: usize,
    denom: i64,
) -> FVector {
    let d = field.degree();
    let coords = (0..len)
        .map(|_| {
            let coeffs = (0..d)
                .map(|_| Rat::new(BigInt::from(rng.gen_range(-3i64..=3)), BigInt::from(denom)))
                .collect();
            Scalar::new(field, coeffs)
        })
        .collect();
    FVector::new(field, coords)
}
