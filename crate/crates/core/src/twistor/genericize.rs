//! Constructive genericization: perturb the basis of a positive three-space
//! by seeded small field-irrational vectors with a shrinking rational step
//! until the line becomes generic, re-checking positivity and genericity
//! exactly at every attempt.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Genericity, ThreeSpace, TwistorError, TwistorLine};
use crate::period::random::small_field_vector;
use crate::scalar::{FVector, NumberFieldSpec};

type Rat = BigRational;

#[derive(Debug)]
pub struct Genericized {
    pub line: TwistorLine,
    /// Strict rational bound on the max-norm distance between the output and
    /// input basis vectors.
    pub magnitude: Rat,
    pub attempts: u32,
}

/// Rational constraint rows contributed by a vector: its field degree when it
/// has genuinely irrational content, one otherwise. Genericity needs the
/// total over the basis to reach the lattice rank, which dictates how many
/// basis vectors must be perturbed.
fn capacity(v: &FVector, degree: usize) -> usize {
    if v.is_rational() {
        1
    } else {
        degree
    }
}

/// First index to perturb: the smallest suffix {w_i, .., w_3} whose perturbed
/// capacities plus the untouched prefix capacities reach the rank.
fn suffix_start(basis: &[FVector; 3], degree: usize, rank: usize) -> usize {
    for start in (0..3).rev() {
        let total: usize = (0..3)
            .map(|i| if i >= start { degree } else { capacity(&basis[i], degree) })
            .sum();
        if total >= rank {
            return start;
        }
    }
    0
}

pub fn genericize(
    line: &TwistorLine,
    field: &NumberFieldSpec,
    seed: u64,
    budget: u32,
) -> Result<Genericized, TwistorError> {
    let space = line.space();
    let lattice = space.lattice().clone();
    let rank = lattice.rank();
    if 3 * field.degree() < rank {
        return Err(TwistorError::FieldDegreeTooSmall);
    }
    let basis: [FVector; 3] = [
        space.basis()[0].promote(field)?,
        space.basis()[1].promote(field)?,
        space.basis()[2].promote(field)?,
    ];
    // already generic: nothing to perturb
    let current = TwistorLine::new(ThreeSpace::new(
        &lattice,
        basis[0].clone(),
        basis[1].clone(),
        basis[2].clone(),
    )?)
    .check_generic();
    if current.is_generic() {
        return Ok(Genericized {
            line: current,
            magnitude: Rat::new(BigInt::from(1), BigInt::from(1024)),
            attempts: 0,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut start = suffix_start(&basis, field.degree(), rank);
    let mut step = Rat::new(BigInt::from(1), BigInt::from(8));

    for attempt in 0..budget {
        if attempt > 0 && attempt % 8 == 0 {
            step = &step / Rat::from_integer(BigInt::from(2));
            // widen the perturbation set if the counting-minimal one keeps
            // failing (degenerate coincidences in the untouched prefix)
            start = start.saturating_sub(1);
        }
        let mut perturbed = basis.clone();
        for (i, w) in perturbed.iter_mut().enumerate() {
            if i >= start {
                let eta = small_field_vector(&mut rng, field, rank, 4);
                *w = w.add(&eta.scale_rat(&step));
            }
        }
        let Ok(space) = ThreeSpace::new(
            &lattice,
            perturbed[0].clone(),
            perturbed[1].clone(),
            perturbed[2].clone(),
        ) else {
            continue;
        };
        let candidate = TwistorLine::new(space).check_generic();
        if let Genericity::Generic(_) = candidate.genericity() {
            let mut magnitude = Rat::new(BigInt::from(1), BigInt::from(1 << 20));
            for (orig, new) in basis.iter().zip(candidate.space().basis().iter()) {
                let m = new.sub(orig).max_norm_upper_bound();
                if m > magnitude {
                    magnitude = m;
                }
            }
            debug_assert!(basis
                .iter()
                .zip(candidate.space().basis().iter())
                .all(|(o, n)| n.max_dist_lt(o, &magnitude)));
            return Ok(Genericized {
                line: candidate,
                magnitude,
                attempts: attempt + 1,
            });
        }
    }
    Err(TwistorError::BudgetExhausted(budget))
}
