//! (-2)-class reflections, bounded root enumeration in Picard lattices,
//! chamber reduction relative to a supplied wall set, and the orientation
//! class of an isometry on positive three-spaces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::lattice::{enumerate, LatticeIsometry, QuadLattice};
use crate::linalg::ZMat;
use crate::period::{PeriodPoint, PositiveConeRef};
use crate::scalar::FVector;

type Int = BigInt;
type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeylError {
    #[error("vector is not a root: q(delta) != -2")]
    NotARoot,
    #[error("vector length does not match lattice rank")]
    RankMismatch,
    #[error("omega is not in the positive cone")]
    NotInCone,
    #[error("step budget exhausted after {0} reflections")]
    StepBudgetExhausted(usize),
    #[error("lattice has fewer than three positive directions")]
    NoPositiveThreeSpace,
}

/// A (-2)-class in sign-canonical form (s_delta = s_{-delta}, so exactly one
/// of the pair is kept: the lexicographically positive one).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    lattice: QuadLattice,
    vector: Vec<Int>,
}

impl Root {
    pub fn new(lattice: &QuadLattice, vector: Vec<Int>) -> Result<Self, WeylError> {
        if vector.len() != lattice.rank() {
            return Err(WeylError::RankMismatch);
        }
        if lattice.norm_int(&vector) != Int::from(-2) {
            return Err(WeylError::NotARoot);
        }
        Ok(Root {
            lattice: lattice.clone(),
            vector: sign_canonical(vector),
        })
    }

    pub fn lattice(&self) -> &QuadLattice {
        &self.lattice
    }

    pub fn vector(&self) -> &[Int] {
        &self.vector
    }

    /// s_delta(v) = v + q(v, delta) delta: integral since q(delta) = -2.
    pub fn reflect(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.vector.len(), "vector length mismatch");
        let c = self.lattice.pair_int(v, &self.vector);
        v.iter()
            .zip(self.vector.iter())
            .map(|(vi, di)| vi + &c * di)
            .collect()
    }

    /// The reflection as a verified lattice isometry: I + delta (G delta)^T.
    pub fn matrix(&self) -> LatticeIsometry {
        let n = self.vector.len();
        let g_delta = self.lattice.gram().mul_vec(&self.vector);
        let mut m = ZMat::identity(n);
        for i in 0..n {
            for j in 0..n {
                let v = &m[(i, j)] + &self.vector[i] * &g_delta[j];
                m[(i, j)] = v;
            }
        }
        LatticeIsometry::new(&self.lattice, m).expect("reflections are isometries")
    }

    fn negated(&self) -> Root {
        Root {
            lattice: self.lattice.clone(),
            vector: self.vector.iter().map(|c| -c).collect(),
        }
    }
}

fn sign_canonical(mut v: Vec<Int>) -> Vec<Int> {
    for c in &v {
        if c.is_positive() {
            return v;
        }
        if c.is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
            return v;
        }
    }
    v
}

/// An ordered product of reflections applied left-to-right, together with
/// the resulting verified isometry.
#[derive(Clone, Debug)]
pub struct ReflectionWord {
    pub roots: Vec<Root>,
    pub matrix: LatticeIsometry,
}

impl ReflectionWord {
    pub fn identity(lattice: &QuadLattice) -> Self {
        ReflectionWord {
            roots: vec![],
            matrix: LatticeIsometry::identity(lattice),
        }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Re-multiply the stored roots and compare with the stored matrix.
    pub fn verify(&self) -> bool {
        let lattice = self.matrix.lattice();
        let mut acc = LatticeIsometry::identity(lattice);
        for r in &self.roots {
            acc = r.matrix().compose(&acc);
        }
        acc.matrix() == self.matrix.matrix()
    }
}

#[derive(Debug)]
pub struct ChamberReduction {
    pub reduced: Vec<Int>,
    pub word: ReflectionWord,
    /// Budget ran out before all wall conditions were met.
    pub exhausted: bool,
}

/// Repeatedly reflect omega in the first supplied wall it pairs negatively
/// with, until q(omega', delta) >= 0 for every supplied root or the step
/// budget runs out. Reduction is relative to the supplied (box-bounded,
/// possibly incomplete) root set; roots are re-oriented against the cone
/// reference so the fundamental condition is consistent. Termination is not
/// guaranteed in general: exhaustion is reported with the partial word, never
/// asserted away.
pub fn chamber_reduce(
    omega: &[Int],
    roots: &[Root],
    cone: &PositiveConeRef,
    max_steps: usize,
) -> Result<ChamberReduction, WeylError> {
    let lattice = cone.lattice().clone();
    if omega.len() != lattice.rank() {
        return Err(WeylError::RankMismatch);
    }
    let rationals = crate::scalar::NumberFieldSpec::rationals();
    let omega_f = FVector::from_bigints(&rationals, omega);
    match cone.contains(&omega_f) {
        Ok(true) => {}
        _ => return Err(WeylError::NotInCone),
    }

    // orient each wall against the reference: q(ref, delta) >= 0, ties keep
    // the lexicographic representative
    let oriented: Vec<Root> = roots
        .iter()
        .map(|r| {
            let wall = FVector::from_bigints(&rationals, r.vector());
            let pairing = lattice.pair(cone.ref_vector(), &wall);
            if pairing.sign() < 0 {
                r.negated()
            } else {
                r.clone()
            }
        })
        .collect();

    let mut current = omega.to_vec();
    let mut word_roots: Vec<Root> = Vec::new();
    let mut matrix = LatticeIsometry::identity(&lattice);
    for _ in 0..max_steps {
        let violated = oriented
            .iter()
            .find(|r| lattice.pair_int(&current, r.vector()).is_negative());
        let Some(r) = violated else {
            return Ok(ChamberReduction {
                reduced: current,
                word: ReflectionWord {
                    roots: word_roots,
                    matrix,
                },
                exhausted: false,
            });
        };
        current = r.reflect(&current);
        matrix = r.matrix().compose(&matrix);
        word_roots.push(r.clone());
    }
    let done = oriented
        .iter()
        .all(|r| !lattice.pair_int(&current, r.vector()).is_negative());
    Ok(ChamberReduction {
        reduced: current,
        word: ReflectionWord {
            roots: word_roots,
            matrix,
        },
        exhausted: !done,
    })
}

/// Roots of the Picard lattice of a period, enumerated within a coordinate
/// box of the Picard basis and mapped back to ambient coordinates,
/// sign-canonical and sorted. Complete only within the box.
pub fn roots_of_picard(p: &PeriodPoint, box_bound: u32) -> Vec<Root> {
    let pic = p.picard_lattice();
    let found = enumerate::norm_vectors_in_box(&pic, &Int::from(-2), box_bound);
    let mut out: Vec<Vec<Int>> = found
        .into_iter()
        .map(|coords| sign_canonical(pic.to_ambient(&coords)))
        .collect();
    out.sort();
    out.dedup();
    out.into_iter()
        .map(|vector| Root {
            lattice: p.lattice().clone(),
            vector,
        })
        .collect()
}

/// Orientation class of an isometry: the sign of the determinant of
/// W0 -> phi(W0) -> W0 (q-orthogonal projection back), where W0 is the
/// lattice's canonical rational positive three-space. Well defined because
/// phi(W0) is positive definite and W0^⊥ is negative definite, so the
/// projection is invertible.
pub fn orientation_class(phi: &LatticeIsometry) -> Result<i8, WeylError> {
    let lattice = phi.lattice();
    let frame = lattice.positive_frame();
    if frame.len() < 3 {
        return Err(WeylError::NoPositiveThreeSpace);
    }
    orientation_class_with_frame(phi, &frame[0..3])
}

/// Same computation against an explicit rational positive triple; used to
/// check independence of the choice of three-space.
pub fn orientation_class_with_frame(
    phi: &LatticeIsometry,
    w0: &[Vec<Int>],
) -> Result<i8, WeylError> {
    assert_eq!(w0.len(), 3);
    let lattice = phi.lattice();
    let mut gram = new3();
    for i in 0..3 {
        for j in 0..3 {
            gram[i][j] = Rat::from_integer(lattice.pair_int(&w0[i], &w0[j]));
        }
    }
    if !det3_rat(&gram).is_positive() {
        return Err(WeylError::NoPositiveThreeSpace);
    }
    let mut t = new3();
    for i in 0..3 {
        let img = phi.apply_int(&w0[i]);
        let rhs = [
            Rat::from_integer(lattice.pair_int(&img, &w0[0])),
            Rat::from_integer(lattice.pair_int(&img, &w0[1])),
            Rat::from_integer(lattice.pair_int(&img, &w0[2])),
        ];
        t[i] = solve3(&gram, &rhs);
    }
    let det = det3_rat(&t);
    debug_assert!(!det.is_zero(), "projection of a positive 3-space is invertible");
    Ok(if det.is_positive() { 1 } else { -1 })
}

fn new3() -> [[Rat; 3]; 3] {
    [
        [Rat::zero(), Rat::zero(), Rat::zero()],
        [Rat::zero(), Rat::zero(), Rat::zero()],
        [Rat::zero(), Rat::zero(), Rat::zero()],
    ]
}

fn solve3(m: &[[Rat; 3]; 3], rhs: &[Rat; 3]) -> [Rat; 3] {
    let d = det3_rat(m);
    assert!(!d.is_zero(), "gram of a positive frame is invertible");
    let mut out = [Rat::zero(), Rat::zero(), Rat::zero()];
    for c in 0..3 {
        let mut mc = m.clone();
        for (r, row) in mc.iter_mut().enumerate() {
            row[c] = rhs[r].clone();
        }
        out[c] = det3_rat(&mc) / &d;
    }
    out
}

fn det3_rat(m: &[[Rat; 3]; 3]) -> Rat {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{is_isometry, make_catalog, CatalogKind, Sublattice};
    use crate::scalar::NumberFieldSpec;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn reflect_examples() {
        let u = make_catalog(&CatalogKind::U).unwrap();
        let delta = Root::new(&u, ints(&[1, -1])).unwrap();
        // reflection negates its root
        assert_eq!(delta.reflect(&ints(&[1, -1])), ints(&[-1, 1]));
        // fixes the mirror: (1,1) ⊥ (1,-1) in U
        assert_eq!(delta.reflect(&ints(&[1, 1])), ints(&[1, 1]));
        // worked example: q((2,1),(1,-1)) = -1, image (1,2)
        assert_eq!(delta.reflect(&ints(&[2, 1])), ints(&[1, 2]));
        // not a root
        assert_eq!(
            Root::new(&u, ints(&[1, 1])).unwrap_err(),
            WeylError::NotARoot
        );
    }

    #[test]
    fn reflection_matrix_is_isometry_and_involution() {
        let k3 = make_catalog(&CatalogKind::K3).unwrap();
        let mut v = vec![0i64; 22];
        v[0] = 1; // an E8 simple root has q = -2
        let delta = Root::new(&k3, ints(&v)).unwrap();
        let m = delta.matrix();
        assert!(is_isometry(&k3, m.matrix()).ok);
        let twice = m.compose(&m);
        assert_eq!(twice.matrix(), LatticeIsometry::identity(&k3).matrix());
    }

    #[test]
    fn chamber_reduce_worked_example() {
        let u = make_catalog(&CatalogKind::U).unwrap();
        let q = NumberFieldSpec::rationals();
        let cone = PositiveConeRef::new(&u, None, FVector::from_ints(&q, &[1, 1])).unwrap();
        let delta = Root::new(&u, ints(&[1, -1])).unwrap();
        let r = chamber_reduce(&ints(&[2, 1]), &[delta.clone()], &cone, 10).unwrap();
        assert!(!r.exhausted);
        assert_eq!(r.reduced, ints(&[1, 2]));
        assert_eq!(r.word.len(), 1);
        assert!(r.word.verify());
        // postcondition: nonnegative pairing with the wall
        assert!(!u.pair_int(&r.reduced, delta.vector()).is_negative());
        // q preserved
        assert_eq!(u.norm_int(&r.reduced), u.norm_int(&ints(&[2, 1])));
        // matrix re-application matches
        assert_eq!(r.word.matrix.apply_int(&ints(&[2, 1])), r.reduced);
    }

    #[test]
    fn chamber_reduce_trivial_cases() {
        let u = make_catalog(&CatalogKind::U).unwrap();
        let q = NumberFieldSpec::rationals();
        let cone = PositiveConeRef::new(&u, None, FVector::from_ints(&q, &[1, 1])).unwrap();
        // already reduced
        let delta = Root::new(&u, ints(&[1, -1])).unwrap();
        let r = chamber_reduce(&ints(&[1, 2]), &[delta], &cone, 10).unwrap();
        assert_eq!(r.word.len(), 0);
        assert_eq!(r.reduced, ints(&[1, 2]));
        // empty root list
        let r = chamber_reduce(&ints(&[2, 1]), &[], &cone, 10).unwrap();
        assert_eq!(r.reduced, ints(&[2, 1]));
        assert_eq!(r.word.len(), 0);
        // not in cone
        assert_eq!(
            chamber_reduce(&ints(&[-2, -1]), &[], &cone, 10).unwrap_err(),
            WeylError::NotInCone
        );
    }

    #[test]
    fn roots_of_picard_counts() {
        // <-4> has no -2 vectors
        let l = make_catalog(&CatalogKind::Rank1(-4)).unwrap();
        let s = Sublattice::full(&l);
        assert!(enumerate::norm_vectors_in_box(&s, &Int::from(-2), 3).is_empty());

        // generic periods have no roots at all
        let kummer = make_catalog(&CatalogKind::Kummer(3)).unwrap();
        let f = NumberFieldSpec::nth_root(4, 2).unwrap();
        let generic = crate::period::random_generic_period(&kummer, &f, 5, 100)
            .unwrap()
            .point;
        assert!(roots_of_picard(&generic, 2).is_empty());

        // rational Kummer period: the Picard lattice is small enough for the
        // brute-force box oracle
        let q = NumberFieldSpec::rationals();
        let p = crate::period::PeriodPoint::new(
            &kummer,
            FVector::from_ints(&q, &[1, 1, 0, 0, 0, 0, 0]),
            FVector::from_ints(&q, &[0, 0, 1, 1, 0, 0, 0]),
        )
        .unwrap();
        let roots = roots_of_picard(&p, 2);
        let pic = p.picard_lattice();
        assert_eq!(pic.rank(), 5);
        let oracle = enumerate::norm_vectors_in_box(&pic, &Int::from(-2), 2);
        assert_eq!(roots.len(), oracle.len());
        assert!(!roots.is_empty());
        for r in &roots {
            assert_eq!(kummer.norm_int(r.vector()), Int::from(-2));
            assert!(pic.contains(r.vector()));
        }
    }

    #[test]
    fn e8_root_count_in_box_matches_oracle() {
        // the E8(-1) summand of the K3 lattice, embedded as the first eight
        // coordinates; box enumeration vs the complete definite enumerator
        let k3 = make_catalog(&CatalogKind::K3).unwrap();
        let mut gens = Vec::new();
        for i in 0..8 {
            let mut v = vec![Int::from(0); 22];
            v[i] = Int::from(1);
            gens.push(v);
        }
        let e8 = Sublattice::from_generators(&k3, gens);
        let boxed = enumerate::norm_vectors_in_box(&e8, &Int::from(-2), 2);
        let complete = enumerate::norm_vectors_definite(&e8, &Int::from(-2)).unwrap();
        assert_eq!(complete.len(), 120); // all sign classes of E8 roots
        assert!(boxed.iter().all(|v| complete.contains(v)));
        // brute-force sanity at the stated box, frozen from the oracle
        assert_eq!(boxed.len(), 74);
    }

    #[test]
    fn orientation_class_examples() {
        let k3 = make_catalog(&CatalogKind::K3).unwrap();
        assert_eq!(orientation_class(&LatticeIsometry::identity(&k3)).unwrap(), 1);
        assert_eq!(orientation_class(&LatticeIsometry::neg_identity(&k3)).unwrap(), -1);
        // reflections fix the orthogonal complement of the root, which
        // contains a positive three-space
        let mut v = vec![0i64; 22];
        v[3] = 1;
        let delta = Root::new(&k3, ints(&v)).unwrap();
        assert_eq!(orientation_class(&delta.matrix()).unwrap(), 1);
        // no positive three-space in a negative definite lattice
        let e8 = make_catalog(&CatalogKind::E8Neg).unwrap();
        assert_eq!(
            orientation_class(&LatticeIsometry::identity(&e8)).unwrap_err(),
            WeylError::NoPositiveThreeSpace
        );
    }

    #[test]
    fn orientation_is_multiplicative() {
        let k3 = make_catalog(&CatalogKind::K3).unwrap();
        let mut v1 = vec![0i64; 22];
        v1[0] = 1;
        let mut v2 = vec![0i64; 22];
        v2[4] = 1;
        let r1 = Root::new(&k3, ints(&v1)).unwrap().matrix();
        let r2 = Root::new(&k3, ints(&v2)).unwrap().matrix();
        let neg = LatticeIsometry::neg_identity(&k3);
        for (a, b) in [(&r1, &r2), (&r1, &neg), (&neg, &neg)] {
            let cab = orientation_class(&a.compose(b)).unwrap();
            let ca = orientation_class(a).unwrap();
            let cb = orientation_class(b).unwrap();
            assert_eq!(cab, ca * cb);
        }
    }

    #[test]
    fn orientation_independent_of_frame() {
        let k3 = make_catalog(&CatalogKind::K3).unwrap();
        let frame = k3.positive_frame();
        // an alternative rational positive triple: mix the frame directions
        let alt: Vec<Vec<Int>> = vec![
            frame[0].iter().zip(frame[1].iter()).map(|(a, b)| a + b).collect(),
            frame[1].clone(),
            frame[2].clone(),
        ];
        let mut v = vec![0i64; 22];
        v[5] = 1;
        let phi = Root::new(&k3, ints(&v)).unwrap().matrix();
        let neg = LatticeIsometry::neg_identity(&k3);
        for iso in [&phi, &neg, &phi.compose(&neg)] {
            assert_eq!(
                orientation_class(iso).unwrap(),
                orientation_class_with_frame(iso, &alt).unwrap()
            );
        }
    }
}
