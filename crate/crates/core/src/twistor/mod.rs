//! Positive three-spaces and twistor lines: exact positivity certificates
//! (leading principal minors), genericity witnesses (SNF of the orthogonality
//! constraints), membership, common-line tests, the sphere of planes inside a
//! three-space, and constructive genericization.

pub mod genericize;

use num_traits::Zero;
use thiserror::Error;

use crate::lattice::QuadLattice;
use crate::linalg::{fsolve, smith_normal_form, ZMat};
use crate::period::{PeriodError, PeriodPoint};
use crate::scalar::{FVector, Int, NumberFieldSpec, Scalar};

pub use genericize::{genericize, Genericized};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TwistorError {
    #[error("the three-space is not positive definite")]
    NotPositiveDefinite,
    #[error("basis vectors are linearly dependent")]
    Dependent,
    #[error("vector length does not match lattice rank")]
    RankMismatch,
    #[error("operands live in incompatible number fields")]
    FieldMismatch,
    #[error("alpha does not lie in the three-space")]
    AlphaNotInW,
    #[error("alpha is not positive")]
    AlphaNotPositive,
    #[error("field degree too small: need 3*deg >= rank for a generic line")]
    FieldDegreeTooSmall,
    #[error("perturbation budget exhausted after {0} attempts")]
    BudgetExhausted(u32),
}

impl From<crate::scalar::FieldError> for TwistorError {
    fn from(_: crate::scalar::FieldError) -> Self {
        TwistorError::FieldMismatch
    }
}

/// A three-dimensional subspace W with q|_W positive definite, carrying its
/// positivity certificate: the three leading principal minors of the q-Gram
/// of the basis, all exactly positive (Sylvester).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeSpace {
    lattice: QuadLattice,
    basis: [FVector; 3],
    minors: [Scalar; 3],
}

impl ThreeSpace {
    pub fn new(
        lattice: &QuadLattice,
        w1: FVector,
        w2: FVector,
        w3: FVector,
    ) -> Result<Self, TwistorError> {
        if w1.len() != lattice.rank() || w2.len() != lattice.rank() || w3.len() != lattice.rank() {
            return Err(TwistorError::RankMismatch);
        }
        let field = FVector::common_field(
            &FVector::common_field(w1.field(), w2.field())?,
            w3.field(),
        )?;
        let w1 = w1.promote(&field)?;
        let w2 = w2.promote(&field)?;
        let w3 = w3.promote(&field)?;
        if fsolve::rank(&[w1.clone(), w2.clone(), w3.clone()]) != 3 {
            return Err(TwistorError::Dependent);
        }
        let minors = principal_minors(lattice, &w1, &w2, &w3);
        if minors.iter().any(|m| m.sign() <= 0) {
            return Err(TwistorError::NotPositiveDefinite);
        }
        Ok(ThreeSpace {
            lattice: lattice.clone(),
            basis: [w1, w2, w3],
            minors,
        })
    }

    pub fn lattice(&self) -> &QuadLattice {
        &self.lattice
    }

    pub fn field(&self) -> &NumberFieldSpec {
        self.basis[0].field()
    }

    pub fn basis(&self) -> &[FVector; 3] {
        &self.basis
    }

    pub fn minors(&self) -> &[Scalar; 3] {
        &self.minors
    }

    /// Exact coordinates of v in the basis, or None when v is outside W.
    pub fn coords_in_space(&self, v: &FVector) -> Option<[Scalar; 3]> {
        let x = fsolve::solve_in_span(&self.basis, v)?;
        Some([x[0].clone(), x[1].clone(), x[2].clone()])
    }

    pub fn contains_vector(&self, v: &FVector) -> bool {
        self.coords_in_space(v).is_some()
    }
}

/// Leading principal minors of the q-Gram of (w1, w2, w3).
pub fn principal_minors(
    lattice: &QuadLattice,
    w1: &FVector,
    w2: &FVector,
    w3: &FVector,
) -> [Scalar; 3] {
    let g11 = lattice.norm(w1);
    let g12 = lattice.pair(w1, w2);
    let g13 = lattice.pair(w1, w3);
    let g22 = lattice.norm(w2);
    let g23 = lattice.pair(w2, w3);
    let g33 = lattice.norm(w3);
    let m1 = g11.clone();
    let m2 = &(&g11 * &g22) - &(&g12 * &g12);
    // 3x3 symmetric determinant
    let m3 = &(&(&g11 * &(&(&g22 * &g33) - &(&g23 * &g23)))
        - &(&g12 * &(&(&g12 * &g33) - &(&g23 * &g13))))
        + &(&g13 * &(&(&g12 * &g23) - &(&g22 * &g13)));
    [m1, m2, m3]
}

/// Self-contained proof that the orthogonality-constraint matrix C of a line
/// has full column rank (so W^⊥ ∩ Λ = 0): u c v = s with s diagonal carrying
/// rank-many nonzero entries, and explicit inverses so a verifier only
/// multiplies matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericWitness {
    pub u: ZMat,
    pub u_inv: ZMat,
    pub v: ZMat,
    pub v_inv: ZMat,
    pub s: ZMat,
}

impl GenericWitness {
    /// Re-check against a freshly derived constraint matrix.
    pub fn verify(&self, constraints: &ZMat) -> bool {
        let b = constraints.cols;
        if self.u.rows != constraints.rows || self.v.rows != b {
            return false;
        }
        if self.u.mul(&self.u_inv) != ZMat::identity(self.u.rows) {
            return false;
        }
        if self.v.mul(&self.v_inv) != ZMat::identity(self.v.rows) {
            return false;
        }
        if self.u.mul(constraints).mul(&self.v) != self.s {
            return false;
        }
        let mut nonzero = 0;
        for i in 0..self.s.rows {
            for j in 0..self.s.cols {
                if i != j && !self.s[(i, j)].is_zero() {
                    return false;
                }
                if i == j && !self.s[(i, j)].is_zero() {
                    nonzero += 1;
                }
            }
        }
        nonzero == b
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Genericity {
    Unchecked,
    /// W^⊥ ∩ Λ = 0, witnessed by Smith-normal-form data of the constraint
    /// matrix.
    Generic(GenericWitness),
    /// A nonzero lattice vector orthogonal to all of W.
    NonGeneric(Vec<Int>),
}

/// A twistor line: the sphere of oriented planes inside a positive
/// three-space, tagged with its genericity status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistorLine {
    space: ThreeSpace,
    genericity: Genericity,
}

impl TwistorLine {
    pub fn new(space: ThreeSpace) -> Self {
        TwistorLine {
            space,
            genericity: Genericity::Unchecked,
        }
    }

    pub fn space(&self) -> &ThreeSpace {
        &self.space
    }

    pub fn genericity(&self) -> &Genericity {
        &self.genericity
    }

    pub fn is_generic(&self) -> bool {
        matches!(self.genericity, Genericity::Generic(_))
    }

    pub(crate) fn with_genericity(space: ThreeSpace, genericity: Genericity) -> Self {
        TwistorLine { space, genericity }
    }

    /// Resolve genericity: run the integral kernel on the basis constraints
    /// and attach either an SNF witness (trivial kernel) or a kernel vector.
    pub fn check_generic(self) -> TwistorLine {
        let lattice = self.space.lattice.clone();
        let [w1, w2, w3] = self.space.basis.clone();
        let kernel = lattice
            .integral_kernel(&[w1, w2, w3])
            .expect("basis lengths match lattice rank");
        let genericity = if kernel.rank() == 0 {
            let c = constraint_matrix(&self.space);
            let snf = smith_normal_form(&c);
            debug_assert_eq!(snf.rank(), lattice.rank());
            Genericity::Generic(GenericWitness {
                u: snf.u,
                u_inv: snf.u_inv,
                v: snf.v,
                v_inv: snf.v_inv,
                s: snf.s,
            })
        } else {
            Genericity::NonGeneric(kernel.basis()[0].clone())
        };
        TwistorLine {
            space: self.space,
            genericity,
        }
    }

    /// Membership of a period point: both spanning vectors solve exactly in
    /// the basis of W. Orientation is not constrained; a point and its
    /// conjugate lie on the same line.
    pub fn contains(&self, p: &PeriodPoint) -> bool {
        if p.lattice() != &self.space.lattice {
            return false;
        }
        self.space.contains_vector(p.a()) && self.space.contains_vector(p.b())
    }
}

/// The deterministic integer constraint matrix of the line's basis.
pub fn constraint_matrix(space: &ThreeSpace) -> ZMat {
    space
        .lattice
        .constraint_matrix(&space.basis.to_vec())
        .expect("basis lengths match lattice rank")
}

#[derive(Clone, Debug)]
pub enum CommonLine {
    /// The two planes span a positive three-space: the unique line through
    /// both points.
    Line(TwistorLine),
    /// Identical planes: infinitely many lines.
    SamePlane,
    /// The span has dimension four, or is three-dimensional but not positive
    /// definite.
    NoCommonLine,
}

/// Two distinct points lie on one twistor line iff their planes span a
/// positive three-space.
pub fn common_line(x: &PeriodPoint, y: &PeriodPoint) -> CommonLine {
    assert_eq!(x.lattice(), y.lattice(), "points in different lattices");
    let lattice = x.lattice();
    let vectors = [
        x.a().clone(),
        x.b().clone(),
        y.a().clone(),
        y.b().clone(),
    ];
    match fsolve::rank(&vectors) {
        2 => CommonLine::SamePlane,
        3 => {
            let third = if fsolve::rank(&[vectors[0].clone(), vectors[1].clone(), vectors[2].clone()]) == 3 {
                vectors[2].clone()
            } else {
                vectors[3].clone()
            };
            match ThreeSpace::new(lattice, vectors[0].clone(), vectors[1].clone(), third) {
                Ok(space) => CommonLine::Line(TwistorLine::new(space)),
                Err(_) => CommonLine::NoCommonLine,
            }
        }
        _ => CommonLine::NoCommonLine,
    }
}

/// The period point of the line determined by a positive direction α ∈ W:
/// the plane α^⊥ ∩ W, oriented so that (α, a, b) is positively oriented with
/// respect to the stored basis of W. Realizes the 2-sphere of planes inside W
/// as lattice data; α and -α give the two orientations of one plane.
pub fn sphere_point(line: &TwistorLine, alpha: &FVector) -> Result<PeriodPoint, TwistorError> {
    let space = line.space();
    let lattice = space.lattice();
    let Some(alpha_coords) = space.coords_in_space(alpha) else {
        return Err(TwistorError::AlphaNotInW);
    };
    let field = FVector::common_field(space.field(), alpha.field())?;
    let alpha = alpha.promote(&field)?;
    let q_alpha = lattice.norm(&alpha);
    if q_alpha.sign() <= 0 {
        return Err(TwistorError::AlphaNotPositive);
    }
    // project the basis off alpha; the projections span the 2-plane
    let mut plane_vecs: Vec<FVector> = Vec::new();
    for w in space.basis() {
        let w = w.promote(&field)?;
        let c = &lattice.pair(&w, &alpha) / &q_alpha;
        let u = w.sub(&alpha.scale(&c));
        if u.is_zero() {
            continue;
        }
        let mut trial = plane_vecs.clone();
        trial.push(u);
        if fsolve::rank(&trial) == trial.len() {
            plane_vecs = trial;
        }
        if plane_vecs.len() == 2 {
            break;
        }
    }
    assert_eq!(plane_vecs.len(), 2, "projection of a 3-space off a line is a plane");
    let a = plane_vecs[0].clone();
    let b = plane_vecs[1].clone();
    let point = PeriodPoint::new(lattice, a, b).map_err(|e| match e {
        PeriodError::NotPositive => TwistorError::NotPositiveDefinite,
        _ => TwistorError::Dependent,
    })?;
    // orient: det of (alpha, a, b) written in the stored basis of W
    let a_coords = space
        .coords_in_space(point.a())
        .expect("plane vector lies in W");
    let b_coords = space
        .coords_in_space(point.b())
        .expect("plane vector lies in W");
    let det = det3(&alpha_coords, &a_coords, &b_coords);
    debug_assert!(det.sign() != 0);
    if det.sign() > 0 {
        Ok(point)
    } else {
        Ok(point.conjugate())
    }
}

fn det3(r0: &[Scalar; 3], r1: &[Scalar; 3], r2: &[Scalar; 3]) -> Scalar {
    let t0 = &r0[0] * &(&(&r1[1] * &r2[2]) - &(&r1[2] * &r2[1]));
    let t1 = &r0[1] * &(&(&r1[0] * &r2[2]) - &(&r1[2] * &r2[0]));
    let t2 = &r0[2] * &(&(&r1[0] * &r2[1]) - &(&r1[1] * &r2[0]));
    &(&t0 - &t1) + &t2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::direct_sum;
    use crate::scalar::poly::{rat, rat_int};
    use crate::scalar::NumberFieldSpec;

    fn diag(entries: &[i64]) -> QuadLattice {
        QuadLattice::diagonal(entries).unwrap()
    }

    fn q() -> NumberFieldSpec {
        NumberFieldSpec::rationals()
    }

    #[test]
    fn make_three_space_examples() {
        let l = diag(&[1, 1, 1, -1]);
        let e = |i| FVector::unit(&q(), 4, i);
        let w = ThreeSpace::new(&l, e(0), e(1), e(2)).unwrap();
        assert_eq!(
            w.minors(),
            &[
                Scalar::from_int(&q(), 1),
                Scalar::from_int(&q(), 1),
                Scalar::from_int(&q(), 1)
            ]
        );

        assert_eq!(
            ThreeSpace::new(&l, e(0), e(1), e(3)).unwrap_err(),
            TwistorError::NotPositiveDefinite
        );

        // (e1, e2, e2 + (1/2) e3): minors 1, 1, 1/4
        let mixed = e(1).add(&e(2).scale_rat(&rat(1, 2)));
        let w = ThreeSpace::new(&l, e(0), e(1), mixed).unwrap();
        assert_eq!(w.minors()[2], Scalar::from_rat(&q(), rat(1, 4)));

        assert_eq!(
            ThreeSpace::new(&l, e(0), e(1), e(0).add(&e(1))).unwrap_err(),
            TwistorError::Dependent
        );
    }

    #[test]
    fn rational_spaces_are_never_generic_in_rank_ge_4() {
        let l = diag(&[1, 1, 1, -1]);
        let e = |i| FVector::unit(&q(), 4, i);
        let space = ThreeSpace::new(&l, e(0), e(1), e(2)).unwrap();
        let line = TwistorLine::new(space).check_generic();
        match line.genericity() {
            Genericity::NonGeneric(alpha) => {
                assert_eq!(alpha, &vec![Int::from(0), Int::from(0), Int::from(0), Int::from(1)]);
            }
            other => panic!("expected NonGeneric, got {other:?}"),
        }
    }

    #[test]
    fn generic_witness_on_3u_over_sqrt2() {
        let u = crate::linalg::ZMat::from_i64(&[&[0, 1], &[1, 0]]);
        let u3 = QuadLattice::new(direct_sum(&[&u, &u, &u])).unwrap();
        let f = NumberFieldSpec::sqrt(2).unwrap();
        let t = Scalar::generator(&f);
        let base = [
            FVector::from_ints(&f, &[1, 1, 0, 0, 0, 0]),
            FVector::from_ints(&f, &[0, 0, 1, 1, 0, 0]),
            FVector::from_ints(&f, &[0, 0, 0, 0, 1, 1]),
        ];
        // irrational dust on every coordinate; geometric denominators keep
        // the constraint matrix nonsingular (checked independently)
        let dust = |d0: i64| {
            let coords = (0..6)
                .map(|k| &t * &Scalar::from_rat(&f, rat(1, d0.pow(k as u32 + 1))))
                .collect();
            FVector::new(&f, coords)
        };
        let w1 = base[0].add(&dust(2).scale_rat(&rat(1, 4)));
        let w2 = base[1].add(&dust(3));
        let w3 = base[2].add(&dust(5));
        let space = ThreeSpace::new(&u3, w1, w2, w3).unwrap();
        let line = TwistorLine::new(space.clone()).check_generic();
        match line.genericity() {
            Genericity::Generic(witness) => {
                let c = constraint_matrix(&space);
                assert!(witness.verify(&c));
            }
            Genericity::NonGeneric(v) => panic!("unexpected kernel vector {v:?}"),
            Genericity::Unchecked => unreachable!(),
        }
    }

    #[test]
    fn contains_examples() {
        let l = diag(&[1, 1, 1, -1]);
        let e = |i| FVector::unit(&q(), 4, i);
        let space = ThreeSpace::new(&l, e(0), e(1), e(2)).unwrap();
        let line = TwistorLine::new(space);
        let p = PeriodPoint::new(&l, e(0), e(1)).unwrap();
        assert!(line.contains(&p));
        let p2 = PeriodPoint::new(&l, e(0).add(&e(1)), e(2)).unwrap();
        assert!(line.contains(&p2));
        // conjugates lie on the same line
        assert!(line.contains(&p.conjugate()));
        let outside = PeriodPoint::new(&l, e(0), e(1).add(&e(2)).add(&e(3).scale_rat(&rat(1, 2)))).unwrap();
        assert!(!line.contains(&outside));
    }

    #[test]
    fn common_line_examples() {
        let l = diag(&[1, 1, 1, -1, 1]);
        let e = |i| FVector::unit(&q(), 5, i);
        let x = PeriodPoint::new(&l, e(0), e(1)).unwrap();
        let y = PeriodPoint::new(&l, e(0), e(2)).unwrap();
        match common_line(&x, &y) {
            CommonLine::Line(line) => {
                assert!(line.contains(&x));
                assert!(line.contains(&y));
            }
            other => panic!("expected a line, got {other:?}"),
        }
        // same plane
        match common_line(&x, &x.conjugate()) {
            CommonLine::SamePlane => {}
            other => panic!("expected SamePlane, got {other:?}"),
        }
        // dimension 4 span
        let z = PeriodPoint::new(&l, e(2), e(4)).unwrap();
        match common_line(&x, &z) {
            CommonLine::NoCommonLine => {}
            other => panic!("expected NoCommonLine, got {other:?}"),
        }
    }

    #[test]
    fn sphere_point_examples() {
        let l = diag(&[1, 1, 1, -1]);
        let e = |i| FVector::unit(&q(), 4, i);
        let space = ThreeSpace::new(&l, e(0), e(1), e(2)).unwrap();
        let line = TwistorLine::new(space);

        let p = sphere_point(&line, &e(2)).unwrap();
        // plane <e1, e2> with (e3, a, b) positively oriented
        let expect = PeriodPoint::new(&l, e(0), e(1)).unwrap();
        assert!(p.same_point(&expect));

        let p_neg = sphere_point(&line, &e(2).neg()).unwrap();
        assert!(p.same_plane(&p_neg));
        assert!(!p.same_point(&p_neg));

        // alpha = e1 + e2: the plane orthogonal to it inside W
        let alpha = e(0).add(&e(1));
        let p3 = sphere_point(&line, &alpha).unwrap();
        assert!(l.pair(&alpha, p3.a()).is_zero());
        assert!(l.pair(&alpha, p3.b()).is_zero());
        assert!(line.contains(&p3));

        // errors
        assert_eq!(
            sphere_point(&line, &e(3)).unwrap_err(),
            TwistorError::AlphaNotInW
        );
        let outside_pos = e(0).add(&e(3));
        assert_eq!(
            sphere_point(&line, &outside_pos).unwrap_err(),
            TwistorError::AlphaNotInW
        );
    }

    #[test]
    fn sphere_point_membership_property() {
        let l = diag(&[1, 1, 1, -1]);
        let e = |i| FVector::unit(&q(), 4, i);
        let space = ThreeSpace::new(&l, e(0), e(1), e(2)).unwrap();
        let line = TwistorLine::new(space);
        for alpha in [
            e(0),
            e(1).add(&e(2)),
            e(0).add(&e(1)).add(&e(2).scale_rat(&rat_int(2))),
            e(0).sub(&e(2)),
        ] {
            let p = sphere_point(&line, &alpha).unwrap();
            assert!(line.contains(&p));
        }
    }
}
