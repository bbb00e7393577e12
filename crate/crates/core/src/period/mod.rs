//! Period points: oriented positive 2-planes in Λ⊗R with field coordinates,
//! their Picard lattices, genericity, the isometry action, and positive-cone
//! membership.

pub mod random;

use thiserror::Error;

use crate::lattice::{LatticeIsometry, QuadLattice, Sublattice};
use crate::linalg::fsolve;
use crate::scalar::{FVector, FieldError, NumberFieldSpec, Scalar};

pub use random::{random_generic_period, RandomPeriod};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PeriodError {
    #[error("plane is not positive definite: input is not a period point")]
    NotPositive,
    #[error("spanning vectors are linearly dependent")]
    DependentSpan,
    #[error("vector length does not match lattice rank")]
    RankMismatch,
    #[error("operands live in incompatible number fields")]
    FieldMismatch,
    #[error("vector is not orthogonal to the period plane")]
    NotOrthogonal,
    #[error("reference vector does not select a cone component (q <= 0)")]
    BadReference,
    #[error("retry budget exhausted after {0} attempts")]
    BudgetExhausted(u32),
}

impl From<FieldError> for PeriodError {
    fn from(_: FieldError) -> Self {
        PeriodError::FieldMismatch
    }
}

/// An oriented positive 2-plane spanned by the ordered pair (a, b), stored
/// with q(a, b) = 0 (exact orthogonalization at construction). The ordered
/// pair fixes the orientation: (a, b) and (b, a) are conjugate points. Norms
/// q(a) and q(b) are positive but need not be equal; equality of points is
/// tested at plane level, so the square roots that would equalize them are
/// never needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodPoint {
    lattice: QuadLattice,
    a: FVector,
    b: FVector,
}

impl PeriodPoint {
    /// Build the oriented plane <a, b> after exact Gram–Schmidt
    /// b <- b - (q(a,b)/q(a,a)) a. Fails with NotPositive when the plane is
    /// not positive definite and DependentSpan when a, b do not span a plane.
    pub fn new(lattice: &QuadLattice, a: FVector, b: FVector) -> Result<Self, PeriodError> {
        if a.len() != lattice.rank() || b.len() != lattice.rank() {
            return Err(PeriodError::RankMismatch);
        }
        let field = FVector::common_field(a.field(), b.field())?;
        let a = a.promote(&field)?;
        let b = b.promote(&field)?;
        if a.is_zero() || b.is_zero() {
            return Err(PeriodError::DependentSpan);
        }
        let qa = lattice.norm(&a);
        if qa.sign() <= 0 {
            return Err(PeriodError::NotPositive);
        }
        let qab = lattice.pair(&a, &b);
        let b_orth = b.sub(&a.scale(&(&qab / &qa)));
        if b_orth.is_zero() {
            return Err(PeriodError::DependentSpan);
        }
        if lattice.norm(&b_orth).sign() <= 0 {
            return Err(PeriodError::NotPositive);
        }
        Ok(PeriodPoint {
            lattice: lattice.clone(),
            a,
            b: b_orth,
        })
    }

    pub fn lattice(&self) -> &QuadLattice {
        &self.lattice
    }

    pub fn field(&self) -> &NumberFieldSpec {
        self.a.field()
    }

    pub fn a(&self) -> &FVector {
        &self.a
    }

    pub fn b(&self) -> &FVector {
        &self.b
    }

    pub fn spanning_pair(&self) -> (&FVector, &FVector) {
        (&self.a, &self.b)
    }

    /// The conjugate period: same plane, opposite orientation.
    pub fn conjugate(&self) -> PeriodPoint {
        PeriodPoint {
            lattice: self.lattice.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// Equality as oriented planes: spans agree and the change of basis has
    /// positive determinant.
    pub fn same_point(&self, other: &PeriodPoint) -> bool {
        if self.lattice != other.lattice {
            return false;
        }
        let Some((alpha, beta)) = self.coords_in_plane(&other.a) else {
            return false;
        };
        let Some((gamma, delta)) = self.coords_in_plane(&other.b) else {
            return false;
        };
        let det = &(&alpha * &delta) - &(&beta * &gamma);
        det.sign() > 0
    }

    /// Same plane regardless of orientation.
    pub fn same_plane(&self, other: &PeriodPoint) -> bool {
        self.lattice == other.lattice
            && self.coords_in_plane(&other.a).is_some()
            && self.coords_in_plane(&other.b).is_some()
    }

    /// Exact coordinates of v in the stored orthogonal basis (a, b), or None
    /// if v is outside the plane. Projection coefficients are verified by
    /// reconstruction, so the answer is exact.
    pub fn coords_in_plane(&self, v: &FVector) -> Option<(Scalar, Scalar)> {
        let field = FVector::common_field(self.field(), v.field()).ok()?;
        let v = v.promote(&field).ok()?;
        let a = self.a.promote(&field).ok()?;
        let b = self.b.promote(&field).ok()?;
        let alpha = &self.lattice.pair(&v, &a) / &self.lattice.norm(&a);
        let beta = &self.lattice.pair(&v, &b) / &self.lattice.norm(&b);
        let recon = a.scale(&alpha).add(&b.scale(&beta));
        if recon == v {
            Some((alpha, beta))
        } else {
            None
        }
    }

    /// Λ ∩ P(x)^⊥: the integral classes orthogonal to the plane. Its rank is
    /// the Picard rank of the period.
    pub fn picard_lattice(&self) -> Sublattice {
        self.lattice
            .integral_kernel(&[self.a.clone(), self.b.clone()])
            .expect("period vectors match lattice rank")
    }

    pub fn picard_rank(&self) -> usize {
        self.picard_lattice().rank()
    }

    /// A period is generic when no nonzero lattice vector is orthogonal to
    /// its plane.
    pub fn is_generic(&self) -> bool {
        self.picard_rank() == 0
    }

    /// Image under an isometry: positivity is automatic, orientation is
    /// carried by the ordered images.
    pub fn act(&self, phi: &LatticeIsometry) -> Result<PeriodPoint, PeriodError> {
        if phi.lattice() != &self.lattice {
            return Err(PeriodError::RankMismatch);
        }
        let a = phi.apply(&self.a);
        let b = phi.apply(&self.b);
        debug_assert!(self.lattice.pair(&a, &b).is_zero());
        Ok(PeriodPoint {
            lattice: self.lattice.clone(),
            a,
            b,
        })
    }

    /// Display-only float rendering of the projective period
    /// [sqrt(q(b)) a + i sqrt(q(a)) b].
    pub fn display_floats(&self) -> (Vec<f64>, Vec<f64>) {
        let qa = self.lattice.norm(&self.a).to_f64().max(0.0).sqrt();
        let qb = self.lattice.norm(&self.b).to_f64().max(0.0).sqrt();
        let re: Vec<f64> = self.a.to_f64().iter().map(|c| c * qb).collect();
        let im: Vec<f64> = self.b.to_f64().iter().map(|c| c * qa).collect();
        (re, im)
    }
}

/// One connected component of {v in P(x)^⊥ : q(v) > 0}, selected by a
/// reference vector. The plane is optional: chamber computations in a
/// hyperbolic lattice (e.g. a Picard lattice standing on its own, where no
/// positive plane exists) use the cone of the full lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveConeRef {
    lattice: QuadLattice,
    plane: Option<PeriodPoint>,
    ref_vector: FVector,
}

impl PositiveConeRef {
    pub fn new(
        lattice: &QuadLattice,
        plane: Option<PeriodPoint>,
        ref_vector: FVector,
    ) -> Result<Self, PeriodError> {
        if ref_vector.len() != lattice.rank() {
            return Err(PeriodError::RankMismatch);
        }
        if let Some(p) = &plane {
            if !lattice.pair(&ref_vector, p.a()).is_zero()
                || !lattice.pair(&ref_vector, p.b()).is_zero()
            {
                return Err(PeriodError::NotOrthogonal);
            }
        }
        if lattice.norm(&ref_vector).sign() <= 0 {
            return Err(PeriodError::BadReference);
        }
        Ok(PositiveConeRef {
            lattice: lattice.clone(),
            plane,
            ref_vector,
        })
    }

    pub fn lattice(&self) -> &QuadLattice {
        &self.lattice
    }

    pub fn plane(&self) -> Option<&PeriodPoint> {
        self.plane.as_ref()
    }

    pub fn ref_vector(&self) -> &FVector {
        &self.ref_vector
    }

    /// Membership in the selected component: q(v) > 0 and q(v, ref) > 0.
    /// Valid because the q > 0 locus of a signature-(1, k) space has exactly
    /// two components separated by the sign of the pairing with any fixed
    /// positive vector. Requires v ⊥ plane when a plane is present.
    pub fn contains(&self, v: &FVector) -> Result<bool, PeriodError> {
        if v.len() != self.lattice.rank() {
            return Err(PeriodError::RankMismatch);
        }
        if let Some(p) = &self.plane {
            if !self.lattice.pair(v, p.a()).is_zero() || !self.lattice.pair(v, p.b()).is_zero() {
                return Err(PeriodError::NotOrthogonal);
            }
        }
        Ok(self.lattice.norm(v).sign() > 0
            && self.lattice.pair(v, &self.ref_vector).sign() > 0)
    }
}

/// Project v q-orthogonally onto the complement of the plane of `p`.
pub fn project_off_plane(p: &PeriodPoint, v: &FVector) -> FVector {
    let field = FVector::common_field(p.field(), v.field()).expect("mixed fields");
    let v = v.promote(&field).unwrap();
    let a = p.a().promote(&field).unwrap();
    let b = p.b().promote(&field).unwrap();
    let l = p.lattice();
    let ca = &l.pair(&v, &a) / &l.norm(&a);
    let cb = &l.pair(&v, &b) / &l.norm(&b);
    v.sub(&a.scale(&ca)).sub(&b.scale(&cb))
}

/// A positive direction in P(x)^⊥, constructed by projecting the lattice's
/// rational positive frame off the plane and diagonalizing the projected
/// span. Always exists: the orthogonal complement of a positive plane in
/// signature (3, n) has signature (1, n).
pub fn positive_normal(p: &PeriodPoint) -> FVector {
    let l = p.lattice();
    let field = p.field();
    let frame = l.positive_frame();
    let projected: Vec<FVector> = frame
        .iter()
        .map(|u| project_off_plane(p, &FVector::from_bigints(field, u)))
        .filter(|w| !w.is_zero())
        .collect();
    // a positive projection often appears directly
    for w in &projected {
        if l.norm(w).sign() > 0 {
            return w.clone();
        }
    }
    // otherwise diagonalize q on the projected span and take a positive
    // direction; existence: P + span(frame) has at least 3 positive
    // directions, so the projected span carries at least one
    let indep = independent_subset(&projected);
    let combos = gram_schmidt_directions(l, &indep);
    for w in combos {
        if l.norm(&w).sign() > 0 {
            return w;
        }
    }
    unreachable!("positive complement direction must exist in signature (3, n)")
}

fn independent_subset(vectors: &[FVector]) -> Vec<FVector> {
    let mut out: Vec<FVector> = Vec::new();
    for v in vectors {
        let mut trial = out.clone();
        trial.push(v.clone());
        if fsolve::rank(&trial) == trial.len() {
            out = trial;
        }
    }
    out
}

/// q-orthogonalize a family inside its span (plain Gram–Schmidt with exact
/// division; directions with q = 0 are passed through unnormalized).
fn gram_schmidt_directions(l: &QuadLattice, vectors: &[FVector]) -> Vec<FVector> {
    let mut basis: Vec<FVector> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for u in &basis {
            let qu = l.norm(u);
            if qu.is_zero() {
                continue;
            }
            let c = &l.pair(&w, u) / &qu;
            w = w.sub(&u.scale(&c));
        }
        if !w.is_zero() {
            basis.push(w);
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_catalog, CatalogKind};
    use crate::linalg::ZMat;
    use crate::scalar::poly::rat_int;

    fn diag4() -> QuadLattice {
        QuadLattice::diagonal(&[1, 1, 1, -1]).unwrap()
    }

    fn q() -> NumberFieldSpec {
        NumberFieldSpec::rationals()
    }

    #[test]
    fn make_period_examples() {
        let l = diag4();
        let a = FVector::unit(&q(), 4, 0);
        let b = FVector::unit(&q(), 4, 1);
        assert!(PeriodPoint::new(&l, a.clone(), b.clone()).is_ok());

        let e4 = FVector::unit(&q(), 4, 3);
        assert_eq!(
            PeriodPoint::new(&l, a.clone(), e4).unwrap_err(),
            PeriodError::NotPositive
        );

        // Gram-Schmidt: b = e1 + e2 orthogonalizes to e2
        let b2 = a.add(&b);
        let p = PeriodPoint::new(&l, a.clone(), b2).unwrap();
        assert_eq!(p.b(), &b);

        assert_eq!(
            PeriodPoint::new(&l, a.clone(), a.scale_rat(&rat_int(3))).unwrap_err(),
            PeriodError::DependentSpan
        );
    }

    #[test]
    fn same_point_examples() {
        let l = diag4();
        let a = FVector::unit(&q(), 4, 0);
        let b = FVector::unit(&q(), 4, 1);
        let p = PeriodPoint::new(&l, a.clone(), b.clone()).unwrap();
        assert!(p.same_point(&p));
        // conjugate has the same plane, opposite orientation
        let conj = p.conjugate();
        assert!(!p.same_point(&conj));
        assert!(p.same_plane(&conj));
        // positive rescaling preserves the point
        let p2 = PeriodPoint::new(&l, a.scale_rat(&rat_int(2)), b.scale_rat(&rat_int(3))).unwrap();
        assert!(p.same_point(&p2));
        // flipping twice returns the original
        assert!(p.same_point(&p.conjugate().conjugate()));
    }

    #[test]
    fn same_point_on_unorthogonalized_input_span() {
        let l = diag4();
        let a = FVector::unit(&q(), 4, 0);
        let raw_b = FVector::from_ints(&q(), &[1, 2, 0, 0]);
        let p = PeriodPoint::new(&l, a.clone(), raw_b.clone()).unwrap();
        // the plane through the raw input pair is the same oriented plane
        let p_raw = PeriodPoint::new(&l, a, raw_b).unwrap();
        assert!(p.same_point(&p_raw));
    }

    #[test]
    fn picard_examples() {
        let l = diag4();
        let p = PeriodPoint::new(
            &l,
            FVector::unit(&q(), 4, 0),
            FVector::unit(&q(), 4, 1),
        )
        .unwrap();
        let pic = p.picard_lattice();
        assert_eq!(pic.rank(), 2); // {e3, e4}
        assert!(!p.is_generic());

        let k3 = make_catalog(&CatalogKind::K3).unwrap();
        let mut a = vec![0i64; 22];
        a[16] = 1;
        a[17] = 1;
        let mut b = vec![0i64; 22];
        b[18] = 1;
        b[19] = 1;
        let p = PeriodPoint::new(
            &k3,
            FVector::from_ints(&q(), &a),
            FVector::from_ints(&q(), &b),
        )
        .unwrap();
        assert_eq!(p.picard_rank(), 20);
    }

    #[test]
    fn act_examples() {
        let l = diag4();
        let p = PeriodPoint::new(
            &l,
            FVector::unit(&q(), 4, 0),
            FVector::unit(&q(), 4, 1),
        )
        .unwrap();
        let id = LatticeIsometry::identity(&l);
        assert!(p.act(&id).unwrap().same_point(&p));
        // -id maps (a, b) to (-a, -b): change of basis -I has det +1
        let neg = LatticeIsometry::neg_identity(&l);
        assert!(p.act(&neg).unwrap().same_point(&p));
        // an isometry swapping e1, e2 maps the plane to itself, orientation
        // reversed
        let swap = LatticeIsometry::new(
            &l,
            ZMat::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
        )
        .unwrap();
        let swapped = p.act(&swap).unwrap();
        assert!(p.same_plane(&swapped));
        assert!(!p.same_point(&swapped));
    }

    #[test]
    fn act_preserves_picard_rank() {
        let l = diag4();
        let p = PeriodPoint::new(
            &l,
            FVector::from_ints(&q(), &[2, 1, 0, 0]),
            FVector::from_ints(&q(), &[0, 1, 1, 0]),
        )
        .unwrap();
        let neg = LatticeIsometry::neg_identity(&l);
        assert_eq!(p.act(&neg).unwrap().picard_rank(), p.picard_rank());
    }

    #[test]
    fn positive_cone_membership() {
        let l = diag4();
        let p = PeriodPoint::new(
            &l,
            FVector::unit(&q(), 4, 0),
            FVector::unit(&q(), 4, 1),
        )
        .unwrap();
        let r = FVector::unit(&q(), 4, 2);
        let cone = PositiveConeRef::new(&l, Some(p), r.clone()).unwrap();
        assert!(cone.contains(&r).unwrap());
        assert!(!cone.contains(&r.neg()).unwrap());
        // q(v) < 0: not in any component
        let v = FVector::unit(&q(), 4, 3);
        assert!(!cone.contains(&v).unwrap());
        // non-orthogonal vector is a precondition error
        let bad = FVector::unit(&q(), 4, 0);
        assert_eq!(cone.contains(&bad).unwrap_err(), PeriodError::NotOrthogonal);
    }

    #[test]
    fn positive_normal_is_positive_and_orthogonal() {
        let k3 = make_catalog(&CatalogKind::K3).unwrap();
        let mut a = vec![0i64; 22];
        a[16] = 1;
        a[17] = 1;
        let mut b = vec![0i64; 22];
        b[18] = 1;
        b[19] = 1;
        let p = PeriodPoint::new(
            &k3,
            FVector::from_ints(&q(), &a),
            FVector::from_ints(&q(), &b),
        )
        .unwrap();
        let w = positive_normal(&p);
        assert!(k3.norm(&w).sign() > 0);
        assert!(k3.pair(&w, p.a()).is_zero());
        assert!(k3.pair(&w, p.b()).is_zero());
    }
}
