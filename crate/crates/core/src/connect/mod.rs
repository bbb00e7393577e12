//! Constructive chain connectivity in the period domain: 3-line chains for
//! nearby points, 4-generic-line chains inside balls, globalization through a
//! rational positive frame, boundary lines, and a verifier that re-checks
//! every certificate condition from scratch.

pub mod boundary;
pub mod global;
pub mod strong;
pub mod verify;
pub mod weak;

use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::lattice::QuadLattice;
use crate::linalg::fsolve;
use crate::period::PeriodPoint;
use crate::scalar::{FVector, NumberFieldSpec, Scalar};
use crate::twistor::TwistorLine;

pub use boundary::{boundary_line, BoundaryLine};
pub use global::connect_global;
pub use strong::connect_strong_in_ball;
pub use verify::{verify_chain, VerifyReport};
pub use weak::{connect_weak, WeakOutcome};

type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConnectError {
    #[error("points live in different lattices")]
    LatticeMismatch,
    #[error("operands live in incompatible number fields")]
    FieldMismatch,
    #[error("the lattice does not have three positive directions")]
    NoPositiveThreeSpace,
    #[error("point is not inside the ball")]
    PointNotInBall,
    #[error("point is not on the ball boundary")]
    PointNotOnBoundary,
    #[error("point lies outside the closed ball")]
    PointOutsideBall,
    #[error("field degree too small: need 3*deg >= rank for generic lines")]
    FieldDegreeTooSmall,
    #[error("budget exhausted after {0} attempts")]
    BudgetExhausted(u32),
    #[error("subdivision budget exhausted")]
    SubdivisionBudgetExhausted,
    #[error("points are not near enough for the local construction")]
    NotNearEnough,
}

impl From<crate::scalar::FieldError> for ConnectError {
    fn from(_: crate::scalar::FieldError) -> Self {
        ConnectError::FieldMismatch
    }
}

/// A max-norm ball of spanning pairs around the designated representative of
/// the center: (a', b') is inside when both components are strictly within
/// radius of (a0, b0) coordinatewise. Membership depends on the designated
/// representative, never on the plane alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    center: PeriodPoint,
    radius: Rat,
}

impl Ball {
    pub fn new(center: PeriodPoint, radius: Rat) -> Self {
        assert!(radius.is_positive(), "ball radius must be positive");
        Ball { center, radius }
    }

    pub fn center(&self) -> &PeriodPoint {
        &self.center
    }

    pub fn radius(&self) -> &Rat {
        &self.radius
    }

    pub fn contains_pair(&self, a: &FVector, b: &FVector) -> bool {
        a.max_dist_lt(self.center.a(), &self.radius)
            && b.max_dist_lt(self.center.b(), &self.radius)
    }

    /// Membership of a point through its designated (stored) pair.
    pub fn contains_point(&self, p: &PeriodPoint) -> bool {
        self.contains_pair(p.a(), p.b())
    }

    /// Closed-ball membership.
    pub fn contains_pair_closed(&self, a: &FVector, b: &FVector) -> bool {
        a.max_dist_le(self.center.a(), &self.radius)
            && b.max_dist_le(self.center.b(), &self.radius)
    }

    /// On the boundary: inside the closed ball with at least one coordinate
    /// bound tight.
    pub fn pair_on_boundary(&self, a: &FVector, b: &FVector) -> bool {
        self.contains_pair_closed(a, b) && !self.contains_pair(a, b)
    }
}

/// An affine path of spanning pairs between two chain points, staying inside
/// one line: (start.0 + t (end.0 - start.0), start.1 + t (end.1 - start.1)),
/// t in [0, 1]. Construction keeps one component constant so the
/// nondegeneracy of the moving pair is decidable by affine minors; ball
/// containment of the whole segment follows from the endpoints (plus the
/// midpoint re-check) by convexity of the max-norm ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentWitness {
    pub start: (FVector, FVector),
    pub end: (FVector, FVector),
}

/// A verified-construction artifact: points x1..x_{k+1}, lines T1..Tk with
/// x_i, x_{i+1} on T_i, per-line genericity requirements, and optional ball
/// data with per-step segment witnesses. All claims are re-checkable by
/// `verify_chain` with no shared state.
#[derive(Clone, Debug)]
pub struct ChainCertificate {
    pub lattice: QuadLattice,
    pub endpoints: (PeriodPoint, PeriodPoint),
    pub points: Vec<PeriodPoint>,
    pub lines: Vec<TwistorLine>,
    pub require_generic: Vec<bool>,
    pub ball: Option<Ball>,
    pub segments: Option<Vec<SegmentWitness>>,
}

impl ChainCertificate {
    /// The length-0 chain for x = y.
    pub fn trivial(x: &PeriodPoint, y: &PeriodPoint) -> Self {
        ChainCertificate {
            lattice: x.lattice().clone(),
            endpoints: (x.clone(), y.clone()),
            points: vec![x.clone()],
            lines: vec![],
            require_generic: vec![],
            ball: None,
            segments: None,
        }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Concatenate two chains sharing an endpoint. Ball data survives only
    /// when both sides carry the same ball.
    pub fn concat(mut self, other: ChainCertificate) -> ChainCertificate {
        assert!(
            self.points
                .last()
                .expect("chains are never empty of points")
                .same_point(&other.points[0]),
            "chain concatenation endpoints do not match"
        );
        self.points.extend(other.points.into_iter().skip(1));
        self.lines.extend(other.lines);
        self.require_generic.extend(other.require_generic);
        self.endpoints.1 = other.endpoints.1;
        match (&mut self.segments, other.segments) {
            (Some(a), Some(b)) => a.extend(b),
            (a, _) => *a = None,
        }
        if self.ball != other.ball {
            self.ball = None;
            self.segments = None;
        }
        self
    }
}

/// A positive vector exactly q-orthogonal to all constraints, if one exists:
/// the nullspace of the pairing map is diagonalized and a positive direction
/// returned. With k constraints in a signature-(3, n) lattice this cannot
/// fail for k <= 2 (restriction kills at most one positive dimension per
/// constraint).
pub fn find_positive_orthogonal(
    lattice: &QuadLattice,
    field: &NumberFieldSpec,
    constraints: &[FVector],
) -> Option<FVector> {
    let b = lattice.rank();
    // rows of the pairing map v -> q(v, c_i)
    let rows: Vec<FVector> = constraints
        .iter()
        .map(|c| {
            let coords: Vec<Scalar> = (0..b)
                .map(|j| {
                    let e = FVector::unit(field, b, j);
                    lattice.pair(&e, c)
                })
                .collect();
            FVector::new(field, coords)
        })
        .collect();
    let kernel = fsolve::nullspace(&rows);
    if kernel.is_empty() {
        return None;
    }
    // direct hit
    for v in &kernel {
        if lattice.norm(v).sign() > 0 {
            return Some(v.clone());
        }
    }
    // diagonalize q on the kernel and scan the diagonal directions
    let mut basis: Vec<FVector> = Vec::new();
    for v in &kernel {
        let mut w = v.clone();
        for u in &basis {
            let qu = lattice.norm(u);
            if qu.is_zero() {
                continue;
            }
            let c = &lattice.pair(&w, u) / &qu;
            w = w.sub(&u.scale(&c));
        }
        if !w.is_zero() {
            if lattice.norm(&w).sign() > 0 {
                return Some(w);
            }
            basis.push(w);
        }
    }
    // isotropic leftovers: pair them up to manufacture a positive direction
    let nulls: Vec<&FVector> = basis
        .iter()
        .filter(|w| lattice.norm(w).is_zero())
        .collect();
    for (i, u) in nulls.iter().enumerate() {
        for v in nulls.iter().skip(i + 1) {
            let p = lattice.pair(u, v);
            match p.sign() {
                1 => return Some(u.add(v)),
                -1 => return Some(u.sub(v)),
                _ => {}
            }
        }
    }
    None
}

/// The lattice's rational positive frame lifted into a field.
pub fn frame_vectors(
    lattice: &QuadLattice,
    field: &NumberFieldSpec,
) -> Result<[FVector; 3], ConnectError> {
    let frame = lattice.positive_frame();
    if frame.len() < 3 {
        return Err(ConnectError::NoPositiveThreeSpace);
    }
    Ok([
        FVector::from_bigints(field, &frame[0]),
        FVector::from_bigints(field, &frame[1]),
        FVector::from_bigints(field, &frame[2]),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::QuadLattice;
    use crate::scalar::poly::rat;

    #[test]
    fn ball_membership() {
        let l = QuadLattice::diagonal(&[1, 1, 1, -1]).unwrap();
        let q = NumberFieldSpec::rationals();
        let center = PeriodPoint::new(
            &l,
            FVector::unit(&q, 4, 0),
            FVector::unit(&q, 4, 1),
        )
        .unwrap();
        let ball = Ball::new(center.clone(), rat(1, 4));
        assert!(ball.contains_point(&center));
        // shift within radius
        let a = FVector::from_rats(&q, &[rat(1, 1), rat(0, 1), rat(1, 8), rat(0, 1)]);
        assert!(ball.contains_pair(&a, center.b()));
        // boundary: one coordinate exactly at the radius
        let bd = FVector::from_rats(&q, &[rat(1, 1), rat(0, 1), rat(1, 4), rat(0, 1)]);
        assert!(ball.pair_on_boundary(&bd, center.b()));
        assert!(!ball.contains_pair(&bd, center.b()));
        // outside
        let out = FVector::from_rats(&q, &[rat(1, 1), rat(0, 1), rat(1, 2), rat(0, 1)]);
        assert!(!ball.contains_pair_closed(&out, center.b()));
    }

    #[test]
    fn positive_orthogonal_under_two_constraints() {
        let l = QuadLattice::diagonal(&[1, 1, 1, -1, -1]).unwrap();
        let q = NumberFieldSpec::rationals();
        let a = FVector::unit(&q, 5, 0);
        let b = FVector::from_ints(&q, &[0, 1, 1, 1, 0]);
        let w = find_positive_orthogonal(&l, &q, &[a.clone(), b.clone()]).unwrap();
        assert!(l.norm(&w).sign() > 0);
        assert!(l.pair(&w, &a).is_zero());
        assert!(l.pair(&w, &b).is_zero());
    }

    #[test]
    fn positive_orthogonal_in_hyperbolic_kernel() {
        // kernel of one constraint in 2U: contains positive vectors only as
        // combinations of isotropic ones
        let u = crate::linalg::ZMat::from_i64(&[&[0, 1], &[1, 0]]);
        let l = QuadLattice::new(crate::lattice::direct_sum(&[&u, &u])).unwrap();
        let q = NumberFieldSpec::rationals();
        let c = FVector::from_ints(&q, &[1, -1, 0, 0]);
        let w = find_positive_orthogonal(&l, &q, &[c.clone()]).unwrap();
        assert!(l.norm(&w).sign() > 0);
        assert!(l.pair(&w, &c).is_zero());
    }
}
