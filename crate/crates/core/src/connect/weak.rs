//! The local 3-line chain: spaces <a,b,c>, <a,b',c>, <a',b',c> through the
//! points <a,b>, <a,c>, <b',c>, <a',b'>, with c a positive direction
//! orthogonal to the first plane. When no candidate c keeps all three spaces
//! positive the points are not near enough and the caller subdivides.

use super::{find_positive_orthogonal, ChainCertificate, ConnectError};
use crate::period::{project_off_plane, PeriodPoint};
use crate::scalar::FVector;
use crate::twistor::{ThreeSpace, TwistorLine};

#[derive(Debug)]
pub enum WeakOutcome {
    Chain(ChainCertificate),
    /// A value, not a fault: some required three-space failed positivity.
    NotNearEnough,
}

pub fn connect_weak(x: &PeriodPoint, y: &PeriodPoint) -> Result<WeakOutcome, ConnectError> {
    if x.lattice() != y.lattice() {
        return Err(ConnectError::LatticeMismatch);
    }
    if x.same_point(y) {
        return Ok(WeakOutcome::Chain(ChainCertificate::trivial(x, y)));
    }
    let lattice = x.lattice().clone();
    let field = FVector::common_field(x.field(), y.field())?;
    let a = x.a().promote(&field)?;
    let b = x.b().promote(&field)?;
    let a2 = y.a().promote(&field)?;
    let b2 = y.b().promote(&field)?;

    for c in candidate_normals(x, &field) {
        let Ok(t1) = ThreeSpace::new(&lattice, a.clone(), b.clone(), c.clone()) else {
            continue;
        };
        let Ok(t2) = ThreeSpace::new(&lattice, a.clone(), b2.clone(), c.clone()) else {
            continue;
        };
        let Ok(t3) = ThreeSpace::new(&lattice, a2.clone(), b2.clone(), c.clone()) else {
            continue;
        };
        // chain points; c ⊥ a exactly, so <a, c> keeps its raw pair
        let Ok(x2) = PeriodPoint::new(&lattice, a.clone(), c.clone()) else {
            continue;
        };
        let Ok(x3) = PeriodPoint::new(&lattice, b2.clone(), c.clone()) else {
            continue;
        };
        let cert = ChainCertificate {
            lattice: lattice.clone(),
            endpoints: (x.clone(), y.clone()),
            points: vec![x.clone(), x2, x3, y.clone()],
            lines: vec![
                TwistorLine::new(t1),
                TwistorLine::new(t2),
                TwistorLine::new(t3),
            ],
            require_generic: vec![false, false, false],
            ball: None,
            segments: None,
        };
        return Ok(WeakOutcome::Chain(cert));
    }
    Ok(WeakOutcome::NotNearEnough)
}

/// Positive directions orthogonal to the plane of x: the exact orthogonal
/// solver first, then positive projections of the rational frame, scaled
/// small.
pub fn candidate_normals(x: &PeriodPoint, field: &crate::scalar::NumberFieldSpec) -> Vec<FVector> {
    let lattice = x.lattice();
    let mut out: Vec<FVector> = Vec::new();
    if let Some(c) = find_positive_orthogonal(lattice, field, &[x.a().clone(), x.b().clone()]) {
        out.push(c);
    }
    let frame = lattice.positive_frame();
    let lifted: Vec<FVector> = frame
        .iter()
        .map(|v| FVector::from_bigints(field, v))
        .collect();
    for v in &lifted {
        let p = project_off_plane(x, v);
        if !p.is_zero() && lattice.norm(&p).sign() > 0 {
            out.push(p);
        }
    }
    for (i, v) in lifted.iter().enumerate() {
        for w in lifted.iter().skip(i + 1) {
            let p = project_off_plane(x, &v.add(w));
            if !p.is_zero() && lattice.norm(&p).sign() > 0 {
                out.push(p);
            }
        }
    }
    out
}
