//! Global chaining: piecewise-linear interpolation of spanning pairs with
//! bisection and local 3-line chains, rerouted through the lattice's rational
//! positive frame whenever interpolation degenerates. The frame route walks
//! one basis vector at a time between planes that share a positive
//! three-space, so it connects arbitrary points, including conjugate pairs.

use super::{frame_vectors, verify_chain, ChainCertificate, ConnectError, WeakOutcome};
use crate::period::PeriodPoint;
use crate::scalar::{FVector, NumberFieldSpec};
use crate::twistor::{common_line, CommonLine, ThreeSpace, TwistorLine};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn connect_global(
    x: &PeriodPoint,
    y: &PeriodPoint,
    seed: u64,
    max_subdivisions: u32,
) -> Result<ChainCertificate, ConnectError> {
    if x.lattice() != y.lattice() {
        return Err(ConnectError::LatticeMismatch);
    }
    if x.same_point(y) {
        return Ok(ChainCertificate::trivial(x, y));
    }
    let field = FVector::common_field(x.field(), y.field())?;

    // single-line shortcuts
    match common_line(x, y) {
        CommonLine::Line(line) => {
            return Ok(one_step(x, y, line));
        }
        CommonLine::SamePlane => {
            // conjugate orientations: one line through the plane flips them
            if let Some(c) =
                super::find_positive_orthogonal(x.lattice(), &field, &[x.a().clone(), x.b().clone()])
            {
                if let Ok(space) = ThreeSpace::new(
                    x.lattice(),
                    x.a().promote(&field)?,
                    x.b().promote(&field)?,
                    c,
                ) {
                    return Ok(one_step(x, y, TwistorLine::new(space)));
                }
            }
        }
        CommonLine::NoCommonLine => {}
    }

    // piecewise-linear pair interpolation with bisection
    if let Some(cert) = subdivide(x, y, max_subdivisions) {
        return Ok(cert);
    }

    // reroute through the positive coordinate frame
    let fwd = chain_to_frame(x, &field, seed)?;
    let bwd = chain_to_frame(y, &field, seed.wrapping_add(1))?;
    let joined = fwd.concat(reverse_chain(bwd));
    debug_assert!(verify_chain(&joined).ok);
    Ok(joined)
}

fn one_step(x: &PeriodPoint, y: &PeriodPoint, line: TwistorLine) -> ChainCertificate {
    ChainCertificate {
        lattice: x.lattice().clone(),
        endpoints: (x.clone(), y.clone()),
        points: vec![x.clone(), y.clone()],
        lines: vec![line],
        require_generic: vec![false],
        ball: None,
        segments: None,
    }
}

fn reverse_chain(c: ChainCertificate) -> ChainCertificate {
    ChainCertificate {
        lattice: c.lattice,
        endpoints: (c.endpoints.1, c.endpoints.0),
        points: c.points.into_iter().rev().collect(),
        lines: c.lines.into_iter().rev().collect(),
        require_generic: c.require_generic.into_iter().rev().collect(),
        ball: c.ball,
        segments: c.segments.map(|s| {
            s.into_iter()
                .rev()
                .map(|w| super::SegmentWitness {
                    start: w.end,
                    end: w.start,
                })
                .collect()
        }),
    }
}

/// Bisect the straight-line pair path until every consecutive pair is close
/// enough for the 3-line construction. None when an interpolated pair stops
/// being a valid period point or the depth runs out.
fn subdivide(x: &PeriodPoint, y: &PeriodPoint, depth: u32) -> Option<ChainCertificate> {
    match super::connect_weak(x, y).ok()? {
        WeakOutcome::Chain(c) => Some(c),
        WeakOutcome::NotNearEnough => {
            if depth == 0 {
                return None;
            }
            let half = crate::scalar::poly::rat(1, 2);
            let mid_a = x.a().lerp(y.a(), &half);
            let mid_b = x.b().lerp(y.b(), &half);
            let mid = PeriodPoint::new(x.lattice(), mid_a, mid_b).ok()?;
            let left = subdivide(x, &mid, depth - 1)?;
            let right = subdivide(&mid, y, depth - 1)?;
            Some(left.concat(right))
        }
    }
}

/// A chain from x to the canonical frame plane <v1, v2>. Deterministic single
/// hops, each certified by a shared positive three-space:
///   1. bring v3 into the plane (at most two hops),
///   2. walk the companion vector to v1 inside the pivot v3 (at most three
///      hops through the frame plane's positive directions),
///   3. hop from <v3, v1> to <v1, v2>.
fn chain_to_frame(
    x: &PeriodPoint,
    field: &NumberFieldSpec,
    seed: u64,
) -> Result<ChainCertificate, ConnectError> {
    let lattice = x.lattice().clone();
    let [v1, v2, v3] = frame_vectors(&lattice, field)?;
    let mut points = vec![x.clone()];
    let mut lines: Vec<TwistorLine> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // stage 1: a plane containing v3
    let mut guard = 0;
    loop {
        let cur = points.last().unwrap().clone();
        if cur.coords_in_plane(&v3).is_some() {
            break;
        }
        let a = cur.a().promote(field)?;
        let b = cur.b().promote(field)?;
        if let Ok(space) = ThreeSpace::new(&lattice, a.clone(), b.clone(), v3.clone()) {
            // span(P, v3) is positive: hop straight onto a v3-plane
            let next = PeriodPoint::new(&lattice, v3.clone(), a.clone())
                .map_err(|_| ConnectError::SubdivisionBudgetExhausted)?;
            lines.push(TwistorLine::new(space));
            points.push(next);
            break;
        }
        // e in P with Gram(e, v3) positive definite: the in-plane direction
        // orthogonal to the plane-projection of v3
        let alpha = &lattice.pair(&v3, &a) / &lattice.norm(&a);
        let beta = &lattice.pair(&v3, &b) / &lattice.norm(&b);
        let e = if alpha.is_zero() && beta.is_zero() {
            a.clone()
        } else {
            let qa = lattice.norm(&a);
            let qb = lattice.norm(&b);
            a.scale(&(-&(&beta * &qb))).add(&b.scale(&(&alpha * &qa)))
        };
        if let Some(c) = super::find_positive_orthogonal(
            &lattice,
            field,
            &[a.clone(), b.clone(), v3.clone()],
        ) {
            // two hops: <a,b> -> <e,c> inside span(P, c), then <e,c> ->
            // <e,v3> inside span(e, c, v3), positive because c ⊥ {e, v3} and
            // Gram(e, v3) is positive definite by the choice of e
            let s1 = ThreeSpace::new(&lattice, a.clone(), b.clone(), c.clone())
                .map_err(|_| ConnectError::SubdivisionBudgetExhausted)?;
            let p1 = PeriodPoint::new(&lattice, e.clone(), c.clone())
                .map_err(|_| ConnectError::SubdivisionBudgetExhausted)?;
            lines.push(TwistorLine::new(s1));
            points.push(p1.clone());
            let s2 = ThreeSpace::new(&lattice, e.clone(), c.clone(), v3.clone())
                .map_err(|_| ConnectError::SubdivisionBudgetExhausted)?;
            let p2 = PeriodPoint::new(&lattice, v3.clone(), e.clone())
                .map_err(|_| ConnectError::SubdivisionBudgetExhausted)?;
            lines.push(TwistorLine::new(s2));
            points.push(p2);
            break;
        }
        // degenerate span(P, v3): nudge the plane with a fresh positive
        // normal and retry
        guard += 1;
        if guard > 8 {
            return Err(ConnectError::SubdivisionBudgetExhausted);
        }
        let mix = crate::period::random::small_field_vector(&mut rng, field, lattice.rank(), 8);
        let c = super::find_positive_orthogonal(&lattice, field, &[a.clone(), b.clone()])
            .ok_or(ConnectError::NoPositiveThreeSpace)?;
        let c = nudge_positive(&lattice, &c, &mix);
        let Ok(space) = ThreeSpace::new(&lattice, a.clone(), b.clone(), c.clone()) else {
            continue;
        };
        let Ok(next) = PeriodPoint::new(&lattice, a.clone(), c) else {
            continue;
        };
        lines.push(TwistorLine::new(space));
        points.push(next);
    }

    // stage 2: pivot on v3, walking the companion to v1
    let cur = points.last().unwrap().clone();
    let (pa, pb) = cur.spanning_pair();
    // companion: the plane direction orthogonal to v3
    let s0 = {
        let cand = project_off(&lattice, pa, &v3);
        if cand.is_zero() {
            project_off(&lattice, pb, &v3)
        } else {
            cand
        }
    };
    let q1 = lattice.norm(&v1);
    let q2 = lattice.norm(&v2);
    let s0p1 = &lattice.pair(&s0, &v1) / &q1;
    let s0p2 = &lattice.pair(&s0, &v2) / &q2;
    // r: frame-plane direction orthogonal to the frame-plane part of s0
    let r = v1
        .scale(&(-&(&s0p2 * &q2)))
        .add(&v2.scale(&(&s0p1 * &q1)));
    let mut walk: Vec<FVector> = vec![s0.clone()];
    if !r.is_zero() {
        walk.push(r);
    }
    walk.push(v2.clone());
    walk.push(v1.clone());
    // drop consecutive parallels, then hop through span(v3, prev, next)
    for next in walk.into_iter().skip(1) {
        let cur_pt = points.last().unwrap().clone();
        let prev = companion_of(&lattice, &cur_pt, &v3);
        if crate::linalg::fsolve::rank(&[prev.clone(), next.clone()]) < 2 {
            continue;
        }
        let space = ThreeSpace::new(&lattice, v3.clone(), prev.clone(), next.clone())
            .map_err(|_| ConnectError::SubdivisionBudgetExhausted)?;
        let p = PeriodPoint::new(&lattice, v3.clone(), next)
            .map_err(|_| ConnectError::SubdivisionBudgetExhausted)?;
        lines.push(TwistorLine::new(space));
        points.push(p);
    }

    // stage 3: <v3, v1> -> <v1, v2> inside the frame three-space
    let frame_space = ThreeSpace::new(&lattice, v1.clone(), v2.clone(), v3.clone())
        .map_err(|_| ConnectError::NoPositiveThreeSpace)?;
    let goal = PeriodPoint::new(&lattice, v1, v2).map_err(|_| ConnectError::NoPositiveThreeSpace)?;
    if !points.last().unwrap().same_point(&goal) {
        lines.push(TwistorLine::new(frame_space));
        points.push(goal.clone());
    }

    let n = lines.len();
    Ok(ChainCertificate {
        lattice,
        endpoints: (x.clone(), goal),
        points,
        lines,
        require_generic: vec![false; n],
        ball: None,
        segments: None,
    })
}

fn project_off(lattice: &crate::lattice::QuadLattice, v: &FVector, u: &FVector) -> FVector {
    let c = &lattice.pair(v, u) / &lattice.norm(u);
    v.sub(&u.scale(&c))
}

/// The current plane contains the pivot; return its other direction,
/// projected orthogonal to the pivot.
fn companion_of(
    lattice: &crate::lattice::QuadLattice,
    p: &PeriodPoint,
    pivot: &FVector,
) -> FVector {
    let a = project_off(lattice, p.a(), pivot);
    if !a.is_zero() {
        return a;
    }
    project_off(lattice, p.b(), pivot)
}

/// c + small positive-preserving mix: keeps q > 0 by exact re-check, backing
/// off the mix until it does.
fn nudge_positive(
    lattice: &crate::lattice::QuadLattice,
    c: &FVector,
    mix: &FVector,
) -> FVector {
    let mut scale = crate::scalar::poly::rat(1, 4);
    for _ in 0..12 {
        let cand = c.add(&mix.scale_rat(&scale));
        if lattice.norm(&cand).sign() > 0 {
            return cand;
        }
        scale = scale / crate::scalar::poly::rat_int(2);
    }
    c.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{direct_sum, QuadLattice};
    use crate::linalg::ZMat;
    use crate::scalar::poly::rat;

    fn diag4() -> QuadLattice {
        QuadLattice::diagonal(&[1, 1, 1, -1]).unwrap()
    }

    fn q() -> NumberFieldSpec {
        NumberFieldSpec::rationals()
    }

    #[test]
    fn connects_identical_and_nearby() {
        let l = diag4();
        let x = PeriodPoint::new(&l, FVector::unit(&q(), 4, 0), FVector::unit(&q(), 4, 1)).unwrap();
        let c = connect_global(&x, &x, 0, 8).unwrap();
        assert!(c.is_empty());
        let y = PeriodPoint::new(
            &l,
            FVector::unit(&q(), 4, 0),
            FVector::unit(&q(), 4, 1).add(&FVector::unit(&q(), 4, 2).scale_rat(&rat(1, 10))),
        )
        .unwrap();
        let c = connect_global(&x, &y, 0, 8).unwrap();
        let report = verify_chain(&c);
        assert!(report.ok, "{:?}", report.conditions.iter().filter(|x| !x.ok).collect::<Vec<_>>());
    }

    #[test]
    fn connects_conjugate_pair() {
        let l = diag4();
        let x = PeriodPoint::new(&l, FVector::unit(&q(), 4, 0), FVector::unit(&q(), 4, 1)).unwrap();
        let c = connect_global(&x, &x.conjugate(), 3, 8).unwrap();
        assert!(!c.is_empty());
        let report = verify_chain(&c);
        assert!(report.ok, "{:?}", report.conditions.iter().filter(|x| !x.ok).collect::<Vec<_>>());
        assert!(c.points[0].same_point(&x));
        assert!(c.points.last().unwrap().same_point(&x.conjugate()));
    }

    #[test]
    fn connects_far_apart_planes_in_3u() {
        let u = ZMat::from_i64(&[&[0, 1], &[1, 0]]);
        let l = QuadLattice::new(direct_sum(&[&u, &u, &u])).unwrap();
        let x = PeriodPoint::new(
            &l,
            FVector::from_ints(&q(), &[1, 1, 0, 0, 0, 0]),
            FVector::from_ints(&q(), &[0, 0, 1, 1, 0, 0]),
        )
        .unwrap();
        // a plane oriented mostly along the third U and twisted signs
        let y = PeriodPoint::new(
            &l,
            FVector::from_ints(&q(), &[0, 0, 1, 1, 2, 2]),
            FVector::from_ints(&q(), &[-1, -1, 0, 0, 3, 3]),
        )
        .unwrap();
        let c = connect_global(&x, &y, 11, 8).unwrap();
        let report = verify_chain(&c);
        assert!(report.ok, "{:?}", report.conditions.iter().filter(|x| !x.ok).collect::<Vec<_>>());
    }

    #[test]
    fn frame_route_is_sound_directly() {
        let l = diag4();
        // a plane with reversed-orientation frame coordinates forces the
        // frame route end to end
        let x = PeriodPoint::new(
            &l,
            FVector::from_ints(&q(), &[0, 1, 0, 0]),
            FVector::from_ints(&q(), &[1, 0, 0, 0]),
        )
        .unwrap();
        let f = q();
        let half = chain_to_frame(&x, &f, 5).unwrap();
        let report = verify_chain(&half);
        assert!(report.ok, "{:?}", report.conditions.iter().filter(|x| !x.ok).collect::<Vec<_>>());
    }
}
