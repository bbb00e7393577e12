//! The in-ball strong chain: four generic lines <a,b,c>, <a,b',c>, <a,b',d>,
//! <a',b',d> through <a,b>, <a,c>, <a,b'>, <d,b'>, <a',b'>, with c = b + t w
//! and d = a + t w for a positive w orthogonal to the start plane, both
//! nudged by small generic field vectors until every line is generic. Every
//! condition is re-checked exactly; the certificate carries per-step affine
//! segment witnesses that stay inside the ball by convexity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{verify_chain, Ball, ChainCertificate, ConnectError, SegmentWitness};
use crate::period::random::small_field_vector;
use crate::period::PeriodPoint;
use crate::scalar::{FVector, NumberFieldSpec};
use crate::twistor::{ThreeSpace, TwistorLine};

type Rat = BigRational;

pub fn connect_strong_in_ball(
    x: &PeriodPoint,
    y: &PeriodPoint,
    ball: &Ball,
    field: &NumberFieldSpec,
    seed: u64,
    budget: u32,
) -> Result<ChainCertificate, ConnectError> {
    if x.lattice() != y.lattice() || ball.center().lattice() != x.lattice() {
        return Err(ConnectError::LatticeMismatch);
    }
    let lattice = x.lattice().clone();
    if 3 * field.degree() < lattice.rank() {
        return Err(ConnectError::FieldDegreeTooSmall);
    }
    if !ball.contains_point(x) || !ball.contains_point(y) {
        return Err(ConnectError::PointNotInBall);
    }
    if x.same_point(y) {
        let mut cert = ChainCertificate::trivial(x, y);
        cert.ball = Some(ball.clone());
        cert.segments = Some(vec![]);
        return Ok(cert);
    }

    let a = x.a().promote(field)?;
    let b = x.b().promote(field)?;
    let a2 = y.a().promote(field)?;
    let b2 = y.b().promote(field)?;
    let center_a = ball.center().a().promote(field)?;
    let center_b = ball.center().b().promote(field)?;

    // positive direction orthogonal to the start plane, scaled to max-norm
    // strictly below one; among the exact candidates prefer the one whose
    // q-norm survives the scaling best (directions near the light cone have
    // tiny q at unit coordinate size and break the positivity margins)
    let w = {
        let mut best: Option<(f64, FVector)> = None;
        for cand in super::weak::candidate_normals(x, field) {
            let scaled = cand.scale_rat(&(Rat::one() / cand.max_norm_upper_bound()));
            let quality = lattice.norm(&scaled).to_f64();
            if best.as_ref().map_or(true, |(q, _)| quality > *q) {
                best = Some((quality, scaled));
            }
        }
        best.ok_or(ConnectError::NoPositiveThreeSpace)?.1
    };

    // usable room: radius minus how far the four representative vectors
    // already sit from the center (strict rational bounds)
    let mut base = Rat::new(BigInt::from(0), BigInt::from(1));
    for (v, c) in [
        (&a, &center_a),
        (&b, &center_b),
        (&a2, &center_a),
        (&b2, &center_b),
    ] {
        let d = v.sub(c).max_norm_upper_bound();
        if d > base {
            base = d;
        }
    }
    let slack = ball.radius() - &base;
    if !slack.is_positive() {
        return Err(ConnectError::NotNearEnough);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut saw_positive_spaces = false;
    if std::env::var("TWISTRAL_DEBUG").is_ok() { eprintln!("strong: entering loop"); }
    let two = Rat::from_integer(BigInt::from(2));
    for attempt in 0..budget {
        // t stays at the slack scale: shrinking it would let the x-y gap
        // dominate the bump and degrade the far spaces toward degeneracy
        let t = &slack / &two / Rat::from_integer(BigInt::from(1 + i64::from(attempt / 16)));
        let eta_scale = &t / Rat::from_integer(BigInt::from(16));

        // c = b + t w + eta_c with eta_c projected orthogonal to a, so the
        // stored pair of <a, c> is exactly (a, c)
        let eta_c_raw = small_field_vector(&mut rng, field, lattice.rank(), 64)
            .scale_rat(&eta_scale);
        let eta_c = eta_c_raw.sub(&a.scale(&(&lattice.pair(&eta_c_raw, &a) / &lattice.norm(&a))));
        let c = b.add(&w.scale_rat(&t)).add(&eta_c);
        let eta_d = small_field_vector(&mut rng, field, lattice.rank(), 64).scale_rat(&eta_scale);
        let d = a.add(&w.scale_rat(&t)).add(&eta_d);

        if std::env::var("TWISTRAL_DEBUG").is_ok() { eprintln!("strong: attempt {attempt} built c,d"); }
        let spaces = [
            ThreeSpace::new(&lattice, a.clone(), b.clone(), c.clone()),
            ThreeSpace::new(&lattice, a.clone(), b2.clone(), c.clone()),
            ThreeSpace::new(&lattice, a.clone(), b2.clone(), d.clone()),
            ThreeSpace::new(&lattice, a2.clone(), b2.clone(), d.clone()),
        ];
        if spaces.iter().any(|s| s.is_err()) {
            continue;
        }
        saw_positive_spaces = true;
        if std::env::var("TWISTRAL_DEBUG").is_ok() { eprintln!("strong: attempt {attempt} spaces positive"); }
        let lines: Vec<TwistorLine> = spaces
            .into_iter()
            .map(|s| TwistorLine::new(s.unwrap()).check_generic())
            .collect();
        if std::env::var("TWISTRAL_DEBUG").is_ok() { eprintln!("strong: attempt {attempt} genericity {:?}", lines.iter().map(|l| l.is_generic()).collect::<Vec<_>>()); }
        if !lines.iter().all(|l| l.is_generic()) {
            continue;
        }

        let Ok(x2) = PeriodPoint::new(&lattice, a.clone(), c.clone()) else {
            continue;
        };
        let Ok(x3) = PeriodPoint::new(&lattice, a.clone(), b2.clone()) else {
            continue;
        };
        let Ok(x4_raw) = PeriodPoint::new(&lattice, b2.clone(), d.clone()) else {
            continue;
        };
        let x4 = x4_raw.conjugate(); // stored pair (d - proj, b2)

        let segments = vec![
            SegmentWitness {
                start: (a.clone(), b.clone()),
                end: (a.clone(), c.clone()),
            },
            SegmentWitness {
                start: (a.clone(), c.clone()),
                end: (a.clone(), b2.clone()),
            },
            SegmentWitness {
                start: (a.clone(), b2.clone()),
                end: (d.clone(), b2.clone()),
            },
            SegmentWitness {
                start: (d.clone(), b2.clone()),
                end: (a2.clone(), b2.clone()),
            },
        ];
        let cert = ChainCertificate {
            lattice: lattice.clone(),
            endpoints: (x.clone(), y.clone()),
            points: vec![x.clone(), x2, x3, x4, y.clone()],
            lines,
            require_generic: vec![true; 4],
            ball: Some(ball.clone()),
            segments: Some(segments),
        };
        // the construction audits itself with the independent verifier; a
        // failed audit (e.g. a nudge leaking out of the ball) just retries
        if std::env::var("TWISTRAL_DEBUG").is_ok() { eprintln!("strong: attempt {attempt} verifying"); }
        if verify_chain(&cert).ok {
            return Ok(cert);
        }
        if std::env::var("TWISTRAL_DEBUG").is_ok() { eprintln!("strong: attempt {attempt} verify failed"); }
    }
    if saw_positive_spaces {
        Err(ConnectError::BudgetExhausted(budget))
    } else {
        Err(ConnectError::NotNearEnough)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{direct_sum, QuadLattice};
    use crate::linalg::ZMat;
    use crate::scalar::poly::rat;

    fn three_u() -> QuadLattice {
        let u = ZMat::from_i64(&[&[0, 1], &[1, 0]]);
        QuadLattice::new(direct_sum(&[&u, &u, &u])).unwrap()
    }

    /// An irrational period in 3U: frame directions with seeded sqrt(2) dust.
    /// (Periods in 3U over a degree-2 field are never generic: 2*2 < 6; only
    /// the lines carry genericity here.)
    fn irrational_period(l: &QuadLattice, f: &NumberFieldSpec, seed: u64) -> PeriodPoint {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let frame = l.positive_frame();
        loop {
            let a = FVector::from_bigints(f, &frame[0])
                .add(&small_field_vector(&mut rng, f, l.rank(), 64));
            let b = FVector::from_bigints(f, &frame[1])
                .add(&small_field_vector(&mut rng, f, l.rank(), 64));
            if let Ok(p) = PeriodPoint::new(l, a, b) {
                return p;
            }
        }
    }

    #[test]
    fn strong_chain_in_3u_over_sqrt2() {
        let l = three_u();
        let f = NumberFieldSpec::sqrt(2).unwrap();
        let center = irrational_period(&l, &f, 40);
        let ball = Ball::new(center.clone(), rat(1, 4));
        // nearby points: small rational nudges of the center representatives
        let bump = |k: usize, num: i64| {
            let mut v = vec![rat(0, 1); 6];
            v[k] = rat(num, 100);
            FVector::from_rats(&f.clone(), &v)
        };
        let x = PeriodPoint::new(&l, center.a().add(&bump(0, 1)), center.b().add(&bump(2, 1)))
            .unwrap();
        let y = PeriodPoint::new(&l, center.a().add(&bump(1, -1)), center.b().add(&bump(3, 1)))
            .unwrap();
        assert!(ball.contains_point(&x) && ball.contains_point(&y));
        let cert = connect_strong_in_ball(&x, &y, &ball, &f, 7, 60).unwrap();
        assert_eq!(cert.len(), 4);
        assert!(cert.lines.iter().all(|l| l.is_generic()));
        let report = verify_chain(&cert);
        assert!(report.ok, "{:#?}", report.conditions.iter().filter(|c| !c.ok).collect::<Vec<_>>());
    }

    #[test]
    fn same_point_gives_trivial_chain() {
        let l = three_u();
        let f = NumberFieldSpec::sqrt(2).unwrap();
        let center = irrational_period(&l, &f, 41);
        let ball = Ball::new(center.clone(), rat(1, 4));
        let cert = connect_strong_in_ball(&center, &center, &ball, &f, 1, 10).unwrap();
        assert!(cert.is_empty());
        assert!(verify_chain(&cert).ok);
    }

    #[test]
    fn outside_ball_is_a_precondition_error() {
        let l = three_u();
        let f = NumberFieldSpec::sqrt(2).unwrap();
        let center = irrational_period(&l, &f, 42);
        let ball = Ball::new(center.clone(), rat(1, 4));
        let far = PeriodPoint::new(
            &l,
            center.a().add(&FVector::from_rats(&f, &[rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)])),
            center.b().clone(),
        )
        .unwrap();
        assert_eq!(
            connect_strong_in_ball(&far, &center, &ball, &f, 1, 10).unwrap_err(),
            ConnectError::PointNotInBall
        );
    }

    #[test]
    fn degree_one_field_fails_fast() {
        let l = three_u();
        let q = NumberFieldSpec::rationals();
        let frame = l.positive_frame();
        let x = PeriodPoint::new(
            &l,
            FVector::from_bigints(&q, &frame[0]),
            FVector::from_bigints(&q, &frame[1]),
        )
        .unwrap();
        let ball = Ball::new(x.clone(), rat(1, 4));
        assert_eq!(
            connect_strong_in_ball(&x, &x, &ball, &q, 1, 10).unwrap_err(),
            ConnectError::FieldDegreeTooSmall
        );
    }
}
