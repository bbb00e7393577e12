use twistral::connect::*;
use twistral::lattice::{direct_sum, QuadLattice};
use twistral::linalg::ZMat;
use twistral::period::PeriodPoint;
use twistral::period::random::small_field_vector;
use twistral::scalar::{FVector, NumberFieldSpec};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use num_rational::BigRational;
use num_bigint::BigInt;
use std::time::Instant;

fn rat(n: i64, d: i64) -> BigRational { BigRational::new(BigInt::from(n), BigInt::from(d)) }

fn main() {
    let u = ZMat::from_i64(&[&[0, 1], &[1, 0]]);
    let l = QuadLattice::new(direct_sum(&[&u, &u, &u])).unwrap();
    let f = NumberFieldSpec::sqrt(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let frame = l.positive_frame();
    let center = loop {
        let a = FVector::from_bigints(&f, &frame[0]).add(&small_field_vector(&mut rng, &f, l.rank(), 64));
        let b = FVector::from_bigints(&f, &frame[1]).add(&small_field_vector(&mut rng, &f, l.rank(), 64));
        if let Ok(p) = PeriodPoint::new(&l, a, b) { break p; }
    };
    let ball = Ball::new(center.clone(), rat(1, 4));
    let bump = |k: usize, num: i64| {
        let mut v = vec![rat(0, 1); 6];
        v[k] = rat(num, 100);
        FVector::from_rats(&f, &v)
    };
    let x = PeriodPoint::new(&l, center.a().add(&bump(0, 1)), center.b().add(&bump(2, 1))).unwrap();
    let y = PeriodPoint::new(&l, center.a().add(&bump(1, -1)), center.b().add(&bump(3, 1))).unwrap();
    let t0 = Instant::now();
    match connect_strong_in_ball(&x, &y, &ball, &f, 7, 1) {
        Ok(cert) => {
            println!("ok in {:?}: {} lines, verify={}", t0.elapsed(), cert.len(), verify_chain(&cert).ok);
        }
        Err(e) => println!("err in {:?}: {e:?}", t0.elapsed()),
    }
}
