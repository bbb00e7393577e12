// debug binary
use twistral::connect::*;
use twistral::lattice::{direct_sum, QuadLattice};
use twistral::linalg::ZMat;
use twistral::period::PeriodPoint;
use twistral::period::random::small_field_vector;
use twistral::scalar::{FVector, NumberFieldSpec};
use twistral::twistor::ThreeSpace;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use num_rational::BigRational;
use num_bigint::BigInt;

fn rat(n: i64, d: i64) -> BigRational { BigRational::new(BigInt::from(n), BigInt::from(d)) }

fn main() {
    let u = ZMat::from_i64(&[&[0, 1], &[1, 0]]);
    let l = QuadLattice::new(direct_sum(&[&u, &u, &u])).unwrap();
    let f = NumberFieldSpec::sqrt(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let frame = l.positive_frame();
    println!("frame: {:?}", frame);
    let center = loop {
        let a = FVector::from_bigints(&f, &frame[0]).add(&small_field_vector(&mut rng, &f, l.rank(), 64));
        let b = FVector::from_bigints(&f, &frame[1]).add(&small_field_vector(&mut rng, &f, l.rank(), 64));
        if let Ok(p) = PeriodPoint::new(&l, a, b) { break p; }
    };
    println!("center ok, q(a) = {:?}", l.norm(center.a()).to_f64());
    let ball = Ball::new(center.clone(), rat(1, 4));
    let bump = |k: usize, num: i64| {
        let mut v = vec![rat(0, 1); 6];
        v[k] = rat(num, 100);
        FVector::from_rats(&f, &v)
    };
    let x = PeriodPoint::new(&l, center.a().add(&bump(0, 1)), center.b().add(&bump(2, 1))).unwrap();
    let y = PeriodPoint::new(&l, center.a().add(&bump(1, -1)), center.b().add(&bump(3, 1))).unwrap();
    println!("x in ball: {}, y in ball: {}", ball.contains_point(&x), ball.contains_point(&y));

    // replicate internals
    let a = x.a().clone(); let b = x.b().clone();
    let a2 = y.a().clone(); let b2 = y.b().clone();
    let w_raw = find_positive_orthogonal(&l, &f, &[a.clone(), b.clone()]).unwrap();
    let w = w_raw.scale_rat(&(rat(1,1) / w_raw.max_norm_upper_bound()));
    println!("q(w) = {:?}", l.norm(&w).to_f64());
    let mut base = rat(0,1);
    for (v, c) in [(&a, center.a()), (&b, center.b()), (&a2, center.a()), (&b2, center.b())] {
        let d = v.sub(c).max_norm_upper_bound();
        if d > base { base = d; }
    }
    println!("base = {:?} ~ {}", base, base.numer().to_string().parse::<f64>().unwrap_or(f64::NAN) / base.denom().to_string().parse::<f64>().unwrap_or(f64::NAN));
    let slack = ball.radius() - &base;
    println!("slack positive: {}", slack > rat(0,1));
    let t = &slack / rat(2,1);
    let eta_scale = &t / rat(8,1);
    let eta_c_raw = small_field_vector(&mut rng, &f, 6, 64).scale_rat(&eta_scale);
    let eta_c = eta_c_raw.sub(&a.scale(&(&l.pair(&eta_c_raw, &a) / &l.norm(&a))));
    let c = b.add(&w.scale_rat(&t)).add(&eta_c);
    let eta_d = small_field_vector(&mut rng, &f, 6, 64).scale_rat(&eta_scale);
    let d = a.add(&w.scale_rat(&t)).add(&eta_d);
    for (name, s) in [
        ("T1", ThreeSpace::new(&l, a.clone(), b.clone(), c.clone())),
        ("T2", ThreeSpace::new(&l, a.clone(), b2.clone(), c.clone())),
        ("T3", ThreeSpace::new(&l, a.clone(), b2.clone(), d.clone())),
        ("T4", ThreeSpace::new(&l, a2.clone(), b2.clone(), d.clone())),
    ] {
        match s {
            Ok(_) => println!("{name}: ok"),
            Err(e) => println!("{name}: {e:?}"),
        }
    }
}
