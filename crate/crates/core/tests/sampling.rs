use lepage_core::rng::derive_seed;
use lepage_core::sampling::gamma_power_sum;
use lepage_core::{stable_constant, AtomCloud, Cloud32, Params, Params32, Weight, Weight32};
use lepage_oracles as oracle;
use proptest::prelude::*;

fn setup(alpha: f64, delta: f64, dim: usize) -> (Params, Weight) {
    let p = Params::new(alpha, 1.0, dim).unwrap();
    (p, Weight::new(delta, &p).unwrap())
}

#[test]
fn stable_constant_matches_the_sine_integral() {
    for alpha in [0.3, 0.5, 0.7, 0.9, 1.0, 1.0 + 5e-7, 1.2, 1.5, 1.8] {
        let closed = stable_constant(alpha).unwrap();
        let quad = oracle::stable_constant(alpha);
        assert!((closed - quad).abs() < 1e-8 * quad, "alpha={alpha}: {closed} vs {quad}");
    }
    assert!((stable_constant(1.0).unwrap() - std::f64::consts::FRAC_2_PI).abs() < 1e-15);
}

#[test]
fn weight_constant_matches_quadrature() {
    for (alpha, delta, dim) in [(0.7, 1.5, 1), (1.5, 1.5, 1), (1.2, 2.0, 2), (1.5, 3.0, 3), (0.7, 3.0, 2)] {
        let (_, w) = setup(alpha, delta, dim);
        let c = oracle::weight_constant(alpha, delta, dim);
        assert!((w.c() - c).abs() < 1e-8 * c, "{alpha} {delta} {dim}: {} vs {c}", w.c());
        let mass = oracle::radial_integral(&|r: f64| w.eval_radius(r).powf(alpha), dim, delta * alpha - dim as f64, 1e-13);
        assert!((mass - 1.0).abs() < 1e-8, "mass {mass}");
    }
}

#[test]
fn weight_mass_on_a_finite_window() {
    // fast tail: the mass outside [-1e4, 1e4] is below 1e-8
    let (_, w) = setup(1.5, 2.0, 1);
    let f = |x: f64| w.eval(&[x]).powf(1.5);
    let mass = 2.0 * (oracle::integrate(&f, 0.0, 1.0, 1e-14) + oracle::integrate(&f, 1.0, 1e4, 1e-13));
    assert!((mass - 1.0).abs() < 1e-6, "{mass}");
}

#[test]
fn times_are_uniform() {
    let (p, w) = setup(0.7, 1.5, 1);
    let cloud = AtomCloud::sample(10_000, 2024, p, w);
    let u: Vec<f64> = cloud.atoms().iter().map(|a| a.time / p.horizon()).collect();
    let d = oracle::ks_uniform(&u);
    assert!(d < oracle::ks_critical_1pct(u.len()), "KS {d}");
}

#[test]
fn arrivals_grow_linearly() {
    let (p, w) = setup(1.5, 1.5, 1);
    let n = 20_000;
    let cloud = AtomCloud::sample(n, 77, p, w);
    let mean = cloud.atoms().iter().enumerate().map(|(i, a)| a.gamma / (i + 1) as f64).sum::<f64>() / n as f64;
    assert!((mean - 1.0).abs() < 3.0 / (n as f64).sqrt(), "{mean}");
}

#[test]
fn ball_fraction_matches_mixture_weight() {
    for (alpha, delta) in [(0.7, 1.5), (1.5, 1.5)] {
        let (p, w) = setup(alpha, delta, 1);
        let n = 20_000;
        let cloud = AtomCloud::sample(n, 5, p, w);
        let inside = cloud.atoms().iter().filter(|a| a.pos[0].abs() <= 1.0).count() as f64 / n as f64;
        let q = 2.0 * w.c().powf(alpha);
        let sigma = (q * (1.0 - q) / n as f64).sqrt();
        assert!((inside - q).abs() < 3.0 * sigma + 1e-12, "alpha={alpha}: {inside} vs {q}");
    }
}

#[test]
fn radius_tail_in_two_dimensions() {
    // P(|X| > r) = c^α |S^1| r^{-(δα-2)} / (δα-2) for r ≥ 1
    let (p, w) = setup(1.5, 2.0, 2);
    let n = 20_000;
    let cloud = AtomCloud::sample(n, 8, p, w);
    let r0: f64 = 3.0;
    let frac = cloud.atoms().iter().filter(|a| a.pos[0].hypot(a.pos[1]) > r0).count() as f64 / n as f64;
    let q = w.c().powf(1.5) * 2.0 * std::f64::consts::PI * r0.powf(-1.0) / 1.0;
    let sigma = (q * (1.0 - q) / n as f64).sqrt();
    assert!((frac - q).abs() < 3.0 * sigma, "{frac} vs {q}");
}

#[test]
fn power_sum_is_monotone_in_the_prefix() {
    let (p, w) = setup(0.7, 1.5, 1);
    let cloud = AtomCloud::sample(300, 3, p, w);
    let mut prev = 0.0;
    for k in 0..=300 {
        let s = gamma_power_sum(&cloud.prefix(k), 1.0, false).unwrap();
        assert!(s >= prev);
        prev = s;
    }
    assert!(gamma_power_sum(&cloud, 1.0, true).unwrap() >= prev);
}

#[test]
fn csv_is_stable_across_regeneration() {
    let (p, w) = setup(1.5, 1.5, 2);
    let a = AtomCloud::sample(500, 10, p, w).to_csv_string();
    let b = AtomCloud::sample(500, 10, p, w).to_csv_string();
    assert_eq!(a, b);
    assert_ne!(a, AtomCloud::sample(500, derive_seed(10, 1), p, w).to_csv_string());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prefix_of_a_larger_cloud(seed in any::<u64>(), k in 0usize..60, extra in 0usize..60, alpha in 0.2f64..1.95) {
        let (p, w) = setup(alpha, 2.0 / alpha + 0.5, 2);
        let small = AtomCloud::sample(k, seed, p, w);
        let big = AtomCloud::sample(k + extra, seed, p, w);
        prop_assert_eq!(small.atoms(), &big.atoms()[..k]);
    }

    #[test]
    fn cloud_invariants(seed in any::<u64>(), n in 0usize..200, alpha in 0.2f64..1.95, dim in 1usize..4) {
        let (p, w) = setup(alpha, dim as f64 / alpha + 0.3, dim);
        let c = AtomCloud::sample(n, seed, p, w);
        prop_assert!(c.atoms().windows(2).all(|a| a[0].gamma < a[1].gamma));
        prop_assert!(c.atoms().iter().all(|a| a.gamma > 0.0 && a.time > 0.0 && a.time <= 1.0 && a.pos.len() == dim));
        let mut seen = vec![false; n];
        for &i in c.time_order() {
            prop_assert!(!seen[i]);
            seen[i] = true;
        }
        prop_assert!(c.time_order().windows(2).all(|k| c.atoms()[k[0]].time <= c.atoms()[k[1]].time));
    }

    #[test]
    fn hypothesis_bound(alpha in 0.2f64..1.95, extra in 0.01f64..3.0, r in 0.0f64..1e6) {
        let (_, w) = setup(alpha, 1.0 / alpha + extra, 1);
        prop_assert!(1.0 / w.eval(&[r]) <= w.c0() * (1.0 + r.powf(w.delta())) * (1.0 + 1e-12));
    }

    #[test]
    fn single_precision_tracks_double(seed in any::<u64>(), alpha in 0.5f64..1.9) {
        let p64 = Params::new(alpha, 1.0, 1).unwrap();
        let w64 = Weight::new(1.5 / alpha + 1.0, &p64).unwrap();
        let p32 = Params32::new(alpha as f32, 1.0, 1).unwrap();
        let w32 = Weight32::new((1.5 / alpha + 1.0) as f32, &p32).unwrap();
        let a = AtomCloud::sample(50, seed, p64, w64);
        let b = Cloud32::sample(50, seed, p32, w32);
        for (x, y) in a.atoms().iter().zip(b.atoms()) {
            prop_assert_eq!(x.sign, y.sign);
            prop_assert!((x.gamma - y.gamma as f64).abs() <= 1e-6 * x.gamma);
            prop_assert!((x.time - y.time as f64).abs() <= 1e-6);
        }
        for i in 0..50 {
            let (u, v) = (a.prefactor(i), b.prefactor(i) as f64);
            prop_assert!((u - v).abs() <= 1e-4 * u.abs(), "{} vs {}", u, v);
        }
    }
}
