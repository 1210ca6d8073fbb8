use lepage_core::diagnostics::{
    admissible_p_range, assumption_a2_report, assumption_a3_report, k_np_bound, k_np_montecarlo, stirling_holds,
    stirling_sandwich, PRange, Verdict,
};
use lepage_core::{AtomCloud, Kernel, Params, Weight};
use lepage_oracles as oracle;

fn setup(alpha: f64, delta: f64, dim: usize) -> (Params, Weight) {
    let p = Params::new(alpha, 1.0, dim).unwrap();
    (p, Weight::new(delta, &p).unwrap())
}

#[test]
fn second_order_wave_estimate_matches_quadrature() {
    let (_, w) = setup(0.7, 1.5, 1);
    let k = Kernel::wave(1).unwrap();
    for (p, x) in [(1.0, 0.0), (0.7, 0.4)] {
        let mc = k_np_montecarlo(&k, &w, 2, p, 1.0, &[x], 100_000, 21).unwrap();
        let quad = oracle::wave1_k2(0.7, 1.5, p, 1.0, x);
        assert!((mc.estimate - quad).abs() < 3.0 * mc.stderr, "p={p}: {mc:?} vs {quad}");
    }
}

#[test]
fn bounds_dominate_estimates() {
    let cases = [
        (Kernel::heat(1).unwrap(), 0.7, 1.5, 1.0),
        (Kernel::heat(1).unwrap(), 1.2, 1.5, 1.4),
        (Kernel::wave(1).unwrap(), 0.7, 1.5, 1.0),
        (Kernel::wave(1).unwrap(), 0.7, 1.5, 2.0),
        (Kernel::wave(2).unwrap(), 0.7, 3.0, 1.0),
    ];
    for (k, alpha, delta, p) in cases {
        let (_, w) = setup(alpha, delta, k.dim());
        let mut x = vec![0.0; k.dim()];
        for n in 1..=3 {
            for (t, x0) in [(1.0, 0.0), (0.5, 1.3)] {
                x[0] = x0;
                let mc = k_np_montecarlo(&k, &w, n, p, t, &x, 20_000, 7 + n as u64).unwrap();
                let b = k_np_bound(&k, &w, n, p, t, &x).unwrap();
                assert!(b >= mc.estimate - 3.0 * mc.stderr, "{k:?} n={n} p={p} t={t}: {b} < {mc:?}");
            }
        }
    }
}

#[test]
fn range_endpoints_satisfy_the_constraints() {
    let k = Kernel::heat(1).unwrap();
    let PRange::Interval { lo, hi, .. } = admissible_p_range(&k, 0.7, 1.5) else { panic!() };
    assert!((lo - 0.7).abs() < 1e-9 && (hi - 1.62).abs() < 1e-9);
    for (dim, alpha, delta) in [(1, 0.7, 1.5), (1, 1.5, 0.8), (2, 1.2, 2.0), (3, 1.0, 4.0), (2, 1.9, 30.0)] {
        let k = Kernel::heat(dim).unwrap();
        let r = admissible_p_range(&k, alpha, delta);
        let PRange::Interval { lo, hi, .. } = r else { panic!("{dim} {alpha} {delta}") };
        let d = dim as f64;
        let holds = |p: f64| p > alpha && p <= 2.0 && p < 1.0 + 2.0 / d && delta * (p - alpha) < d * (1.0 - p) + 2.0;
        assert!(holds(lo + 1e-9) && holds(hi - 1e-9));
        assert!(!holds(lo - 1e-9) && !holds(hi + 1e-9));
        assert!(r.contains(lo + 1e-9) && !r.contains(hi + 1e-9));
    }
}

#[test]
fn reports_converge_on_the_reference_cases() {
    let (p, w) = setup(0.7, 1.5, 1);
    let cloud = AtomCloud::sample(1000, 42, p, w);
    for k in [Kernel::heat(1).unwrap(), Kernel::wave(1).unwrap()] {
        let a2 = assumption_a2_report(&k, &w, &cloud, 1.0, 1.0, &[0.0], 30).unwrap();
        let a3 = assumption_a3_report(&k, &w, &cloud, 1.0, 1.0, &[0.0], 30).unwrap();
        assert_eq!(a2.verdict, Verdict::Converges, "{a2}");
        assert_eq!(a3.verdict, Verdict::Converges, "{a3}");
        assert_eq!(a2.terms.len(), 30);
    }
    let (p2, w2) = setup(1.5, 1.5, 2);
    let c2 = AtomCloud::sample(1000, 42, p2, w2);
    let r = assumption_a3_report(&Kernel::wave(2).unwrap(), &w2, &c2, 1.7, 1.0, &[0.0, 0.0], 30).unwrap();
    assert_eq!(r.verdict, Verdict::Converges, "{r}");
}

#[test]
fn wave_ratios_eventually_decrease() {
    let (p, w) = setup(0.7, 1.5, 1);
    let cloud = AtomCloud::sample(1000, 1, p, w);
    let r = assumption_a2_report(&Kernel::wave(1).unwrap(), &w, &cloud, 1.0, 1.0, &[0.5], 30).unwrap();
    let ratios: Vec<f64> = r.ratios().into_iter().map(Option::unwrap).collect();
    assert!(ratios[10..].windows(2).all(|q| q[1] < q[0]));
}

#[test]
fn stirling_constants() {
    for a in [0.5, 1.0, 2.0] {
        for b in [0.0, 0.5] {
            let (lo, hi) = stirling_sandwich(a, b, 50).unwrap();
            assert!(lo >= 1.0 && hi >= 1.0 && lo.is_finite() && hi.is_finite());
            assert!(stirling_holds(a, b, 50, lo, hi));
        }
    }
}
