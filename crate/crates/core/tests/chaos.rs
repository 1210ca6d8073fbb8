use lepage_core::chaos::{
    chaos_partial_sum_bruteforce, multiple_integral_bruteforce, picard_iterate, solution_dp, tail_reference,
};
use lepage_core::noise::additive_solution;
use lepage_core::{AtomCloud, Chain, ChaosConfig, Cloud32, Kernel, Params, Params32, Weight, Weight32};
use proptest::prelude::*;

fn cloud(n: usize, seed: u64, alpha: f64, delta: f64, dim: usize) -> AtomCloud<f64> {
    let p = Params::new(alpha, 1.0, dim).unwrap();
    AtomCloud::sample(n, seed, p, Weight::new(delta, &p).unwrap())
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn cases() -> Vec<(Kernel, f64, f64, Vec<f64>)> {
    vec![
        (Kernel::heat(1).unwrap(), 0.7, 1.5, vec![0.2]),
        (Kernel::heat(1).unwrap(), 1.5, 1.5, vec![-0.4]),
        (Kernel::wave(1).unwrap(), 0.7, 1.5, vec![0.1]),
        (Kernel::wave(2).unwrap(), 1.5, 1.5, vec![0.1, -0.2]),
        (Kernel::heat(2).unwrap(), 1.5, 1.5, vec![0.0, 0.3]),
    ]
}

#[test]
fn recursion_matches_enumeration() {
    for (k, alpha, delta, x) in cases() {
        for seed in 0..50u64 {
            let j = 1 + (seed as usize % 10);
            let c = cloud(j, seed, alpha, delta, k.dim());
            for t in [0.5, 1.0] {
                let dp = solution_dp(&c, &k, &ChaosConfig::multiplicative(), t, &x).unwrap();
                let brute = chaos_partial_sum_bruteforce(&c, &k, j, t, &x).unwrap();
                assert!(rel_close(dp, brute, 1e-10), "{k:?} seed={seed} J={j}: {dp} vs {brute}");
            }
        }
    }
}

#[test]
fn capped_orders_match_enumeration() {
    for (k, alpha, delta, x) in cases() {
        for seed in 0..20u64 {
            let c = cloud(10, seed, alpha, delta, k.dim());
            let w = Chain::build(&c, k, Some(10)).unwrap();
            let parts = w.evaluate_orders(1.0, &x).unwrap();
            for (n, part) in parts.iter().enumerate() {
                let brute = multiple_integral_bruteforce(&c, &k, n + 1, 1.0, &x).unwrap();
                assert!(rel_close(*part, brute, 1e-10), "{k:?} seed={seed} n={}: {part} vs {brute}", n + 1);
            }
        }
    }
}

#[test]
fn picard_levels_are_truncated_expansions() {
    for (k, alpha, delta, x) in cases() {
        for seed in 0..20u64 {
            let c = cloud(1 + seed as usize % 10, seed, alpha, delta, k.dim());
            let u = picard_iterate(&c, &k, 5, 0.9, &x).unwrap();
            assert_eq!(u[0], 1.0);
            assert_eq!(u[1], additive_solution(&c, &k, 0.9, &x).unwrap());
            for (m, um) in u.iter().enumerate().skip(1) {
                let cfg = ChaosConfig::multiplicative().with_max_order(m);
                let dp = solution_dp(&c, &k, &cfg, 0.9, &x).unwrap();
                assert!(rel_close(*um, dp, 1e-10), "{k:?} seed={seed} m={m}: {um} vs {dp}");
            }
            let brute = chaos_partial_sum_bruteforce(&c, &k, 3, 0.9, &x).unwrap();
            assert!(rel_close(u[3], brute, 1e-10));
        }
    }
}

#[test]
fn orders_beyond_the_cloud_vanish() {
    let c = cloud(6, 3, 1.5, 1.5, 1);
    let k = Kernel::heat(1).unwrap();
    for n in 7..10 {
        assert_eq!(multiple_integral_bruteforce(&c, &k, n, 1.0, &[0.0]).unwrap(), 0.0);
    }
    let full = solution_dp(&c, &k, &ChaosConfig::multiplicative(), 1.0, &[0.0]).unwrap();
    let capped = solution_dp(&c, &k, &ChaosConfig::multiplicative().with_max_order(6), 1.0, &[0.0]).unwrap();
    assert!(rel_close(full, capped, 1e-13));
}

#[test]
fn later_atoms_do_not_matter() {
    let c = cloud(200, 17, 0.7, 1.5, 1);
    for k in [Kernel::heat(1).unwrap(), Kernel::wave(1).unwrap()] {
        let t = 0.6;
        let u = solution_dp(&c, &k, &ChaosConfig::multiplicative(), t, &[0.0]).unwrap();
        let late: Vec<usize> = (0..c.len()).filter(|&i| c.atoms()[i].time >= t).take(10).collect();
        assert!(!late.is_empty());
        for i in late {
            let moved = c
                .with_atom(i, |a| {
                    a.pos[0] += 0.37;
                    a.sign = a.sign.flipped();
                })
                .unwrap();
            let v = solution_dp(&moved, &k, &ChaosConfig::multiplicative(), t, &[0.0]).unwrap();
            assert_eq!(u.to_bits(), v.to_bits());
        }
    }
}

#[test]
fn sign_flip_alternates_orders() {
    let c = cloud(8, 2, 1.5, 1.5, 1);
    let k = Kernel::wave(1).unwrap();
    let neg = c.negated();
    for n in 1..=4 {
        let a = multiple_integral_bruteforce(&c, &k, n, 1.0, &[0.0]).unwrap();
        let b = multiple_integral_bruteforce(&neg, &k, n, 1.0, &[0.0]).unwrap();
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        assert_eq!(b, s * a);
    }
}

#[test]
fn tail_reference_first_order() {
    let r = tail_reference(1, 0.7, 0.9, 100.0).unwrap();
    assert!((r - 0.9 * 100f64.powf(-0.7)).abs() < 1e-16);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recursion_matches_enumeration_random(seed in any::<u64>(), j in 0usize..9, t in 0.0f64..1.0, x in -1.5f64..1.5, alpha in 0.6f64..1.9) {
        let c = cloud(j, seed, alpha, 1.0 / alpha + 1.0, 1);
        for k in [Kernel::heat(1).unwrap(), Kernel::wave(1).unwrap()] {
            let dp = solution_dp(&c, &k, &ChaosConfig::multiplicative(), t, &[x]).unwrap();
            let brute = chaos_partial_sum_bruteforce(&c, &k, j, t, &[x]).unwrap();
            prop_assert!(rel_close(dp, brute, 1e-10), "{} vs {}", dp, brute);
        }
    }

    #[test]
    fn additive_mode_is_first_order(seed in any::<u64>(), t in 0.0f64..1.0, x in -1.0f64..1.0) {
        let c = cloud(50, seed, 0.7, 1.5, 1);
        let k = Kernel::heat(1).unwrap();
        let a = additive_solution(&c, &k, t, &[x]).unwrap();
        prop_assert_eq!(solution_dp(&c, &k, &ChaosConfig::additive(), t, &[x]).unwrap(), a);
        let i1 = multiple_integral_bruteforce(&c, &k, 1, t, &[x]).unwrap();
        prop_assert!(rel_close(i1, a - 1.0, 1e-12));
    }

    #[test]
    fn single_precision_chain(seed in any::<u64>()) {
        let p64 = Params::new(1.5, 1.0, 1).unwrap();
        let p32 = Params32::new(1.5, 1.0, 1).unwrap();
        let a = AtomCloud::sample(20, seed, p64, Weight::new(1.5, &p64).unwrap());
        let b = Cloud32::sample(20, seed, p32, Weight32::new(1.5, &p32).unwrap());
        let k = Kernel::wave(1).unwrap();
        let u64v = solution_dp(&a, &k, &ChaosConfig::multiplicative(), 1.0, &[0.0]).unwrap();
        let u32v = solution_dp(&b, &k, &ChaosConfig::multiplicative(), 1.0, &[0.0]).unwrap() as f64;
        let scale: f64 = 1.0 + a.prefactors().iter().map(|v| v.abs()).sum::<f64>().powi(3);
        prop_assert!((u64v - u32v).abs() <= 1e-3 * scale, "{} vs {}", u64v, u32v);
    }
}
