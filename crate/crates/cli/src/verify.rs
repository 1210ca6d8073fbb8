//! The verification battery behind `lepage verify` and the acceptance suite.
//!
//! Every check returns a [`CheckResult`] instead of panicking, so a run
//! always produces a full report.

use std::fmt;
use std::time::{Duration, Instant};

use lepage_core::chaos::{chaos_partial_sum_bruteforce, picard_iterate, solution_dp, tail_reference};
use lepage_core::diagnostics::{
    admissible_p_range, assumption_a2_report, assumption_a3_report, k_np_bound, k_np_montecarlo, stirling_holds,
    stirling_sandwich, PRange, Verdict,
};
use lepage_core::kernels::heat_power_identity;
use lepage_core::noise::{additive_solution, cf_comparison, z_replications};
use lepage_core::rng::{derive_seed, substream};
use lepage_core::{AtomCloud, BoxRegion, ChaosConfig, Kernel, KernelKind, Params, Weight};
use lepage_oracles as oracle;
use rand::Rng;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::field::run_field;
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail,
        }
    }

    fn failed(name: &str, err: impl fmt::Display) -> Self {
        Self::new(name, false, format!("error: {err}"))
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag}  {:<22} {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiagnosticsReport {
    pub checks: Vec<CheckResult>,
}

impl DiagnosticsReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for DiagnosticsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        write!(f, "summary: {passed}/{} checks passed", self.checks.len())
    }
}

/// Sizes of the battery. `bound_scale` multiplies every closed-form bound
/// before the dominance comparison; values below 1 simulate a wrong
/// constant.
#[derive(Clone, Debug, PartialEq)]
pub struct BatteryOptions {
    pub cf_replications: usize,
    pub cf_atoms: usize,
    pub oracle_seeds: u64,
    pub oracle_max_atoms: usize,
    pub picard_levels: usize,
    pub kernel_cases: usize,
    pub mc_samples: usize,
    pub n_max: usize,
    pub stirling_n_max: usize,
    pub bound_scale: f64,
}

impl Default for BatteryOptions {
    fn default() -> Self {
        Self {
            cf_replications: 20_000,
            cf_atoms: 2000,
            oracle_seeds: 50,
            oracle_max_atoms: 10,
            picard_levels: 5,
            kernel_cases: 10,
            mc_samples: 100_000,
            n_max: 30,
            stirling_n_max: 50,
            bound_scale: 1.0,
        }
    }
}

fn setup(alpha: f64, delta: f64, dim: usize) -> lepage_core::Result<(Params, Weight)> {
    let p = Params::new(alpha, 1.0, dim)?;
    Ok((p, Weight::new(delta, &p)?))
}

/// `p = 1` when admissible, otherwise the midpoint of the admissible range.
pub fn choose_p(kernel: &Kernel, alpha: f64, delta: f64) -> Option<f64> {
    let range = admissible_p_range(kernel, alpha, delta);
    if range.contains(1.0) {
        Some(1.0)
    } else {
        range.midpoint()
    }
}

/// Empirical characteristic function of `Z(B)` against `exp(-m(B)|u|^α)`
/// for `B = [0,1] × [-1/2,1/2]^d`.
pub fn check_stable_law(alpha: f64, delta: f64, dim: usize, replications: usize, atoms: usize, seed: u64) -> CheckResult {
    let name = "stable_law";
    let run = || -> lepage_core::Result<CheckResult> {
        let (p, w) = setup(alpha, delta, dim)?;
        let region = BoxRegion::new(0.0, 1.0, vec![-0.5; dim], vec![0.5; dim])?;
        let samples = z_replications(p, w, &region, atoms, replications, seed);
        let rows = cf_comparison(&samples, &p, region.lebesgue(), &[0.5, 1.0, 2.0])?;
        let worst = rows.iter().map(|r| (r.empirical_re - r.target).abs()).fold(0.0, f64::max);
        let detail = format!(
            "alpha={alpha} N={replications} J={atoms}: max |Re cf - target| = {worst:.5} (band {:.5})",
            rows[0].band
        );
        Ok(CheckResult::new(name, rows.iter().all(|r| r.passes()), detail))
    };
    run().unwrap_or_else(|e| CheckResult::failed(name, e))
}

fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

/// Chain recursion against subset enumeration for `J = 1..=max_atoms`.
pub fn check_oracle_equivalence(cases: &[(Kernel, f64, f64)], seeds: u64, max_atoms: usize) -> CheckResult {
    let name = "oracle_equivalence";
    let run = || -> lepage_core::Result<CheckResult> {
        let mut worst = 0.0f64;
        let mut count = 0;
        for &(k, alpha, delta) in cases {
            let (p, w) = setup(alpha, delta, k.dim())?;
            for seed in 0..seeds {
                let j = 1 + (seed as usize % max_atoms);
                let c = AtomCloud::sample(j, seed, p, w);
                let mut x = vec![0.0; k.dim()];
                for (t, x0) in [(1.0, 0.0), (0.7, 0.3)] {
                    x[0] = x0;
                    let dp = solution_dp(&c, &k, &ChaosConfig::multiplicative(), t, &x)?;
                    let brute = chaos_partial_sum_bruteforce(&c, &k, j, t, &x)?;
                    worst = worst.max(rel_dev(dp, brute));
                    count += 1;
                }
            }
        }
        Ok(CheckResult::new(
            name,
            worst <= 1e-10,
            format!("{count} evaluations, max relative deviation {worst:.2e} (tolerance 1e-10)"),
        ))
    };
    run().unwrap_or_else(|e| CheckResult::failed(name, e))
}

/// Picard level `m` against the order-`m` truncated recursion.
pub fn check_picard(cases: &[(Kernel, f64, f64)], seeds: u64, max_atoms: usize, levels: usize) -> CheckResult {
    let name = "picard_identity";
    let run = || -> lepage_core::Result<CheckResult> {
        let mut worst = 0.0f64;
        for &(k, alpha, delta) in cases {
            let (p, w) = setup(alpha, delta, k.dim())?;
            for seed in 0..seeds {
                let c = AtomCloud::sample(1 + seed as usize % max_atoms, seed, p, w);
                let mut x = vec![0.0; k.dim()];
                x[0] = 0.2;
                let u = picard_iterate(&c, &k, levels, 0.9, &x)?;
                for (m, um) in u.iter().enumerate() {
                    let cfg = ChaosConfig::multiplicative().with_max_order(m);
                    worst = worst.max(rel_dev(*um, solution_dp(&c, &k, &cfg, 0.9, &x)?));
                }
            }
        }
        Ok(CheckResult::new(
            name,
            worst <= 1e-10,
            format!("levels 0..={levels}, max relative deviation {worst:.2e} (tolerance 1e-10)"),
        ))
    };
    run().unwrap_or_else(|e| CheckResult::failed(name, e))
}

/// Space-time `L^p` masses against quadrature on random admissible
/// `(kind, d, p, t)`, and the heat power identity on a grid.
pub fn check_kernel_closed_forms(cases: usize, seed: u64) -> CheckResult {
    let name = "kernel_closed_forms";
    let run = || -> lepage_core::Result<CheckResult> {
        let mut rng = substream(seed, 0);
        let mut worst_mass = 0.0f64;
        for _ in 0..cases {
            let (kind, dim) = match rng.random_range(0..5) {
                0 => (KernelKind::Heat, 1),
                1 => (KernelKind::Heat, 2),
                2 => (KernelKind::Heat, 3),
                3 => (KernelKind::Wave, 1),
                _ => (KernelKind::Wave, 2),
            };
            let k = Kernel::new(kind, dim)?;
            let p_hi = match (kind, dim) {
                (KernelKind::Heat, d) => (1.0 + 2.0 / d as f64).min(2.5),
                (KernelKind::Wave, 1) => 2.5,
                _ => 2.0,
            };
            let p = rng.random_range(0.1..0.98 * p_hi);
            let t = rng.random_range(0.1..3.0);
            let closed = k.space_time_lp_mass(p, t)?;
            let quad = match kind {
                KernelKind::Heat => oracle::heat_space_time_lp(p, dim, t),
                KernelKind::Wave => oracle::wave_space_time_lp(p, dim, t),
            };
            worst_mass = worst_mass.max((closed - quad).abs() / quad);
        }
        let mut worst_id = 0.0f64;
        for dim in 1..=3 {
            let k = Kernel::heat(dim)?;
            for p in [0.3, 0.7, 1.0, 1.5, 2.0] {
                for t in [0.05, 0.5, 1.0, 3.0] {
                    let id = heat_power_identity(p, dim, t)?;
                    let time_factor = t.powf(dim as f64 * (1.0 - p) / 2.0);
                    for r in [0.0, 0.25, 0.5, 1.0, 2.0] {
                        let mut x = vec![0.0; dim];
                        x[0] = r;
                        let lhs = k.green(t, &x).powf(p);
                        let rhs = id.scale * time_factor * k.green(id.rescaled_time, &x);
                        worst_id = worst_id.max((lhs - rhs).abs() / lhs);
                    }
                }
            }
        }
        Ok(CheckResult::new(
            name,
            worst_mass <= 1e-6 && worst_id <= 1e-12,
            format!("{cases} masses: max rel err {worst_mass:.2e} (1e-6); power identity: {worst_id:.2e} (1e-12)"),
        ))
    };
    run().unwrap_or_else(|e| CheckResult::failed(name, e))
}

/// `k_np_bound ≥ estimate - 3 stderr` for each case `(kernel, α, δ, p)` and
/// order, at `(t, x) = (1, 0)`.
pub fn check_bound_dominance(
    cases: &[(Kernel, f64, f64, f64)],
    orders: &[usize],
    samples: usize,
    seed: u64,
    bound_scale: f64,
) -> CheckResult {
    let name = "bound_dominance";
    let run = || -> lepage_core::Result<CheckResult> {
        let mut ok = true;
        let mut tightest = f64::INFINITY;
        let mut lines = Vec::new();
        for (ci, &(k, alpha, delta, p)) in cases.iter().enumerate() {
            let (_, w) = setup(alpha, delta, k.dim())?;
            let x = vec![0.0; k.dim()];
            for &n in orders {
                let mc = k_np_montecarlo(&k, &w, n, p, 1.0, &x, samples, derive_seed(seed, (ci * 16 + n) as u64))?;
                let bound = bound_scale * k_np_bound(&k, &w, n, p, 1.0, &x)?;
                let lower = mc.estimate - 3.0 * mc.stderr;
                ok &= bound >= lower;
                tightest = tightest.min(bound / lower.max(f64::MIN_POSITIVE));
                if bound < lower {
                    lines.push(format!("{:?} d={} n={n}: bound {bound:.4e} < {lower:.4e}", k.kind(), k.dim()));
                }
            }
        }
        let mut detail = format!("{} cases, smallest bound / (estimate - 3 se) = {tightest:.3}", cases.len() * orders.len());
        if !lines.is_empty() {
            detail.push_str("; ");
            detail.push_str(&lines.join("; "));
        }
        Ok(CheckResult::new(name, ok, detail))
    };
    run().unwrap_or_else(|e| CheckResult::failed(name, e))
}

/// Both assumption reports at `(t, x) = (1, 0)` must converge.
pub fn check_convergence(kernel: &Kernel, alpha: f64, delta: f64, p: f64, atoms: usize, seed: u64, n_max: usize) -> CheckResult {
    let name = "convergence";
    let run = || -> lepage_core::Result<CheckResult> {
        let (params, w) = setup(alpha, delta, kernel.dim())?;
        let cloud = AtomCloud::sample(atoms, seed, params, w);
        let x = vec![0.0; kernel.dim()];
        let a2 = assumption_a2_report(kernel, &w, &cloud, p, 1.0, &x, n_max)?;
        let a3 = assumption_a3_report(kernel, &w, &cloud, p, 1.0, &x, n_max)?;
        Ok(CheckResult::new(
            name,
            a2.verdict == Verdict::Converges && a3.verdict == Verdict::Converges,
            format!(
                "{:?} d={} alpha={alpha} p={p}: A2 {} (last ratio {:.3}), A3 {} (last ratio {:.3})",
                kernel.kind(),
                kernel.dim(),
                a2.verdict,
                a2.ratio_estimate,
                a3.verdict,
                a3.ratio_estimate
            ),
        ))
    };
    run().unwrap_or_else(|e| CheckResult::failed(name, e))
}

/// Admissible range against expected endpoints, within `1e-9`.
pub fn check_p_range(kernel: &Kernel, alpha: f64, delta: f64, expected: (f64, f64)) -> CheckResult {
    let range = admissible_p_range(kernel, alpha, delta);
    let passed = match range {
        PRange::Interval { lo, hi, .. } => (lo - expected.0).abs() <= 1e-9 && (hi - expected.1).abs() <= 1e-9,
        PRange::Empty => false,
    };
    CheckResult::new("p_range", passed, format!("{:?} d={}: {range}", kernel.kind(), kernel.dim()))
}

/// Scanned Stirling constants satisfy both inequalities; `a = 1, b = 0`
/// gives exactly 1.
pub fn check_stirling(a_values: &[f64], b_values: &[f64], n_max: usize) -> CheckResult {
    let name = "stirling";
    let mut ok = true;
    let mut parts = Vec::new();
    for &a in a_values {
        for &b in b_values {
            match stirling_sandwich(a, b, n_max) {
                Ok((lo, hi)) => {
                    ok &= stirling_holds(a, b, n_max, lo, hi) && lo.is_finite() && hi.is_finite();
                    if a == 1.0 && b == 0.0 {
                        ok &= lo == 1.0 && hi == 1.0;
                    }
                    parts.push(format!("({a},{b})->[{lo:.4},{hi:.4}]"));
                }
                Err(e) => return CheckResult::failed(name, e),
            }
        }
    }
    CheckResult::new(name, ok, format!("n<={n_max}: {}", parts.join(" ")))
}

/// Empirical `P(|I_1| > λ)` at the 99.9th percentile `λ` of `|I_1(t=1, x=0)|`
/// against `‖f‖_α^α λ^{-α}` for the heat kernel in dimension 1.
pub fn check_tail(alpha: f64, delta: f64, replications: usize, atoms: usize, seed: u64) -> CheckResult {
    let name = "tail";
    let run = || -> lepage_core::Result<CheckResult> {
        let (p, w) = setup(alpha, delta, 1)?;
        let k = Kernel::heat(1)?;
        let mut values = (0..replications as u64)
            .into_par_iter()
            .map(|r| {
                let c = AtomCloud::sample(atoms, derive_seed(seed, r), p, w);
                additive_solution(&c, &k, 1.0, &[0.0]).map(|u| (u - 1.0).abs())
            })
            .collect::<lepage_core::Result<Vec<f64>>>()?;
        values.sort_by(f64::total_cmp);
        let idx = ((0.999 * replications as f64).ceil() as usize).saturating_sub(1);
        let lambda = values[idx];
        let empirical = values.iter().filter(|&&v| v > lambda).count() as f64 / replications as f64;
        let norm = k.space_time_lp_mass(alpha, 1.0)?;
        let reference = tail_reference(1, alpha, norm, lambda)?;
        let ratio = empirical / reference;
        Ok(CheckResult::new(
            name,
            (0.5..=2.0).contains(&ratio),
            format!("lambda = {lambda:.4e}: empirical {empirical:.3e}, reference {reference:.3e}, ratio {ratio:.3} (in [0.5, 2])"),
        ))
    };
    run().unwrap_or_else(|e| CheckResult::failed(name, e))
}

/// Runs the field of `cfg` twice on the default pool and once each on 1 and
/// 4 threads; all CSV outputs must agree byte for byte, every node must be
/// finite, the `t = 0` row must be 1 and the first run must finish within
/// `budget`.
pub fn check_field(cfg: &RunConfig, budget: Duration) -> CheckResult {
    let name = "field";
    let run = || -> Result<CheckResult> {
        let start = Instant::now();
        let field = run_field(cfg)?;
        let elapsed = start.elapsed();
        let reference = field.to_csv_string();
        let mut identical = run_field(cfg)?.to_csv_string() == reference;
        for threads in [1, 4] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("thread pool");
            identical &= pool.install(|| run_field(cfg))?.to_csv_string() == reference;
        }
        let finite = field.u.iter().all(|v| v.is_finite());
        let first_row = field.u[..field.x.len()].iter().all(|&v| v == 1.0);
        Ok(CheckResult::new(
            name,
            identical && finite && first_row && elapsed <= budget,
            format!(
                "{:?} alpha={} {}x{}: {:.2}s, finite={finite}, t=0 row is 1: {first_row}, byte-identical: {identical}",
                cfg.equation,
                cfg.alpha,
                cfg.grid.t_points,
                cfg.grid.x_points,
                elapsed.as_secs_f64()
            ),
        ))
    };
    run().unwrap_or_else(|e| CheckResult::failed(name, e))
}

/// Kernels of both equations in the configured dimension that satisfy the
/// hypothesis for the configured `α` and `δ`.
fn config_cases(cfg: &RunConfig) -> Vec<(Kernel, f64, f64)> {
    [KernelKind::Heat, KernelKind::Wave]
        .into_iter()
        .filter_map(|kind| Kernel::new(kind, cfg.dim).ok())
        .filter(|k| k.hypothesis_holds(cfg.alpha))
        .map(|k| (k, cfg.alpha, cfg.delta))
        .collect()
}

/// Expected number of atoms inside the test box below which truncation
/// bias of `Z(B)` becomes visible at the CF band for `α ≥ 1`.
const MIN_ATOMS_IN_BOX: f64 = 500.0;
const MAX_CF_ATOMS: usize = 50_000;

/// `opts.cf_atoms`, raised for `α ≥ 1` until the unit box receives about
/// [`MIN_ATOMS_IN_BOX`] atoms on average. For `α < 1` the truncated series
/// converges absolutely and the configured count is kept.
fn cf_atoms(cfg: &RunConfig, opts: &BatteryOptions) -> lepage_core::Result<usize> {
    if cfg.alpha < 1.0 {
        return Ok(opts.cf_atoms);
    }
    let w = cfg.weight()?;
    // The box [-1/2, 1/2]^d lies in the unit ball, where φ^α = c^α.
    let in_box = w.c().powf(cfg.alpha);
    let needed = (MIN_ATOMS_IN_BOX / in_box).ceil() as usize;
    Ok(needed.clamp(opts.cf_atoms, MAX_CF_ATOMS.max(opts.cf_atoms)))
}

/// The battery for the configured equation, stability index and weight.
pub fn run_battery(cfg: &RunConfig, opts: &BatteryOptions) -> Result<DiagnosticsReport> {
    cfg.validate()?;
    let kernel = cfg.kernel()?;
    let cases = config_cases(cfg);
    let mut checks = vec![
        check_stable_law(cfg.alpha, cfg.delta, cfg.dim, opts.cf_replications, cf_atoms(cfg, opts)?, cfg.seed),
        check_oracle_equivalence(&cases, opts.oracle_seeds, opts.oracle_max_atoms),
        check_picard(&cases, opts.oracle_seeds.min(20), opts.oracle_max_atoms, opts.picard_levels),
        check_kernel_closed_forms(opts.kernel_cases, cfg.seed),
    ];
    match choose_p(&kernel, cfg.alpha, cfg.delta) {
        Some(p) => {
            checks.push(check_bound_dominance(
                &[(kernel, cfg.alpha, cfg.delta, p)],
                &[1, 2, 3],
                opts.mc_samples,
                cfg.seed,
                opts.bound_scale,
            ));
            checks.push(check_convergence(&kernel, cfg.alpha, cfg.delta, p, cfg.atoms, cfg.seed, opts.n_max));
        }
        None => checks.push(CheckResult::new("p_range", false, "no admissible p for this configuration".into())),
    }
    checks.push(check_stirling(&[0.5, 1.0, 2.0], &[0.0, 0.5], opts.stirling_n_max));
    Ok(DiagnosticsReport { checks })
}

/// The battery at its default sizes.
pub fn run_verify(cfg: &RunConfig) -> Result<DiagnosticsReport> {
    run_battery(cfg, &BatteryOptions::default())
}
