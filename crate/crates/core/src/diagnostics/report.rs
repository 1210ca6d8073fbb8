use std::fmt;

use crate::error::{Error, Result};
use crate::kernels::Kernel;
use crate::sampling::{gamma_power_sum, AtomCloud, WeightFn};

use super::bounds::{ln_a3_inner_bound, ln_k_np_bound};
use super::range::admissible_p_range;

/// Ratios within `1 ± RATIO_MARGIN` of one are inconclusive.
pub const RATIO_MARGIN: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Converges,
    Diverges,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Converges => "converges",
            Verdict::Diverges => "diverges",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub p: f64,
    /// `(n, a_n)` for `n = 1..=n_max`.
    pub terms: Vec<(usize, f64)>,
    pub verdict: Verdict,
    /// Last ratio `a_{n+1}/a_n`.
    pub ratio_estimate: f64,
    pub notes: String,
}

impl ConvergenceReport {
    /// Ratios `a_{n+1}/a_n`, `None` where `a_n = 0`.
    pub fn ratios(&self) -> Vec<Option<f64>> {
        self.terms
            .windows(2)
            .map(|w| if w[0].1 > 0.0 { Some(w[1].1 / w[0].1) } else { None })
            .collect()
    }
}

/// One line per `n` with the term and the running ratio, then the notes and
/// the verdict.
impl fmt::Display for ConvergenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p = {}", self.p)?;
        let ratios = self.ratios();
        for (k, (n, term)) in self.terms.iter().enumerate() {
            match k.checked_sub(1).and_then(|j| ratios[j]) {
                Some(r) => writeln!(f, "n = {n:>3}  term = {term:.6e}  ratio = {r:.6}")?,
                None => writeln!(f, "n = {n:>3}  term = {term:.6e}  ratio = -")?,
            }
        }
        for line in self.notes.lines() {
            writeln!(f, "note: {line}")?;
        }
        write!(f, "verdict: {}", self.verdict)
    }
}

/// Ratio test on the log-terms `ln a_n`.
///
/// The window is the last third of the ratios (at least 3). Every ratio
/// below `1 - margin` means convergence. Otherwise a power law `r_n ≈ A n^s`
/// is fitted on the window: `s < -margin` with non-increasing ratios is
/// factorial-type decay and also counts as convergence, with the index where
/// the fit crosses `1 - margin` recorded in the notes. Failing that, every
/// ratio above `1 + margin` means divergence.
pub fn classify(ln_terms: &[f64]) -> (Verdict, f64, String) {
    if ln_terms.iter().all(|&l| l == f64::NEG_INFINITY) {
        return (Verdict::Converges, 0.0, "all terms vanish".into());
    }
    if ln_terms.len() < 4 || ln_terms.iter().any(|l| l.is_nan() || *l == f64::INFINITY) {
        return (Verdict::Inconclusive, 0.0, "too few finite terms for a ratio test".into());
    }
    let ln_ratios: Vec<f64> = ln_terms.windows(2).map(|w| w[1] - w[0]).collect();
    if ln_ratios.iter().any(|r| r.is_nan()) {
        return (Verdict::Inconclusive, 0.0, "terms vanish and reappear".into());
    }
    let last = ln_ratios.last().copied().unwrap_or(0.0).exp();
    let window = (ln_ratios.len() / 3).max(3).min(ln_ratios.len());
    let start = ln_ratios.len() - window;
    let tail = &ln_ratios[start..];
    let lo = (1.0 - RATIO_MARGIN).ln();
    let hi = (1.0 + RATIO_MARGIN).ln();
    if tail.iter().all(|&r| r < lo) {
        return (Verdict::Converges, last, format!("last {window} ratios below {}", 1.0 - RATIO_MARGIN));
    }
    // least squares of ln r_n against ln n, n = index of the ratio a_{n+1}/a_n
    let xs: Vec<f64> = (start..ln_ratios.len()).map(|k| ((k + 1) as f64).ln()).collect();
    let mx = xs.iter().sum::<f64>() / window as f64;
    let my = tail.iter().sum::<f64>() / window as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(tail).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let monotone = tail.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    if slope < -RATIO_MARGIN && monotone {
        let crossing = ((lo - my) / slope + mx).exp();
        return (
            Verdict::Converges,
            last,
            format!("ratios decay like n^{slope:.3}; extrapolated below {} from n = {crossing:.0}", 1.0 - RATIO_MARGIN),
        );
    }
    if tail.iter().all(|&r| r > hi) {
        return (Verdict::Diverges, last, format!("last {window} ratios above {}", 1.0 + RATIO_MARGIN));
    }
    (Verdict::Inconclusive, last, format!("ratios stay near 1 (log-log slope {slope:.3})"))
}

fn check_p(kernel: &Kernel, weight: &WeightFn<f64>, cloud: &AtomCloud<f64>, p: f64) -> Result<()> {
    let range = admissible_p_range(kernel, weight.alpha(), weight.delta());
    if !range.contains(p) {
        return Err(Error::Domain {
            name: "p",
            value: p,
            expected: "p inside admissible_p_range for the kernel, alpha and delta",
        });
    }
    if cloud.params().alpha() != weight.alpha() {
        return Err(Error::Domain {
            name: "alpha",
            value: cloud.params().alpha(),
            expected: "cloud and weight built with the same alpha",
        });
    }
    Ok(())
}

fn build(p: f64, ln_terms: Vec<f64>, mut notes: Vec<String>) -> ConvergenceReport {
    let (verdict, ratio_estimate, why) = classify(&ln_terms);
    notes.push(why);
    ConvergenceReport {
        p,
        terms: ln_terms.iter().enumerate().map(|(k, l)| (k + 1, l.exp())).collect(),
        verdict,
        ratio_estimate,
        notes: notes.join("\n"),
    }
}

/// Terms `a_n = (T^{(p/α-1)n} K̂_n)^{1/2} S^{n/2}` with `K̂_n` the closed-form
/// bound on `K_n^(p)(t,x)` and `S = Σ_j Γ_j^{-p/α}` over the cloud plus the
/// integral tail beyond its last arrival.
#[allow(clippy::too_many_arguments)]
pub fn assumption_a2_report(
    kernel: &Kernel,
    weight: &WeightFn<f64>,
    cloud: &AtomCloud<f64>,
    p: f64,
    t: f64,
    x: &[f64],
    n_max: usize,
) -> Result<ConvergenceReport> {
    check_p(kernel, weight, cloud, p)?;
    let alpha = weight.alpha();
    let horizon = cloud.params().horizon();
    let ln_s = gamma_power_sum(cloud, p, true)?.ln();
    let ln_terms = (1..=n_max)
        .map(|n| {
            let nf = n as f64;
            let ln_k = ln_k_np_bound(kernel, weight, n, p, t, x)?;
            Ok(0.5 * ((p / alpha - 1.0) * nf * horizon.ln() + ln_k) + 0.5 * nf * ln_s)
        })
        .collect::<Result<Vec<f64>>>()?;
    let notes = vec![format!("gamma power sum {:.6e} over {} arrivals", ln_s.exp(), cloud.len())];
    Ok(build(p, ln_terms, notes))
}

/// Terms `(B_n S^n)^{(α∧1)/p}` where `B_n` bounds
/// `T^{(p/α-1)n} ∫_0^t ∫ G_{t-s}^α(x-y) K_n^(p)(s,y) dy ds`.
#[allow(clippy::too_many_arguments)]
pub fn assumption_a3_report(
    kernel: &Kernel,
    weight: &WeightFn<f64>,
    cloud: &AtomCloud<f64>,
    p: f64,
    t: f64,
    x: &[f64],
    n_max: usize,
) -> Result<ConvergenceReport> {
    check_p(kernel, weight, cloud, p)?;
    let alpha = weight.alpha();
    let exponent = alpha.min(1.0) / p;
    let ln_s = gamma_power_sum(cloud, p, true)?.ln();
    let ln_terms = (1..=n_max)
        .map(|n| {
            let ln_b = ln_a3_inner_bound(kernel, weight, cloud.params().horizon(), n, p, t, x)?;
            Ok(exponent * (ln_b + n as f64 * ln_s))
        })
        .collect::<Result<Vec<f64>>>()?;
    let notes = vec![
        format!("gamma power sum {:.6e} over {} arrivals", ln_s.exp(), cloud.len()),
        format!("outer exponent (alpha ∧ 1)/p = {exponent:.6}"),
    ];
    Ok(build(p, ln_terms, notes))
}
