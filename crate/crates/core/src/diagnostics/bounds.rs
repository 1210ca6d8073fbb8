use std::f64::consts::{LN_2, PI};

use crate::error::{ensure, Error, Result};
use crate::kernels::{heat_bar_k, heat_k, ln_heat_moment_star, Kernel, KernelKind};
use crate::sampling::WeightFn;
use crate::scalar::norm2;
use crate::special::{ln_gamma, log_add};

/// `C_{η,p,d} = 3 K̄_{p,d} (2^{η-1} ∨ 1) d^η [(2/p)^{η/2} ∨ 1] Γ(d(1-p)/2 + 1)`.
pub fn heat_chain_constant(eta: f64, p: f64, dim: usize) -> f64 {
    ln_heat_chain_constant(eta, p, dim).exp()
}

fn ln_heat_chain_constant(eta: f64, p: f64, dim: usize) -> f64 {
    let d = dim as f64;
    3f64.ln()
        + heat_bar_k(p, dim).ln()
        + (eta - 1.0).max(0.0) * LN_2
        + eta * d.ln()
        + (eta / 2.0 * (2.0 / p).ln()).max(0.0)
        + ln_gamma(d * (1.0 - p) / 2.0 + 1.0)
}

/// `3 (2^{η-1} ∨ 1) 2^{1-p}` for `d = 1`, `3 (2^{η-1} ∨ 1) (2π)^{1-p} Γ(3-p) / (2-p)` for `d = 2`.
pub fn wave_chain_constant(eta: f64, p: f64, dim: usize) -> f64 {
    ln_wave_chain_constant(eta, p, dim).exp()
}

fn ln_wave_chain_constant(eta: f64, p: f64, dim: usize) -> f64 {
    let base = 3f64.ln() + (eta - 1.0).max(0.0) * LN_2;
    if dim == 1 {
        base + (1.0 - p) * LN_2
    } else {
        base + (1.0 - p) * (2.0 * PI).ln() - (2.0 - p).ln() + ln_gamma(3.0 - p)
    }
}

fn check_p(kernel: &Kernel, alpha: f64, p: f64) -> Result<()> {
    let d = kernel.dim() as f64;
    match (kernel.kind(), kernel.dim()) {
        (KernelKind::Heat, _) => ensure(p > alpha && p < 1.0 + 2.0 / d, "p", p, "alpha < p < 1 + 2/d for the heat kernel"),
        (KernelKind::Wave, 1) => ensure(p > alpha && p.is_finite(), "p", p, "p > alpha for the 1-d wave kernel"),
        (KernelKind::Wave, _) => ensure(p > alpha && p < 2.0, "p", p, "alpha < p < 2 for the 2-d wave kernel"),
    }
}

fn check_point(kernel: &Kernel, weight: &WeightFn<f64>, t: f64, x: &[f64]) -> Result<()> {
    ensure(t >= 0.0 && t.is_finite(), "t", t, "t >= 0")?;
    if x.len() != kernel.dim() || weight.dim() != kernel.dim() {
        return Err(Error::Dimension {
            expected: kernel.dim(),
            got: if x.len() != kernel.dim() { x.len() } else { weight.dim() },
        });
    }
    Ok(())
}

fn ln_pos(v: f64) -> f64 {
    if v > 0.0 {
        v.ln()
    } else {
        f64::NEG_INFINITY
    }
}

/// ln of the closed-form upper bound on `K_n^(p)(t, x)`, with `η = δ(p-α)`.
///
/// Heat: `c0^{n(p-α)} C^n {1 + |x|^{nη} + t^{nη/2} Γ((1+nη)/2)} t^{ne} / Γ(ne+1)`, `e = d(1-p)/2 + 1`.
/// Wave: `c0^{n(p-α)} C^n (1 + |x|^{nη} + t^{nη}) t^{an} / Γ(an+1)`.
pub fn ln_k_np_bound(kernel: &Kernel, weight: &WeightFn<f64>, n: usize, p: f64, t: f64, x: &[f64]) -> Result<f64> {
    ensure(n >= 1, "n", n as f64, "n >= 1")?;
    let alpha = weight.alpha();
    check_p(kernel, alpha, p)?;
    check_point(kernel, weight, t, x)?;
    let nf = n as f64;
    let eta = weight.delta() * (p - alpha);
    let n_eta = nf * eta;
    let ln_r = 0.5 * norm2(x).ln();
    let ln_t = ln_pos(t);
    let ln_c0 = nf * (p - alpha) * weight.c0().ln();
    Ok(match kernel.kind() {
        KernelKind::Heat => {
            let e = kernel.dim() as f64 * (1.0 - p) / 2.0 + 1.0;
            let bracket = log_add(
                log_add(0.0, n_eta * ln_r),
                n_eta / 2.0 * ln_t + ln_gamma((1.0 + n_eta) / 2.0),
            );
            ln_c0 + nf * ln_heat_chain_constant(eta, p, kernel.dim()) + bracket + nf * e * ln_t
                - ln_gamma(nf * e + 1.0)
        }
        KernelKind::Wave => {
            let a = kernel.wave_exponent(p);
            let bracket = log_add(log_add(0.0, n_eta * ln_r), n_eta * ln_t);
            ln_c0 + nf * ln_wave_chain_constant(eta, p, kernel.dim()) + bracket + a * nf * ln_t
                - ln_gamma(a * nf + 1.0)
        }
    })
}

pub fn k_np_bound(kernel: &Kernel, weight: &WeightFn<f64>, n: usize, p: f64, t: f64, x: &[f64]) -> Result<f64> {
    ln_k_np_bound(kernel, weight, n, p, t, x).map(f64::exp)
}

/// ln of the bound on `T^{(p/α-1)n} ∫_0^t ∫ G_{t-s}^α(x-y) K_n^(p)(s,y) dy ds`.
///
/// Heat:
/// `c0^{n(p-α)} C^n T^{n(p/α + d(1-p)/2)} / Γ(ne+1) · K_{α,d} {t^{d(1-α)/2+1} [1 + C*_{nη,α,d}(|x|^{nη} + t^{nη/2})]
///  + Γ((1+nη)/2) t^{(nη+d(1-α))/2+1}}`.
/// Wave:
/// `c0^{n(p-α)} C^n T^{(p/α-1+a)n} / Γ(an+1) · [1 + (2^{nη-1} ∨ 1)(|x|^{nη} + t^{nη}) + t^{nη}] · ∫∫ G^α`.
pub fn ln_a3_inner_bound(
    kernel: &Kernel,
    weight: &WeightFn<f64>,
    horizon: f64,
    n: usize,
    p: f64,
    t: f64,
    x: &[f64],
) -> Result<f64> {
    ensure(n >= 1, "n", n as f64, "n >= 1")?;
    let alpha = weight.alpha();
    check_p(kernel, alpha, p)?;
    check_point(kernel, weight, t, x)?;
    ensure(horizon >= t && horizon > 0.0, "horizon", horizon, "horizon >= t and horizon > 0")?;
    let d = kernel.dim() as f64;
    let nf = n as f64;
    let eta = weight.delta() * (p - alpha);
    let n_eta = nf * eta;
    let ln_r = 0.5 * norm2(x).ln();
    let ln_t = ln_pos(t);
    let ln_horizon = horizon.ln();
    let ln_c0 = nf * (p - alpha) * weight.c0().ln();
    Ok(match kernel.kind() {
        KernelKind::Heat => {
            let e = d * (1.0 - p) / 2.0 + 1.0;
            let head = ln_c0 + nf * ln_heat_chain_constant(eta, p, kernel.dim())
                + nf * (p / alpha + d * (1.0 - p) / 2.0) * ln_horizon
                - ln_gamma(nf * e + 1.0)
                + heat_k(alpha, kernel.dim()).ln();
            let t_exp = d * (1.0 - alpha) / 2.0 + 1.0;
            let moments = log_add(n_eta * ln_r, n_eta / 2.0 * ln_t);
            let first = t_exp * ln_t + log_add(0.0, ln_heat_moment_star(n_eta, alpha, kernel.dim()) + moments);
            let second = ln_gamma((1.0 + n_eta) / 2.0) + ((n_eta + d * (1.0 - alpha)) / 2.0 + 1.0) * ln_t;
            head + log_add(first, second)
        }
        KernelKind::Wave => {
            let a = kernel.wave_exponent(p);
            let head = ln_c0 + nf * ln_wave_chain_constant(eta, p, kernel.dim())
                + (p / alpha - 1.0 + a) * nf * ln_horizon
                - ln_gamma(a * nf + 1.0);
            let spread = (n_eta - 1.0).max(0.0) * LN_2 + log_add(n_eta * ln_r, n_eta * ln_t);
            let bracket = log_add(log_add(0.0, spread), n_eta * ln_t);
            head + bracket + ln_pos(kernel.space_time_lp_mass(alpha, t)?)
        }
    })
}
