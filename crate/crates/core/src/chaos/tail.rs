use crate::error::{ensure, Result};
use crate::special::ln_factorial;

/// Asymptotic tail `P(|I_n(f)| > λ) ≈ n (n!)^{α-2} α^{n-1} ‖f‖_{α,n}^α (ln λ)^{n-1} λ^{-α}`.
///
/// `f_norm_alpha` is `‖f‖_{α,n}^α = ∫ |f|^α`. The relation is asymptotic in
/// `λ`; for `n = 2` it needs an extra integrability condition on `f` that is
/// not checked here.
pub fn tail_reference(n: usize, alpha: f64, f_norm_alpha: f64, lambda: f64) -> Result<f64> {
    ensure(n >= 1, "n", n as f64, "n >= 1")?;
    ensure(alpha > 0.0 && alpha < 2.0, "alpha", alpha, "0 < alpha < 2")?;
    ensure(f_norm_alpha > 0.0, "f_norm_alpha", f_norm_alpha, "f_norm_alpha > 0")?;
    ensure(lambda > 1.0, "lambda", lambda, "lambda > 1")?;
    let nf = n as f64;
    let ln_const = nf.ln() + (alpha - 2.0) * ln_factorial(n) + (nf - 1.0) * alpha.ln();
    let log_factor = if n == 1 { 1.0 } else { lambda.ln().powf(nf - 1.0) };
    Ok(ln_const.exp() * f_norm_alpha * log_factor * lambda.powf(-alpha))
}
