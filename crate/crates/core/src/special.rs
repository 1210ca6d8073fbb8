//! Gamma function and ball/sphere measures.

use std::f64::consts::PI;

#[inline]
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

#[inline]
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// ln n!
#[inline]
pub fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// Lebesgue measure of the unit ball in `R^d`.
pub fn unit_ball_volume(dim: usize) -> f64 {
    let h = dim as f64 / 2.0;
    PI.powf(h) / gamma(h + 1.0)
}

/// Surface measure of the unit sphere `S^{d-1}`.
pub fn unit_sphere_area(dim: usize) -> f64 {
    let h = dim as f64 / 2.0;
    2.0 * PI.powf(h) / gamma(h)
}

/// `ln(e^a + e^b)` without overflow; `-inf` entries are neutral.
pub fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// Binomial coefficient as a float (exact for the small values we guard with).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
