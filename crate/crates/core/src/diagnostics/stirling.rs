use crate::error::{ensure, Result};
use crate::special::{ln_factorial, ln_gamma};

/// `ln Γ(an+1+b) - a ln n!`.
fn ln_ratio(a: f64, b: f64, n: usize) -> f64 {
    ln_gamma(a * n as f64 + 1.0 + b) - a * ln_factorial(n)
}

/// Smallest `C_lower, C_upper ≥ 1` with
/// `C_lower^{-n} (n!)^a ≤ Γ(an+1+b) ≤ C_upper^n (n!)^a` for `1 ≤ n ≤ n_max`.
pub fn stirling_sandwich(a: f64, b: f64, n_max: usize) -> Result<(f64, f64)> {
    ensure(a > 0.0, "a", a, "a > 0")?;
    ensure(n_max >= 1, "n_max", n_max as f64, "n_max >= 1")?;
    ensure(a + 1.0 + b > 0.0, "b", b, "a + 1 + b > 0")?;
    let mut ln_lower = 0.0f64;
    let mut ln_upper = 0.0f64;
    for n in 1..=n_max {
        let r = ln_ratio(a, b, n) / n as f64;
        ln_upper = ln_upper.max(r);
        ln_lower = ln_lower.max(-r);
    }
    Ok((ln_lower.exp(), ln_upper.exp()))
}

/// Checks both inequalities for every `n ≤ n_max`, in log space with a
/// relative slack of `1e-12`.
pub fn stirling_holds(a: f64, b: f64, n_max: usize, c_lower: f64, c_upper: f64) -> bool {
    (1..=n_max).all(|n| {
        let nf = n as f64;
        let r = ln_ratio(a, b, n);
        let slack = 1e-12 * (1.0 + r.abs());
        r <= nf * c_upper.ln() + slack && -nf * c_lower.ln() <= r + slack
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_case() {
        assert_eq!(stirling_sandwich(1.0, 0.0, 50).unwrap(), (1.0, 1.0));
    }

    #[test]
    fn central_binomial_case() {
        let (lo, hi) = stirling_sandwich(2.0, 0.0, 50).unwrap();
        assert_eq!(lo, 1.0);
        // C(2n, n) ≤ 4^n and the maximum of C(2n,n)^{1/n} is reached at n = 50
        assert!(hi < 4.0 && hi > 3.5);
        assert!(stirling_holds(2.0, 0.0, 50, lo, hi));
        assert!(!stirling_holds(2.0, 0.0, 50, lo, hi * 0.99));
    }

    #[test]
    fn guards() {
        assert!(stirling_sandwich(0.0, 0.0, 5).is_err());
        assert!(stirling_sandwich(1.0, 0.0, 0).is_err());
    }
}
