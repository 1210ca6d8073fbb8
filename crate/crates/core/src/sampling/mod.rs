//! LePage atoms, the weight function `φ` and the stability constant `C_α`.

mod cloud;
mod csv;
mod weight;

pub use cloud::{gamma_power_sum, Atom, AtomCloud, Sign};
pub(crate) use cloud::sample_position;
pub use weight::WeightFn;

use crate::error::{ensure, Result};
use crate::scalar::Scalar;
use crate::special::gamma;

/// Stability index `α ∈ (0, 2)`, horizon `T > 0` and spatial dimension `d ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StableParams<F> {
    alpha: F,
    horizon: F,
    dim: usize,
}

impl<F: Scalar> StableParams<F> {
    pub fn new(alpha: F, horizon: F, dim: usize) -> Result<Self> {
        let a = alpha.as_f64();
        ensure(a > 0.0 && a < 2.0, "alpha", a, "0 < alpha < 2")?;
        let h = horizon.as_f64();
        ensure(h > 0.0 && h.is_finite(), "horizon", h, "horizon > 0")?;
        ensure(dim >= 1, "dim", dim as f64, "dim >= 1")?;
        Ok(Self {
            alpha,
            horizon,
            dim,
        })
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn horizon(&self) -> F {
        self.horizon
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `T^{1/α}`, the factor that turns `φ` into the space-time weight `ψ`.
    pub fn time_scale(&self) -> F {
        self.horizon.powf(self.alpha.recip())
    }

    /// Control measure `m(B) = C_α^{-1} Leb(B)` of a set of Lebesgue measure `leb`.
    pub fn control_measure(&self, leb: f64) -> f64 {
        leb / stable_constant(self.alpha.as_f64()).expect("alpha validated at construction")
    }
}

/// Width of the window around `α = 1` where the removable singularity of
/// `Γ(1-α) cos(πα/2)` is replaced by its Taylor expansion.
const UNIT_ALPHA_WINDOW: f64 = 1e-6;

/// `C_α = (∫₀^∞ sin x / x^α dx)^{-1}`.
///
/// The integral equals `Γ(1-α) cos(πα/2)`. Writing `ε = 1 - α` it becomes
/// `Γ(1+ε) sin(πε/2) / ε`, which is regular at `ε = 0` with value `π/2`.
pub fn stable_constant(alpha: f64) -> Result<f64> {
    ensure(alpha > 0.0 && alpha < 2.0, "alpha", alpha, "0 < alpha < 2")?;
    let eps = 1.0 - alpha;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let sinc_part = if eps.abs() < UNIT_ALPHA_WINDOW {
        let z = half_pi * eps;
        half_pi * (1.0 - z * z / 6.0)
    } else {
        (half_pi * eps).sin() / eps
    };
    Ok(1.0 / (gamma(2.0 - alpha) * sinc_part))
}
