//! Green functions of the heat operator `∂_t - ½Δ` and of the wave operator
//! `∂²_t - Δ` (dimension 1 and 2), with the closed-form integrals of their
//! powers.
//!
//! The heat kernel is the Gaussian density `(2πt)^{-d/2} exp(-|x|²/(2t))`.
//! Every kernel vanishes for `t ≤ 0`; the wave kernels vanish on `|x| ≥ t`.

use std::f64::consts::PI;

use crate::error::{ensure, Error, Result};
use crate::scalar::{norm2, Scalar};
use crate::special::gamma;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelKind {
    Heat,
    Wave,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Kernel {
    kind: KernelKind,
    dim: usize,
}

/// `G_t^p(x) = scale · t^{d(1-p)/2} · G_{rescaled_time}(x)` for the heat kernel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeatPowerIdentity {
    pub scale: f64,
    pub rescaled_time: f64,
}

/// `∫_{R^d} G_t^p = spatial_coef · t^{spatial_exp}` and
/// `∫_0^t ∫_{R^d} G_{t-s}^p = space_time_coef · t^{space_time_exp}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coefficients {
    pub p: f64,
    pub spatial_coef: f64,
    pub spatial_exp: f64,
    pub space_time_coef: f64,
    pub space_time_exp: f64,
}

impl Kernel {
    pub fn new(kind: KernelKind, dim: usize) -> Result<Self> {
        ensure(dim >= 1, "dim", dim as f64, "dim >= 1")?;
        if kind == KernelKind::Wave && dim > 2 {
            return Err(Error::WaveDimension(dim));
        }
        Ok(Self { kind, dim })
    }

    pub fn heat(dim: usize) -> Result<Self> {
        Self::new(KernelKind::Heat, dim)
    }

    pub fn wave(dim: usize) -> Result<Self> {
        Self::new(KernelKind::Wave, dim)
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `G_t(x)`.
    #[inline]
    pub fn green<F: Scalar>(&self, t: F, x: &[F]) -> F {
        self.green_r2(t, norm2(x))
    }

    /// `G_t` at a point with squared norm `r2`.
    #[inline]
    pub fn green_r2<F: Scalar>(&self, t: F, r2: F) -> F {
        if t <= F::zero() {
            return F::zero();
        }
        match (self.kind, self.dim) {
            (KernelKind::Heat, d) => {
                let two_t = t + t;
                let norm = (F::PI() * two_t).powf(F::lit(-(d as f64) / 2.0));
                norm * (-r2 / two_t).exp()
            }
            (KernelKind::Wave, 1) => {
                if r2 < t * t {
                    F::lit(0.5)
                } else {
                    F::zero()
                }
            }
            (KernelKind::Wave, _) => {
                let gap = t * t - r2;
                if gap > F::zero() && r2.sqrt() < t {
                    (F::TAU() * gap.sqrt()).recip()
                } else {
                    F::zero()
                }
            }
        }
    }

    /// Integrability of `G^α` over `[0,T] × R^d`: `α < 1 + 2/d` for the heat
    /// kernel, always for the wave kernel in dimension at most 2.
    pub fn hypothesis_holds(&self, alpha: f64) -> bool {
        if !(alpha > 0.0 && alpha < 2.0) {
            return false;
        }
        match self.kind {
            KernelKind::Heat => alpha < 1.0 + 2.0 / self.dim as f64,
            KernelKind::Wave => self.dim <= 2,
        }
    }

    pub(crate) fn require_hypothesis(&self, alpha: f64) -> Result<()> {
        if self.hypothesis_holds(alpha) {
            Ok(())
        } else {
            Err(Error::Hypothesis {
                kind: self.kind,
                dim: self.dim,
                alpha,
            })
        }
    }

    /// Admissible `p` for the space-time `L^p` mass of the kernel.
    fn check_lp(&self, p: f64) -> Result<()> {
        let d = self.dim as f64;
        match (self.kind, self.dim) {
            (KernelKind::Heat, _) => ensure(p > 0.0 && p < 1.0 + 2.0 / d, "p", p, "0 < p < 1 + 2/d for the heat kernel"),
            (KernelKind::Wave, 1) => ensure(p > 0.0 && p.is_finite(), "p", p, "p > 0 for the 1-d wave kernel"),
            (KernelKind::Wave, _) => ensure(p > 0.0 && p < 2.0, "p", p, "0 < p < 2 for the 2-d wave kernel"),
        }
    }

    /// Closed-form integral coefficients of `G^p`.
    pub fn coefficients(&self, p: f64) -> Result<Coefficients> {
        self.check_lp(p)?;
        let d = self.dim as f64;
        let c = match (self.kind, self.dim) {
            (KernelKind::Heat, _) => {
                let bar_k = heat_bar_k(p, self.dim);
                let e = d * (1.0 - p) / 2.0;
                Coefficients {
                    p,
                    spatial_coef: bar_k,
                    spatial_exp: e,
                    space_time_coef: bar_k / (e + 1.0),
                    space_time_exp: e + 1.0,
                }
            }
            (KernelKind::Wave, 1) => Coefficients {
                p,
                spatial_coef: 2f64.powf(1.0 - p),
                spatial_exp: 1.0,
                space_time_coef: 2f64.powf(-p),
                space_time_exp: 2.0,
            },
            (KernelKind::Wave, _) => {
                let base = (2.0 * PI).powf(1.0 - p) / (2.0 - p);
                Coefficients {
                    p,
                    spatial_coef: base,
                    spatial_exp: 2.0 - p,
                    space_time_coef: base / (3.0 - p),
                    space_time_exp: 3.0 - p,
                }
            }
        };
        Ok(c)
    }

    /// `∫_0^t ∫_{R^d} G_{t-s}^p(x-y) dy ds`, which does not depend on `x`.
    pub fn space_time_lp_mass(&self, p: f64, t: f64) -> Result<f64> {
        ensure(t >= 0.0, "t", t, "t >= 0")?;
        let c = self.coefficients(p)?;
        Ok(c.space_time_coef * t.powf(c.space_time_exp))
    }

    /// Exponent `a` of the wave estimates: 2 in dimension 1, `3 - p` in dimension 2.
    pub fn wave_exponent(&self, p: f64) -> f64 {
        if self.dim == 1 {
            2.0
        } else {
            3.0 - p
        }
    }

    /// Coefficient table as CSV, one row per `p`; inadmissible `p` are skipped.
    pub fn coefficient_table_csv(&self, ps: &[f64]) -> String {
        let mut out = String::from("p,spatial_coef,spatial_exp,space_time_coef,space_time_exp\n");
        for c in ps.iter().filter_map(|&p| self.coefficients(p).ok()) {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                c.p, c.spatial_coef, c.spatial_exp, c.space_time_coef, c.space_time_exp
            ));
        }
        out
    }
}

/// `K̄_{p,d} = (2π)^{d(1-p)/2} p^{-d/2}`.
pub fn heat_bar_k(p: f64, dim: usize) -> f64 {
    let d = dim as f64;
    (2.0 * PI).powf(d * (1.0 - p) / 2.0) * p.powf(-d / 2.0)
}

/// `K_{p,d} = K̄_{p,d} / (d(1-p)/2 + 1)`.
pub fn heat_k(p: f64, dim: usize) -> f64 {
    heat_bar_k(p, dim) / (dim as f64 * (1.0 - p) / 2.0 + 1.0)
}

pub fn heat_power_identity(p: f64, dim: usize, t: f64) -> Result<HeatPowerIdentity> {
    ensure(p > 0.0, "p", p, "p > 0")?;
    ensure(t > 0.0, "t", t, "t > 0")?;
    Ok(HeatPowerIdentity {
        scale: heat_bar_k(p, dim),
        rescaled_time: t / p,
    })
}

/// `C'_{γ,p,d} = K_{p,d} (2^{γ-1} ∨ 1) (1 ∧ p)^{-γ/2} [1 + 2^{γ/2} Γ((γ+d)/2) / Γ(d/2)]`.
pub fn heat_moment_constant(gamma_exp: f64, p: f64, dim: usize) -> f64 {
    heat_k(p, dim) * heat_moment_star(gamma_exp, p, dim)
}

/// `C'_{γ,p,d} / K_{p,d}`, in log form so that large `γ` stays finite.
pub fn ln_heat_moment_star(gamma_exp: f64, p: f64, dim: usize) -> f64 {
    let d = dim as f64;
    let ln_gauss_moment = gamma_exp / 2.0 * 2f64.ln() + crate::special::ln_gamma((gamma_exp + d) / 2.0)
        - crate::special::ln_gamma(d / 2.0);
    (gamma_exp - 1.0).max(0.0) * 2f64.ln() - gamma_exp / 2.0 * p.min(1.0).ln()
        + crate::special::log_add(0.0, ln_gauss_moment)
}

pub fn heat_moment_star(gamma_exp: f64, p: f64, dim: usize) -> f64 {
    let d = dim as f64;
    (2f64.powf(gamma_exp - 1.0)).max(1.0)
        * p.min(1.0).powf(-gamma_exp / 2.0)
        * (1.0 + 2f64.powf(gamma_exp / 2.0) * gamma((gamma_exp + d) / 2.0) / gamma(d / 2.0))
}

/// Upper bound on `∫_0^t ∫ G_{t-s}^p(x-y) |y|^γ dy ds` for the heat kernel:
/// `C'_{γ,p,d} t^{d(1-p)/2+1} (|x|^γ + t^{γ/2})`.
pub fn heat_moment_bound(gamma_exp: f64, p: f64, dim: usize, t: f64, x: &[f64]) -> Result<f64> {
    ensure(gamma_exp > 0.0, "gamma", gamma_exp, "gamma > 0")?;
    ensure(p > 0.0 && p < 1.0 + 2.0 / dim as f64, "p", p, "0 < p < 1 + 2/d")?;
    ensure(t > 0.0, "t", t, "t > 0")?;
    if x.len() != dim {
        return Err(Error::Dimension {
            expected: dim,
            got: x.len(),
        });
    }
    let r = norm2(x).sqrt();
    let e = dim as f64 * (1.0 - p) / 2.0 + 1.0;
    Ok(heat_moment_constant(gamma_exp, p, dim) * t.powf(e) * (r.powf(gamma_exp) + t.powf(gamma_exp / 2.0)))
}
