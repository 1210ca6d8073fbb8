use crate::error::{Error, Result};
use crate::scalar::{norm2, Scalar};
use crate::special::{unit_ball_volume, unit_sphere_area};

use super::StableParams;

/// `φ(x) = c (1_{|x|≤1} + |x|^{-δ} 1_{|x|>1})` normalized so that `∫ φ^α = 1`.
///
/// `1/φ(x) ≤ c0 (1 + |x|^δ)` holds with `c0 = 1/c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightFn<F> {
    delta: F,
    c: F,
    c0: F,
    alpha: F,
    dim: usize,
    /// `c^α Vol(B₁)`: probability that a position falls in the unit ball.
    ball_mass: f64,
    /// `δα - d > 0`: the radial tail index of the density `φ^α`.
    tail_index: f64,
}

impl<F: Scalar> WeightFn<F> {
    /// Solves `c^α (Vol(B₁) + |S^{d-1}| / (δα - d)) = 1` for `c`.
    pub fn new(delta: F, params: &StableParams<F>) -> Result<Self> {
        let alpha = params.alpha().as_f64();
        let d = params.dim();
        let delta_f = delta.as_f64();
        let bound = d as f64 / alpha;
        if !(delta_f > bound) {
            return Err(Error::NonNormalizable {
                delta: delta_f,
                bound,
            });
        }
        let tail_index = delta_f * alpha - d as f64;
        let vol = unit_ball_volume(d);
        let mass = vol + unit_sphere_area(d) / tail_index;
        let c = mass.powf(-1.0 / alpha);
        Ok(Self {
            delta,
            c: F::lit(c),
            c0: F::lit(1.0 / c),
            alpha: params.alpha(),
            dim: d,
            ball_mass: vol / mass,
            tail_index,
        })
    }

    pub fn delta(&self) -> F {
        self.delta
    }

    pub fn c(&self) -> F {
        self.c
    }

    pub fn c0(&self) -> F {
        self.c0
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ball_mass(&self) -> f64 {
        self.ball_mass
    }

    pub fn tail_index(&self) -> f64 {
        self.tail_index
    }

    /// `φ(x)` as a function of `|x|`.
    #[inline]
    pub fn eval_radius(&self, r: F) -> F {
        if r <= F::one() {
            self.c
        } else {
            self.c * r.powf(-self.delta)
        }
    }

    #[inline]
    pub fn eval(&self, x: &[F]) -> F {
        self.eval_radius(norm2(x).sqrt())
    }

    /// Density `φ^α(x)` of the atom positions.
    pub fn density(&self, x: &[F]) -> F {
        self.eval(x).powf(self.alpha)
    }
}
