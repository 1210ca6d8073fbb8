//! The truncated SαS random measure `Z`, its characteristic function, and the
//! solution of the equation with additive noise.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{ensure, Error, Result};
use crate::kernels::Kernel;
use crate::rng::derive_seed;
use crate::sampling::{AtomCloud, StableParams, WeightFn};
use crate::scalar::{dist2, CompensatedSum, Scalar};

/// Axis-aligned box `[t_lo, t_hi) × Π_k [x_lo_k, x_hi_k)`.
///
/// Half-open sides make boxes that share a face disjoint.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxRegion<F> {
    t_lo: F,
    t_hi: F,
    x_lo: Vec<F>,
    x_hi: Vec<F>,
}

impl<F: Scalar> BoxRegion<F> {
    pub fn new(t_lo: F, t_hi: F, x_lo: Vec<F>, x_hi: Vec<F>) -> Result<Self> {
        ensure(t_lo >= F::zero(), "t_lo", t_lo.as_f64(), "t_lo >= 0")?;
        ensure(t_lo <= t_hi, "t_hi", t_hi.as_f64(), "t_lo <= t_hi")?;
        if x_lo.len() != x_hi.len() {
            return Err(Error::Dimension {
                expected: x_lo.len(),
                got: x_hi.len(),
            });
        }
        for (lo, hi) in x_lo.iter().zip(&x_hi) {
            ensure(lo <= hi, "x_hi", hi.as_f64(), "x_lo <= x_hi componentwise")?;
        }
        Ok(Self {
            t_lo,
            t_hi,
            x_lo,
            x_hi,
        })
    }

    pub fn dim(&self) -> usize {
        self.x_lo.len()
    }

    #[inline]
    pub fn contains(&self, t: F, x: &[F]) -> bool {
        t >= self.t_lo
            && t < self.t_hi
            && x
                .iter()
                .zip(self.x_lo.iter().zip(&self.x_hi))
                .all(|(&v, (&lo, &hi))| v >= lo && v < hi)
    }

    pub fn lebesgue(&self) -> f64 {
        let dt = (self.t_hi - self.t_lo).as_f64();
        self.x_lo
            .iter()
            .zip(&self.x_hi)
            .fold(dt, |acc, (lo, hi)| acc * (*hi - *lo).as_f64())
    }
}

/// `Z(B) = T^{1/α} Σ_i ε_i Γ_i^{-1/α} φ(X_i)^{-1} 1_B(T_i, X_i)` over the cloud.
pub fn z_measure<F: Scalar>(cloud: &AtomCloud<F>, region: &BoxRegion<F>) -> F {
    cloud
        .atoms()
        .iter()
        .enumerate()
        .filter(|(_, a)| region.contains(a.time, &a.pos))
        .map(|(i, _)| cloud.prefactor(i))
        .collect::<CompensatedSum<F>>()
        .value()
}

/// `(1/N) Σ_k exp(i u s_k)`.
pub fn empirical_cf<F: Scalar>(samples: &[F], u: F) -> Result<Complex<F>> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for &s in samples {
        let (sin, cos) = (u * s).sin_cos();
        re.add(cos);
        im.add(sin);
    }
    let n = F::lit(samples.len() as f64);
    Ok(Complex::new(re.value() / n, im.value() / n))
}

/// `exp(-m(B) |u|^α)`, the characteristic function of `Z(B)`.
pub fn target_cf(params: &StableParams<f64>, lebesgue: f64, u: f64) -> f64 {
    (-params.control_measure(lebesgue) * u.abs().powf(params.alpha())).exp()
}

/// Sum over atoms with `T_i < t` of `weights(i) · G_{t-T_i}(x - X_i)`, in time
/// order with compensated accumulation. Shared by every field evaluator so
/// that identical weights produce bit-identical fields.
pub(crate) fn kernel_sum<F: Scalar>(
    cloud: &AtomCloud<F>,
    kernel: &Kernel,
    t: F,
    x: &[F],
    mut weights: impl FnMut(usize) -> F,
) -> F {
    let atoms = cloud.atoms();
    let mut acc = CompensatedSum::new();
    for &i in cloud.time_order() {
        let a = &atoms[i];
        if !(a.time < t) {
            break;
        }
        let g = kernel.green_r2(t - a.time, dist2(x, &a.pos));
        if g != F::zero() {
            acc.add(g * weights(i));
        }
    }
    acc.value()
}

pub(crate) fn check_target<F: Scalar>(cloud: &AtomCloud<F>, kernel: &Kernel, x: &[F]) -> Result<()> {
    kernel.require_hypothesis(cloud.params().alpha().as_f64())?;
    if x.len() != kernel.dim() || cloud.params().dim() != kernel.dim() {
        return Err(Error::Dimension {
            expected: kernel.dim(),
            got: if x.len() != kernel.dim() { x.len() } else { cloud.params().dim() },
        });
    }
    Ok(())
}

/// `1 + T^{1/α} Σ_i ε_i Γ_i^{-1/α} φ(X_i)^{-1} G_{t-T_i}(x - X_i)`.
pub fn additive_solution<F: Scalar>(cloud: &AtomCloud<F>, kernel: &Kernel, t: F, x: &[F]) -> Result<F> {
    check_target(cloud, kernel, x)?;
    Ok(F::one() + kernel_sum(cloud, kernel, t, x, |i| cloud.prefactor(i)))
}

/// `Z(B)` over `replications` independent clouds of `atoms` atoms each.
///
/// Replication `r` uses the cloud seeded with `derive_seed(seed, r)`; the
/// output order does not depend on the thread count.
pub fn z_replications(
    params: StableParams<f64>,
    weight: WeightFn<f64>,
    region: &BoxRegion<f64>,
    atoms: usize,
    replications: usize,
    seed: u64,
) -> Vec<f64> {
    (0..replications as u64)
        .into_par_iter()
        .map(|r| z_measure(&AtomCloud::sample(atoms, derive_seed(seed, r), params, weight), region))
        .collect()
}

/// One row of the characteristic-function comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CfRow {
    pub u: f64,
    pub empirical_re: f64,
    pub empirical_im: f64,
    pub target: f64,
    pub band: f64,
}

impl CfRow {
    /// Real parts agree within the band.
    pub fn passes(&self) -> bool {
        (self.empirical_re - self.target).abs() <= self.band
    }
}

/// Compares the empirical characteristic function of `samples` with the SαS
/// target at each frequency, using the band `4/√N`.
pub fn cf_comparison(samples: &[f64], params: &StableParams<f64>, lebesgue: f64, freqs: &[f64]) -> Result<Vec<CfRow>> {
    let band = 4.0 / (samples.len() as f64).sqrt();
    freqs
        .iter()
        .map(|&u| {
            let cf = empirical_cf(samples, u)?;
            Ok(CfRow {
                u,
                empirical_re: cf.re,
                empirical_im: cf.im,
                target: target_cf(params, lebesgue, u),
                band,
            })
        })
        .collect()
}

pub fn cf_rows_csv(rows: &[CfRow]) -> String {
    let mut out = String::from("u,empirical_re,empirical_im,target,band\n");
    for r in rows {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            r.u, r.empirical_re, r.empirical_im, r.target, r.band
        ));
    }
    out
}
