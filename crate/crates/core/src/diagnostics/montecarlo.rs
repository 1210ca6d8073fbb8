use rand::Rng;
use rayon::prelude::*;

use crate::chaos::kernel_chain;
use crate::error::{ensure, Error, Result};
use crate::kernels::Kernel;
use crate::rng::{derive_seed, substream};
use crate::sampling::{sample_position, WeightFn};
use crate::special::ln_factorial;

/// Antithetic pairs drawn per independent chunk.
pub const MC_CHUNK_PAIRS: usize = 2048;

/// Largest tolerated share of non-finite draws.
const MAX_REJECTED_SHARE: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    /// CLT standard error over antithetic pairs.
    pub stderr: f64,
    /// Draws replaced because the integrand was not finite.
    pub resampled: usize,
}

#[derive(Clone, Copy, Default)]
struct Moments {
    sum: f64,
    sum_sq: f64,
    count: usize,
    rejected: usize,
}

/// Monte Carlo estimate of
/// `K_n^(p)(t,x) = ∫_{T_n(t)} ∫ f_n^p Π φ^{α-p}(x_k) dx dt`.
///
/// Times are sorted uniforms on `[0, t]`, paired antithetically with their
/// reflections `t - s`; positions are i.i.d. with density `φ^α`, so each
/// draw contributes `(t^n / n!) f_n^p Π φ(x_k)^{-p}`. The draws are split in
/// fixed chunks with their own seeds, evaluated in parallel and merged in
/// chunk order, so the result does not depend on the thread count.
#[allow(clippy::too_many_arguments)]
pub fn k_np_montecarlo(
    kernel: &Kernel,
    weight: &WeightFn<f64>,
    n: usize,
    p: f64,
    t: f64,
    x: &[f64],
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    ensure(n >= 1, "n", n as f64, "n >= 1")?;
    ensure(samples >= 100, "samples", samples as f64, "samples >= 100")?;
    ensure(p > 0.0 && p.is_finite(), "p", p, "p > 0")?;
    ensure(t > 0.0 && t.is_finite(), "t", t, "t > 0")?;
    if x.len() != kernel.dim() || weight.dim() != kernel.dim() {
        return Err(Error::Dimension {
            expected: kernel.dim(),
            got: x.len(),
        });
    }
    let pairs = samples.div_ceil(2);
    let chunks = pairs.div_ceil(MC_CHUNK_PAIRS);
    let scale = (n as f64 * t.ln() - ln_factorial(n)).exp();
    let max_rejected = (MAX_REJECTED_SHARE * (2 * pairs) as f64).floor() as usize;

    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let len = MC_CHUNK_PAIRS.min(pairs - c * MC_CHUNK_PAIRS);
            run_chunk(kernel, weight, n, p, t, x, len, derive_seed(seed, c as u64), max_rejected)
        })
        .collect();

    let mut total = Moments::default();
    for m in &parts {
        total.sum += m.sum;
        total.sum_sq += m.sum_sq;
        total.count += m.count;
        total.rejected += m.rejected;
    }
    if total.rejected > max_rejected {
        return Err(Error::NonFiniteDraws {
            rejected: total.rejected,
            draws: 2 * pairs + total.rejected,
        });
    }
    let count = total.count as f64;
    let mean = total.sum / count;
    let var = ((total.sum_sq - count * mean * mean) / (count - 1.0)).max(0.0);
    Ok(McEstimate {
        estimate: scale * mean,
        stderr: scale * (var / count).sqrt(),
        resampled: total.rejected,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_chunk(
    kernel: &Kernel,
    weight: &WeightFn<f64>,
    n: usize,
    p: f64,
    t: f64,
    x: &[f64],
    pairs: usize,
    seed: u64,
    max_rejected: usize,
) -> Moments {
    let mut rng = substream(seed, 0);
    let dim = kernel.dim();
    let mut m = Moments::default();
    let mut u = vec![0.0; n];
    let mut times = vec![0.0; n];
    let mut positions: Vec<Vec<f64>> = vec![Vec::new(); n];
    let pair_value = |u: &[f64], positions: &[Vec<f64>], times: &mut [f64]| -> f64 {
        let mut weight_factor = 1.0;
        for pos in positions {
            weight_factor *= weight.eval(pos).powf(-p);
        }
        let mut half = |reflect: bool| {
            for (k, &v) in u.iter().enumerate() {
                times[k] = if reflect { t * (1.0 - v) } else { t * v };
            }
            times.sort_by(f64::total_cmp);
            let points: Vec<(f64, &[f64])> = times.iter().zip(positions).map(|(&s, y)| (s, y.as_slice())).collect();
            kernel_chain(kernel, &points, t, x).powf(p) * weight_factor
        };
        0.5 * (half(false) + half(true))
    };
    while m.count < pairs {
        for v in u.iter_mut() {
            *v = rng.random();
        }
        for pos in positions.iter_mut() {
            *pos = sample_position(&mut rng, weight, dim);
        }
        let v = pair_value(&u, &positions, &mut times);
        if v.is_finite() {
            m.sum += v;
            m.sum_sq += v * v;
            m.count += 1;
        } else {
            m.rejected += 1;
            if m.rejected > max_rejected {
                break;
            }
        }
    }
    m
}
