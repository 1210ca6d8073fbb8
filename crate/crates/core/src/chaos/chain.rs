use rayon::prelude::*;

use crate::error::Result;
use crate::kernels::Kernel;
use crate::noise::{check_target, kernel_sum};
use crate::sampling::AtomCloud;
use crate::scalar::{dist2, CompensatedSum, Scalar};

use super::ChaosConfig;

/// `f_n(t_1,x_1,…,t_n,x_n,t,x) = Π_k G_{t_{k+1}-t_k}(x_{k+1}-x_k) · 1{0<t_1<…<t_n<t}`
/// with `(t_{n+1}, x_{n+1}) = (t, x)`. The empty chain is 1.
pub fn kernel_chain<F: Scalar>(kernel: &Kernel, points: &[(F, &[F])], t: F, x: &[F]) -> F {
    let mut prev_time = F::zero();
    for &(s, _) in points {
        if !(s > prev_time) {
            return F::zero();
        }
        prev_time = s;
    }
    if !(t > prev_time) && !points.is_empty() {
        return F::zero();
    }
    let mut prod = F::one();
    for k in 0..points.len() {
        let (s, y) = points[k];
        let (next_t, next_x) = points.get(k + 1).copied().unwrap_or((t, x));
        prod = prod * kernel.green_r2(next_t - s, dist2(next_x, y));
        if prod == F::zero() {
            break;
        }
    }
    prod
}

#[derive(Clone, Debug)]
enum Accumulators<F> {
    /// `A_i` over all chain lengths.
    Full(Vec<F>),
    /// `A_i^{(m)}`, chains of exactly `m + 1` atoms ending at atom `i`.
    ByOrder(Vec<Vec<F>>),
}

/// Per-atom chain sums of a cloud for one kernel, frozen after construction.
///
/// Building is `O(N J²)` for order cap `N` (`O(J²)` uncapped); evaluating the
/// field at a point is `O(J)` and read-only, so many targets can be evaluated
/// in parallel.
#[derive(Clone, Debug)]
pub struct ChainWeights<F> {
    cloud: AtomCloud<F>,
    kernel: Kernel,
    acc: Accumulators<F>,
    /// Σ over orders of the accumulators, by atom.
    total: Vec<F>,
}

impl<F: Scalar> ChainWeights<F> {
    /// Runs the recursion in time order. `max_order = None` keeps all orders.
    pub fn build(cloud: &AtomCloud<F>, kernel: Kernel, max_order: Option<usize>) -> Result<Self> {
        kernel.require_hypothesis(cloud.params().alpha().as_f64())?;
        let n_atoms = cloud.len();
        let atoms = cloud.atoms();
        let order = cloud.time_order();
        let acc = match max_order {
            None => {
                let mut a = vec![F::zero(); n_atoms];
                for (k, &i) in order.iter().enumerate() {
                    let ai = &atoms[i];
                    let mut s = CompensatedSum::new();
                    s.add(F::one());
                    for &j in &order[..k] {
                        let aj = &atoms[j];
                        if !(aj.time < ai.time) {
                            break;
                        }
                        let g = kernel.green_r2(ai.time - aj.time, dist2(&ai.pos, &aj.pos));
                        if g != F::zero() {
                            s.add(g * a[j]);
                        }
                    }
                    a[i] = cloud.prefactor(i) * s.value();
                }
                Accumulators::Full(a)
            }
            Some(cap) => {
                let mut levels = vec![vec![F::zero(); n_atoms]; cap];
                let mut sums = vec![CompensatedSum::<F>::new(); cap];
                for (k, &i) in order.iter().enumerate() {
                    if cap == 0 {
                        break;
                    }
                    let ai = &atoms[i];
                    sums.iter_mut().for_each(|s| *s = CompensatedSum::new());
                    for &j in &order[..k] {
                        let aj = &atoms[j];
                        if !(aj.time < ai.time) {
                            break;
                        }
                        let g = kernel.green_r2(ai.time - aj.time, dist2(&ai.pos, &aj.pos));
                        if g != F::zero() {
                            for m in 1..cap {
                                sums[m].add(g * levels[m - 1][j]);
                            }
                        }
                    }
                    let v = cloud.prefactor(i);
                    levels[0][i] = v;
                    for m in 1..cap {
                        levels[m][i] = v * sums[m].value();
                    }
                }
                Accumulators::ByOrder(levels)
            }
        };
        let total = match &acc {
            Accumulators::Full(a) => a.clone(),
            Accumulators::ByOrder(levels) => (0..n_atoms)
                .map(|i| {
                    if levels.len() == 1 {
                        levels[0][i]
                    } else {
                        levels.iter().map(|l| l[i]).collect::<CompensatedSum<F>>().value()
                    }
                })
                .collect(),
        };
        Ok(Self {
            cloud: cloud.clone(),
            kernel,
            acc,
            total,
        })
    }

    pub fn cloud(&self) -> &AtomCloud<F> {
        &self.cloud
    }

    pub fn kernel(&self) -> Kernel {
        self.kernel
    }

    /// Accumulated chain weight `A_i` of atom `i` (arrival index).
    pub fn accumulated(&self, i: usize) -> F {
        self.total[i]
    }

    /// Order cap the weights were built with.
    pub fn max_order(&self) -> Option<usize> {
        match &self.acc {
            Accumulators::Full(_) => None,
            Accumulators::ByOrder(l) => Some(l.len()),
        }
    }

    /// `u(t, x)`.
    pub fn evaluate(&self, t: F, x: &[F]) -> F {
        F::one() + kernel_sum(&self.cloud, &self.kernel, t, x, |i| self.total[i])
    }

    /// Contribution of each chaos order `1..=N` at `(t, x)`; only available
    /// when built with an order cap.
    pub fn evaluate_orders(&self, t: F, x: &[F]) -> Option<Vec<F>> {
        match &self.acc {
            Accumulators::Full(_) => None,
            Accumulators::ByOrder(levels) => Some(
                levels
                    .iter()
                    .map(|l| kernel_sum(&self.cloud, &self.kernel, t, x, |i| l[i]))
                    .collect(),
            ),
        }
    }

    /// `u` at many targets, in input order.
    pub fn evaluate_many(&self, targets: &[(F, Vec<F>)]) -> Vec<F> {
        targets.par_iter().map(|(t, x)| self.evaluate(*t, x)).collect()
    }
}

/// `u(t, x)` over the (possibly truncated) cloud via the chain recursion.
pub fn solution_dp<F: Scalar>(
    cloud: &AtomCloud<F>,
    kernel: &Kernel,
    cfg: &ChaosConfig,
    t: F,
    x: &[F],
) -> Result<F> {
    check_target(cloud, kernel, x)?;
    let weights = match cfg.cloud_size {
        Some(j) if j < cloud.len() => ChainWeights::build(&cloud.prefix(j), *kernel, cfg.effective_order())?,
        _ => ChainWeights::build(cloud, *kernel, cfg.effective_order())?,
    };
    Ok(weights.evaluate(t, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaos::Mode;
    use crate::noise::additive_solution;
    use crate::sampling::{Atom, Sign, StableParams, WeightFn};

    #[test]
    fn chain_conventions() {
        let w1 = Kernel::wave(1).unwrap();
        assert_eq!(kernel_chain::<f64>(&w1, &[], 1.0, &[0.5]), 1.0);
        let p = [0.0];
        assert_eq!(kernel_chain(&w1, &[(0.2, &p[..])], 1.0, &[0.5]), 0.5);
        assert_eq!(kernel_chain(&w1, &[(0.2, &p[..])], 1.0, &[0.9]), 0.0);
        assert_eq!(kernel_chain(&w1, &[(0.5, &p[..]), (0.3, &p[..])], 1.0, &[0.0]), 0.0);
        assert_eq!(kernel_chain(&w1, &[(0.3, &p[..]), (0.3, &p[..])], 1.0, &[0.0]), 0.0);
        assert_eq!(kernel_chain(&w1, &[(0.0, &p[..])], 1.0, &[0.0]), 0.0);
        assert_eq!(kernel_chain(&w1, &[(0.3, &p[..])], 0.3, &[0.0]), 0.0);
        assert_eq!(kernel_chain(&w1, &[(0.2, &p[..]), (0.4, &p[..])], 1.0, &[0.0]), 0.25);
    }

    fn cloud(n: usize, seed: u64) -> AtomCloud<f64> {
        let p = StableParams::new(1.5, 1.0, 1).unwrap();
        AtomCloud::sample(n, seed, p, WeightFn::new(1.5, &p).unwrap())
    }

    #[test]
    fn empty_and_single_atom() {
        let h = Kernel::heat(1).unwrap();
        let cfg = ChaosConfig::multiplicative();
        assert_eq!(solution_dp(&cloud(0, 1), &h, &cfg, 0.8, &[0.1]).unwrap(), 1.0);
        let c = cloud(1, 1);
        let a = &c.atoms()[0];
        let expected = 1.0 + c.prefactor(0) * h.green(0.8 - a.time, &[0.1 - a.pos[0]]);
        let got = solution_dp(&c, &h, &cfg, 0.8, &[0.1]).unwrap();
        assert!((got - expected).abs() <= 1e-15 * expected.abs());
    }

    #[test]
    fn additive_mode_is_bit_identical() {
        let c = cloud(300, 9);
        let k = Kernel::wave(1).unwrap();
        for (t, x) in [(0.3, 0.0), (0.9, 0.2), (1.0, -0.7)] {
            let a = additive_solution(&c, &k, t, &[x]).unwrap();
            let d = solution_dp(&c, &k, &ChaosConfig::additive(), t, &[x]).unwrap();
            let m1 = solution_dp(&c, &k, &ChaosConfig::multiplicative().with_max_order(1), t, &[x]).unwrap();
            assert_eq!(a.to_bits(), d.to_bits());
            assert_eq!(a.to_bits(), m1.to_bits());
        }
    }

    #[test]
    fn order_resolved_sums_to_capped_total() {
        let c = cloud(40, 2);
        let k = Kernel::wave(1).unwrap();
        let w = ChainWeights::build(&c, k, Some(6)).unwrap();
        let parts = w.evaluate_orders(0.9, &[0.1]).unwrap();
        assert_eq!(parts.len(), 6);
        let total = 1.0 + parts.iter().sum::<f64>();
        let u = w.evaluate(0.9, &[0.1]);
        assert!((u - total).abs() < 1e-12 * (1.0 + parts.iter().map(|v| v.abs()).sum::<f64>()));
        assert!(ChainWeights::build(&c, k, None).unwrap().evaluate_orders(0.9, &[0.1]).is_none());
    }

    #[test]
    fn zero_order_cap_gives_one() {
        let c = cloud(30, 4);
        let k = Kernel::heat(1).unwrap();
        let cfg = ChaosConfig {
            max_order: Some(0),
            cloud_size: None,
            mode: Mode::Multiplicative,
        };
        assert_eq!(solution_dp(&c, &k, &cfg, 1.0, &[0.0]).unwrap(), 1.0);
    }

    #[test]
    fn tied_times_do_not_chain() {
        let p = StableParams::new(1.5, 1.0, 1).unwrap();
        let w = WeightFn::new(1.5, &p).unwrap();
        let atoms = vec![
            Atom { sign: Sign::Plus, gamma: 1.0, time: 0.5, pos: vec![0.0] },
            Atom { sign: Sign::Plus, gamma: 2.0, time: 0.5, pos: vec![0.1] },
        ];
        let c = AtomCloud::from_atoms(atoms, p, w, 0).unwrap();
        let k = Kernel::wave(1).unwrap();
        let u = solution_dp(&c, &k, &ChaosConfig::multiplicative(), 1.0, &[0.0]).unwrap();
        let a = solution_dp(&c, &k, &ChaosConfig::additive(), 1.0, &[0.0]).unwrap();
        assert_eq!(u, a);
    }

    #[test]
    fn cloud_size_truncates() {
        let c = cloud(50, 8);
        let k = Kernel::heat(1).unwrap();
        let cfg = ChaosConfig {
            cloud_size: Some(10),
            ..ChaosConfig::multiplicative()
        };
        let a = solution_dp(&c, &k, &cfg, 1.0, &[0.0]).unwrap();
        let b = solution_dp(&c.prefix(10), &k, &ChaosConfig::multiplicative(), 1.0, &[0.0]).unwrap();
        assert_eq!(a, b);
    }
}
