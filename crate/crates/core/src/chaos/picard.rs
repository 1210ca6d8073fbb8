use crate::error::{Error, Result};
use crate::kernels::Kernel;
use crate::noise::kernel_sum;
use crate::sampling::AtomCloud;
use crate::scalar::Scalar;

/// Picard iterates `u_0, …, u_{n_iters}` at `(t, x)`:
/// `u_0 ≡ 1`, `u_{m+1}(t,x) = 1 + Σ_i v_i G_{t-T_i}(x-X_i) u_m(T_i, X_i)`.
///
/// The values `u_m(T_i, X_i)` at the atom sites are computed level by level
/// with the same recursion.
pub fn picard_iterate<F: Scalar>(
    cloud: &AtomCloud<F>,
    kernel: &Kernel,
    n_iters: usize,
    t: F,
    x: &[F],
) -> Result<Vec<F>> {
    if x.len() != kernel.dim() || cloud.params().dim() != kernel.dim() {
        return Err(Error::Dimension {
            expected: kernel.dim(),
            got: x.len(),
        });
    }
    let atoms = cloud.atoms();
    let mut out = Vec::with_capacity(n_iters + 1);
    out.push(F::one());
    let mut sites = vec![F::one(); cloud.len()];
    for m in 1..=n_iters {
        let level = &sites;
        out.push(F::one() + kernel_sum(cloud, kernel, t, x, |i| cloud.prefactor(i) * level[i]));
        if m < n_iters {
            sites = atoms
                .iter()
                .map(|a| F::one() + kernel_sum(cloud, kernel, a.time, &a.pos, |j| cloud.prefactor(j) * level[j]))
                .collect();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::additive_solution;
    use crate::sampling::{StableParams, WeightFn};

    #[test]
    fn first_levels() {
        let p = StableParams::new(0.7, 1.0, 1).unwrap();
        let c = AtomCloud::sample(50, 3, p, WeightFn::new(1.5, &p).unwrap());
        let k = Kernel::heat(1).unwrap();
        let u = picard_iterate(&c, &k, 2, 0.8, &[0.2]).unwrap();
        assert_eq!(u.len(), 3);
        assert_eq!(u[0], 1.0);
        assert_eq!(u[1], additive_solution(&c, &k, 0.8, &[0.2]).unwrap());
        assert_eq!(picard_iterate(&c, &k, 0, 0.8, &[0.2]).unwrap(), vec![1.0]);
        assert!(picard_iterate(&c, &k, 1, 0.8, &[0.2, 0.0]).is_err());
    }
}
