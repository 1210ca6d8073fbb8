use crate::error::{ensure, Error, Result};
use crate::kernels::Kernel;
use crate::noise::check_target;
use crate::sampling::AtomCloud;
use crate::scalar::{CompensatedSum, Scalar};
use crate::special::binomial;

use super::kernel_chain;

/// Largest number of subsets [`multiple_integral_bruteforce`] will enumerate.
pub const SUBSET_LIMIT: f64 = 1e7;

/// Order-`n` chaos term by enumerating every `n`-subset of atoms, each
/// evaluated once along its time-sorted path.
pub fn multiple_integral_bruteforce<F: Scalar>(
    cloud: &AtomCloud<F>,
    kernel: &Kernel,
    n: usize,
    t: F,
    x: &[F],
) -> Result<F> {
    ensure(n >= 1, "n", n as f64, "n >= 1")?;
    check_target(cloud, kernel, x)?;
    let j = cloud.len();
    if n > j {
        return Ok(F::zero());
    }
    let count = binomial(j, n);
    if count > SUBSET_LIMIT {
        return Err(Error::TooManySubsets {
            atoms: j,
            order: n,
            count,
            limit: SUBSET_LIMIT,
        });
    }
    // rank of each atom in time order; ties keep arrival order
    let mut rank = vec![0usize; j];
    for (r, &i) in cloud.time_order().iter().enumerate() {
        rank[i] = r;
    }
    let atoms = cloud.atoms();
    let mut acc = CompensatedSum::new();
    let mut subset: Vec<usize> = (0..n).collect();
    let mut sorted = vec![0usize; n];
    loop {
        sorted.copy_from_slice(&subset);
        sorted.sort_by_key(|&i| rank[i]);
        let points: Vec<(F, &[F])> = sorted.iter().map(|&i| (atoms[i].time, atoms[i].pos.as_slice())).collect();
        let chain = kernel_chain(kernel, &points, t, x);
        if chain != F::zero() {
            let weight = sorted.iter().fold(F::one(), |p, &i| p * cloud.prefactor(i));
            acc.add(weight * chain);
        }
        if !next_combination(&mut subset, j) {
            break;
        }
    }
    Ok(acc.value())
}

/// Advances `c` to the next `k`-combination of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for m in i + 1..k {
                c[m] = c[m - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `1 + Σ_{n=1}^{max_n} I_n` by enumeration.
pub fn chaos_partial_sum_bruteforce<F: Scalar>(
    cloud: &AtomCloud<F>,
    kernel: &Kernel,
    max_n: usize,
    t: F,
    x: &[F],
) -> Result<F> {
    let mut acc = CompensatedSum::new();
    acc.add(F::one());
    for n in 1..=max_n {
        acc.add(multiple_integral_bruteforce(cloud, kernel, n, t, x)?);
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::additive_solution;
    use crate::sampling::{Atom, Sign, StableParams, WeightFn};

    #[test]
    fn combinations_enumerate_all() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    fn three_atoms() -> AtomCloud<f64> {
        let p = StableParams::new(1.5, 1.0, 1).unwrap();
        let w = WeightFn::new(1.5, &p).unwrap();
        let atoms = vec![
            Atom { sign: Sign::Plus, gamma: 0.5, time: 0.6, pos: vec![0.1] },
            Atom { sign: Sign::Minus, gamma: 1.2, time: 0.2, pos: vec![-0.2] },
            Atom { sign: Sign::Plus, gamma: 2.0, time: 0.4, pos: vec![1.5] },
        ];
        AtomCloud::from_atoms(atoms, p, w, 0).unwrap()
    }

    #[test]
    fn pairs_by_hand() {
        let c = three_atoms();
        let k = Kernel::heat(1).unwrap();
        let (t, x) = (1.0, 0.0);
        let a = c.atoms();
        let v = |i: usize| c.prefactor(i);
        let g = |dt: f64, dx: f64| k.green(dt, &[dx]);
        // time order: atom 1 (0.2), atom 2 (0.4), atom 0 (0.6)
        let pair = |first: usize, second: usize| {
            v(first) * v(second)
                * g(a[second].time - a[first].time, a[second].pos[0] - a[first].pos[0])
                * g(t - a[second].time, x - a[second].pos[0])
        };
        let expected = pair(1, 2) + pair(1, 0) + pair(2, 0);
        let got = multiple_integral_bruteforce(&c, &k, 2, t, &[x]).unwrap();
        assert!((got - expected).abs() < 1e-13 * expected.abs().max(1.0));
    }

    #[test]
    fn first_order_is_the_additive_term() {
        let c = three_atoms();
        for k in [Kernel::heat(1).unwrap(), Kernel::wave(1).unwrap()] {
            let i1 = multiple_integral_bruteforce(&c, &k, 1, 0.9, &[0.05]).unwrap();
            let add = additive_solution(&c, &k, 0.9, &[0.05]).unwrap() - 1.0;
            assert!((i1 - add).abs() < 1e-13 * (1.0 + add.abs()));
        }
    }

    #[test]
    fn nilpotent_beyond_cloud_size_and_guards() {
        let c = three_atoms();
        let k = Kernel::heat(1).unwrap();
        assert_eq!(multiple_integral_bruteforce(&c, &k, 4, 1.0, &[0.0]).unwrap(), 0.0);
        assert!(multiple_integral_bruteforce(&c, &k, 0, 1.0, &[0.0]).is_err());
        let p = StableParams::new(1.5, 1.0, 1).unwrap();
        let big = AtomCloud::sample(200, 1, p, WeightFn::new(1.5, &p).unwrap());
        assert!(matches!(
            multiple_integral_bruteforce(&big, &k, 5, 1.0, &[0.0]),
            Err(Error::TooManySubsets { .. })
        ));
        let empty = big.prefix(0);
        assert_eq!(multiple_integral_bruteforce(&empty, &k, 2, 1.0, &[0.0]).unwrap(), 0.0);
    }
}
