use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Open01, StandardNormal};

use crate::error::{Error, Result};
use crate::rng::{substream, GAP_STREAM, POSITION_STREAM, SIGN_STREAM, TIME_STREAM};
use crate::scalar::Scalar;

use super::{StableParams, WeightFn};

/// Rademacher sign `ε_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn value<F: Scalar>(self) -> F {
        match self {
            Sign::Plus => F::one(),
            Sign::Minus => -F::one(),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// One term `(ε_i, Γ_i, T_i, X_i)` of the LePage series.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom<F> {
    pub sign: Sign,
    pub gamma: F,
    pub time: F,
    pub pos: Vec<F>,
}

/// The truncated LePage sequence, ordered by increasing `Γ_i`, together with
/// a permutation listing the atoms by increasing time.
///
/// A cloud is immutable once built. Ties in time are ordered by the primary
/// (arrival) order.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomCloud<F> {
    atoms: Vec<Atom<F>>,
    time_order: Vec<usize>,
    prefactors: Vec<F>,
    params: StableParams<F>,
    weight: WeightFn<F>,
    seed: u64,
}

impl<F: Scalar> AtomCloud<F> {
    /// Draws the first `count` atoms of the LePage series for `seed`.
    ///
    /// Arrivals are cumulative sums of unit exponentials, times are uniform on
    /// `(0, T]` and positions have density `φ^α`: with probability
    /// `c^α Vol(B₁)` uniform in the unit ball, otherwise at radius
    /// `(1-U)^{-1/(δα-d)}` in a uniform direction.
    pub fn sample(count: usize, seed: u64, params: StableParams<F>, weight: WeightFn<F>) -> Self {
        let dim = params.dim();
        let horizon = params.horizon().as_f64();
        let mut signs = substream(seed, SIGN_STREAM);
        let mut gaps = substream(seed, GAP_STREAM);
        let mut times = substream(seed, TIME_STREAM);
        let mut positions = substream(seed, POSITION_STREAM);

        let mut arrival = 0.0f64;
        let mut atoms = Vec::with_capacity(count);
        for _ in 0..count {
            let sign = if signs.random::<bool>() {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let u: f64 = Open01.sample(&mut gaps);
            arrival += -u.ln();
            let time = horizon * (1.0 - times.random::<f64>());
            let pos = sample_position(&mut positions, &weight, dim);
            atoms.push(Atom {
                sign,
                gamma: F::lit(arrival),
                time: F::lit(time),
                pos: pos.into_iter().map(F::lit).collect(),
            });
        }
        Self::assemble(atoms, params, weight, seed)
    }

    /// Builds a cloud from explicit atoms, checking the cloud invariants.
    pub fn from_atoms(
        atoms: Vec<Atom<F>>,
        params: StableParams<F>,
        weight: WeightFn<F>,
        seed: u64,
    ) -> Result<Self> {
        let horizon = params.horizon();
        let mut prev = F::zero();
        for atom in &atoms {
            if atom.pos.len() != params.dim() {
                return Err(Error::Dimension {
                    expected: params.dim(),
                    got: atom.pos.len(),
                });
            }
            let g = atom.gamma.as_f64();
            if !(atom.gamma > prev) || !g.is_finite() {
                return Err(Error::Domain {
                    name: "gamma",
                    value: g,
                    expected: "strictly increasing positive arrivals",
                });
            }
            prev = atom.gamma;
            let t = atom.time;
            if !(t >= F::zero() && t <= horizon) {
                return Err(Error::Domain {
                    name: "time",
                    value: t.as_f64(),
                    expected: "0 <= time <= horizon",
                });
            }
        }
        Ok(Self::assemble(atoms, params, weight, seed))
    }

    fn assemble(atoms: Vec<Atom<F>>, params: StableParams<F>, weight: WeightFn<F>, seed: u64) -> Self {
        let mut time_order: Vec<usize> = (0..atoms.len()).collect();
        // stable sort: equal times keep arrival order
        time_order.sort_by(|&i, &j| atoms[i].time.partial_cmp(&atoms[j].time).expect("finite times"));
        let scale = params.time_scale();
        let inv_alpha = params.alpha().recip();
        let prefactors = atoms
            .iter()
            .map(|a| scale * a.sign.value::<F>() * a.gamma.powf(-inv_alpha) / weight.eval(&a.pos))
            .collect();
        Self {
            atoms,
            time_order,
            prefactors,
            params,
            weight,
            seed,
        }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom<F>] {
        &self.atoms
    }

    pub fn time_order(&self) -> &[usize] {
        &self.time_order
    }

    pub fn params(&self) -> &StableParams<F> {
        &self.params
    }

    pub fn weight(&self) -> &WeightFn<F> {
        &self.weight
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `v_i = T^{1/α} ε_i Γ_i^{-1/α} / φ(X_i)`, the weight atom `i` carries
    /// in every series built on the cloud.
    #[inline]
    pub fn prefactor(&self, i: usize) -> F {
        self.prefactors[i]
    }

    pub fn prefactors(&self) -> &[F] {
        &self.prefactors
    }

    /// The first `k` atoms (in arrival order).
    pub fn prefix(&self, k: usize) -> Self {
        let k = k.min(self.len());
        Self::assemble(self.atoms[..k].to_vec(), self.params, self.weight, self.seed)
    }

    /// Copy of the cloud with atom `i` replaced by `f(atom)`; invariants are rechecked.
    pub fn with_atom(&self, i: usize, f: impl FnOnce(&mut Atom<F>)) -> Result<Self> {
        let mut atoms = self.atoms.clone();
        f(&mut atoms[i]);
        Self::from_atoms(atoms, self.params, self.weight, self.seed)
    }

    /// Copy of the cloud with every sign flipped.
    pub fn negated(&self) -> Self {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom {
                sign: a.sign.flipped(),
                ..a.clone()
            })
            .collect();
        Self::assemble(atoms, self.params, self.weight, self.seed)
    }
}

pub(crate) fn sample_position<R: Rng>(rng: &mut R, weight: &WeightFn<impl Scalar>, dim: usize) -> Vec<f64> {
    let mix: f64 = rng.random();
    let v: f64 = rng.random();
    let radius = if mix < weight.ball_mass() {
        v.powf(1.0 / dim as f64)
    } else {
        (1.0 - v).powf(-1.0 / weight.tail_index())
    };
    match dim {
        1 => {
            if rng.random::<bool>() {
                vec![radius]
            } else {
                vec![-radius]
            }
        }
        2 => {
            let theta = 2.0 * PI * rng.random::<f64>();
            vec![radius * theta.cos(), radius * theta.sin()]
        }
        _ => loop {
            let g: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
            let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 0.0 {
                break g.into_iter().map(|x| radius * x / n).collect();
            }
        },
    }
}

/// `Σ_j Γ_j^{-p/α}` over the cloud, optionally plus `∫_{Γ_J}^∞ s^{-p/α} ds`
/// for the arrivals beyond the last one.
pub fn gamma_power_sum<F: Scalar>(cloud: &AtomCloud<F>, p: F, tail: bool) -> Result<F> {
    let alpha = cloud.params().alpha();
    if !(p > alpha) {
        return Err(Error::Divergent {
            p: p.as_f64(),
            alpha: alpha.as_f64(),
        });
    }
    let s = p / alpha;
    let body = cloud
        .atoms()
        .iter()
        .map(|a| a.gamma.powf(-s))
        .fold(F::zero(), |acc, x| acc + x);
    if !tail {
        return Ok(body);
    }
    let last = cloud.atoms().last().ok_or(Error::EmptyCloud)?.gamma;
    Ok(body + last.powf(F::one() - s) / (s - F::one()))
}
