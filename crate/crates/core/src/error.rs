use thiserror::Error;

use crate::kernels::KernelKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} = {value} is outside its domain: {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("weight exponent delta = {delta} does not exceed dim/alpha = {bound}; phi^alpha is not integrable")]
    NonNormalizable { delta: f64, bound: f64 },

    #[error("power sum of Gamma_j^(-p/alpha) diverges for p = {p} <= alpha = {alpha}")]
    Divergent { p: f64, alpha: f64 },

    #[error("tail correction needs at least one arrival")]
    EmptyCloud,

    #[error("{kind:?} kernel in dimension {dim} fails the integrability hypothesis for alpha = {alpha}")]
    Hypothesis {
        kind: KernelKind,
        dim: usize,
        alpha: f64,
    },

    #[error("wave kernel is only a function for dim 1 or 2, got {0}")]
    WaveDimension(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("enumerating C({atoms}, {order}) = {count:.3e} subsets exceeds the limit {limit:.0e}")]
    TooManySubsets {
        atoms: usize,
        order: usize,
        count: f64,
        limit: f64,
    },

    #[error("empirical characteristic function of an empty sample")]
    EmptySamples,

    #[error("{rejected} of {draws} Monte Carlo draws were non-finite")]
    NonFiniteDraws { rejected: usize, draws: usize },

    #[error("cloud CSV line {line}: {msg}")]
    CloudCsv { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn ensure(cond: bool, name: &'static str, value: f64, expected: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            expected,
        })
    }
}
