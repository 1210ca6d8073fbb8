//! Multiplicative noise: the chaos expansion
//!
//! ```text
//! u(t,x) = 1 + Σ_{n≥1} Σ_{j_1<…<j_n} Π_k v_{j_k} · f_n(time-sorted atoms j_1..j_n; t, x)
//! ```
//!
//! where `v_j` is the atom prefactor and `f_n` the chain of Green factors
//! along a strictly time-ordered path. Only the time-sorted arrangement of a
//! subset survives the ordering indicator, so the symmetrized `n!`-sum of
//! the multiple integral collapses to a single chain per subset. Summing
//! chains by their last atom gives the recursion used by [`ChainWeights`]:
//!
//! ```text
//! A_i = v_i (1 + Σ_{T_j < T_i} G_{T_i-T_j}(X_i - X_j) A_j),
//! u(t,x) = 1 + Σ_{T_i < t} G_{t-T_i}(x - X_i) A_i.
//! ```
//!
//! [`multiple_integral_bruteforce`] enumerates subsets directly and is the
//! oracle the recursion is tested against.

mod brute;
mod chain;
mod picard;
mod tail;

pub use brute::{chaos_partial_sum_bruteforce, multiple_integral_bruteforce, SUBSET_LIMIT};
pub use chain::{kernel_chain, solution_dp, ChainWeights};
pub use picard::picard_iterate;
pub use tail::tail_reference;

/// Which equation the field solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// `L u = Ż`: only the first chaos.
    #[default]
    Additive,
    /// `L u = u Ż`: the full chaos expansion.
    Multiplicative,
}

/// Truncation of the chaos evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ChaosConfig {
    /// Highest chaos order kept; `None` keeps every order the cloud supports.
    pub max_order: Option<usize>,
    /// Number of atoms (in arrival order) used; `None` uses the whole cloud.
    pub cloud_size: Option<usize>,
    pub mode: Mode,
}

impl ChaosConfig {
    pub fn multiplicative() -> Self {
        Self {
            mode: Mode::Multiplicative,
            ..Self::default()
        }
    }

    pub fn additive() -> Self {
        Self::default()
    }

    pub fn with_max_order(mut self, n: usize) -> Self {
        self.max_order = Some(n);
        self
    }

    /// Order cap actually applied: additive mode keeps the first chaos only.
    pub fn effective_order(&self) -> Option<usize> {
        match self.mode {
            Mode::Additive => Some(self.max_order.map_or(1, |n| n.min(1))),
            Mode::Multiplicative => self.max_order,
        }
    }
}
