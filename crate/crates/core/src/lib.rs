//! Simulation of stochastic heat and wave equations driven by symmetric
//! α-stable (SαS) noise, built on the LePage series representation of the
//! noise.
//!
//! The randomness of every object in this crate is a single [`AtomCloud`]:
//! the sequence of atoms `(ε_i, Γ_i, T_i, X_i)` of signs, Poisson arrival
//! times, uniform times in `[0, T]` and positions with density `φ^α`. From a
//! cloud we evaluate
//!
//! * the random measure `Z(B)` of space-time boxes ([`noise::z_measure`]),
//! * the additive-noise solution ([`noise::additive_solution`]),
//! * the multiplicative (Anderson model) solution as a chaos expansion, either
//!   by brute-force enumeration of multiple integrals or by the `O(J²)` chain
//!   recursion ([`chaos`]),
//! * Picard iterates of the mild formulation ([`chaos::picard_iterate`]).
//!
//! The [`kernels`] module holds the heat and wave Green functions with their
//! closed-form `L^p` integrals, and [`diagnostics`] checks the convergence
//! conditions of the chaos series numerically.
//!
//! Most of the numerical core is generic over the scalar type through
//! [`Scalar`]; the aliases below fix it to `f64` (and `f32` where it makes
//! sense). Diagnostics work in `f64` only.

// `!(x > y)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chaos;
pub mod diagnostics;
pub mod error;
pub mod kernels;
pub mod noise;
pub mod rng;
pub mod sampling;
pub mod scalar;
pub mod special;

pub use chaos::{ChainWeights, ChaosConfig, Mode};
pub use error::{Error, Result};
pub use kernels::{Kernel, KernelKind};
pub use noise::BoxRegion;
pub use sampling::{stable_constant, Atom, AtomCloud, Sign, StableParams, WeightFn};
pub use scalar::Scalar;

/// Stability parameters in double precision.
pub type Params = StableParams<f64>;
/// Weight function `φ` in double precision.
pub type Weight = WeightFn<f64>;
/// Atom cloud in double precision.
pub type Cloud = AtomCloud<f64>;
/// Space-time box in double precision.
pub type Region = BoxRegion<f64>;
/// Frozen chain weights in double precision.
pub type Chain = ChainWeights<f64>;

pub type Params32 = StableParams<f32>;
pub type Weight32 = WeightFn<f32>;
pub type Cloud32 = AtomCloud<f32>;
pub type Chain32 = ChainWeights<f32>;
