//! Numerical checks of the convergence apparatus: Monte Carlo estimates of
//! `K_n^(p)`, their closed-form bounds, the admissible range of `p`, ratio
//! tests on the series of Assumptions A2/A3 and Stirling constants.

mod bounds;
mod montecarlo;
mod range;
mod report;
mod stirling;

pub use bounds::{
    heat_chain_constant, k_np_bound, ln_a3_inner_bound, ln_k_np_bound, wave_chain_constant,
};
pub use montecarlo::{k_np_montecarlo, McEstimate, MC_CHUNK_PAIRS};
pub use range::{admissible_p_range, PRange};
pub use report::{
    assumption_a2_report, assumption_a3_report, classify, ConvergenceReport, Verdict, RATIO_MARGIN,
};
pub use stirling::{stirling_holds, stirling_sandwich};
