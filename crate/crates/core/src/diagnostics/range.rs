use std::fmt;

use crate::kernels::{Kernel, KernelKind};

/// Set of admissible `p`: always open at the lower end `α`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PRange {
    Interval { lo: f64, hi: f64, hi_closed: bool },
    Empty,
}

impl PRange {
    pub fn contains(&self, p: f64) -> bool {
        match *self {
            PRange::Interval { lo, hi, hi_closed } => p > lo && (p < hi || (hi_closed && p == hi)),
            PRange::Empty => false,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PRange::Empty)
    }

    /// Midpoint of the interval, a convenient admissible choice.
    pub fn midpoint(&self) -> Option<f64> {
        match *self {
            PRange::Interval { lo, hi, .. } => Some(0.5 * (lo + hi)),
            PRange::Empty => None,
        }
    }
}

impl fmt::Display for PRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PRange::Interval { lo, hi, hi_closed } => {
                write!(f, "({lo}, {hi}{}", if hi_closed { "]" } else { ")" })
            }
            PRange::Empty => f.write_str("empty"),
        }
    }
}

/// Values of `p` for which the series bounds apply.
///
/// Heat: `α < p ≤ 2`, `p < 1 + 2/d` and `δ(p-α) < d(1-p) + 2`, the last one
/// being `p < (d + 2 + δα)/(δ + d)`. Wave: `(α, 2]` for `d = 1`, `(α, 2)` for
/// `d = 2`. Parameters that violate the integrability hypothesis give the
/// empty range.
pub fn admissible_p_range(kernel: &Kernel, alpha: f64, delta: f64) -> PRange {
    if !kernel.hypothesis_holds(alpha) || !(delta > 0.0) {
        return PRange::Empty;
    }
    let d = kernel.dim() as f64;
    let (hi, hi_closed) = match (kernel.kind(), kernel.dim()) {
        (KernelKind::Heat, _) => {
            let mut hi = (2.0, true);
            for bound in [1.0 + 2.0 / d, (d + 2.0 + delta * alpha) / (delta + d)] {
                if bound <= hi.0 {
                    hi = (bound, false);
                }
            }
            hi
        }
        (KernelKind::Wave, 1) => (2.0, true),
        (KernelKind::Wave, _) => (2.0, false),
    };
    if hi > alpha {
        PRange::Interval {
            lo: alpha,
            hi,
            hi_closed,
        }
    } else {
        PRange::Empty
    }
}
