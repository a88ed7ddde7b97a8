//! Floating-point decision policy shared by every threshold comparison.
//!
//! Eigenvalues come out of an iterative solver, so a comparison against a
//! closed-form threshold is only meaningful up to an epsilon. Every decision
//! records whether it fell inside that band.

use serde::Serialize;

pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Gap below which two eigenvalues are treated as one repeated value.
pub const MULTIPLICITY_GAP: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub holds: bool,
    /// The compared quantities were within epsilon of each other.
    pub borderline: bool,
}

/// `value ≤ threshold`, accepting anything inside the epsilon band.
pub fn at_most(value: f64, threshold: f64, eps: f64) -> Decision {
    Decision {
        holds: value <= threshold + eps,
        borderline: (value - threshold).abs() < eps,
    }
}

/// `value < threshold`, rejecting anything inside the epsilon band.
pub fn strictly_below(value: f64, threshold: f64, eps: f64) -> Decision {
    Decision {
        holds: value < threshold - eps,
        borderline: (value - threshold).abs() < eps,
    }
}

/// `⌊x⌋` computed as `⌊x + eps⌋`, flagged when `x` sits within eps of an integer.
pub fn floor_guarded(x: f64, eps: f64) -> (i64, bool) {
    let up = (x + eps).floor();
    let down = (x - eps).floor();
    (up as i64, up != down)
}
