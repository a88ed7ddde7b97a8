use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

/// A failed precondition of one of the certified statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    OddOrder,
    Irregular,
    Disconnected,
    DegreeBelowThree,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Violation::OddOrder => "odd order",
            Violation::Irregular => "not regular",
            Violation::Disconnected => "disconnected",
            Violation::DegreeBelowThree => "degree below 3",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("hypothesis violated: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))]
pub struct HypothesisError(pub Vec<Violation>);

/// Violations of "connected d-regular with d ≥ 3".
pub fn regular_violations(g: &Graph) -> Vec<Violation> {
    let mut out = Vec::new();
    if !g.is_connected() {
        out.push(Violation::Disconnected);
    }
    match g.regular_degree() {
        None => out.push(Violation::Irregular),
        Some(d) if d < 3 => out.push(Violation::DegreeBelowThree),
        Some(_) => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path};

    #[test]
    fn lists_every_failure() {
        assert!(regular_violations(&complete(4)).is_empty());
        assert_eq!(regular_violations(&cycle(5)), vec![Violation::DegreeBelowThree]);
        let two = complete(4).disjoint_union(&path(2));
        assert_eq!(
            regular_violations(&two),
            vec![Violation::Disconnected, Violation::Irregular]
        );
        let e = HypothesisError(vec![Violation::OddOrder, Violation::Irregular]);
        assert_eq!(e.to_string(), "hypothesis violated: odd order, not regular");
    }
}
