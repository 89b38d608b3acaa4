//! Violation reports produced by the verification routines.

use serde::Serialize;

use crate::linalg::Vector;

/// One failing instance of an identity, evaluated on basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Short name of the identity that failed.
    pub condition: String,
    /// Basis indices (1-based) of the arguments at which it failed.
    pub witness: Vec<usize>,
    /// The nonzero value `lhs - rhs`, flattened when it is a matrix.
    pub residual: Vector,
}

/// All violations found, in lexicographic order of the witnesses within
/// each condition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    /// Records a violation when `residual` is nonzero. `witness` is 0-based.
    pub fn check(&mut self, condition: &str, witness: &[usize], residual: Vector) {
        if residual.iter().any(|x| !x.is_zero()) {
            self.violations.push(Violation {
                condition: condition.to_string(),
                witness: witness.iter().map(|i| i + 1).collect(),
                residual,
            });
        }
    }

    pub fn count(&self, condition: &str) -> usize {
        self.violations
            .iter()
            .filter(|v| v.condition == condition)
            .count()
    }

    pub fn extend(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }
}
