//! Closed-form bounds and explicit constructions for projective linear
//! groups, checked exactly against computed statistics.

mod algebra;
mod bounds;
mod witness;

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use serde::{Deserialize, Serialize};

pub use algebra::{algebra_checks, intersection_algebra_dims};
pub use bounds::{bound_suite, cyclic_chain_length, thm31_bounds, BoundContext, FamilyContext, FamilyShape};
pub use witness::{
    guaranteed_length, verify_witness, witness_minimal_base_check, witness_sequence, ChainMode, MinimalBaseCheck,
    Transvection, WitnessChain, WitnessStep, WitnessVerification, CHAIN_MODE_ORDER_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabError {
    BadParameters(String),
    DimensionMismatch,
    MismatchedAction,
    MissingStatistic(&'static str),
    Budget,
}

impl fmt::Display for LabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabError::BadParameters(s) => write!(f, "bad parameters: {s}"),
            LabError::DimensionMismatch => write!(f, "subspaces live in different ambient spaces"),
            LabError::MismatchedAction => write!(f, "action table does not match the chain parameters"),
            LabError::MissingStatistic(s) => write!(f, "statistic {s} is required but was not computed"),
            LabError::Budget => write!(f, "group too large for the requested check"),
        }
    }
}

/// One evaluated inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub statement: String,
    pub lhs: String,
    pub rhs: String,
    /// False when the comparison fell back to floating point.
    pub exact: bool,
    pub pass: bool,
}

impl BoundCheck {
    pub fn exact(name: &str, statement: &str, lhs: impl fmt::Display, rhs: impl fmt::Display, pass: bool) -> Self {
        BoundCheck {
            name: name.to_string(),
            statement: statement.to_string(),
            lhs: format!("{lhs}"),
            rhs: format!("{rhs}"),
            exact: true,
            pass,
        }
    }

    pub(crate) fn float(name: &str, statement: &str, lhs: f64, rhs: f64) -> Self {
        BoundCheck {
            name: name.to_string(),
            statement: statement.to_string(),
            lhs: format!("{lhs:.6}"),
            rhs: format!("{rhs:.6}"),
            exact: false,
            pass: lhs <= rhs + bounds::EPSILON,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub checks: alloc::vec::Vec<BoundCheck>,
}

impl BoundReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}
