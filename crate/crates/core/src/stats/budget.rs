use alloc::sync::Arc;
use core::fmt;

use serde::{Deserialize, Serialize};

/// Default number of search nodes each statistic may visit.
pub const DEFAULT_NODE_CAP: u64 = 20_000_000;

/// Polled during searches; returning `true` aborts the search.
pub type Interrupt = Arc<dyn Fn() -> bool + Send + Sync>;

#[derive(Clone)]
pub struct SearchBudget {
    pub node_cap: u64,
    pub interrupt: Option<Interrupt>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { node_cap: DEFAULT_NODE_CAP, interrupt: None }
    }
}

impl SearchBudget {
    pub fn with_node_cap(node_cap: u64) -> Self {
        SearchBudget { node_cap: node_cap.max(1), interrupt: None }
    }
}

impl fmt::Debug for SearchBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SearchBudget")
            .field("node_cap", &self.node_cap)
            .field("interrupt", &self.interrupt.is_some())
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Statistic {
    #[serde(rename = "b")]
    MinBase,
    #[serde(rename = "B")]
    MinimalBase,
    #[serde(rename = "H")]
    Height,
    #[serde(rename = "I")]
    Irredundant,
    #[serde(rename = "RC")]
    Relational,
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistic::MinBase => "b",
            Statistic::MinimalBase => "B",
            Statistic::Height => "H",
            Statistic::Irredundant => "I",
            Statistic::Relational => "RC",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StatsError {
    NodeCapExceeded {
        statistic: Statistic,
        cap: u64,
    },
    Interrupted {
        statistic: Statistic,
    },
    /// Searches need `|G|` to fit in 128 bits.
    OrderTooLarge,
    MaxLenTooSmall(usize),
}

impl StatsError {
    pub fn is_budget(&self) -> bool {
        matches!(self, StatsError::NodeCapExceeded { .. } | StatsError::Interrupted { .. })
    }
}

impl fmt::Display for StatsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatsError::NodeCapExceeded { statistic, cap } => {
                write!(f, "search for {statistic} exceeded the node cap of {cap}")
            }
            StatsError::Interrupted { statistic } => write!(f, "search for {statistic} was interrupted"),
            StatsError::OrderTooLarge => write!(f, "group order does not fit in 128 bits"),
            StatsError::MaxLenTooSmall(l) => write!(f, "tuple length cap {l} is below 2"),
        }
    }
}

pub(crate) struct Meter<'a> {
    budget: &'a SearchBudget,
    statistic: Statistic,
    pub(crate) nodes: u64,
}

impl<'a> Meter<'a> {
    pub(crate) fn new(budget: &'a SearchBudget, statistic: Statistic) -> Self {
        Meter { budget, statistic, nodes: 0 }
    }

    pub(crate) fn tick(&mut self) -> Result<(), StatsError> {
        self.nodes += 1;
        if self.nodes > self.budget.node_cap {
            return Err(StatsError::NodeCapExceeded { statistic: self.statistic, cap: self.budget.node_cap });
        }
        if self.nodes % 256 == 1 {
            if let Some(stop) = &self.budget.interrupt {
                if stop() {
                    return Err(StatsError::Interrupted { statistic: self.statistic });
                }
            }
        }
        Ok(())
    }
}
