//! Work limits for the bounded decision procedures.

/// Caps on the search performed by the decomposition and completion
/// loops. Exceeding any cap yields an `Inconclusive` result, never a
/// wrong verdict. All caps are counted deterministically, so identical
/// input and budget produce identical output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of case splits over the whole decomposition.
    pub max_splits: u32,
    /// Maximum total derivative order `a + b` of any prolonged symbol.
    pub max_order: u32,
    /// Maximum number of terms of any single polynomial.
    pub max_size: usize,
    /// Cap on reduction steps over the whole run.
    pub max_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_splits: 64,
            max_order: 12,
            max_size: 200_000,
            max_steps: 5_000_000,
        }
    }
}

impl Budget {
    /// A raised budget for stretch computations (high-order prolongations).
    pub fn raised() -> Self {
        Budget {
            max_splits: 256,
            max_order: 40,
            max_size: 2_000_000,
            max_steps: 200_000_000,
        }
    }

    pub fn with_max_order(mut self, max_order: u32) -> Self {
        self.max_order = max_order;
        self
    }

    pub fn with_max_splits(mut self, max_splits: u32) -> Self {
        self.max_splits = max_splits;
        self
    }
}

/// Which limit was exhausted, for `Inconclusive` reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BudgetExceeded {
    Splits,
    Order { requested: u32 },
    Size { reached: usize },
    Steps,
}

impl std::fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BudgetExceeded::Splits => write!(f, "split limit exhausted"),
            BudgetExceeded::Order { requested } => {
                write!(f, "derivative order limit exhausted (needed {requested})")
            }
            BudgetExceeded::Size { reached } => {
                write!(f, "polynomial size limit exhausted (reached {reached})")
            }
            BudgetExceeded::Steps => write!(f, "step limit exhausted"),
        }
    }
}
