use crate::error::{Error, Result};
use std::cell::Cell;

/// Environment variable consulted for the default enumeration budget.
pub const BUDGET_ENV: &str = "PLANAR_COUNT_BUDGET";

const DEFAULT_BUDGET: u64 = 100_000_000;

/// Cap on the number of items an enumeration stream may emit.
///
/// Exhaustive streams (multigraphs, configurations, walks) charge one unit per
/// emitted item against a shared budget and fail with
/// [`Error::BudgetExceeded`] once it runs out. The default cap is 10^8 items,
/// overridable through the `PLANAR_COUNT_BUDGET` environment variable or
/// [`Budget::new`].
#[derive(Debug, Clone)]
pub struct Budget {
    cap: u64,
    used: Cell<u64>,
}

impl Budget {
    pub fn new(cap: u64) -> Self {
        Budget { cap, used: Cell::new(0) }
    }

    /// Remaining capacity.
    pub fn remaining(&self) -> u64 {
        self.cap - self.used.get()
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// Charge one emitted item.
    pub fn charge(&self) -> Result<()> {
        if self.used.get() >= self.cap {
            return Err(Error::BudgetExceeded { budget: self.cap });
        }
        self.used.set(self.used.get() + 1);
        Ok(())
    }

    /// Fail early when a known lower bound already exceeds the cap.
    pub fn check_at_least(&self, items: u64) -> Result<()> {
        if items > self.remaining() {
            return Err(Error::BudgetExceeded { budget: self.cap });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        let cap = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.parse::<u64>().ok())
            .unwrap_or(DEFAULT_BUDGET);
        Budget::new(cap)
    }
}
