use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// A shared work counter. Searches charge it as they go and abort once it is exhausted.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Self { limit, used: AtomicU64::new(0) }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn charge(&self, n: u64) -> Result<()> {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        if before.saturating_add(n) > self.limit {
            Err(Error::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }

    pub fn is_exhausted(&self) -> bool {
        self.used() > self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::unlimited()
    }
}
