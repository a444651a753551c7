//! Work budget guarding all brute-force enumerations.
//!
//! A single node-count budget is threaded through every operation that
//! enumerates tuples, orbits or matrix tables. Costs are estimated up
//! front where possible so that an over-budget call fails before any
//! work is done and never returns partial results.

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy)]
pub struct Budget {
    limit: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { limit: DEFAULT_BUDGET }
    }
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Fails if a computation of about `needed` elementary steps would
    /// exceed the budget.
    pub fn check(&self, needed: u64) -> Result<()> {
        if needed > self.limit {
            Err(Error::Budget { needed, budget: self.limit })
        } else {
            Ok(())
        }
    }

    /// Product of factors as a budget estimate, saturating on overflow.
    pub fn product(factors: &[u64]) -> u64 {
        factors
            .iter()
            .try_fold(1u64, |acc, &f| acc.checked_mul(f))
            .unwrap_or(u64::MAX)
    }

    /// `base^exp` as a budget estimate, saturating on overflow.
    pub fn power(base: u64, exp: u32) -> u64 {
        base.checked_pow(exp).unwrap_or(u64::MAX)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_respects_limit() {
        let b = Budget::new(100);
        assert!(b.check(100).is_ok());
        assert!(b.check(101).is_err());
    }

    #[test]
    fn product_saturates() {
        assert_eq!(Budget::product(&[u64::MAX, 2]), u64::MAX);
        assert_eq!(Budget::product(&[6, 6]), 36);
    }
}
