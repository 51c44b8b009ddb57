use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Cooperative cancellation flag shared between a caller and long computations.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }

    pub fn check(&self) -> Result<()> {
        if self.is_cancelled() {
            Err(Error::Cancelled)
        } else {
            Ok(())
        }
    }
}

/// Per-coordinate bound used when a fiber search runs into an unbounded region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberCap {
    /// `factor · max(1, ‖input‖∞)`.
    Scaled(u64),
    Absolute(BigInt),
}

impl FiberCap {
    pub fn resolve(&self, norm: &BigInt) -> BigInt {
        match self {
            FiberCap::Scaled(k) => BigInt::from(*k) * norm.max(&BigInt::from(1)),
            FiberCap::Absolute(c) => c.clone(),
        }
    }
}

/// Resource caps for the exact searches.
#[derive(Clone, Debug)]
pub struct Limits {
    pub graver_cap: usize,
    pub fiber_cap: FiberCap,
    pub minor_cap: u128,
    /// Largest raw box `(2b+1)^n` the bounded kernel oracle will walk.
    pub search_cap: u128,
    pub cancel: CancelToken,
}

pub const DEFAULT_GRAVER_CAP: usize = 100_000;
pub const DEFAULT_MINOR_CAP: u128 = 2_000_000;
pub const DEFAULT_SEARCH_CAP: u128 = 1_000_000_000_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            graver_cap: DEFAULT_GRAVER_CAP,
            fiber_cap: FiberCap::Scaled(10),
            minor_cap: DEFAULT_MINOR_CAP,
            search_cap: DEFAULT_SEARCH_CAP,
            cancel: CancelToken::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_cap_uses_at_least_one() {
        assert_eq!(
            FiberCap::Scaled(10).resolve(&BigInt::from(0)),
            BigInt::from(10)
        );
        assert_eq!(
            FiberCap::Scaled(10).resolve(&BigInt::from(4)),
            BigInt::from(40)
        );
        assert_eq!(
            FiberCap::Absolute(BigInt::from(7)).resolve(&BigInt::from(4)),
            BigInt::from(7)
        );
    }

    #[test]
    fn cancellation_is_shared() {
        let t = CancelToken::new();
        let u = t.clone();
        assert!(t.check().is_ok());
        u.cancel();
        assert_eq!(t.check(), Err(Error::Cancelled));
    }
}
