use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 1_000_000;

/// Bounds for exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of candidates (closures, partial assignments, product
    /// elements) a single search may examine.
    pub cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { cap: DEFAULT_CAP }
    }
}

impl Limits {
    pub fn with_cap(cap: usize) -> Self {
        Limits { cap }
    }

    pub fn check(&self, count: usize) -> Result<()> {
        if count > self.cap {
            Err(Error::SearchCapExceeded { cap: self.cap })
        } else {
            Ok(())
        }
    }
}

/// Thread-safe candidate counter shared by parallel searches.
#[derive(Debug)]
pub(crate) struct Budget {
    cap: usize,
    used: AtomicUsize,
}

impl Budget {
    pub fn new(limits: &Limits) -> Self {
        Budget {
            cap: limits.cap,
            used: AtomicUsize::new(0),
        }
    }

    pub fn spend(&self, n: usize) -> Result<()> {
        let used = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if used > self.cap {
            Err(Error::SearchCapExceeded { cap: self.cap })
        } else {
            Ok(())
        }
    }
}
