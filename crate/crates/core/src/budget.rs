use crate::error::{Error, Result};

/// Default number of work units (candidates built, colorings visited,
/// composition pairs examined) an operation may spend before it aborts
/// with [`Error::Budget`].
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Default cap on the host length accepted by the coloring searches
/// (`is_merge`, `in_merge_class`).
pub const DEFAULT_MAX_HOST: usize = 16;

/// Work meter threaded through class realizations and coloring searches.
///
/// Charges accumulate across calls that share a meter, so a CLI invocation
/// gets one global budget no matter how many realizations it triggers.
#[derive(Debug, Clone)]
pub struct Meter {
    used: u64,
    limit: u64,
    max_host: usize,
}

impl Meter {
    pub fn new(limit: u64) -> Self {
        Meter {
            used: 0,
            limit,
            max_host: DEFAULT_MAX_HOST,
        }
    }

    pub fn unlimited() -> Self {
        Meter {
            used: 0,
            limit: u64::MAX,
            max_host: usize::MAX,
        }
    }

    pub fn with_max_host(mut self, max_host: usize) -> Self {
        self.max_host = max_host;
        self
    }

    /// Units spent so far; feeds the `stats` section of reports.
    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn charge(&mut self, units: u64) -> Result<()> {
        self.used = self.used.saturating_add(units);
        if self.used > self.limit {
            Err(Error::Budget { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_host(&self, len: usize) -> Result<()> {
        if len > self.max_host {
            Err(Error::HostTooLong {
                len,
                max: self.max_host,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Meter {
    fn default() -> Self {
        Meter::new(DEFAULT_BUDGET)
    }
}
