//! Enumeration budgets.
//!
//! Every operation that walks the full subspace lattice of F_q^n checks the
//! number of subspaces it is about to visit against a [`Budget`] first.

use crate::error::{Error, Result};
use crate::subspace::galois_number;

/// Upper bound on the number of subspaces an exhaustive scan may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_subspaces: u64,
}

impl Budget {
    /// Library default: every F_2^n with n <= 7 (29 212 subspaces).
    pub const DEFAULT: Budget = Budget {
        max_subspaces: 1 << 16,
    };

    /// Command line default: F_2^n with n <= 6 (2 825 subspaces).
    pub const CLI: Budget = Budget {
        max_subspaces: 2_825,
    };

    /// Unlocks the streaming scan of F_2^8 (417 199 subspaces).
    pub const VAMOS: Budget = Budget {
        max_subspaces: 420_000,
    };

    pub const UNLIMITED: Budget = Budget {
        max_subspaces: u64::MAX,
    };

    pub fn new(max_subspaces: u64) -> Self {
        Budget { max_subspaces }
    }

    /// Fails unless the whole lattice of F_q^n fits.
    pub fn check_lattice(&self, q: u8, n: usize) -> Result<()> {
        self.check_count(galois_number(n, q as u64))
    }

    pub fn check_count(&self, needed: u128) -> Result<()> {
        if needed > self.max_subspaces as u128 {
            Err(Error::BudgetExceeded {
                needed,
                budget: self.max_subspaces,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}
