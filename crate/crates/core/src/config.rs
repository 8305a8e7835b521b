//! Size caps for enumerations and ring computations.
//!
//! Counts of nested families and nested monomials grow super-exponentially,
//! so every enumeration runs against an explicit cap and fails with
//! [`Error::CapExceeded`](crate::Error::CapExceeded) instead of exhausting
//! memory.

use std::env;

/// Environment variable that overrides the enumeration caps.
pub const MAX_CELLS_ENV: &str = "TDN_MAX_CELLS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of nested families produced by one enumeration.
    pub max_families: u64,
    /// Maximum number of nested monomials in a single graded piece.
    pub max_monomials: u64,
    /// Maximum value of `d * n` accepted by the ring engine.
    pub max_dn: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_families: 10_000_000,
            max_monomials: 2_000_000,
            max_dn: 12,
        }
    }
}

impl Caps {
    /// Default caps with the family and monomial limits replaced by
    /// `TDN_MAX_CELLS` when it is set to a positive integer.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(cells) = env::var(MAX_CELLS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&v| v > 0)
        {
            caps.max_families = cells;
            caps.max_monomials = cells;
        }
        caps
    }

    pub fn unbounded() -> Self {
        Caps {
            max_families: u64::MAX,
            max_monomials: u64::MAX,
            max_dn: u64::MAX,
        }
    }
}
