//! Enumeration caps for the brute-force routes.
//!
//! Every exhaustive search checks its exact step count against a [`Budget`]
//! before starting. Exceeding a cap is an error, never a silent sample.

use crate::error::{Error, Result};

pub const DEFAULT_SUBSPACES: u64 = 1 << 20;
pub const DEFAULT_CODEWORDS: u64 = 1 << 24;
pub const DEFAULT_AMBIENT: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Row-space representatives in V_q(k, n).
    pub subspaces: u64,
    /// Projective message classes (or full codewords) per code.
    pub codewords: u64,
    /// Ambient vectors visited by the covering-radius scan.
    pub ambient: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            subspaces: DEFAULT_SUBSPACES,
            codewords: DEFAULT_CODEWORDS,
            ambient: DEFAULT_AMBIENT,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            subspaces: u64::MAX,
            codewords: u64::MAX,
            ambient: u64::MAX,
        }
    }

    pub(crate) fn check_subspaces(&self, required: u128) -> Result<()> {
        check("subspace enumeration", required, self.subspaces)
    }

    pub(crate) fn check_codewords(&self, required: u128) -> Result<()> {
        check("codeword enumeration", required, self.codewords)
    }

    pub(crate) fn check_ambient(&self, required: u128) -> Result<()> {
        check("ambient space scan", required, self.ambient)
    }
}

pub(crate) fn check(what: &'static str, required: u128, budget: u64) -> Result<()> {
    if required > budget as u128 {
        Err(Error::BudgetExceeded {
            what,
            required,
            budget,
        })
    } else {
        Ok(())
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub(crate) fn pow_sat(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
