//! Enumeration caps for the exhaustive code paths.

use crate::error::{Error, Result};

pub const BUDGET_ENV: &str = "GRMIN_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Max |C| for the brute-force minimality oracle.
    pub codewords: u64,
    /// Max code length for the brute-force oracle.
    pub max_length: usize,
    /// Max q^{nk} for dual enumeration.
    pub dual: u64,
    /// Max size of any other exhaustive sweep (orthogonal modules, domains, searches).
    pub enumeration: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { codewords: 1 << 16, max_length: 64, dual: 1 << 24, enumeration: 1 << 24 }
    }
}

impl Budget {
    /// Defaults, overridden by `GRMIN_BUDGET` when set.
    ///
    /// Accepts either a single integer (applied to every enumeration cap) or a
    /// comma list such as `codewords=65536,length=128,dual=1000000`.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(spec) => Budget::default().with_overrides(&spec),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("{BUDGET_ENV}={spec:?}"));
        let spec = spec.trim();
        if let Ok(all) = spec.parse::<u64>() {
            self.codewords = all;
            self.dual = all;
            self.enumeration = all;
            return Ok(self);
        }
        for item in spec.split(',') {
            let (key, value) = item.split_once('=').ok_or_else(bad)?;
            let value: u64 = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "codewords" => self.codewords = value,
                "length" => self.max_length = value as usize,
                "dual" => self.dual = value,
                "enumeration" => self.enumeration = value,
                _ => return Err(bad()),
            }
        }
        Ok(self)
    }

    pub(crate) fn check(what: &'static str, needed: u128, cap: u64) -> Result<()> {
        if needed > cap as u128 {
            Err(Error::BudgetExceeded { what, needed, cap })
        } else {
            Ok(())
        }
    }
}
