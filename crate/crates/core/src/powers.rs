use crate::error::{Error, Result};
use crate::roots::{checked_pow, iroot};

const MAX_TABLE_LEN: u64 = 1 << 32;

/// All positive k-th powers up to an inclusive limit, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerTable {
    k: u32,
    limit: u64,
    powers: Vec<u64>,
}

impl PowerTable {
    pub fn new(k: u32, limit: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("exponent k must be >= 1".into()));
        }
        if limit == 0 {
            return Err(Error::InvalidArgument("power table limit must be >= 1".into()));
        }
        let count = iroot(limit, k);
        if count > MAX_TABLE_LEN {
            return Err(Error::InvalidArgument(format!(
                "power table for k = {k} up to {limit} would hold {count} entries"
            )));
        }
        let powers = (1..=count)
            .map(|a| checked_pow(a, k).ok_or_else(|| Error::Overflow(format!("{a}^{k}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(PowerTable { k, limit, powers })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn powers(&self) -> &[u64] {
        &self.powers
    }

    pub fn len(&self) -> usize {
        self.powers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.powers.is_empty()
    }

    /// `a^k` for `1 <= a <= len()`.
    pub fn power_of(&self, base: u64) -> Option<u64> {
        let idx = usize::try_from(base).ok()?.checked_sub(1)?;
        self.powers.get(idx).copied()
    }
}

/// Convenience wrapper matching the free-function style used elsewhere.
pub fn build_power_table(k: u32, limit: u64) -> Result<PowerTable> {
    PowerTable::new(k, limit)
}
