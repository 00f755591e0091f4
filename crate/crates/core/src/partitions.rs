//! Exact partition counts, unrestricted and into k-th powers, optionally with
//! a fixed number of parts.

use crate::error::{Error, Result};
use crate::powers::PowerTable;

/// `table[j][n]` = number of partitions of `n` into exactly `j` parts taken
/// from `parts` (repetition allowed, order ignored), for `n <= n_max`, `j <= j_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTable {
    n_max: u64,
    j_max: u32,
    counts: Vec<Vec<u64>>,
}

impl PartitionTable {
    pub fn build(parts: &[u64], n_max: u64, j_max: u32) -> Result<Self> {
        let width = usize::try_from(n_max)
            .ok()
            .and_then(|n| n.checked_add(1))
            .ok_or_else(|| Error::Overflow(format!("table width {n_max}")))?;
        let mut counts = vec![vec![0u64; width]; j_max as usize + 1];
        counts[0][0] = 1;
        // adding one part type at a time keeps each multiset counted once
        for &p in parts {
            if p == 0 || p > n_max {
                continue;
            }
            let p = p as usize;
            for j in 1..=j_max as usize {
                let (prev, cur) = counts.split_at_mut(j);
                let prev = &prev[j - 1];
                let cur = &mut cur[0];
                for n in p..width {
                    let add = prev[n - p];
                    if add != 0 {
                        cur[n] = cur[n].checked_add(add).ok_or_else(|| {
                            Error::Overflow(format!("partition count at n = {n}, j = {j}"))
                        })?;
                    }
                }
            }
        }
        Ok(Self { n_max, j_max, counts })
    }

    /// Table for parts 1, 2, ..., n_max.
    pub fn unrestricted(n_max: u64, j_max: u32) -> Result<Self> {
        let parts: Vec<u64> = (1..=n_max).collect();
        Self::build(&parts, n_max, j_max)
    }

    pub fn powers(k: u32, n_max: u64, j_max: u32) -> Result<Self> {
        let table = PowerTable::new(k, n_max.max(1))?;
        Self::build(table.powers(), n_max, j_max)
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn j_max(&self) -> u32 {
        self.j_max
    }

    pub fn get(&self, n: u64, j: u32) -> Option<u64> {
        if n > self.n_max || j > self.j_max {
            return None;
        }
        Some(self.counts[j as usize][n as usize])
    }

    /// Sum over `j <= j_max`; equals the unrestricted count once `j_max >= n`.
    pub fn total(&self, n: u64) -> Result<Option<u64>> {
        if n > self.n_max {
            return Ok(None);
        }
        let mut s = 0u64;
        for row in &self.counts {
            s = s
                .checked_add(row[n as usize])
                .ok_or_else(|| Error::Overflow(format!("partition total at n = {n}")))?;
        }
        Ok(Some(s))
    }
}

/// Partitions of `n` into parts taken from `parts`, any number of them.
fn count_unbounded(parts: &[u64], n: u64) -> Result<u64> {
    let width = usize::try_from(n)
        .ok()
        .and_then(|n| n.checked_add(1))
        .ok_or_else(|| Error::Overflow(format!("table width {n}")))?;
    let mut dp = vec![0u64; width];
    dp[0] = 1;
    for &p in parts {
        if p == 0 || p > n {
            continue;
        }
        for m in p as usize..width {
            dp[m] = dp[m]
                .checked_add(dp[m - p as usize])
                .ok_or_else(|| Error::Overflow(format!("partition count at n = {m}")))?;
        }
    }
    Ok(dp[n as usize])
}

pub fn count_partitions(n: u64) -> Result<u64> {
    let parts: Vec<u64> = (1..=n).collect();
    count_unbounded(&parts, n)
}

pub fn count_partitions_into_parts(n: u64, j: u32) -> Result<u64> {
    if j as u64 > n {
        return Ok(u64::from(n == 0 && j == 0));
    }
    Ok(PartitionTable::unrestricted(n, j)?.counts[j as usize][n as usize])
}

pub fn count_power_partitions(n: u64, k: u32) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    if n == 0 {
        return Ok(1);
    }
    count_unbounded(PowerTable::new(k, n)?.powers(), n)
}

pub fn count_power_partitions_into_parts(n: u64, j: u32, k: u32) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    if j as u64 > n {
        return Ok(u64::from(n == 0 && j == 0));
    }
    Ok(PartitionTable::powers(k, n, j)?.counts[j as usize][n as usize])
}
