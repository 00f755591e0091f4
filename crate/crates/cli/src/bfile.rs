//! OEIS b-file reader: one `index value` pair per line, `#` starts a comment.

use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BFileEntry {
    pub index: i64,
    pub value: u64,
}

pub fn parse_bfile(text: &str) -> Result<Vec<BFileEntry>> {
    let mut out: Vec<BFileEntry> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(i), Some(v), None) = (it.next(), it.next(), it.next()) else {
            return Err(CliError::Format(format!("line {}: expected `index value`", lineno + 1)));
        };
        let bad = |what: &str, s: &str| CliError::Format(format!("line {}: bad {what} {s:?}", lineno + 1));
        let index: i64 = i.parse().map_err(|_| bad("index", i))?;
        let value: u64 = v.parse().map_err(|_| bad("value", v))?;
        if let Some(prev) = out.last() {
            if index <= prev.index {
                return Err(CliError::Format(format!(
                    "line {}: index {index} does not increase (previous {})",
                    lineno + 1,
                    prev.index
                )));
            }
        }
        out.push(BFileEntry { index, value });
    }
    Ok(out)
}

/// Integers, one per line, `#` comments allowed. Used for B-set files.
pub fn parse_decimal_lines(text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        out.push(
            line.parse()
                .map_err(|_| CliError::Format(format!("line {}: bad integer {line:?}", lineno + 1)))?,
        );
    }
    Ok(out)
}
