//! `key = value` configuration. The file named by `--config`, or else by the
//! `WARING_CONFIG` environment variable, is read first; flags override it.

use std::path::{Path, PathBuf};

use waring_core::heur::{DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TOLERANCE};
use waring_core::repfind::DEFAULT_NODE_BUDGET;
use waring_core::sieve::{SieveConfig, DEFAULT_RAM_CAP};

use crate::{CliError, Result};

pub const CONFIG_ENV: &str = "WARING_CONFIG";

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub ram_cap_bytes: u64,
    /// Where `sieve` writes when no `--out` is given.
    pub cache_dir: PathBuf,
    pub tolerance: f64,
    pub samples: u64,
    pub seed: u64,
    pub node_budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            ram_cap_bytes: DEFAULT_RAM_CAP,
            cache_dir: PathBuf::from("."),
            tolerance: DEFAULT_TOLERANCE,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Accepts plain byte counts or a K/M/G/T suffix (powers of 1024).
pub fn parse_size(s: &str) -> Result<u64> {
    let s = s.trim();
    let (digits, shift) = match s.char_indices().last() {
        Some((i, c)) if c.is_ascii_alphabetic() => {
            let shift = match c.to_ascii_uppercase() {
                'K' => 10,
                'M' => 20,
                'G' => 30,
                'T' => 40,
                _ => return Err(CliError::Usage(format!("bad size suffix in {s:?}"))),
            };
            (&s[..i], shift)
        }
        _ => (s, 0),
    };
    let n: u64 = digits
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad size {s:?}")))?;
    n.checked_mul(1 << shift)
        .ok_or_else(|| CliError::Usage(format!("size {s:?} overflows")))
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Config::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!("config line {}: expected key = value", lineno + 1)));
            };
            let (key, value) = (key.trim(), value.trim());
            let bad = || CliError::Usage(format!("config line {}: bad value for {key}", lineno + 1));
            match key {
                "ram_cap" => c.ram_cap_bytes = parse_size(value)?,
                "cache_dir" => c.cache_dir = PathBuf::from(value),
                "tolerance" => c.tolerance = value.parse().map_err(|_| bad())?,
                "samples" => c.samples = value.parse().map_err(|_| bad())?,
                "seed" => c.seed = value.parse().map_err(|_| bad())?,
                "node_budget" => c.node_budget = value.parse().map_err(|_| bad())?,
                _ => return Err(CliError::Usage(format!("config line {}: unknown key {key}", lineno + 1))),
            }
        }
        Ok(c)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    /// The explicit path if given, else `$WARING_CONFIG`, else defaults.
    pub fn resolve(explicit: Option<&Path>) -> Result<Self> {
        match explicit {
            Some(p) => Self::from_file(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => Self::from_file(Path::new(&p)),
                _ => Ok(Self::default()),
            },
        }
    }

    pub fn sieve_config(&self) -> SieveConfig {
        SieveConfig::with_ram_cap(self.ram_cap_bytes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(parse_size("1024").unwrap(), 1024);
        assert_eq!(parse_size("2K").unwrap(), 2048);
        assert_eq!(parse_size("8G").unwrap(), 8 << 30);
        assert!(parse_size("3Q").is_err());
        assert!(parse_size("G").is_err());
    }

    #[test]
    fn parse_overrides_defaults() {
        let c = Config::parse("# comment\nram_cap = 1M\nseed=42\n\ncache_dir = /tmp/x\n").unwrap();
        assert_eq!(c.ram_cap_bytes, 1 << 20);
        assert_eq!(c.seed, 42);
        assert_eq!(c.cache_dir, PathBuf::from("/tmp/x"));
        assert_eq!(c.samples, DEFAULT_SAMPLES);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(Config::parse("colour = blue\n").is_err());
        assert!(Config::parse("seed\n").is_err());
        assert!(Config::parse("seed = x\n").is_err());
    }
}
