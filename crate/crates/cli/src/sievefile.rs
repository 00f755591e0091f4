//! On-disk sieve format.
//!
//! ```text
//! offset  size  field
//!      0     4  magic "WRS1"
//!      4     2  version (1)
//!      6     2  k
//!      8     4  j
//!     12     8  limit
//!     20     8  payload length in bytes = ceil(limit / 64) * 8
//!     28     -  payload, little-endian u64 words, bit n at word n / 64, bit n % 64
//! ```
//!
//! All header integers are little-endian.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use waring_core::bitset::{words_for, BitSet};
use waring_core::RepSieve;

use crate::{CliError, Result};

pub const MAGIC: [u8; 4] = *b"WRS1";
pub const VERSION: u16 = 1;
pub const HEADER_LEN: usize = 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveFileHeader {
    pub version: u16,
    pub k: u16,
    pub j: u32,
    pub limit: u64,
    pub payload_len: u64,
}

impl SieveFileHeader {
    pub fn for_sieve(sieve: &RepSieve) -> Result<Self> {
        let k = u16::try_from(sieve.k())
            .map_err(|_| CliError::Usage(format!("k = {} does not fit the file format", sieve.k())))?;
        Ok(SieveFileHeader {
            version: VERSION,
            k,
            j: sieve.j(),
            limit: sieve.limit(),
            payload_len: words_for(sieve.limit()) * 8,
        })
    }

    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut b = [0u8; HEADER_LEN];
        b[0..4].copy_from_slice(&MAGIC);
        b[4..6].copy_from_slice(&self.version.to_le_bytes());
        b[6..8].copy_from_slice(&self.k.to_le_bytes());
        b[8..12].copy_from_slice(&self.j.to_le_bytes());
        b[12..20].copy_from_slice(&self.limit.to_le_bytes());
        b[20..28].copy_from_slice(&self.payload_len.to_le_bytes());
        b
    }

    pub fn from_bytes(b: &[u8; HEADER_LEN]) -> Result<Self> {
        if b[0..4] != MAGIC {
            return Err(CliError::Format("not a sieve file (bad magic)".into()));
        }
        let h = SieveFileHeader {
            version: u16::from_le_bytes([b[4], b[5]]),
            k: u16::from_le_bytes([b[6], b[7]]),
            j: u32::from_le_bytes(b[8..12].try_into().unwrap()),
            limit: u64::from_le_bytes(b[12..20].try_into().unwrap()),
            payload_len: u64::from_le_bytes(b[20..28].try_into().unwrap()),
        };
        if h.version != VERSION {
            return Err(CliError::Format(format!("unsupported version {}", h.version)));
        }
        let expect = words_for(h.limit)
            .checked_mul(8)
            .ok_or_else(|| CliError::Format("limit too large".into()))?;
        if h.payload_len != expect {
            return Err(CliError::Format(format!(
                "payload length {} does not match limit {} (expected {expect})",
                h.payload_len, h.limit
            )));
        }
        Ok(h)
    }
}

pub fn write_sieve<W: Write>(mut w: W, sieve: &RepSieve) -> Result<()> {
    let header = SieveFileHeader::for_sieve(sieve)?;
    let io = |e| CliError::io("<sieve output>", e);
    w.write_all(&header.to_bytes()).map_err(io)?;
    for word in sieve.bits().words() {
        w.write_all(&word.to_le_bytes()).map_err(io)?;
    }
    w.flush().map_err(io)
}

pub fn read_sieve<R: Read>(mut r: R) -> Result<RepSieve> {
    let io = |e| CliError::io("<sieve input>", e);
    let mut head = [0u8; HEADER_LEN];
    r.read_exact(&mut head).map_err(io)?;
    let h = SieveFileHeader::from_bytes(&head)?;
    let n = words_for(h.limit) as usize;
    let mut words = Vec::with_capacity(n);
    let mut buf = [0u8; 8];
    for _ in 0..n {
        r.read_exact(&mut buf).map_err(io)?;
        words.push(u64::from_le_bytes(buf));
    }
    if r.read(&mut buf).map_err(io)? != 0 {
        return Err(CliError::Format("trailing bytes after payload".into()));
    }
    let bits = BitSet::from_words(h.limit, words).map_err(|e| CliError::Format(e.to_string()))?;
    RepSieve::from_parts(h.k as u32, h.j, bits).map_err(|e| CliError::Format(e.to_string()))
}

pub fn save(path: &Path, sieve: &RepSieve) -> Result<()> {
    let f = File::create(path).map_err(|e| CliError::io(path, e))?;
    write_sieve(BufWriter::new(f), sieve)
}

pub fn load(path: &Path) -> Result<RepSieve> {
    let f = File::open(path).map_err(|e| CliError::io(path, e))?;
    read_sieve(BufReader::new(f))
}
