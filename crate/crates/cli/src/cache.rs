//! The factorization/rank cache: one record per line,
//!
//! ```text
//! n=12 rank=12 entry_exponent=2 factors=2^4*3^2
//! ```
//!
//! where `factors` is the factorization of `F(n)` and `rank`,
//! `entry_exponent` are `α(n)` and `e_n`. Blank lines and lines starting
//! with `#` are ignored. Records start at `n = 2`; `e_1` is not defined.

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use fibcontract::fib::RankEntry;
use fibcontract::{Context, Factorization};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheRecord {
    pub n: u64,
    pub fib_factorization: Vec<(BigUint, u32)>,
    pub rank: u64,
    pub entry_exponent: u32,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CacheError {
    #[error("cache line {line}: {message}")]
    Corrupt { line: usize, message: String },
    #[error("cache record n={n} rejected: {message}")]
    Rejected { n: u64, message: String },
    #[error("cache file {path}: {message}")]
    Io { path: String, message: String },
}

impl CacheRecord {
    pub fn factorization(&self) -> Factorization {
        Factorization::from_prime_powers(self.fib_factorization.iter().cloned())
    }

    /// Re-checks the record and seeds `ctx` with it.
    pub fn load_into(&self, ctx: &Context) -> fibcontract::Result<()> {
        ctx.insert_fib_factorization(self.n, self.factorization())?;
        ctx.ranks().insert_verified(self.n, RankEntry { rank: self.rank, entry_exponent: Some(self.entry_exponent) })
    }
}

impl fmt::Display for CacheRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} rank={} entry_exponent={} factors={}",
            self.n,
            self.rank,
            self.entry_exponent,
            self.factorization()
        )
    }
}

impl FromStr for CacheRecord {
    type Err = String;

    fn from_str(line: &str) -> Result<Self, String> {
        let mut fields = line.split_whitespace();
        let mut next = |key: &str| -> Result<&str, String> {
            let field = fields.next().ok_or_else(|| format!("missing field `{key}`"))?;
            field
                .strip_prefix(key)
                .and_then(|rest| rest.strip_prefix('='))
                .ok_or_else(|| format!("expected `{key}=...`, found `{field}`"))
        };
        let int = |key: &str, v: &str| v.parse::<u64>().map_err(|e| format!("bad {key} `{v}`: {e}"));
        let n = int("n", next("n")?)?;
        let rank = int("rank", next("rank")?)?;
        let entry_exponent = next("entry_exponent")?
            .parse::<u32>()
            .map_err(|e| format!("bad entry_exponent: {e}"))?;
        let factors = parse_factors(next("factors")?)?;
        if let Some(extra) = fields.next() {
            return Err(format!("unexpected trailing field `{extra}`"));
        }
        if n < 2 {
            return Err(format!("records start at n = 2, found n = {n}"));
        }
        Ok(CacheRecord { n, fib_factorization: factors, rank, entry_exponent })
    }
}

/// `p^e*q^f*...`, `p` alone for `p^1`, or `1` for the empty product.
fn parse_factors(s: &str) -> Result<Vec<(BigUint, u32)>, String> {
    if s == "1" {
        return Ok(Vec::new());
    }
    s.split('*')
        .map(|part| {
            let (p, e) = part.split_once('^').unwrap_or((part, "1"));
            let p: BigUint = p.parse().map_err(|_| format!("bad prime `{p}`"))?;
            let e: u32 = e.parse().map_err(|_| format!("bad exponent `{e}`"))?;
            if e == 0 {
                return Err(format!("zero exponent in `{part}`"));
            }
            Ok((p, e))
        })
        .collect()
}

pub fn parse_cache(text: &str) -> Result<Vec<CacheRecord>, CacheError> {
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let record = line.parse().map_err(|message| CacheError::Corrupt { line: i + 1, message })?;
        records.push(record);
    }
    Ok(records)
}

/// Reads `path`; a missing file is an empty cache.
pub fn read_cache(path: &Path) -> Result<Vec<CacheRecord>, CacheError> {
    match fs::read_to_string(path) {
        Ok(text) => parse_cache(&text),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Vec::new()),
        Err(e) => Err(CacheError::Io { path: path.display().to_string(), message: e.to_string() }),
    }
}

/// Writes the records sorted by `n`, replacing the file.
pub fn write_cache(path: &Path, records: &[CacheRecord]) -> Result<(), CacheError> {
    let io = |e: std::io::Error| CacheError::Io { path: path.display().to_string(), message: e.to_string() };
    let mut sorted: Vec<&CacheRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.n);
    sorted.dedup_by_key(|r| r.n);
    let tmp = path.with_extension("tmp");
    let mut file = fs::File::create(&tmp).map_err(io)?;
    writeln!(file, "# fibcontract factorization cache").map_err(io)?;
    for r in sorted {
        writeln!(file, "{r}").map_err(io)?;
    }
    file.sync_all().map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

/// Loads every record into `ctx`, stopping at the first that fails
/// re-checking.
pub fn load(ctx: &Context, records: &[CacheRecord]) -> Result<(), CacheError> {
    for r in records {
        r.load_into(ctx)
            .map_err(|e| CacheError::Rejected { n: r.n, message: e.to_string() })?;
    }
    Ok(())
}

/// One record for every `F(n)`, `n ≥ 2`, that `ctx` has factored.
pub fn snapshot(ctx: &Context) -> fibcontract::Result<Vec<CacheRecord>> {
    ctx.fib_factorizations()
        .into_iter()
        .filter(|(n, _)| *n >= 2)
        .map(|(n, fac)| {
            let entry = ctx.ranks().entry(n)?;
            Ok(CacheRecord {
                n,
                fib_factorization: fac.factors().to_vec(),
                rank: entry.rank,
                entry_exponent: entry.entry_exponent.expect("n >= 2"),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_format() {
        let r: CacheRecord = "n=12 rank=12 entry_exponent=2 factors=2^4*3^2".parse().unwrap();
        assert_eq!(r.fib_factorization, vec![(BigUint::from(2u32), 4), (BigUint::from(3u32), 2)]);
        assert_eq!(r.to_string(), "n=12 rank=12 entry_exponent=2 factors=2^4*3^2");
        let r: CacheRecord = "n=2 rank=3 entry_exponent=1 factors=1".parse().unwrap();
        assert!(r.fib_factorization.is_empty());
        assert_eq!(r.to_string(), "n=2 rank=3 entry_exponent=1 factors=1");
    }

    #[test]
    fn corrupt_lines_carry_their_number() {
        let text = "# header\nn=3 rank=4 entry_exponent=1 factors=2\n\nn=4 rank=6 factors=3\n";
        match parse_cache(text) {
            Err(CacheError::Corrupt { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        for bad in ["n=1 rank=1 entry_exponent=1 factors=1", "n=5 rank=5 entry_exponent=1 factors=5^0", "x=5"] {
            assert!(bad.parse::<CacheRecord>().is_err(), "{bad}");
        }
    }

    #[test]
    fn loading_rechecks_records() {
        let ctx = Context::new();
        let good: CacheRecord = "n=12 rank=12 entry_exponent=2 factors=2^4*3^2".parse().unwrap();
        load(&ctx, &[good]).unwrap();
        let wrong_product: CacheRecord = "n=12 rank=12 entry_exponent=2 factors=2^4*3^3".parse().unwrap();
        assert!(load(&Context::new(), &[wrong_product]).is_err());
        let wrong_rank: CacheRecord = "n=12 rank=24 entry_exponent=2 factors=2^4*3^2".parse().unwrap();
        assert!(load(&Context::new(), &[wrong_rank]).is_err());
        let composite: CacheRecord = "n=12 rank=12 entry_exponent=2 factors=4^2*9".parse().unwrap();
        assert!(load(&Context::new(), &[composite]).is_err());
    }
}
