//! The rank of apparition `α(n) = min { m ≥ 1 : n | F(m) }` and the entry
//! exponent `e_n = max { m : n^m | F(α(n)) }`.
//!
//! `α(n) ≤ 6n` for every `n ≥ 1` (the Pisano period `π(n)` is a multiple of
//! `α(n)` and satisfies `π(n) ≤ 6n`). That bound comes from the literature on
//! Pisano periods, not from anything proved here; the scan treats running
//! past it as an internal error.

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use super::fib;
use crate::error::{Error, Result};
use crate::numtheory::is_prime_u64;

/// `α(n)` by scanning `(F(k), F(k+1)) mod n` for `k = 1..=6n`.
pub fn rank(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("rank of 0".into()));
    }
    let bound = n.checked_mul(6).ok_or_else(|| Error::Overflow(format!("6·{n}")))?;
    let (mut a, mut b) = (1 % n, 1 % n);
    for k in 1..=bound {
        if a == 0 {
            return Ok(k);
        }
        let next = ((a as u128 + b as u128) % n as u128) as u64;
        a = b;
        b = next;
    }
    Err(Error::RankScanExhausted { n, bound })
}

/// `e_n`, the exponent of `n` in `F(α(n))`, for `n ≥ 2`.
pub fn entry_exponent(n: u64) -> Result<u32> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("entry exponent needs n >= 2, got {n}")));
    }
    Ok(multiplicity(n, &fib(rank(n)?)))
}

fn multiplicity(n: u64, v: &BigUint) -> u32 {
    let n = BigUint::from(n);
    let mut v = v.clone();
    let mut e = 0;
    loop {
        let (q, r) = v.div_rem(&n);
        if !r.is_zero() || v.is_zero() {
            return e;
        }
        v = q;
        e += 1;
    }
}

/// `α(p^k)` from `α(p)` and `e_p`:
/// `α(2) = 3, α(4) = 6, α(2^k) = 3·2^{k-2}` for `k ≥ 3`, and for odd `p`,
/// `α(p^k) = α(p)` when `k ≤ e_p`, else `p^{k - e_p} α(p)`.
pub fn rank_prime_power(p: u64, k: u32) -> Result<u64> {
    if !is_prime_u64(p) || k == 0 {
        return Err(Error::InvalidInput(format!("rank_prime_power needs a prime and k >= 1, got {p}^{k}")));
    }
    let overflow = || Error::Overflow(format!("α({p}^{k})"));
    if p == 2 {
        return match k {
            1 => Ok(3),
            2 => Ok(6),
            _ => 2u64.checked_pow(k - 2).and_then(|t| t.checked_mul(3)).ok_or_else(overflow),
        };
    }
    let base = rank(p)?;
    let e = entry_exponent(p)?;
    if k <= e {
        return Ok(base);
    }
    p.checked_pow(k - e).and_then(|t| t.checked_mul(base)).ok_or_else(overflow)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankEntry {
    pub rank: u64,
    /// `None` for `n = 1`, where every power of `n` divides `F(1)`.
    pub entry_exponent: Option<u32>,
}

/// Memoized `n ↦ (α(n), e_n)`, safe to share between threads.
///
/// Lookups are get-or-compute: the computation runs outside the lock and the
/// first insertion wins, which is harmless since every thread computes the
/// same value.
#[derive(Debug, Default)]
pub struct RankCache {
    entries: Mutex<BTreeMap<u64, RankEntry>>,
}

impl RankCache {
    pub fn new() -> Self {
        RankCache::default()
    }

    pub fn get(&self, n: u64) -> Option<RankEntry> {
        self.entries.lock().expect("rank cache poisoned").get(&n).copied()
    }

    pub fn entry(&self, n: u64) -> Result<RankEntry> {
        if let Some(e) = self.get(n) {
            return Ok(e);
        }
        let rank = rank(n)?;
        let entry_exponent = if n >= 2 { Some(multiplicity(n, &fib(rank))) } else { None };
        let computed = RankEntry { rank, entry_exponent };
        Ok(*self.entries.lock().expect("rank cache poisoned").entry(n).or_insert(computed))
    }

    pub fn rank(&self, n: u64) -> Result<u64> {
        Ok(self.entry(n)?.rank)
    }

    pub fn entry_exponent(&self, n: u64) -> Result<u32> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("entry exponent needs n >= 2, got {n}")));
        }
        Ok(self.entry(n)?.entry_exponent.expect("n >= 2"))
    }

    /// Inserts an externally supplied entry after checking it against its
    /// definition: `n | F(rank)`, `n ∤ F(m)` for `m < rank`, and
    /// `n^e || F(rank)`.
    pub fn insert_verified(&self, n: u64, entry: RankEntry) -> Result<()> {
        let expected = RankEntry {
            rank: rank(n)?,
            entry_exponent: if n >= 2 { Some(entry_exponent(n)?) } else { None },
        };
        if expected != entry {
            return Err(Error::InvalidInput(format!(
                "rank record for {n} is {entry:?}, expected {expected:?}"
            )));
        }
        self.entries.lock().expect("rank cache poisoned").insert(n, entry);
        Ok(())
    }

    pub fn snapshot(&self) -> Vec<(u64, RankEntry)> {
        self.entries.lock().expect("rank cache poisoned").iter().map(|(k, v)| (*k, *v)).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("rank cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
