use std::cell::Cell;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::prime::{is_prime_u64, mul_mod_u64, small_primes, PrimalityPolicy};
use crate::error::{Error, Result};

/// A positive integer together with its prime decomposition.
///
/// Primes are strictly increasing and every exponent is at least one; the
/// product of `p^e` over `factors` is `value`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization { value: BigUint::one(), factors: Vec::new() }
    }

    /// Builds a factorization from prime powers, merging repeated primes.
    /// The caller vouches that every base is prime; see [`Factorization::validate`].
    pub fn from_prime_powers<I>(powers: I) -> Self
    where
        I: IntoIterator<Item = (BigUint, u32)>,
    {
        let mut factors: Vec<(BigUint, u32)> = powers.into_iter().filter(|(_, e)| *e > 0).collect();
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(BigUint, u32)> = Vec::with_capacity(factors.len());
        for (p, e) in factors {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        let value = merged.iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        Factorization { value, factors: merged }
    }

    /// Checks the type invariants: product reconstruction, strict ordering,
    /// primality of every base.
    pub fn validate(&self, policy: &PrimalityPolicy) -> Result<()> {
        let product = self.factors.iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        if product != self.value {
            return Err(Error::InvalidInput(format!("factors multiply to {product}, not {}", self.value)));
        }
        for w in self.factors.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidInput("primes not strictly increasing".into()));
            }
        }
        for (p, e) in &self.factors {
            if *e == 0 || !policy.is_prime(p) {
                return Err(Error::InvalidInput(format!("{p}^{e} is not a prime power")));
            }
        }
        Ok(())
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Ω(n): prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u64 {
        self.factors.iter().map(|(_, e)| *e as u64).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    pub fn is_perfect_square(&self) -> bool {
        self.factors.iter().all(|(_, e)| e % 2 == 0)
    }

    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|(_, e)| *e as u64 + 1).product()
    }

    /// All divisors as factorizations, ordered by value.
    pub fn divisor_factorizations(&self) -> Vec<Factorization> {
        let mut out = Vec::with_capacity(self.divisor_count() as usize);
        for_each_exponent_vector(&self.factors, |exps| out.push(self.with_exponents(exps)));
        out.sort_by(|a, b| a.value.cmp(&b.value));
        out
    }

    /// Pairs `(d, n/d)` for every divisor `d`, ordered by `d`.
    pub fn divisor_pairs(&self) -> Vec<(Factorization, Factorization)> {
        let mut out = Vec::with_capacity(self.divisor_count() as usize);
        for_each_exponent_vector(&self.factors, |exps| {
            let co: Vec<u32> = self.factors.iter().zip(exps).map(|((_, e), k)| e - k).collect();
            out.push((self.with_exponents(exps), self.with_exponents(&co)));
        });
        out.sort_by(|a, b| a.0.value.cmp(&b.0.value));
        out
    }

    pub(crate) fn with_exponents(&self, exps: &[u32]) -> Factorization {
        Factorization::from_sorted(
            self.factors
                .iter()
                .zip(exps)
                .filter(|(_, k)| **k > 0)
                .map(|((p, _), k)| (p.clone(), *k))
                .collect(),
        )
    }

    fn from_sorted(factors: Vec<(BigUint, u32)>) -> Self {
        let value = factors.iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        Factorization { value, factors }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Factorization) -> Option<Factorization> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for (p, e) in &self.factors {
            let mut k = *e;
            if j < other.factors.len() && other.factors[j].0 == *p {
                k = k.checked_sub(other.factors[j].1)?;
                j += 1;
            } else if j < other.factors.len() && other.factors[j].0 < *p {
                return None;
            }
            if k > 0 {
                out.push((p.clone(), k));
            }
        }
        if j != other.factors.len() {
            return None;
        }
        Some(Factorization::from_sorted(out))
    }

    /// `self / k` for a small `k`, when `k | self`.
    pub fn checked_div_small(&self, k: u64) -> Option<Factorization> {
        if k == 0 {
            return None;
        }
        self.checked_div(&factor_small(k))
    }

    pub fn mul(&self, other: &Factorization) -> Factorization {
        Factorization::from_prime_powers(self.factors.iter().chain(other.factors.iter()).cloned())
    }
}

/// Visits every exponent vector `0 ≤ k_i ≤ e_i` in mixed-radix order.
pub(crate) fn for_each_exponent_vector(factors: &[(BigUint, u32)], mut visit: impl FnMut(&[u32])) {
    let mut exps = vec![0u32; factors.len()];
    loop {
        visit(&exps);
        let mut i = 0;
        loop {
            if i == exps.len() {
                return;
            }
            if exps[i] < factors[i].1 {
                exps[i] += 1;
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.value, self)
    }
}

/// `p^e*q^f*…`, or `1` for the empty product.
impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{p}^{e}")?;
        }
        Ok(())
    }
}

/// Sorted list of divisors.
pub fn divisors(f: &Factorization) -> Vec<BigUint> {
    f.divisor_factorizations().into_iter().map(|d| d.value).collect()
}

/// Factorization of a machine-sized integer; never fails.
pub fn factor_small(n: u64) -> Factorization {
    Factorizer::unbounded()
        .factorize(&BigUint::from(n.max(1)))
        .expect("u64 factorization is unbounded")
}

pub fn factorize(n: &BigUint) -> Result<Factorization> {
    Factorizer::default().factorize(n)
}

/// A few seconds of work.
pub const DEFAULT_BUDGET: u64 = 2_000_000_000;

/// Trial division below 4096, then Pollard–Brent with the fixed polynomial
/// sequence `x² + c`, `c = 1, 2, …`, starting at `x = 2`.
///
/// Work units approximate nanoseconds. A modular multiplication of
/// `L`-word numbers is charged `250 + 4L²` (measured; the constant is
/// allocation and division overhead), a rho iteration two of those, a
/// Miller–Rabin witness `bits` of them, and a trial division `50 + 5L`. On
/// machine words a rho step costs 20. Charges are made before the work is
/// done, so a number far too large for the budget is refused at once.
/// Exceeding `budget` aborts with [`Error::BudgetExceeded`].
#[derive(Clone, Debug)]
pub struct Factorizer {
    pub policy: PrimalityPolicy,
    pub budget: u64,
}

impl Default for Factorizer {
    fn default() -> Self {
        Factorizer { policy: PrimalityPolicy::default(), budget: DEFAULT_BUDGET }
    }
}

struct Work<'a> {
    used: Cell<u64>,
    budget: u64,
    value: &'a BigUint,
}

fn words(m: &BigUint) -> u64 {
    m.bits().div_ceil(64).max(1)
}

fn mulmod_cost(m: &BigUint) -> u64 {
    250 + 4 * words(m).pow(2)
}

const WORD_STEP_COST: u64 = 20;

impl Work<'_> {
    fn spend(&self, units: u64) -> Result<()> {
        let used = self.used.get() + units;
        self.used.set(used);
        if used > self.budget {
            Err(Error::BudgetExceeded { value: self.value.to_string(), budget: self.budget })
        } else {
            Ok(())
        }
    }
}

impl Factorizer {
    pub fn with_budget(budget: u64) -> Self {
        Factorizer { budget, ..Factorizer::default() }
    }

    pub fn unbounded() -> Self {
        Factorizer::with_budget(u64::MAX)
    }

    pub fn factorize(&self, n: &BigUint) -> Result<Factorization> {
        if n.is_zero() {
            return Err(Error::InvalidInput("cannot factor 0".into()));
        }
        let work = Work { used: Cell::new(0), budget: self.budget, value: n };
        let mut primes: Vec<(BigUint, u32)> = Vec::new();
        let mut rest = n.clone();

        for &p in small_primes() {
            if rest.is_one() {
                break;
            }
            let p_big = BigUint::from(p);
            if &p_big * &p_big > rest {
                break;
            }
            work.spend(50 + 5 * words(&rest))?;
            let mut e = 0;
            loop {
                let (q, r) = rest.div_rem(&p_big);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                primes.push((p_big, e));
            }
        }

        let mut pending = vec![rest];
        while let Some(m) = pending.pop() {
            if m.is_one() {
                continue;
            }
            if m.bits() > 64 {
                work.spend(m.bits() * mulmod_cost(&m) * self.policy.witness_count() as u64)?;
            }
            if self.policy.is_prime(&m) {
                primes.push((m, 1));
                continue;
            }
            let d = self.split(&m, &work)?;
            let other = &m / &d;
            pending.push(d);
            pending.push(other);
        }
        Ok(Factorization::from_prime_powers(primes))
    }

    /// A non-trivial divisor of the composite `m`.
    fn split(&self, m: &BigUint, work: &Work<'_>) -> Result<BigUint> {
        if let Some(r) = exact_sqrt(m) {
            return Ok(r);
        }
        if let Some(small) = m.to_u64() {
            for c in 1u64.. {
                if let Some(d) = brent_u64(small, c, work)? {
                    return Ok(BigUint::from(d));
                }
            }
        }
        for c in 1u64.. {
            if let Some(d) = brent_big(m, c, work)? {
                return Ok(d);
            }
        }
        unreachable!("the budget bounds the polynomial search")
    }
}

fn exact_sqrt(m: &BigUint) -> Option<BigUint> {
    let r = m.sqrt();
    (&r * &r == *m).then_some(r)
}

const BATCH: u64 = 128;

fn brent_u64(n: u64, c: u64, work: &Work<'_>) -> Result<Option<u64>> {
    let f = |x: u64| (mul_mod_u64(x, x, n) + c % n) % n;
    let (mut y, mut r, mut q, mut g) = (2 % n, 1u64, 1u64, 1u64);
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let steps = BATCH.min(r - k);
            work.spend(steps * WORD_STEP_COST)?;
            for _ in 0..steps {
                y = f(y);
                q = mul_mod_u64(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        loop {
            work.spend(WORD_STEP_COST)?;
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    debug_assert!(g == n || !is_prime_u64(n));
    Ok((g != n).then_some(g))
}

fn brent_big(n: &BigUint, c: u64, work: &Work<'_>) -> Result<Option<BigUint>> {
    let c = BigUint::from(c);
    let cost = 2 * mulmod_cost(n);
    let f = |x: &BigUint| (x * x + &c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut y = BigUint::from(2u32) % n;
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut r = 1u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let steps = BATCH.min(r - k);
            work.spend(steps * cost)?;
            for _ in 0..steps {
                y = f(&y);
                q = (q * diff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == *n {
        loop {
            work.spend(cost)?;
            ys = f(&ys);
            g = diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    Ok((g != *n).then_some(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    fn pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.factors().iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(pairs(&factor_small(144)), vec![(2, 4), (3, 2)]);
        assert!(factor_small(1).is_one());
        let f60 = factorize(&big("1548008755920")).unwrap();
        assert_eq!(
            pairs(&f60),
            vec![(2, 4), (3, 2), (5, 1), (11, 1), (31, 1), (41, 1), (61, 1), (2521, 1)]
        );
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(&factor_small(21)), vec![1u32, 3, 7, 21].into_iter().map(BigUint::from).collect::<Vec<_>>());
        assert_eq!(divisors(&factor_small(1)), vec![BigUint::one()]);
        let d144 = divisors(&factor_small(144));
        assert_eq!(d144.len(), 15);
        assert_eq!(d144.last().unwrap(), &BigUint::from(144u32));
    }

    #[test]
    fn large_semiprimes_split() {
        // F(100) = 3 · 5² · 11 · 41 · 101 · 151 · 401 · 3001 · 570601
        let f100 = factorize(&big("354224848179261915075")).unwrap();
        assert_eq!(f100.value(), &big("354224848179261915075"));
        assert_eq!(f100.factors().len(), 9);
        let n = BigUint::from(1_000_000_007u64) * BigUint::from(998_244_353u64) * BigUint::from(1_000_000_009u64);
        let f = factorize(&n).unwrap();
        assert_eq!(f.factors().len(), 3);
        let sq = BigUint::from(4_294_967_311u64).pow(2);
        assert_eq!(factorize(&sq).unwrap().factors(), &[(BigUint::from(4_294_967_311u64), 2)]);
    }

    #[test]
    fn budget_is_enforced() {
        let n = BigUint::from(1_000_000_007u64) * BigUint::from(998_244_353u64);
        let err = Factorizer::with_budget(50).factorize(&n).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(factorize(&BigUint::zero()), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn checked_division() {
        let f = factor_small(360);
        assert_eq!(f.checked_div_small(12).unwrap().value(), &BigUint::from(30u32));
        assert!(f.checked_div_small(7).is_none());
        assert!(f.checked_div_small(16).is_none());
        assert_eq!(f.checked_div(&f).unwrap(), Factorization::one());
    }

    #[test]
    fn validate_rejects_bad_records() {
        let policy = PrimalityPolicy::default();
        assert!(factor_small(360).validate(&policy).is_ok());
        let bad = Factorization::from_prime_powers(vec![(BigUint::from(4u32), 1)]);
        assert!(bad.validate(&policy).is_err());
    }
}
