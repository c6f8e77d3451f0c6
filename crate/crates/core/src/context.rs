use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fib::{fib, RankCache};
use crate::numtheory::factor::for_each_exponent_vector;
use crate::numtheory::{factor_small, Factorization, Factorizer, PrimalityPolicy};

/// Factorization policy plus the memo tables every computation draws on.
///
/// A `Context` is `Sync`; share it by reference across threads. The memo
/// tables only ever grow and every entry is a pure function of its key, so
/// results never depend on the order in which callers fill them.
#[derive(Debug, Default)]
pub struct Context {
    factorizer: Factorizer,
    ranks: RankCache,
    fib_factors: Mutex<BTreeMap<u64, Arc<Factorization>>>,
}

impl Context {
    pub fn new() -> Self {
        Context::default()
    }

    pub fn with_budget(budget: u64) -> Self {
        Context { factorizer: Factorizer::with_budget(budget), ..Context::default() }
    }

    pub fn with_factorizer(factorizer: Factorizer) -> Self {
        Context { factorizer, ..Context::default() }
    }

    pub fn factorizer(&self) -> &Factorizer {
        &self.factorizer
    }

    pub fn policy(&self) -> &PrimalityPolicy {
        &self.factorizer.policy
    }

    pub fn budget(&self) -> u64 {
        self.factorizer.budget
    }

    pub fn ranks(&self) -> &RankCache {
        &self.ranks
    }

    pub fn factorize(&self, n: &BigUint) -> Result<Factorization> {
        self.factorizer.factorize(n)
    }

    pub fn rank(&self, n: u64) -> Result<u64> {
        self.ranks.rank(n)
    }

    pub fn entry_exponent(&self, n: u64) -> Result<u32> {
        self.ranks.entry_exponent(n)
    }

    /// Factorization of `F(n)`, memoized.
    ///
    /// Every prime of `F(n)` that is not primitive already divides `F(m)` for
    /// a proper divisor `m` of `n`. Those primes are divided out first (using
    /// the memoized factorizations of the smaller `F(m)`), so only the
    /// primitive part goes to the general factorizer and the budget applies
    /// to it alone.
    pub fn fib_factorization(&self, n: u64) -> Result<Arc<Factorization>> {
        if n == 0 {
            return Err(Error::InvalidInput("F(0) = 0 has no factorization".into()));
        }
        if let Some(f) = self.fib_factors.lock().expect("fib cache poisoned").get(&n) {
            return Ok(Arc::clone(f));
        }
        let value = fib(n);
        let mut rest = value.clone();
        let mut powers: BTreeMap<BigUint, u32> = BTreeMap::new();
        for m in factor_small(n).divisor_factorizations() {
            let m = m.to_u64().expect("divisor of u64");
            if m == n || m < 3 {
                continue;
            }
            for (p, _) in self.fib_factorization(m)?.factors() {
                if powers.contains_key(p) {
                    continue;
                }
                let mut e = 0;
                while (&rest % p).is_zero() {
                    rest /= p;
                    e += 1;
                }
                powers.insert(p.clone(), e);
            }
        }
        let primitive = self.factorizer.factorize(&rest)?;
        let all = Factorization::from_prime_powers(
            powers.into_iter().chain(primitive.factors().iter().cloned()),
        );
        debug_assert_eq!(all.value(), &value);
        let all = Arc::new(all);
        Ok(Arc::clone(self.fib_factors.lock().expect("fib cache poisoned").entry(n).or_insert(all)))
    }

    /// Seeds the memo with a factorization of `F(n)` read from elsewhere,
    /// after checking that it multiplies to `F(n)` and consists of primes.
    pub fn insert_fib_factorization(&self, n: u64, f: Factorization) -> Result<()> {
        if n == 0 || f.value() != &fib(n) {
            return Err(Error::InvalidInput(format!("factorization {f} does not multiply to F({n})")));
        }
        f.validate(self.policy())?;
        self.fib_factors.lock().expect("fib cache poisoned").insert(n, Arc::new(f));
        Ok(())
    }

    pub fn fib_factorizations(&self) -> Vec<(u64, Arc<Factorization>)> {
        self.fib_factors
            .lock()
            .expect("fib cache poisoned")
            .iter()
            .map(|(k, v)| (*k, Arc::clone(v)))
            .collect()
    }

    /// `α(d)` for a divisor `d` of `F(m)`: the least `k | m` with `d | F(k)`.
    pub fn rank_of_divisor(&self, d: &BigUint, m: u64) -> Result<u64> {
        if d.is_zero() || !(fib(m) % d).is_zero() {
            return Err(Error::InvalidInput(format!("{d} does not divide F({m})")));
        }
        for k in factor_small(m).divisor_factorizations() {
            let k = k.to_u64().expect("divisor of u64");
            if (fib(k) % d).is_zero() {
                return Ok(k);
            }
        }
        unreachable!("m itself qualifies")
    }

    /// Divisors `d` of `F(n)` with `α(d) = n`, ordered by value.
    ///
    /// A divisor of `F(n)` has rank dividing `n`; its rank is exactly `n`
    /// unless it divides `F(n/q)` for some prime `q | n`. The test compares
    /// prime exponents against those of `F(n/q)` instead of dividing big
    /// numbers.
    pub fn primitive_divisors(&self, n: u64) -> Result<Vec<Factorization>> {
        let fac = self.fib_factorization(n)?;
        let below: Vec<Vec<u32>> = factor_small(n)
            .factors()
            .iter()
            .map(|(q, _)| {
                let m = n / q.to_u64().expect("prime of u64");
                let fm = self.fib_factorization(m)?;
                Ok(fac.factors().iter().map(|(p, _)| fm.exponent_of(p)).collect())
            })
            .collect::<Result<_>>()?;
        let mut out = Vec::new();
        for_each_exponent_vector(fac.factors(), |exps| {
            let inherited = below.iter().any(|caps| exps.iter().zip(caps).all(|(k, cap)| k <= cap));
            if !inherited {
                out.push(fac.with_exponents(exps));
            }
        });
        out.sort_by(|a, b| a.value().cmp(b.value()));
        Ok(out)
    }

    /// Primes `p | F(n)` with `α(p) = n`, each with its exponent in `F(n)`.
    pub fn primitive_primes(&self, n: u64) -> Result<Vec<(BigUint, u32)>> {
        let fac = self.fib_factorization(n)?;
        let earlier: Vec<Arc<Factorization>> = factor_small(n)
            .factors()
            .iter()
            .map(|(q, _)| self.fib_factorization(n / q.to_u64().expect("prime of u64")))
            .collect::<Result<_>>()?;
        Ok(fac
            .factors()
            .iter()
            .filter(|(p, _)| earlier.iter().all(|f| f.exponent_of(p) == 0))
            .cloned()
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(v: &[(BigUint, u32)]) -> Vec<(u64, u32)> {
        v.iter().map(|(p, e)| (num_traits::ToPrimitive::to_u64(p).unwrap(), *e)).collect()
    }

    #[test]
    fn fib_factorizations_reconstruct() {
        let ctx = Context::new();
        for n in 1..=120 {
            let f = ctx.fib_factorization(n).unwrap();
            assert_eq!(f.value(), &fib(n));
            f.validate(ctx.policy()).unwrap();
        }
    }

    #[test]
    fn primitive_prime_examples() {
        let ctx = Context::new();
        assert!(ctx.primitive_primes(12).unwrap().is_empty());
        assert_eq!(small(&ctx.primitive_primes(7).unwrap()), vec![(13, 1)]);
        assert_eq!(small(&ctx.primitive_primes(5).unwrap()), vec![(5, 1)]);
        assert!(ctx.primitive_primes(6).unwrap().is_empty());
        assert!(ctx.primitive_primes(1).unwrap().is_empty());
        assert!(ctx.primitive_primes(2).unwrap().is_empty());
    }

    #[test]
    fn primitive_divisors_have_exact_rank() {
        let ctx = Context::new();
        for n in 1..=36u64 {
            let prim = ctx.primitive_divisors(n).unwrap();
            for d in ctx.fib_factorization(n).unwrap().divisor_factorizations() {
                let r = ctx.rank_of_divisor(d.value(), n).unwrap();
                assert_eq!(prim.contains(&d), r == n, "n = {n}, d = {}", d.value());
                if let Some(small) = d.to_u64() {
                    assert_eq!(r, ctx.rank(small).unwrap());
                }
            }
        }
    }

    #[test]
    fn seeded_factorizations_are_checked() {
        let ctx = Context::new();
        let good = factor_small(144);
        assert!(ctx.insert_fib_factorization(12, good.clone()).is_ok());
        assert!(ctx.insert_fib_factorization(11, good).is_err());
        let fake = Factorization::from_prime_powers(vec![(BigUint::from(12u32), 2)]);
        assert!(ctx.insert_fib_factorization(12, fake).is_err());
    }

    #[test]
    fn budget_exhaustion_surfaces() {
        // Ten work units cannot cover the primitive parts in this range.
        let ctx = Context::with_budget(10);
        let err = (100..=160).find_map(|n| ctx.fib_factorization(n).err());
        assert!(matches!(err, Some(Error::BudgetExceeded { .. })));
    }
}
