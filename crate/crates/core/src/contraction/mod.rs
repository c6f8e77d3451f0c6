//! α-contraction `f_α(n) = Σ_{m : α(m) = n} f(m)` and what is built on it.
//!
//! Every `m` with `α(m) = n` divides `F(n)`, so `f_α(n)` is the finite sum of
//! `f(d)` over the divisors `d` of `F(n)` whose rank is exactly `n`. That is
//! how [`alpha_contract`] evaluates it. `f_α(2) = 0` because `F(2) = 1` and
//! `α(1) = 1`.

pub mod closed;
pub mod summatory;

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::fib::fib;
use crate::numtheory::{mobius_of, ArithFn, DivisorSumRule, Evaluate};
use crate::weight::Weight;

pub use closed::{
    closed_delta23, closed_lambda_alpha, closed_mu_alpha, closed_mu_alpha2, closed_mu_alpha3, ClosedForm,
};
pub use summatory::{
    divisor_sum_at_fib, invert_t_to_s, summatory_s, summatory_s_mangoldt, summatory_t, summatory_t_mangoldt,
    SummatoryKind, SummatoryTable,
};

/// Largest Fibonacci index [`FibTower::materialize`] will expand.
pub const TOWER_INDEX_CAP: u64 = 100_000;

/// `F(F(…F(base)…))` with `height` applications of `F`, kept unevaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibTower {
    pub base: BigUint,
    pub height: u32,
}

impl FibTower {
    pub fn new(base: BigUint, height: u32) -> Self {
        FibTower { base, height }
    }

    /// Whether the tower evaluates to 1, decided without expanding it.
    ///
    /// `F(v) = 1` exactly for `v ∈ {1, 2}`; from `v ≥ 6` on `F(v) > v`, so a
    /// tower that reaches 6 never comes back down.
    pub fn is_one(&self) -> bool {
        let mut v = match self.base.to_u64() {
            Some(v) if v < 6 => v,
            _ => return self.height == 0 && self.base.is_one(),
        };
        for _ in 0..self.height {
            if v >= 6 {
                return false;
            }
            v = fib(v).to_u64().expect("small");
        }
        v == 1
    }

    /// The tower's value, if no intermediate index exceeds `cap`.
    pub fn materialize(&self, cap: u64) -> Option<BigUint> {
        let mut v = self.base.clone();
        for _ in 0..self.height {
            let idx = v.to_u64().filter(|&i| i <= cap)?;
            v = fib(idx);
        }
        Some(v)
    }
}

/// `(1 * f)(t)` for a tower `t`, through `f`'s [`DivisorSumRule`] when it has
/// one, otherwise by expanding and factoring the tower.
pub fn divisor_sum_at_tower(ctx: &Context, f: &ArithFn, tower: &FibTower) -> Result<BigInt> {
    if f.rule() == DivisorSumRule::Unit {
        return Ok(if tower.is_one() { BigInt::one() } else { BigInt::zero() });
    }
    let value = tower.materialize(TOWER_INDEX_CAP).ok_or_else(|| Error::BudgetExceeded {
        value: format!("F^{}({})", tower.height, tower.base),
        budget: ctx.budget(),
    })?;
    Ok(match f.rule() {
        DivisorSumRule::Unit => unreachable!(),
        DivisorSumRule::Identity => BigInt::from(value),
        DivisorSumRule::SquareIndicator => {
            let r = value.sqrt();
            if &r * &r == value {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        }
        DivisorSumRule::Generic => {
            let fac = ctx.factorize(&value)?;
            fac.divisor_factorizations().iter().map(|d| f.eval(d)).sum()
        }
    })
}

/// `f_α(n)`: the sum of `f(d)` over divisors `d` of `F(n)` with `α(d) = n`.
pub fn alpha_contract<F: Evaluate + ?Sized>(ctx: &Context, f: &F, n: u64) -> Result<F::Value> {
    if n == 0 {
        return Err(Error::InvalidInput("alpha_contract at 0".into()));
    }
    let mut acc = F::Value::zero();
    for d in ctx.primitive_divisors(n)? {
        acc.add_assign(&f.eval(&d));
    }
    Ok(acc)
}

/// `f_{α^depth}(n)`, the `depth`-fold α-contraction.
///
/// The outermost contraction is the divisor sum of [`alpha_contract`]. The
/// inner values `g = f_{α^{depth-1}}` at the primitive divisors `d` of `F(n)`
/// cannot be produced the same way, since that would require factoring
/// `F(d)` for `d` as large as `F(n)`. They come instead from the identity
/// `1 * f_α = (1 * f) ∘ F`, applied `depth - 1` times:
///
/// ```text
/// g(d) = Σ_{k | d} μ(d/k) · (1 * f)(F^{depth-1}(k))
/// ```
///
/// with `(1 * f)` at the tower `F^{depth-1}(k)` evaluated by
/// [`divisor_sum_at_tower`]. For μ this never factors anything.
pub fn alpha_contract_iter(ctx: &Context, f: &ArithFn, depth: u32, n: u64) -> Result<BigInt> {
    match depth {
        0 => Err(Error::InvalidInput("contraction depth must be at least 1".into())),
        1 => alpha_contract(ctx, f, n),
        _ => {
            let height = depth - 1;
            let mut tower_sums: HashMap<BigUint, BigInt> = HashMap::new();
            let mut acc = BigInt::zero();
            for d in ctx.primitive_divisors(n)? {
                for (k, co) in d.divisor_pairs() {
                    let mu = mobius_of(&co);
                    if mu == 0 {
                        continue;
                    }
                    let u = match tower_sums.get(k.value()) {
                        Some(u) => u.clone(),
                        None => {
                            let u = divisor_sum_at_tower(ctx, f, &FibTower::new(k.value().clone(), height))?;
                            tower_sums.insert(k.value().clone(), u.clone());
                            u
                        }
                    };
                    acc += u * mu;
                }
            }
            Ok(acc)
        }
    }
}

/// `f_{α^depth}(n)` for `n = 1..=horizon`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionTable {
    pub source: String,
    pub depth: u32,
    pub values: BTreeMap<u64, BigInt>,
    pub horizon: u64,
}

/// Default iteration depth; μ_{α^m} = μ_{α³} for every `m ≥ 3`.
pub const DEFAULT_MAX_DEPTH: u32 = 3;

impl ContractionTable {
    /// Depth 0 tabulates `f` itself.
    pub fn build(ctx: &Context, f: &ArithFn, depth: u32, horizon: u64) -> Result<Self> {
        let mut values = BTreeMap::new();
        for n in 1..=horizon {
            let v = if depth == 0 { f.eval_u64(n) } else { alpha_contract_iter(ctx, f, depth, n)? };
            values.insert(n, v);
        }
        Ok(ContractionTable { source: f.name().to_string(), depth, values, horizon })
    }

    pub fn get(&self, n: u64) -> Option<&BigInt> {
        self.values.get(&n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::Mangoldt;

    #[test]
    fn examples() {
        let ctx = Context::new();
        let mu = ArithFn::mobius();
        assert_eq!(alpha_contract(&ctx, &mu, 2).unwrap(), BigInt::zero());
        assert_eq!(alpha_contract(&ctx, &mu, 4).unwrap(), BigInt::from(-1));
        assert_eq!(alpha_contract(&ctx, &ArithFn::liouville(), 12).unwrap(), BigInt::from(2));
        assert_eq!(alpha_contract_iter(&ctx, &mu, 2, 6).unwrap(), BigInt::from(-1));
        assert_eq!(alpha_contract_iter(&ctx, &mu, 3, 6).unwrap(), BigInt::from(-1));
        assert_eq!(alpha_contract_iter(&ctx, &mu, 1, 1).unwrap(), BigInt::one());
        assert!(alpha_contract_iter(&ctx, &mu, 0, 1).is_err());
    }

    #[test]
    fn towers() {
        let t = |b: u64, h| FibTower::new(BigUint::from(b), h);
        assert!(t(4, 3).is_one());
        assert!(!t(4, 2).is_one());
        assert!(t(2, 5).is_one());
        assert!(!t(5, 7).is_one());
        assert!(!t(6, 1).is_one());
        assert!(t(1, 0).is_one());
        assert_eq!(t(6, 2).materialize(100), Some(BigUint::from(21u32)));
        assert_eq!(t(30, 2).materialize(100), None);
    }

    #[test]
    fn iterated_contraction_agrees_with_nested_divisor_sums() {
        // Where F(d) is small enough, depth 2 can be computed literally:
        // sum over primitive divisors d of F(n) of alpha_contract(f, d).
        let ctx = Context::new();
        for f in [ArithFn::mobius(), ArithFn::liouville(), ArithFn::euler_phi(), ArithFn::one()] {
            for n in 1..=12u64 {
                let mut nested = BigInt::zero();
                for d in ctx.primitive_divisors(n).unwrap() {
                    nested += alpha_contract(&ctx, &f, d.to_u64().unwrap()).unwrap();
                }
                assert_eq!(alpha_contract_iter(&ctx, &f, 2, n).unwrap(), nested, "{} n={n}", f.name());
            }
        }
    }

    #[test]
    fn depth_three_for_mu_needs_no_large_factorizations() {
        let ctx = Context::with_budget(1_000_000);
        for n in 1..=40 {
            assert_eq!(alpha_contract_iter(&ctx, &ArithFn::mobius(), 3, n).unwrap(), BigInt::from(closed_mu_alpha3(n)));
        }
    }

    #[test]
    fn mangoldt_contraction_is_log_of_primitive_part() {
        let ctx = Context::new();
        // Λ_α(n) collects log p once for each prime power p^k with α(p^k) = n.
        let v = alpha_contract(&ctx, &Mangoldt, 12).unwrap();
        // α(16) = 12 and α(9) = 12, nothing else new in F(12) = 144.
        assert_eq!(v.integer(), Some(BigUint::from(6u32)));
    }

    #[test]
    fn table_invariants() {
        let ctx = Context::new();
        let t = ContractionTable::build(&ctx, &ArithFn::mobius(), 1, 20).unwrap();
        assert_eq!(t.get(2), Some(&BigInt::zero()));
        for n in 1..=20 {
            assert_eq!(t.get(n).unwrap(), &alpha_contract(&ctx, &ArithFn::mobius(), n).unwrap());
        }
        let t0 = ContractionTable::build(&ctx, &ArithFn::mobius(), 0, 6).unwrap();
        assert_eq!(t0.get(4), Some(&BigInt::zero()));
    }
}
