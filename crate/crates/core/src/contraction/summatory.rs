//! `T_{f,α}(x) = Σ_{α(n) ≤ x} f(n) ⌊x/α(n)⌋` and `S_{f,α}(x) = Σ_{α(n) ≤ x} f(n)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::alpha_contract;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::fib::{floor_index, lcm_fib, log_of_big, ExactLog};
use crate::numtheory::{mobius_sieve, Evaluate, Mangoldt};
use crate::weight::Weight;

/// `(1 * f)(F(n)) = Σ_{d | F(n)} f(d)`.
pub fn divisor_sum_at_fib<F: Evaluate + ?Sized>(ctx: &Context, f: &F, n: u64) -> Result<F::Value> {
    let mut acc = F::Value::zero();
    for d in ctx.fib_factorization(n)?.divisor_factorizations() {
        acc.add_assign(&f.eval(&d));
    }
    Ok(acc)
}

/// `T_{f,α}(x)`, computed as `Σ_{n ≤ x} (1 * f)(F(n))`.
///
/// Each `m` with `α(m) ≤ x` divides `F(n)` for exactly `⌊x/α(m)⌋` indices
/// `n ≤ x`, so the two sums agree term by term; this form only needs the
/// divisors of `F(1), …, F(⌊x⌋)` one at a time.
pub fn summatory_t<F: Evaluate + ?Sized>(ctx: &Context, f: &F, x: f64) -> Result<F::Value> {
    let mut acc = F::Value::zero();
    for n in 1..=floor_index(x) {
        acc.add_assign(&divisor_sum_at_fib(ctx, f, n)?);
    }
    Ok(acc)
}

/// `S_{f,α}(x) = Σ_{n ≤ x} f_α(n)`.
pub fn summatory_s<F: Evaluate + ?Sized>(ctx: &Context, f: &F, x: f64) -> Result<F::Value> {
    let mut acc = F::Value::zero();
    for n in 1..=floor_index(x) {
        acc.add_assign(&alpha_contract(ctx, f, n)?);
    }
    Ok(acc)
}

/// `T_{Λ,α}(x) = log ∏_{n ≤ x} F(n)`.
pub fn summatory_t_mangoldt(ctx: &Context, x: f64) -> Result<ExactLog> {
    let sum = summatory_t(ctx, &Mangoldt, x)?;
    Ok(sum.to_exact_log().expect("Λ sums have non-negative coefficients"))
}

/// `S_{Λ,α}(x) = log lcm(F(1), …, F(⌊x⌋))`, from the lcm directly.
pub fn summatory_s_mangoldt(x: f64) -> ExactLog {
    log_of_big(&lcm_fib(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SummatoryKind {
    S,
    T,
}

/// Values of `S_{f,α}` or `T_{f,α}` at the integers `1..=horizon`.
///
/// Both functions are step functions constant on `[k, k+1)`, so the value at
/// real `x` is the value at `⌊x⌋`.
#[derive(Clone, Debug, PartialEq)]
pub struct SummatoryTable<W> {
    pub kind: SummatoryKind,
    pub fn_name: String,
    pub values: BTreeMap<u64, W>,
}

impl<W: Weight> SummatoryTable<W> {
    pub fn tabulate_t<F>(ctx: &Context, f: &F, horizon: u64) -> Result<Self>
    where
        F: Evaluate<Value = W> + ?Sized,
    {
        Self::accumulate(SummatoryKind::T, f.name(), horizon, |n| divisor_sum_at_fib(ctx, f, n))
    }

    pub fn tabulate_s<F>(ctx: &Context, f: &F, horizon: u64) -> Result<Self>
    where
        F: Evaluate<Value = W> + ?Sized,
    {
        Self::accumulate(SummatoryKind::S, f.name(), horizon, |n| alpha_contract(ctx, f, n))
    }

    fn accumulate(
        kind: SummatoryKind,
        name: &str,
        horizon: u64,
        mut step: impl FnMut(u64) -> Result<W>,
    ) -> Result<Self> {
        let mut values = BTreeMap::new();
        let mut acc = W::zero();
        for n in 1..=horizon {
            acc.add_assign(&step(n)?);
            values.insert(n, acc.clone());
        }
        Ok(SummatoryTable { kind, fn_name: name.to_string(), values })
    }

    /// Value at real `x`; zero below 1.
    pub fn at(&self, x: f64) -> Result<W> {
        let k = floor_index(x);
        if k == 0 {
            return Ok(W::zero());
        }
        self.values.get(&k).cloned().ok_or(Error::MissingTableEntry(k))
    }

    /// `T(x) = Σ_{n ≤ x} S(x/n)` from an `S` table.
    pub fn s_to_t(&self, x: f64) -> Result<W> {
        if self.kind != SummatoryKind::S {
            return Err(Error::InvalidInput("s_to_t needs an S table".into()));
        }
        let k = floor_index(x);
        let mut acc = W::zero();
        for n in 1..=k {
            acc.add_assign(&self.at((k / n) as f64)?);
        }
        Ok(acc)
    }
}

/// `S_{f,α}(x) = Σ_{n ≤ x} μ(n) T_{f,α}(x/n)`.
pub fn invert_t_to_s<W: Weight>(table: &SummatoryTable<W>, x: f64) -> Result<W> {
    if table.kind != SummatoryKind::T {
        return Err(Error::InvalidInput("Möbius inversion needs a T table".into()));
    }
    let k = floor_index(x);
    let mu = mobius_sieve(k as usize);
    let mut acc = W::zero();
    for n in 1..=k {
        if mu[n as usize] != 0 {
            acc.add_assign(&table.at((k / n) as f64)?.scaled(&BigInt::from(mu[n as usize])));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::ClosedForm;
    use crate::numtheory::{mertens, ArithFn};
    use num_bigint::BigUint;

    #[test]
    fn examples() {
        let ctx = Context::new();
        let mu = ArithFn::mobius();
        assert_eq!(summatory_t(&ctx, &mu, 1.5).unwrap(), BigInt::from(1));
        assert_eq!(summatory_t(&ctx, &mu, 10.0).unwrap(), BigInt::from(2));
        assert_eq!(summatory_t_mangoldt(&ctx, 6.0).unwrap().integer_value, BigUint::from(240u32));
        assert_eq!(summatory_s_mangoldt(5.0).integer_value, BigUint::from(30u32));
        assert_eq!(summatory_s(&ctx, &mu, 4.0).unwrap(), BigInt::from(mertens(4.0) + mertens(2.0)));
        assert_eq!(summatory_s(&ctx, &mu, 4.0).unwrap(), BigInt::from(-1));
        assert_eq!(summatory_s(&ctx, &ArithFn::euler_phi(), 1.0).unwrap(), BigInt::from(1));
        assert_eq!(summatory_t(&ctx, &mu, 0.5).unwrap(), BigInt::from(0));
    }

    #[test]
    fn mangoldt_s_two_routes() {
        let ctx = Context::new();
        for x in 1..=40u64 {
            let via_contraction = summatory_s(&ctx, &Mangoldt, x as f64).unwrap();
            assert_eq!(via_contraction.integer(), Some(lcm_fib(x as f64)), "x = {x}");
        }
    }

    #[test]
    fn inversion_examples() {
        let ctx = Context::new();
        let t = SummatoryTable::tabulate_t(&ctx, &ArithFn::mobius(), 10).unwrap();
        assert_eq!(invert_t_to_s(&t, 4.0).unwrap(), BigInt::from(-1));
        assert_eq!(invert_t_to_s(&t, 1.0).unwrap(), BigInt::from(1));
        let t2 = SummatoryTable::tabulate_t(&ctx, &ClosedForm::MuAlpha.arith_fn(), 10).unwrap();
        let expected = mertens(6.0) + mertens(3.0) + mertens(2.0);
        assert_eq!(expected, -2);
        assert_eq!(invert_t_to_s(&t2, 6.0).unwrap(), BigInt::from(expected));
    }

    #[test]
    fn missing_entries_are_reported() {
        let ctx = Context::new();
        let t = SummatoryTable::tabulate_t(&ctx, &ArithFn::mobius(), 3).unwrap();
        assert_eq!(invert_t_to_s(&t, 8.0), Err(Error::MissingTableEntry(8)));
        let s = SummatoryTable::tabulate_s(&ctx, &ArithFn::mobius(), 3).unwrap();
        assert!(invert_t_to_s(&s, 2.0).is_err());
    }

    #[test]
    fn s_and_t_are_mobius_pairs() {
        let ctx = Context::new();
        for f in [ArithFn::mobius(), ArithFn::euler_phi(), ArithFn::liouville()] {
            let t = SummatoryTable::tabulate_t(&ctx, &f, 30).unwrap();
            let s = SummatoryTable::tabulate_s(&ctx, &f, 30).unwrap();
            for x in 1..=30u64 {
                let x = x as f64;
                assert_eq!(invert_t_to_s(&t, x).unwrap(), s.at(x).unwrap(), "{} x={x}", f.name());
                assert_eq!(s.s_to_t(x).unwrap(), t.at(x).unwrap(), "{} x={x}", f.name());
                assert_eq!(summatory_s(&ctx, &f, x).unwrap(), s.at(x).unwrap());
            }
        }
    }

    #[test]
    fn s_mu_is_sum_of_two_mertens_values() {
        let ctx = Context::new();
        let s = SummatoryTable::tabulate_s(&ctx, &ArithFn::mobius(), 50).unwrap();
        for x in 1..=50u64 {
            let x = x as f64;
            assert_eq!(s.at(x).unwrap(), BigInt::from(mertens(x) + mertens(x / 2.0)));
        }
    }
}
