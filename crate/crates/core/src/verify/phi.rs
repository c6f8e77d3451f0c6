//! `Σ_{α(n) ≤ x} φ(n) ⌊x/α(n)⌋ = Σ_{n ≤ x} F(n) = F(⌊x⌋ + 2) - 1`, and the
//! Fibonacci numbers regenerated from the left-hand side alone.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use super::report::VerificationReport;
use super::theorem1::alpha_set;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::fib::{fib, floor_index};
use crate::numtheory::{euler_phi_of, Factorization};

/// Checks the three-way equality at every integer `y ≤ x`.
pub fn check_phi_identity(ctx: &Context, x: f64) -> Result<VerificationReport> {
    if !(x >= 1.0) {
        return Err(Error::InvalidInput(format!("check_phi_identity needs x >= 1, got {x}")));
    }
    let top = floor_index(x);
    let set = alpha_set(ctx, x)?;
    let mut report = VerificationReport::builder("phi-identity", format!("x={x}"));
    let mut plain = BigInt::from(0);
    for y in 1..=top {
        let alpha_side: BigInt =
            set.iter().filter(|(_, r)| *r <= y).map(|(m, r)| BigInt::from(euler_phi_of(m) * (y / r))).sum();
        plain += BigInt::from(fib(y));
        let closed = BigInt::from(fib(y + 2)) - 1;
        report.exact(format!("x={y}"), &[&alpha_side, &plain, &closed]);
    }
    Ok(report.finish())
}

/// `F(1), …, F(x_max + 2)` from `a_1 = 1` and
/// `a_{x+2} = 1 + Σ_{α(n) ≤ x} φ(n) ⌊x/α(n)⌋`.
///
/// `x = 0` gives the empty sum, so `a_2 = 1`. The ranks are read off the
/// terms generated so far: each divisor of `a_x` not seen in an earlier term
/// has rank `x`. Terms are factored with the generic factorizer, since they
/// are not assumed to be Fibonacci numbers.
pub fn phi_recursive_fib(ctx: &Context, x_max: u64) -> Result<Vec<BigUint>> {
    let mut terms = vec![BigUint::one(), BigUint::one()];
    let mut ranked: BTreeMap<BigUint, (Factorization, u64)> = BTreeMap::new();
    for x in 1..=x_max {
        let fac = ctx.factorize(&terms[x as usize - 1])?;
        for d in fac.divisor_factorizations() {
            ranked.entry(d.value().clone()).or_insert((d, x));
        }
        let sum: BigUint = ranked.values().map(|(m, r)| euler_phi_of(m) * (x / r)).sum();
        terms.push(sum + 1u32);
    }
    Ok(terms)
}

/// [`phi_recursive_fib`] against fast doubling.
pub fn check_phi_recursive(ctx: &Context, x_max: u64) -> Result<VerificationReport> {
    let terms = phi_recursive_fib(ctx, x_max)?;
    let mut report = VerificationReport::builder("phi-recursive", format!("x_max={x_max}"));
    for (i, t) in terms.iter().enumerate() {
        let n = i as u64 + 1;
        report.exact(format!("n={n}"), &[&BigInt::from(t.clone()), &BigInt::from(fib(n))]);
    }
    Ok(report.finish())
}
