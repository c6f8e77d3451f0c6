//! The double-counting identity
//!
//! ```text
//! Σ_{n ≤ x} (f*g)(F(n)) = Σ_{α(m) ≤ x} f(m) Σ_{d ≤ x/α(m)} g(F(d·α(m)) / m)
//!                       = Σ_{α(m) ≤ x} g(m) Σ_{d ≤ x/α(m)} f(F(d·α(m)) / m)
//! ```
//!
//! and its pointwise form for completely multiplicative `g`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::report::VerificationReport;
use crate::context::Context;
use crate::contraction::alpha_contract;
use crate::error::{Error, Result};
use crate::fib::floor_index;
use crate::numtheory::{convolve_weighted, ArithFn, Evaluate, Factorization};
use crate::weight::Weight;

/// `{ m : α(m) ≤ x }` with each member's rank, ordered by `m`.
///
/// The set is the union of the divisor sets of `F(1), …, F(⌊x⌋)`; nothing
/// larger can have rank `≤ x`. Ranks are looked up per member through
/// [`Context::rank_of_divisor`] and cross-checked against the index of first
/// appearance, which duality says must coincide.
pub fn alpha_set(ctx: &Context, x: f64) -> Result<Vec<(Factorization, u64)>> {
    let mut seen: BTreeMap<num_bigint::BigUint, (Factorization, u64)> = BTreeMap::new();
    for n in 1..=floor_index(x) {
        for d in ctx.fib_factorization(n)?.divisor_factorizations() {
            if seen.contains_key(d.value()) {
                continue;
            }
            let r = ctx.rank_of_divisor(d.value(), n)?;
            if r != n {
                return Err(Error::InvalidInput(format!(
                    "duality violated: {} first divides F({n}) but has rank {r}",
                    d.value()
                )));
            }
            seen.insert(d.value().clone(), (d, r));
        }
    }
    Ok(seen.into_values().collect())
}

/// Checks the three-way identity at every integer `y ≤ x`.
///
/// The three sides are accumulated independently: the left by convolving at
/// `F(n)`, the middle and right by walking the pairs `(m, d)` with
/// `d·α(m) ≤ x`. A pair contributes to every `y ≥ d·α(m)`, so each side is
/// bucketed by that product and prefix-summed.
pub fn check_theorem1<F>(ctx: &Context, f: &F, g: &ArithFn, x: f64) -> Result<VerificationReport>
where
    F: Evaluate + ?Sized,
{
    if !(x >= 1.0) {
        return Err(Error::InvalidInput(format!("check_theorem1 needs x >= 1, got {x}")));
    }
    let top = floor_index(x);
    let mut left = vec![F::Value::zero(); top as usize + 1];
    let mut middle = left.clone();
    let mut right = left.clone();

    for n in 1..=top {
        left[n as usize] = convolve_weighted(f, g, &*ctx.fib_factorization(n)?);
    }
    for (m, rank) in alpha_set(ctx, x)? {
        let fm = f.eval(&m);
        let gm = g.eval(&m);
        for d in 1..=top / rank {
            let t = d * rank;
            let quotient = ctx
                .fib_factorization(t)?
                .checked_div(&m)
                .expect("m | F(α(m)) | F(t)");
            middle[t as usize].add_assign(&fm.scaled(&g.eval(&quotient)));
            if !gm.is_zero() {
                right[t as usize].add_assign(&f.eval(&quotient).scaled(&gm));
            }
        }
    }

    let mut report = VerificationReport::builder(
        "theorem1",
        format!("f={}, g={}, x={x}", f.name(), g.name()),
    );
    let (mut l, mut mi, mut r) = (F::Value::zero(), F::Value::zero(), F::Value::zero());
    for y in 1..=top as usize {
        l.add_assign(&left[y]);
        mi.add_assign(&middle[y]);
        r.add_assign(&right[y]);
        report.exact(format!("x={y}"), &[&l, &mi, &r]);
    }
    Ok(report.finish())
}

/// For completely multiplicative `g` without zeros,
/// `(f*g)(F(n)) = g(F(n)) · (1 * (f/g)_α)(n)` for every `n ≤ N`; and the
/// `g = 1` special case `(1*f)(F(n)) = (1*f_α)(n)`.
///
/// `(f/g)_α` is evaluated by the divisor-sum definition in exact rationals.
pub fn check_corollary_completely_mult(
    ctx: &Context,
    f: &ArithFn,
    g: &ArithFn,
    upto: u64,
) -> Result<VerificationReport> {
    let one = ArithFn::one();
    let mut quotient_contraction: BTreeMap<u64, BigRational> = BTreeMap::new();
    let mut f_contraction: BTreeMap<u64, BigInt> = BTreeMap::new();
    let mut report = VerificationReport::builder(
        "corollary",
        format!("f={}, g={}, N={upto}", f.name(), g.name()),
    );
    for n in 1..=upto {
        let mut q = BigRational::zero();
        for d in ctx.primitive_divisors(n)? {
            let gd = g.eval(&d);
            if gd.is_zero() {
                return Err(Error::DivisionByZero { name: g.name().to_string(), at: d.value().to_string() });
            }
            q += BigRational::new(f.eval(&d), gd);
        }
        quotient_contraction.insert(n, q);
        f_contraction.insert(n, alpha_contract(ctx, f, n)?);

        let fib_n = ctx.fib_factorization(n)?;
        let lhs = BigRational::from_integer(convolve_weighted(f, g, &fib_n));
        let divisor_indices = crate::numtheory::factor_small(n).divisor_factorizations();
        let inner: BigRational = divisor_indices
            .iter()
            .map(|k| quotient_contraction[&k.to_u64().expect("u64")].clone())
            .sum();
        let rhs = BigRational::from_integer(g.eval(&fib_n)) * inner;
        report.exact(format!("n={n}"), &[&lhs, &rhs]);

        let lhs1 = convolve_weighted(f, &one, &fib_n);
        let rhs1: BigInt = divisor_indices
            .iter()
            .map(|k| f_contraction[&k.to_u64().expect("u64")].clone())
            .sum();
        report.exact(format!("n={n} (g=1)"), &[&lhs1, &rhs1]);
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fib::fib;
    use crate::numtheory::Mangoldt;

    #[test]
    fn mu_one_at_two() {
        let ctx = Context::new();
        let r = check_theorem1(&ctx, &ArithFn::mobius(), &ArithFn::one(), 2.0).unwrap();
        assert!(r.passed);
        assert_eq!(r.details.last().unwrap().values[0], super::super::Quantity::exact(2));
    }

    #[test]
    fn phi_one_at_four() {
        let ctx = Context::new();
        let r = check_theorem1(&ctx, &ArithFn::euler_phi(), &ArithFn::one(), 4.0).unwrap();
        assert!(r.passed);
        assert_eq!(r.details.last().unwrap().values[0], super::super::Quantity::exact(7));
    }

    #[test]
    fn mangoldt_sides_are_log_of_product() {
        let ctx = Context::new();
        let r = check_theorem1(&ctx, &Mangoldt, &ArithFn::one(), 10.0).unwrap();
        assert!(r.passed, "{r:?}");
        let product: num_bigint::BigUint = (1..=10).map(fib).product();
        assert_eq!(r.details.last().unwrap().values[0], super::super::Quantity::exact(format!("log({product})")));
    }

    #[test]
    fn alpha_set_members_have_rank_at_most_x() {
        let ctx = Context::new();
        let set = alpha_set(&ctx, 12.0).unwrap();
        assert!(set.iter().all(|(_, r)| *r <= 12));
        // 144 and all its divisors, plus the divisors of F(1..11).
        assert!(set.iter().any(|(m, r)| m.to_u64() == Some(144) && *r == 12));
        assert!(set.iter().all(|(m, _)| m.to_u64().unwrap() <= 144));
    }

    #[test]
    fn corollary_examples() {
        let ctx = Context::new();
        let one = ArithFn::one();
        for f in [ArithFn::mobius(), ArithFn::euler_phi(), ArithFn::liouville()] {
            let r = check_corollary_completely_mult(&ctx, &f, &one, 20).unwrap();
            assert!(r.passed, "{}", f.name());
        }
        let r = check_corollary_completely_mult(&ctx, &ArithFn::euler_phi(), &ArithFn::identity(), 20).unwrap();
        assert!(r.passed);
        let r = check_corollary_completely_mult(&ctx, &ArithFn::divisor_count(), &ArithFn::liouville(), 20).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn corollary_rejects_vanishing_g() {
        let ctx = Context::new();
        let err = check_corollary_completely_mult(&ctx, &ArithFn::one(), &ArithFn::mobius(), 12).unwrap_err();
        assert!(matches!(err, Error::DivisionByZero { .. }));
    }
}
