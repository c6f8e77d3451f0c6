//! Step tables of `T` for iterated μ-contractions and the closed forms
//! checked against the divisor-sum definition.

use num_bigint::BigInt;
use num_traits::Zero;

use super::report::VerificationReport;
use crate::context::Context;
use crate::contraction::{alpha_contract, alpha_contract_iter, summatory_t, ClosedForm};
use crate::error::{Error, Result};
use crate::fib::floor_index;
use crate::numtheory::ArithFn;

/// `T_{μ_{α^{depth-1}}, α}(y) = min(y, depth + 1)` at every integer `y ≤ x`
/// (and at `x` itself when it is not an integer).
///
/// The summand is μ for depth 1 and the closed forms of μ_α and μ_{α²} for
/// depths 2 and 3.
pub fn check_t_tables(ctx: &Context, depth: u32, x: f64) -> Result<VerificationReport> {
    let f = match depth {
        1 => ArithFn::mobius(),
        2 => ClosedForm::MuAlpha.arith_fn(),
        3 => ClosedForm::MuAlpha2.arith_fn(),
        _ => return Err(Error::InvalidInput(format!("T tables exist for depth 1, 2, 3; got {depth}"))),
    };
    if !(x >= 1.0) {
        return Err(Error::InvalidInput(format!("check_t_tables needs x >= 1, got {x}")));
    }
    let mut report = VerificationReport::builder("t-tables", format!("depth={depth}, f={}, x={x}", f.name()));
    let mut points: Vec<f64> = (1..=floor_index(x)).map(|y| y as f64).collect();
    if x.fract() != 0.0 {
        points.push(x);
    }
    for y in points {
        let got = summatory_t(ctx, &f, y)?;
        let expected = BigInt::from(floor_index(y).min(depth as u64 + 1));
        report.exact(format!("x={y}"), &[&got, &expected]);
    }
    Ok(report.finish())
}

/// Each closed form against the divisor-sum definition for `n ≤ upto`:
/// μ_α, μ_{α²}, μ_{α³} as iterated contractions of μ, and λ_α.
pub fn check_closed_forms(ctx: &Context, upto: u64) -> Result<VerificationReport> {
    let mu = ArithFn::mobius();
    let lambda = ArithFn::liouville();
    let mut report = VerificationReport::builder("closed-forms", format!("n<={upto}"));
    for n in 1..=upto {
        for (depth, form) in [(1, ClosedForm::MuAlpha), (2, ClosedForm::MuAlpha2), (3, ClosedForm::MuAlpha3)] {
            let direct = alpha_contract_iter(ctx, &mu, depth, n)?;
            report.exact(format!("{} n={n}", form.name()), &[&direct, &BigInt::from(form.eval(n))]);
        }
        let direct = alpha_contract(ctx, &lambda, n)?;
        report.exact(
            format!("lambda_alpha n={n}"),
            &[&direct, &BigInt::from(ClosedForm::LambdaAlpha.eval(n))],
        );
    }
    Ok(report.finish())
}

/// μ_{α³} is fixed by α-contraction and Δ₂₃ = μ_{α²} - μ_{α³} is killed by
/// it, for `n ≤ upto`. Both are contracted from their closed forms.
pub fn check_fixed_point(ctx: &Context, upto: u64) -> Result<VerificationReport> {
    let mu3 = ClosedForm::MuAlpha3.arith_fn();
    let delta = ClosedForm::Delta23.arith_fn();
    let mut report = VerificationReport::builder("fixed-point", format!("n<={upto}"));
    for n in 1..=upto {
        let contracted = alpha_contract(ctx, &mu3, n)?;
        report.exact(format!("mu_alpha3 n={n}"), &[&contracted, &BigInt::from(ClosedForm::MuAlpha3.eval(n))]);
        let killed = alpha_contract(ctx, &delta, n)?;
        report.exact(format!("delta23 n={n}"), &[&killed, &BigInt::zero()]);
    }
    Ok(report.finish())
}

/// λ_α closed form against the oracle for `n ≤ upto`, `λ_α(12) = 2`, and
/// the witness `λ_α(12) ≠ λ_α(4) λ_α(3)`.
pub fn check_lambda_alpha(ctx: &Context, upto: u64) -> Result<VerificationReport> {
    let lambda = ArithFn::liouville();
    let mut report = VerificationReport::builder("lambda-alpha", format!("n<={upto}"));
    for n in 1..=upto {
        let direct = alpha_contract(ctx, &lambda, n)?;
        report.exact(format!("n={n}"), &[&direct, &BigInt::from(ClosedForm::LambdaAlpha.eval(n))]);
    }
    let at = |n| alpha_contract(ctx, &lambda, n);
    let (l12, l4, l3) = (at(12)?, at(4)?, at(3)?);
    report.exact("lambda_alpha(12)", &[&l12, &BigInt::from(2)]);
    report.holds(
        "non-multiplicative",
        format!("lambda_alpha(12) = {l12}, lambda_alpha(4) * lambda_alpha(3) = {}", &l4 * &l3),
        l12 != &l4 * &l3,
    );
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_table_examples() {
        let ctx = Context::new();
        let r = check_t_tables(&ctx, 1, 1.9).unwrap();
        assert!(r.passed);
        assert_eq!(r.details.last().unwrap().values[0], super::super::Quantity::exact(1));
        let r = check_t_tables(&ctx, 2, 10.0).unwrap();
        assert!(r.passed);
        assert_eq!(r.details.last().unwrap().values[0], super::super::Quantity::exact(3));
        let r = check_t_tables(&ctx, 3, 4.0).unwrap();
        assert!(r.passed);
        assert_eq!(r.details.last().unwrap().values[0], super::super::Quantity::exact(4));
        assert!(check_t_tables(&ctx, 3, 30.0).unwrap().passed);
        assert!(check_t_tables(&ctx, 4, 3.0).is_err());
    }

    #[test]
    fn closed_form_checks() {
        let ctx = Context::new();
        assert!(check_closed_forms(&ctx, 30).unwrap().passed);
        assert!(check_fixed_point(&ctx, 30).unwrap().passed);
        assert!(check_lambda_alpha(&ctx, 30).unwrap().passed);
    }
}
