//! The logarithm of Fibonacci products and lcms, the `e_p`-weighted prime
//! sum, and the count of primitive primes.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::report::{AsymptoticSample, ExactValue, VerificationReport};
use crate::context::Context;
use crate::contraction::summatory_s_mangoldt;
use crate::error::{Error, Result};
use crate::fib::{fib, floor_index, log_of_big, Constants, ExactLog};

/// `c(N) = Σ_{n ≤ N} log(1 - (-1)^n r^{-2n})`.
///
/// The terms shrink like `r^{-2n}`, so `N = 40` already reaches double
/// precision.
pub fn constant_c(terms: u64) -> f64 {
    let r = (1.0 + 5f64.sqrt()) / 2.0;
    let q = r.powi(-2);
    let mut acc = 0.0;
    let mut power = 1.0;
    for n in 1..=terms {
        power *= q;
        if power == 0.0 {
            break;
        }
        let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
        acc += (sign * power).ln_1p();
    }
    acc
}

/// Both sides of `log ∏_{n ≤ x} F(n) = (log r / 2)k² + (log(r/5) / 2)k + c(k)`
/// with `k = ⌊x⌋`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogProdSample {
    pub lhs: ExactLog,
    pub rhs: f64,
    pub residual: f64,
}

/// The identity follows from Binet: `log F(n) = n log r - ½ log 5 + log(1 - (s/r)^n)`
/// and `s/r = -r^{-2}`.
pub fn logprod_closed_form(x: f64) -> Result<LogProdSample> {
    if !(x >= 1.0) {
        return Err(Error::InvalidInput(format!("logprod_closed_form needs x >= 1, got {x}")));
    }
    let k = floor_index(x);
    let product: BigUint = (1..=k).map(fib).product();
    let lhs = log_of_big(&product);
    let r = Constants::new().r;
    let kf = k as f64;
    let rhs = r.ln() / 2.0 * kf * kf + (r / 5.0).ln() / 2.0 * kf + constant_c(k);
    let residual = (lhs.log_value - rhs).abs();
    Ok(LogProdSample { lhs, rhs, residual })
}

/// The identity at every integer `x ≤ upto`, with an absolute tolerance.
pub fn check_logprod(upto: u64, tolerance: f64) -> Result<VerificationReport> {
    let mut report = VerificationReport::builder("logprod", format!("x<={upto}, tol={tolerance:e}"));
    for x in 1..=upto {
        let s = logprod_closed_form(x as f64)?;
        report.real(format!("x={x}"), s.lhs.log_value, s.rhs, tolerance);
    }
    Ok(report.finish())
}

/// `c(N)` against a reference decimal, plus the geometric Cauchy bound
/// `|c(N+1) - c(N)| ≤ r^{-2N}` for `N < terms`.
pub fn check_constant_c(terms: u64, reference: f64, tolerance: f64) -> VerificationReport {
    let r = Constants::new().r;
    let mut report = VerificationReport::builder("constant-c", format!("N={terms}, reference={reference}"));
    report.real(format!("c({terms})"), constant_c(terms), reference, tolerance);
    for n in 1..terms.min(60) {
        let step = (constant_c(n + 1) - constant_c(n)).abs();
        report.real(format!("c({})-c({n})", n + 1), step, 0.0, r.powi(-2 * n as i32));
    }
    report.finish()
}

/// `log lcm(F(1), …, F(x))` against `(3 log r / π²) x²`.
pub fn asymptotic_mangoldt_report(xs: &[u64]) -> Vec<AsymptoticSample> {
    let k = Constants::new().three_logr_over_pi2;
    xs.iter()
        .map(|&x| {
            let exact = summatory_s_mangoldt(x as f64);
            AsymptoticSample::new(x, ExactValue::Log(exact), k * (x * x) as f64)
        })
        .collect()
}

/// `∏ p^{e_p}` over primes with `α(p) ≤ x`.
pub fn ep_product(ctx: &Context, x: u64) -> Result<BigUint> {
    let mut product = BigUint::one();
    for n in 1..=x {
        for (p, e) in ctx.primitive_primes(n)? {
            product *= p.pow(e);
        }
    }
    Ok(product)
}

/// `Σ_{α(p) ≤ x} e_p log p`, exactly as the log of [`ep_product`], with its
/// asymptotic comparison.
pub fn ep_weighted_sum(ctx: &Context, x: u64) -> Result<(ExactLog, AsymptoticSample)> {
    let value = log_of_big(&ep_product(ctx, x)?);
    let predicted = Constants::new().three_logr_over_pi2 * (x * x) as f64;
    let sample = AsymptoticSample::new(x, ExactValue::Log(value.clone()), predicted);
    Ok((value, sample))
}

/// `π_α(x)`, the number of primes of rank at most `x`.
pub fn pi_alpha(ctx: &Context, x: u64) -> Result<u64> {
    let mut count = 0;
    for n in 1..=x {
        count += ctx.primitive_primes(n)?.len() as u64;
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PiAlphaSample {
    pub x: u64,
    pub count: u64,
    /// `π_α(x) log x / x²`
    pub scaled: f64,
}

/// Scaled `π_α` values next to the limsup bound `3 log r / (2π²)`. A trend
/// report: nothing here is asserted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PiAlphaReport {
    pub bound: f64,
    pub samples: Vec<PiAlphaSample>,
}

pub fn pi_alpha_bound_report(ctx: &Context, xs: &[u64]) -> Result<PiAlphaReport> {
    let samples = xs
        .iter()
        .map(|&x| {
            let count = pi_alpha(ctx, x)?;
            let scaled = if x < 2 { 0.0 } else { count as f64 * (x as f64).ln() / (x * x) as f64 };
            Ok(PiAlphaSample { x, count, scaled })
        })
        .collect::<Result<_>>()?;
    Ok(PiAlphaReport { bound: Constants::new().pi_alpha_bound(), samples })
}

/// Structural facts about `π_α` up to `x_max`: it is non-decreasing, and
/// `π_α(x) ≤ Σ_{n ≤ x} Ω(F(n))` since each prime is counted once, at its rank.
/// The limsup bound is carried in the parameters, not asserted.
pub fn check_pi_alpha(ctx: &Context, x_max: u64) -> Result<VerificationReport> {
    let bound = Constants::new().pi_alpha_bound();
    let mut report = VerificationReport::builder("pi-alpha", format!("x<={x_max}, limsup bound {bound}"));
    let (mut previous, mut count, mut omega_sum) = (0u64, 0u64, 0u64);
    for x in 1..=x_max {
        count += ctx.primitive_primes(x)?.len() as u64;
        omega_sum += ctx.fib_factorization(x)?.big_omega();
        report.holds(
            format!("x={x}"),
            format!("pi_alpha={count}, previous={previous}, sum of Omega={omega_sum}"),
            count >= previous && count <= omega_sum,
        );
        previous = count;
    }
    Ok(report.finish())
}

/// Windowed ratio checks for the two `x²` asymptotics, plus the exact
/// relations between them: `∏ p^{e_p}` divides `lcm(F(1), …, F(x))` for every
/// `x ≤ ep_x`, and the lcm ratio at `lcm_x` is closer to 1 than at `lcm_near`.
pub fn check_asymptotic_windows(
    ctx: &Context,
    lcm_x: u64,
    lcm_near: u64,
    lcm_window: (f64, f64),
    ep_x: u64,
    ep_window: (f64, f64),
) -> Result<VerificationReport> {
    let mut report = VerificationReport::builder(
        "asymptotics",
        format!("lcm x={lcm_x} in {lcm_window:?}, e_p x={ep_x} in {ep_window:?}"),
    );
    let samples = asymptotic_mangoldt_report(&[lcm_near, lcm_x]);
    let (near, far) = (&samples[0], &samples[1]);
    report.holds(
        format!("lcm ratio x={lcm_x}"),
        format!("{} in [{}, {}]", far.ratio, lcm_window.0, lcm_window.1),
        far.ratio >= lcm_window.0 && far.ratio <= lcm_window.1,
    );
    report.holds(
        format!("lcm ratio x={lcm_x} vs x={lcm_near}"),
        format!("|{} - 1| < |{} - 1|", far.ratio, near.ratio),
        (far.ratio - 1.0).abs() < (near.ratio - 1.0).abs(),
    );
    let (_, ep) = ep_weighted_sum(ctx, ep_x)?;
    report.holds(
        format!("e_p ratio x={ep_x}"),
        format!("{} in [{}, {}]", ep.ratio, ep_window.0, ep_window.1),
        ep.ratio >= ep_window.0 && ep.ratio <= ep_window.1,
    );
    for x in 1..=ep_x {
        let lcm = crate::fib::lcm_fib(x as f64);
        let ep = ep_product(ctx, x)?;
        report.holds(format!("x={x}"), "prod p^e_p | lcm", (&lcm % &ep) == BigUint::from(0u32));
    }
    Ok(report.finish())
}
