//! Truncated Dirichlet series of the closed forms against their Euler products.
//!
//! Each product is `P(s) / ζ(s)` for a short polynomial `P` in `k^{-s}`. For
//! μ_α, for instance, `(1 - 4^{-s}) ∏_{p > 2} (1 - p^{-s})` equals
//! `(1 + 2^{-s})(1 - 2^{-s}) ∏_{p > 2} (1 - p^{-s}) = (1 + 2^{-s}) / ζ(s)`.
//! So the check compares `ζ_N(s) · D_N(s)` with `P(s)`, which avoids
//! truncating an infinite product over primes.

use serde::Serialize;

use super::report::VerificationReport;
use crate::contraction::ClosedForm;
use crate::error::{Error, Result};
use crate::numtheory::{mobius_sieve, series_tail_bound, zeta_partial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EulerSeries {
    LambdaAlpha,
    MuAlpha,
    MuAlpha2,
    MuAlpha3,
}

impl EulerSeries {
    pub const ALL: [EulerSeries; 4] =
        [EulerSeries::LambdaAlpha, EulerSeries::MuAlpha, EulerSeries::MuAlpha2, EulerSeries::MuAlpha3];

    pub fn name(self) -> &'static str {
        self.closed_form().name()
    }

    /// Accepts `lambda`, `mu`, `mu2`, `mu3` as well as the closed-form names.
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "lambda" | "lambda_alpha" => Some(EulerSeries::LambdaAlpha),
            "mu" | "mu_alpha" => Some(EulerSeries::MuAlpha),
            "mu2" | "mu_alpha2" => Some(EulerSeries::MuAlpha2),
            "mu3" | "mu_alpha3" => Some(EulerSeries::MuAlpha3),
            _ => None,
        }
    }

    pub fn closed_form(self) -> ClosedForm {
        match self {
            EulerSeries::LambdaAlpha => ClosedForm::LambdaAlpha,
            EulerSeries::MuAlpha => ClosedForm::MuAlpha,
            EulerSeries::MuAlpha2 => ClosedForm::MuAlpha2,
            EulerSeries::MuAlpha3 => ClosedForm::MuAlpha3,
        }
    }

    /// The `k` with `P(s) = Σ k^{-s}`.
    pub fn polynomial_terms(self) -> &'static [u64] {
        match self {
            EulerSeries::LambdaAlpha => &[1, 2, 12],
            EulerSeries::MuAlpha => &[1, 2],
            EulerSeries::MuAlpha2 => &[1, 2, 3],
            EulerSeries::MuAlpha3 => &[1, 2, 3, 4],
        }
    }

    pub fn polynomial(self, s: f64) -> f64 {
        self.polynomial_terms().iter().map(|&k| (k as f64).powf(-s)).sum()
    }
}

/// `D_N(s) = Σ_{n ≤ N} f(n) n^{-s}` for the series' closed form.
pub fn dirichlet_partial(which: EulerSeries, s: f64, terms: u64) -> f64 {
    let sieve = mobius_sieve(terms as usize);
    let form = which.closed_form();
    (1..=terms).rev().map(|n| form.eval_sieved(n, &sieve) as f64 * (n as f64).powf(-s)).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerSample {
    pub which: EulerSeries,
    pub s: f64,
    pub terms: u64,
    pub zeta_partial: f64,
    pub dirichlet_partial: f64,
    pub product: f64,
    pub polynomial: f64,
    pub tolerance: f64,
}

/// The truncated product and its tolerance.
///
/// With `ζ = ζ_N + t_ζ`, `D = D_N + t_D` and `ζ D = P`:
/// `ζ_N D_N - P = -t_ζ D - ζ_N t_D`, and `|D| = |P|/ζ ≤ |P|`. Each closed form
/// is a sum of at most three Möbius values, so `|t_D| ≤ 3 t` with
/// `t = N^{1-s}/(s-1)` bounding `Σ_{n > N} n^{-s}`. That gives
/// `|P| t + 3 ζ t`, plus a rounding allowance for the two `N`-term sums.
pub fn euler_series(which: EulerSeries, s: f64, terms: u64) -> Result<EulerSample> {
    if !(s > 1.0) || terms < 12 {
        return Err(Error::InvalidInput(format!("Euler product check needs s > 1 and N >= 12, got s = {s}, N = {terms}")));
    }
    let zeta = zeta_partial(s, terms)?;
    let d = dirichlet_partial(which, s, terms);
    let polynomial = which.polynomial(s);
    let tail = series_tail_bound(s, terms);
    let rounding = 4.0 * f64::EPSILON * terms as f64 * zeta.upper() * zeta.upper();
    let tolerance = polynomial.abs() * tail + 3.0 * zeta.upper() * tail + rounding;
    Ok(EulerSample {
        which,
        s,
        terms,
        zeta_partial: zeta.sum,
        dirichlet_partial: d,
        product: zeta.sum * d,
        polynomial,
        tolerance,
    })
}

pub fn euler_product_check(which: EulerSeries, s: f64, terms: u64) -> Result<VerificationReport> {
    let sample = euler_series(which, s, terms)?;
    let mut report =
        VerificationReport::builder("euler-product", format!("which={}, s={s}, N={terms}", which.name()));
    report.real(format!("{} s={s}", which.name()), sample.product, sample.polynomial, sample.tolerance);
    Ok(report.finish())
}
