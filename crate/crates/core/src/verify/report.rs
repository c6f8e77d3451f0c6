use serde::Serialize;

use crate::fib::ExactLog;
use crate::weight::Weight;

/// A number as it appears in a report: exact (printed) or floating.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Quantity {
    Exact(String),
    Real(f64),
}

impl Quantity {
    pub fn exact(v: impl ToString) -> Self {
        Quantity::Exact(v.to_string())
    }
}

/// One compared index of a check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub index: String,
    /// The quantities that must agree; two or three of them.
    pub values: Vec<Quantity>,
    pub residual: Quantity,
    /// `None` for exact comparisons, which require a zero residual.
    pub tolerance: Option<f64>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub parameters: String,
    pub passed: bool,
    /// Worst residual over the details: the first non-zero exact difference
    /// if there is one, otherwise the largest real residual, otherwise `0`.
    pub residual: Quantity,
    pub details: Vec<Outcome>,
}

impl VerificationReport {
    pub fn builder(check_name: impl Into<String>, parameters: impl Into<String>) -> ReportBuilder {
        ReportBuilder { check_name: check_name.into(), parameters: parameters.into(), details: Vec::new() }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.details.iter().filter(|o| !o.passed)
    }
}

pub struct ReportBuilder {
    check_name: String,
    parameters: String,
    details: Vec<Outcome>,
}

impl ReportBuilder {
    /// Exact agreement of all `values`; the residual is the first non-zero
    /// difference against `values[0]`.
    pub fn exact<W: Weight>(&mut self, index: impl ToString, values: &[&W]) -> &mut Self {
        let residual = values[1..]
            .iter()
            .map(|v| values[0].difference(v))
            .find(|d| !d.is_zero())
            .unwrap_or_else(W::zero);
        self.details.push(Outcome {
            index: index.to_string(),
            values: values.iter().map(Quantity::exact).collect(),
            passed: residual.is_zero(),
            residual: Quantity::exact(residual),
            tolerance: None,
        });
        self
    }

    /// `|lhs - rhs| ≤ tolerance`.
    pub fn real(&mut self, index: impl ToString, lhs: f64, rhs: f64, tolerance: f64) -> &mut Self {
        let residual = (lhs - rhs).abs();
        self.details.push(Outcome {
            index: index.to_string(),
            values: vec![Quantity::Real(lhs), Quantity::Real(rhs)],
            residual: Quantity::Real(residual),
            tolerance: Some(tolerance),
            passed: residual <= tolerance,
        });
        self
    }

    /// A yes/no property with a free-form description of what was compared.
    pub fn holds(&mut self, index: impl ToString, description: impl ToString, ok: bool) -> &mut Self {
        self.details.push(Outcome {
            index: index.to_string(),
            values: vec![Quantity::exact(description)],
            residual: Quantity::exact(if ok { "0" } else { "1" }),
            tolerance: None,
            passed: ok,
        });
        self
    }

    pub fn finish(&mut self) -> VerificationReport {
        let details = std::mem::take(&mut self.details);
        let passed = details.iter().all(|o| o.passed);
        let nonzero_exact = details.iter().find_map(|o| match &o.residual {
            Quantity::Exact(r) if r != "0" => Some(o.residual.clone()),
            _ => None,
        });
        let worst_real = details
            .iter()
            .filter_map(|o| match o.residual {
                Quantity::Real(r) => Some(r),
                _ => None,
            })
            .reduce(f64::max);
        let residual = match (nonzero_exact, worst_real) {
            (Some(r), _) => r,
            (None, Some(r)) => Quantity::Real(r),
            (None, None) => Quantity::exact(0),
        };
        VerificationReport {
            check_name: std::mem::take(&mut self.check_name),
            parameters: std::mem::take(&mut self.parameters),
            passed,
            residual,
            details,
        }
    }
}

/// Exact quantity in an asymptotic comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ExactValue {
    Log(ExactLog),
    Count(u64),
}

impl ExactValue {
    pub fn approx(&self) -> f64 {
        match self {
            ExactValue::Log(l) => l.log_value,
            ExactValue::Count(c) => *c as f64,
        }
    }
}

/// An exact value next to its predicted asymptotic size.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticSample {
    pub x: u64,
    pub exact_value: ExactValue,
    pub predicted: f64,
    pub ratio: f64,
}

impl AsymptoticSample {
    pub fn new(x: u64, exact_value: ExactValue, predicted: f64) -> Self {
        let ratio = exact_value.approx() / predicted;
        AsymptoticSample { x, exact_value, predicted, ratio }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn exact_and_real_outcomes() {
        let mut b = VerificationReport::builder("demo", "x=1");
        b.exact("1", &[&BigInt::from(3), &BigInt::from(3), &BigInt::from(3)]);
        b.real("2", 1.0, 1.0 + 1e-10, 1e-9);
        let r = b.finish();
        assert!(r.passed);
        assert_eq!(r.residual, Quantity::Real((1.0 + 1e-10) - 1.0));

        let mut b = VerificationReport::builder("demo", "");
        b.exact("1", &[&BigInt::from(3), &BigInt::from(3), &BigInt::from(5)]);
        let r = b.finish();
        assert!(!r.passed);
        assert_eq!(r.residual, Quantity::exact(-2));
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn real_only_reports_take_the_max() {
        let mut b = VerificationReport::builder("demo", "");
        b.real("a", 0.0, 1e-12, 1e-9).real("b", 0.0, 2e-12, 1e-9);
        assert_eq!(b.finish().residual, Quantity::Real(2e-12));
    }
}
