use crate::error::{Error, Result};

/// A truncated zeta sum `Σ_{n ≤ N} n^{-s}` with an upper bound on what was cut off.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaPartial {
    pub sum: f64,
    /// `N^{1-s} / (s - 1) ≥ Σ_{n > N} n^{-s}` (integral comparison).
    pub tail_bound: f64,
}

impl ZetaPartial {
    /// Upper bound for the full series.
    pub fn upper(&self) -> f64 {
        self.sum + self.tail_bound
    }
}

pub fn zeta_partial(s: f64, terms: u64) -> Result<ZetaPartial> {
    if !(s > 1.0) || terms == 0 {
        return Err(Error::InvalidInput(format!("zeta_partial needs s > 1 and N >= 1, got s = {s}, N = {terms}")));
    }
    // Summing small terms first keeps the rounding error near one ulp.
    let sum = (1..=terms).rev().map(|n| (n as f64).powf(-s)).sum();
    Ok(ZetaPartial { sum, tail_bound: series_tail_bound(s, terms) })
}

/// Bound on `Σ_{n > N} n^{-s}`.
pub fn series_tail_bound(s: f64, terms: u64) -> f64 {
    (terms as f64).powf(1.0 - s) / (s - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let z = zeta_partial(2.0, 1).unwrap();
        assert_eq!(z.sum, 1.0);
        assert!(z.tail_bound <= 1.0);

        let z = zeta_partial(2.0, 10_000).unwrap();
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((z.sum - zeta2).abs() <= 1e-4);
        assert!(z.sum <= zeta2 && zeta2 <= z.upper());

        let z = zeta_partial(3.0, 100).unwrap();
        let zeta3 = 1.202_056_903_159_594_3;
        assert!((z.sum - zeta3).abs() <= 1e-4);
        assert!(z.sum <= zeta3 && zeta3 <= z.upper());
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(zeta_partial(1.0, 10).is_err());
        assert!(zeta_partial(2.0, 0).is_err());
    }
}
