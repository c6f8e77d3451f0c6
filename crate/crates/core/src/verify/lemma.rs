//! Ranks of prime powers and the duality `n | F(m) ⟺ α(n) | m`.

use super::report::VerificationReport;
use crate::error::Result;
use crate::fib::{fib_mod, rank, rank_prime_power};
use crate::numtheory::is_prime_u64;

/// The prime-power formula against direct scanning: every odd prime
/// `p ≤ p_max` with `k ≤ k_max`, and `2^k` for `k ≤ two_k_max`.
pub fn check_rank_lemma(p_max: u64, k_max: u32, two_k_max: u32) -> Result<VerificationReport> {
    let mut report = VerificationReport::builder(
        "rank-lemma",
        format!("odd p<={p_max}, k<={k_max}; 2^k, k<={two_k_max}"),
    );
    let mut cases: Vec<(u64, u32)> = (3..=p_max)
        .filter(|&p| is_prime_u64(p))
        .flat_map(|p| (1..=k_max).map(move |k| (p, k)))
        .collect();
    cases.extend((1..=two_k_max).map(|k| (2, k)));
    for (p, k) in cases {
        let formula = rank_prime_power(p, k)?;
        let scanned = rank(p.pow(k))?;
        report.holds(format!("{p}^{k}"), format!("formula {formula}, scan {scanned}"), formula == scanned);
    }
    Ok(report.finish())
}

/// `n | F(m) ⟺ α(n) | m` for `1 ≤ n ≤ n_max`, `1 ≤ m ≤ m_max`.
pub fn check_duality(n_max: u64, m_max: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::builder("duality", format!("n<={n_max}, m<={m_max}"));
    for n in 1..=n_max {
        let a = rank(n)?;
        let mismatches: Vec<u64> = (1..=m_max).filter(|&m| (fib_mod(m, n) == 0) != (m % a == 0)).collect();
        report.holds(
            format!("n={n}"),
            format!("alpha={a}, mismatched m: {mismatches:?}"),
            mismatches.is_empty(),
        );
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranges() {
        assert!(check_rank_lemma(30, 2, 8).unwrap().passed);
        assert!(check_duality(60, 60).unwrap().passed);
    }
}
