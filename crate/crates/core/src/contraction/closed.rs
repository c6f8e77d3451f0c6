//! Closed forms for contractions of μ and λ.
//!
//! Each form is a case table on `n mod 4` or `n mod 12` whose entries are
//! Möbius values at `n / k` for `k ∈ {1, 2, 3, 4, 12}`. The tables are written
//! once against an abstract "μ at n/k" accessor, so the same definition
//! serves machine integers, factored big integers and sieve lookups.

use num_bigint::BigInt;

use crate::numtheory::{factor_small, mobius_of, ArithFn, Factorization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    /// μ_α
    MuAlpha,
    /// μ_{α²}
    MuAlpha2,
    /// μ_{α³}, the fixed point of α-contraction
    MuAlpha3,
    /// λ_α
    LambdaAlpha,
    /// Δ₂₃ = μ_{α²} − μ_{α³}, a kernel element
    Delta23,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 5] =
        [ClosedForm::MuAlpha, ClosedForm::MuAlpha2, ClosedForm::MuAlpha3, ClosedForm::LambdaAlpha, ClosedForm::Delta23];

    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::MuAlpha => "mu_alpha",
            ClosedForm::MuAlpha2 => "mu_alpha2",
            ClosedForm::MuAlpha3 => "mu_alpha3",
            ClosedForm::LambdaAlpha => "lambda_alpha",
            ClosedForm::Delta23 => "delta23",
        }
    }

    /// Evaluates the case table at `n`, with `mu_over(k)` returning `μ(n/k)`.
    /// `mu_over` is only called for `k | n`.
    pub fn eval_with(self, n: u64, mu_over: impl Fn(u64) -> i64) -> i64 {
        let m = n % 12;
        match self {
            ClosedForm::MuAlpha => match n % 4 {
                1 | 3 => mu_over(1),
                0 => mu_over(2),
                _ => 0,
            },
            ClosedForm::MuAlpha2 => {
                mu_over(1)
                    + match n % 6 {
                        0 => mu_over(2) + mu_over(3),
                        2 | 4 => mu_over(2),
                        3 => mu_over(3),
                        _ => 0,
                    }
            }
            ClosedForm::MuAlpha3 => match m {
                0 | 4 | 8 => mu_over(2) + mu_over(4),
                2 | 10 => 0,
                3 | 9 => mu_over(1) + mu_over(3),
                6 => mu_over(3),
                _ => mu_over(1),
            },
            ClosedForm::LambdaAlpha => match m {
                0 => mu_over(2) + mu_over(12),
                2 | 4 | 6 | 8 | 10 => mu_over(1) + mu_over(2),
                _ => mu_over(1),
            },
            ClosedForm::Delta23 => {
                if n % 4 == 0 {
                    -mu_over(4)
                } else {
                    0
                }
            }
        }
    }

    pub fn eval(self, n: u64) -> i64 {
        self.eval_factored(&factor_small(n))
    }

    /// Works for any factored argument; the residue is taken from the value.
    pub fn eval_factored(self, n: &Factorization) -> i64 {
        let residue = (n.value() % 12u32).iter_u64_digits().next().unwrap_or(0);
        // Only the residue mod 12 selects the case, so a representative with
        // the same residue is passed on; `mu_over` reads the real quotient.
        self.eval_with(12 + residue, |k| {
            let q = n.checked_div_small(k).expect("case table divides only by k | n");
            mobius_of(&q)
        })
    }

    /// Evaluates at `n ≤ sieve.len() - 1` from a precomputed Möbius table.
    pub fn eval_sieved(self, n: u64, sieve: &[i8]) -> i64 {
        self.eval_with(n, |k| sieve[(n / k) as usize] as i64)
    }

    pub fn arith_fn(self) -> ArithFn {
        ArithFn::new(self.name(), move |n| BigInt::from(self.eval_factored(n)))
    }
}

pub fn closed_mu_alpha(n: u64) -> i64 {
    ClosedForm::MuAlpha.eval(n)
}

pub fn closed_mu_alpha2(n: u64) -> i64 {
    ClosedForm::MuAlpha2.eval(n)
}

pub fn closed_mu_alpha3(n: u64) -> i64 {
    ClosedForm::MuAlpha3.eval(n)
}

pub fn closed_lambda_alpha(n: u64) -> i64 {
    ClosedForm::LambdaAlpha.eval(n)
}

pub fn closed_delta23(n: u64) -> i64 {
    ClosedForm::Delta23.eval(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{mobius, mobius_sieve};

    #[test]
    fn examples() {
        assert_eq!(closed_mu_alpha(2), 0);
        assert_eq!(closed_mu_alpha(4), -1);
        assert_eq!(closed_mu_alpha(5), -1);
        assert_eq!(closed_mu_alpha2(6), -1);
        assert_eq!(closed_mu_alpha2(2), 0);
        assert_eq!(closed_mu_alpha2(7), -1);
        assert_eq!(closed_lambda_alpha(12), 2);
        assert_eq!(closed_lambda_alpha(2), 0);
        assert_eq!(closed_lambda_alpha(3), -1);
        assert_eq!(closed_delta23(4), -1);
        assert_eq!(closed_delta23(6), 0);
        assert_eq!(closed_delta23(8), 1);
    }

    #[test]
    fn mu_alpha3_listed_sequence() {
        let listed = [1, 0, 0, 0, -1, -1, -1, -1, -1, 0, -1, 0, -1, 0, 0, 0, -1, 1, -1, 0, 0, 0, -1, 1];
        let got: Vec<i64> = (1..=24).map(closed_mu_alpha3).collect();
        assert_eq!(got, listed);
    }

    #[test]
    fn tables_match_their_unsimplified_sums() {
        // μ_α = μ + μ(·/2), μ_{α²} = … + μ(·/3), μ_{α³} = … + μ(·/4),
        // λ_α = μ + μ(·/2) + μ(·/12): the case tables are simplifications of these.
        let over = |n: u64, k: u64| if n % k == 0 { mobius(n / k) } else { 0 };
        for n in 1..=600u64 {
            let a1 = over(n, 1) + over(n, 2);
            let a2 = a1 + over(n, 3);
            let a3 = a2 + over(n, 4);
            let la = a1 + over(n, 12);
            assert_eq!(closed_mu_alpha(n), a1, "n={n}");
            assert_eq!(closed_mu_alpha2(n), a2, "n={n}");
            assert_eq!(closed_mu_alpha3(n), a3, "n={n}");
            assert_eq!(closed_lambda_alpha(n), la, "n={n}");
            assert_eq!(closed_delta23(n), a2 - a3, "n={n}");
        }
    }

    #[test]
    fn evaluation_routes_agree() {
        let sieve = mobius_sieve(2_000);
        for form in ClosedForm::ALL {
            let f = form.arith_fn();
            for n in 1..=2_000u64 {
                let v = form.eval(n);
                assert_eq!(form.eval_sieved(n, &sieve), v);
                assert_eq!(f.eval_u64(n), BigInt::from(v));
            }
        }
    }

    #[test]
    fn mu_alpha_multiplicative_others_not() {
        for m in 1..=60u64 {
            for n in 1..=60u64 {
                if num_integer::Integer::gcd(&m, &n) == 1 {
                    assert_eq!(closed_mu_alpha(m * n), closed_mu_alpha(m) * closed_mu_alpha(n));
                }
            }
        }
        assert_ne!(closed_mu_alpha2(6), closed_mu_alpha2(2) * closed_mu_alpha2(3));
        assert_ne!(closed_mu_alpha3(6), closed_mu_alpha3(2) * closed_mu_alpha3(3));
        assert_ne!(closed_lambda_alpha(12), closed_lambda_alpha(4) * closed_lambda_alpha(3));
        assert_eq!(closed_lambda_alpha(4) * closed_lambda_alpha(3), 1);
    }
}
