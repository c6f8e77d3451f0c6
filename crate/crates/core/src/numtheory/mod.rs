//! Elementary exact number theory.

pub mod arith;
pub mod factor;
pub mod prime;
pub mod zeta;

pub use arith::{
    convolve_weighted, dirichlet_convolve, divisor_count, euler_phi, euler_phi_of, liouville, liouville_of,
    mangoldt_base, mertens, mobius, mobius_of, mobius_sieve, ArithFn, DivisorSumRule, Evaluate, Mangoldt,
};
pub use factor::{divisors, factor_small, factorize, Factorization, Factorizer, DEFAULT_BUDGET};
pub use prime::{is_prime, is_prime_u64, PrimalityPolicy};
pub use zeta::{series_tail_bound, zeta_partial, ZetaPartial};
