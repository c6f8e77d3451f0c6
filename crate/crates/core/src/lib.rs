//! Exact computation with Dirichlet products evaluated at Fibonacci numbers.
//!
//! The crate is organised bottom-up:
//!
//! * [`numtheory`]: primality, factorization, divisors and the classical
//!   arithmetic functions (μ, λ, φ, d, Λ).
//! * [`fib`]: Fibonacci numbers, the rank of apparition α, entry exponents,
//!   exact logarithms of big integers.
//! * [`context`]: a shareable [`Context`] holding the factorization policy and
//!   the memo tables (ranks, factorizations of `F(n)`).
//! * [`contraction`]: the α-contraction `f_α(n) = Σ_{α(m)=n} f(m)`, its iterates,
//!   the summatory functions `T` and `S`, and the closed forms for μ_α, μ_{α²},
//!   μ_{α³}, λ_α and Δ₂₃.
//! * [`verify`]: checks that produce [`verify::VerificationReport`]s.

pub mod context;
pub mod contraction;
pub mod error;
pub mod fib;
pub mod numtheory;
pub mod verify;
pub mod weight;

pub use context::Context;
pub use error::{Error, Result};
pub use numtheory::{ArithFn, Evaluate, Factorization, Mangoldt};
pub use weight::{LogSum, Weight};
