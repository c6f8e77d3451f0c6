use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::factor::{factor_small, Factorization};
use crate::weight::{LogSum, Weight};

/// Something that can be evaluated at a factored positive integer.
///
/// Implemented by the integer-valued [`ArithFn`] and by [`Mangoldt`], whose
/// values are kept as exact [`LogSum`]s.
pub trait Evaluate: Send + Sync {
    type Value: Weight;

    fn name(&self) -> &str;
    fn eval(&self, n: &Factorization) -> Self::Value;
}

/// What is known in closed form about the divisor sum `(1 * f)(N)`.
///
/// Iterated contraction needs `(1 * f)` at numbers such as `F(F(k))`, which
/// are usually far too large to factor. For the functions listed here the
/// divisor sum has an elementary description that avoids factoring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisorSumRule {
    /// `1 * f` is the indicator of `N = 1` (f = μ).
    Unit,
    /// `1 * f` is the identity `N` (f = φ).
    Identity,
    /// `1 * f` is the indicator of perfect squares (f = λ).
    SquareIndicator,
    /// Nothing special: enumerate divisors.
    Generic,
}

type EvalFn = dyn Fn(&Factorization) -> BigInt + Send + Sync;

/// A named, exact, integer-valued arithmetic function.
#[derive(Clone)]
pub struct ArithFn {
    name: String,
    eval: Arc<EvalFn>,
    rule: DivisorSumRule,
}

impl fmt::Debug for ArithFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArithFn").field("name", &self.name).finish()
    }
}

impl ArithFn {
    pub fn new<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&Factorization) -> BigInt + Send + Sync + 'static,
    {
        ArithFn { name: name.into(), eval: Arc::new(eval), rule: DivisorSumRule::Generic }
    }

    /// Wraps a function of the integer value, ignoring the factorization.
    pub fn from_value_fn<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&BigUint) -> BigInt + Send + Sync + 'static,
    {
        ArithFn::new(name, move |n: &Factorization| eval(n.value()))
    }

    pub fn with_rule(mut self, rule: DivisorSumRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn rule(&self) -> DivisorSumRule {
        self.rule
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, n: &Factorization) -> BigInt {
        (self.eval)(n)
    }

    pub fn eval_u64(&self, n: u64) -> BigInt {
        self.eval(&factor_small(n))
    }

    pub fn mobius() -> Self {
        ArithFn::new("mu", |n| BigInt::from(mobius_of(n))).with_rule(DivisorSumRule::Unit)
    }

    pub fn liouville() -> Self {
        ArithFn::new("lambda", |n| BigInt::from(liouville_of(n))).with_rule(DivisorSumRule::SquareIndicator)
    }

    pub fn euler_phi() -> Self {
        ArithFn::new("phi", |n| BigInt::from(euler_phi_of(n))).with_rule(DivisorSumRule::Identity)
    }

    pub fn divisor_count() -> Self {
        ArithFn::new("divisor_count", |n| BigInt::from(n.divisor_count()))
    }

    pub fn one() -> Self {
        ArithFn::new("one", |_| BigInt::one())
    }

    /// `n ↦ n`, completely multiplicative.
    pub fn identity() -> Self {
        ArithFn::new("id", |n| BigInt::from(n.value().clone()))
    }

    /// Looks up a built-in function by its command-line name.
    pub fn by_name(name: &str) -> Option<Self> {
        Some(match name {
            "mu" | "mobius" => ArithFn::mobius(),
            "lambda" | "liouville" => ArithFn::liouville(),
            "phi" | "euler_phi" => ArithFn::euler_phi(),
            "one" => ArithFn::one(),
            "divisor_count" | "d" => ArithFn::divisor_count(),
            "id" | "identity" => ArithFn::identity(),
            _ => return None,
        })
    }
}

impl Evaluate for ArithFn {
    type Value = BigInt;

    fn name(&self) -> &str {
        &self.name
    }

    fn eval(&self, n: &Factorization) -> BigInt {
        (self.eval)(n)
    }
}

/// The von Mangoldt function, valued in exact logarithms.
#[derive(Clone, Copy, Debug, Default)]
pub struct Mangoldt;

impl Evaluate for Mangoldt {
    type Value = LogSum;

    fn name(&self) -> &str {
        "Lambda"
    }

    fn eval(&self, n: &Factorization) -> LogSum {
        match mangoldt_base(n) {
            Some(p) => LogSum::log_of_prime(p),
            None => LogSum::zero(),
        }
    }
}

pub fn mobius_of(n: &Factorization) -> i64 {
    if !n.is_squarefree() {
        0
    } else if n.factors().len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn liouville_of(n: &Factorization) -> i64 {
    if n.big_omega() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi_of(n: &Factorization) -> BigUint {
    n.factors()
        .iter()
        .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(e - 1) * (p - 1u32))
}

/// `Some(p)` iff `n = p^k` with `k ≥ 1`; then `Λ(n) = log p`.
pub fn mangoldt_base(n: &Factorization) -> Option<BigUint> {
    match n.factors() {
        [(p, _)] => Some(p.clone()),
        _ => None,
    }
}

pub fn mobius(n: u64) -> i64 {
    mobius_of(&factor_small(n))
}

pub fn liouville(n: u64) -> i64 {
    liouville_of(&factor_small(n))
}

pub fn euler_phi(n: u64) -> u64 {
    num_traits::ToPrimitive::to_u64(&euler_phi_of(&factor_small(n))).expect("φ(n) ≤ n")
}

pub fn divisor_count(n: u64) -> u64 {
    factor_small(n).divisor_count()
}

/// μ(1..=n) by a linear sieve; index 0 is unused and holds 0.
pub fn mobius_sieve(n: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n + 1];
    if n == 0 {
        return mu;
    }
    mu[1] = 1;
    let mut is_composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !is_composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            is_composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}

/// `M(x) = Σ_{n ≤ x} μ(n)`; zero for `x < 1`.
pub fn mertens(x: f64) -> i64 {
    if !(x >= 1.0) {
        return 0;
    }
    let n = x.floor() as usize;
    mobius_sieve(n).iter().map(|&m| m as i64).sum()
}

/// `(f * g)(n) = Σ_{d | n} f(d) g(n/d)`.
pub fn dirichlet_convolve(f: &ArithFn, g: &ArithFn, n: &Factorization) -> BigInt {
    convolve_weighted(f, g, n)
}

/// Dirichlet product of an arbitrary-valued `f` with an integer-valued `g`.
pub fn convolve_weighted<F: Evaluate + ?Sized>(f: &F, g: &ArithFn, n: &Factorization) -> F::Value {
    let mut acc = F::Value::zero();
    for (d, co) in n.divisor_pairs() {
        let gv = g.eval(&co);
        if !gv.is_zero() {
            acc.add_assign(&f.eval(&d).scaled(&gv));
        }
    }
    acc
}
