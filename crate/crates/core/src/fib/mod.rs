//! Fibonacci numbers `F(0) = 0, F(1) = 1, F(n+1) = F(n) + F(n-1)` and their
//! divisibility structure.

pub mod constants;
pub mod log;
pub mod rank;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use constants::Constants;
pub use log::{log_of_big, ExactLog};
pub use rank::{entry_exponent, rank, rank_prime_power, RankCache, RankEntry};

/// An index together with its Fibonacci number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibValue {
    pub index: u64,
    pub value: BigUint,
}

impl FibValue {
    pub fn new(index: u64) -> Self {
        FibValue { index, value: fib(index) }
    }
}

/// `F(n)` by fast doubling.
pub fn fib(n: u64) -> BigUint {
    fib_pair(n).0
}

/// `(F(n), F(n+1))`.
pub fn fib_pair(n: u64) -> (BigUint, BigUint) {
    if n == 0 {
        return (BigUint::zero(), BigUint::one());
    }
    let (a, b) = fib_pair(n / 2);
    // F(2k) = F(k)(2F(k+1) - F(k)),  F(2k+1) = F(k)^2 + F(k+1)^2
    let c = &a * ((&b << 1) - &a);
    let d = &a * &a + &b * &b;
    if n % 2 == 0 {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

/// `F(n) mod m` by fast doubling in machine words.
pub fn fib_mod(n: u64, m: u64) -> u64 {
    assert!(m >= 1, "modulus must be positive");
    fib_pair_mod(n, m).0
}

fn fib_pair_mod(n: u64, m: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1 % m);
    }
    let (a, b) = fib_pair_mod(n / 2, m);
    let (a, b, m128) = (a as u128, b as u128, m as u128);
    let c = a * ((2 * b + m128 - a) % m128) % m128;
    let d = (a * a % m128 + b * b % m128) % m128;
    if n % 2 == 0 {
        (c as u64, d as u64)
    } else {
        (d as u64, ((c + d) % m128) as u64)
    }
}

/// `lcm(F(1), …, F(⌊x⌋))`; `1` for `x < 1`.
pub fn lcm_fib(x: f64) -> BigUint {
    let upto = floor_index(x);
    let mut acc = BigUint::one();
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    for _ in 1..=upto {
        acc = acc.lcm(&a);
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    acc
}

/// `⌊x⌋` for summation bounds; zero for `x < 1` or non-finite input.
pub fn floor_index(x: f64) -> u64 {
    if x >= 1.0 && x.is_finite() {
        x.floor() as u64
    } else {
        0
    }
}
