//! Value types that arithmetic-function sums can be carried in.
//!
//! Every sum in this crate only ever adds values and multiplies them by
//! integers (`f(n) · ⌊x/α(n)⌋`, `f(d) · g(a_n/d)` with `g` integer-valued).
//! [`Weight`] captures exactly that: an abelian group with an integer action.
//! Integers, rationals and [`LogSum`] (formal sums of prime logarithms, used
//! for the von Mangoldt function) are the three instances.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::fib::log::{log_of_big, ExactLog};

pub trait Weight: Zero + Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn add_assign(&mut self, other: &Self);
    fn scaled(&self, k: &BigInt) -> Self;

    fn neg(&self) -> Self {
        self.scaled(&BigInt::from(-1))
    }

    fn difference(&self, other: &Self) -> Self {
        let mut d = self.clone();
        d.add_assign(&other.neg());
        d
    }

    /// Floating-point reading of the value, for residual reporting.
    fn approx(&self) -> f64;
}

impl Weight for BigInt {
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn scaled(&self, k: &BigInt) -> Self {
        self * k
    }
    fn approx(&self) -> f64 {
        signed_big_to_f64(self)
    }
}

impl Weight for BigRational {
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn scaled(&self, k: &BigInt) -> Self {
        self * BigRational::from_integer(k.clone())
    }
    fn approx(&self) -> f64 {
        signed_big_to_f64(self.numer()) / signed_big_to_f64(self.denom())
    }
}

fn signed_big_to_f64(v: &BigInt) -> f64 {
    let mag = v.magnitude();
    let x = if mag.bits() < 1000 {
        num_traits::ToPrimitive::to_f64(mag).unwrap_or(f64::INFINITY)
    } else {
        f64::INFINITY
    };
    if v.is_negative() {
        -x
    } else {
        x
    }
}

/// A formal integer combination `Σ c_p · log p` over primes `p`.
///
/// This is how Λ-valued sums are held: `Λ(p^k) = log p` becomes the single
/// term `1 · log p`, and two sums are equal exactly when their coefficient
/// maps agree. Equivalently the value is `log(∏ p^{c_p})` of a positive
/// rational; [`LogSum::integer`] recovers that product when it is an integer.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LogSum {
    coeffs: BTreeMap<BigUint, BigInt>,
}

impl LogSum {
    pub fn log_of_prime(p: BigUint) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(p, BigInt::one());
        LogSum { coeffs }
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&BigUint, &BigInt)> {
        self.coeffs.iter()
    }

    /// Adds `k · log p`.
    pub fn add_prime(&mut self, p: &BigUint, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(p.clone()).or_insert_with(BigInt::zero);
        *slot += k;
        if slot.is_zero() {
            self.coeffs.remove(p);
        }
    }

    /// `∏ p^{c_p}` when every coefficient is non-negative.
    pub fn integer(&self) -> Option<BigUint> {
        let mut acc = BigUint::one();
        for (p, c) in &self.coeffs {
            let e: u32 = num_traits::ToPrimitive::to_u32(c)?;
            acc *= p.pow(e);
        }
        Some(acc)
    }

    pub fn to_exact_log(&self) -> Option<ExactLog> {
        self.integer().map(|v| log_of_big(&v))
    }

    /// `(numerator, denominator)` of `∏ p^{c_p}`.
    pub fn as_fraction(&self) -> (BigUint, BigUint) {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (p, c) in &self.coeffs {
            let e = num_traits::ToPrimitive::to_u32(c.magnitude()).expect("exponent fits u32");
            match c.sign() {
                Sign::Minus => den *= p.pow(e),
                _ => num *= p.pow(e),
            }
        }
        (num, den)
    }
}

impl std::ops::Add for LogSum {
    type Output = LogSum;
    fn add(mut self, other: LogSum) -> LogSum {
        Weight::add_assign(&mut self, &other);
        self
    }
}

impl Zero for LogSum {
    fn zero() -> Self {
        LogSum::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl Weight for LogSum {
    fn add_assign(&mut self, other: &Self) {
        for (p, c) in &other.coeffs {
            self.add_prime(p, c);
        }
    }
    fn scaled(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return LogSum::default();
        }
        LogSum {
            coeffs: self.coeffs.iter().map(|(p, c)| (p.clone(), c * k)).collect(),
        }
    }
    fn approx(&self) -> f64 {
        let (num, den) = self.as_fraction();
        log_of_big(&num).log_value - log_of_big(&den).log_value
    }
}

impl fmt::Debug for LogSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogSum({self})")
    }
}

impl fmt::Display for LogSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let (num, den) = self.as_fraction();
        if den.is_one() {
            write!(f, "log({num})")
        } else {
            write!(f, "log({num}/{den})")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logsum_cancels_exactly() {
        let mut a = LogSum::log_of_prime(BigUint::from(2u32));
        a.add_prime(&BigUint::from(3u32), &BigInt::from(2));
        let b = a.scaled(&BigInt::from(-1));
        let mut s = a.clone();
        s.add_assign(&b);
        assert!(s.is_zero());
        assert_eq!(a.integer(), Some(BigUint::from(18u32)));
        assert_eq!(b.integer(), None);
        assert_eq!(b.to_string(), "log(1/18)");
        assert!((a.approx() - 18f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn rational_weight_scales() {
        let h = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(h.scaled(&BigInt::from(4)), BigRational::from_integer(BigInt::from(2)));
    }
}
