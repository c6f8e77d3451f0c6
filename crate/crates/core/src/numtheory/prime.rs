use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Miller–Rabin bases that make the test deterministic for every
/// `n < 3_317_044_064_679_887_385_961_981` (Sorenson–Webster bound for the
/// first thirteen primes as witnesses).
pub const DETERMINISTIC_WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Additional fixed bases used above the deterministic threshold.
pub const EXTRA_WITNESSES: [u64; 11] = [43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89];

pub const DETERMINISTIC_THRESHOLD: &str = "3317044064679887385961981";

/// Which Miller–Rabin witnesses are used, and below which bound the answer
/// is a proof rather than a strong probable-prime verdict.
///
/// The default policy is deterministic below
/// [`DETERMINISTIC_THRESHOLD`] (≈ 3.3·10²⁴, which covers every Fibonacci
/// number up to `F(119)`) and uses all 24 fixed witnesses above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimalityPolicy {
    pub deterministic_threshold: BigUint,
    pub witnesses: Vec<u64>,
    pub extra_witnesses: Vec<u64>,
}

impl Default for PrimalityPolicy {
    fn default() -> Self {
        PrimalityPolicy {
            deterministic_threshold: DETERMINISTIC_THRESHOLD.parse().expect("valid literal"),
            witnesses: DETERMINISTIC_WITNESSES.to_vec(),
            extra_witnesses: EXTRA_WITNESSES.to_vec(),
        }
    }
}

impl PrimalityPolicy {
    /// Number of witnesses applied above the deterministic threshold.
    pub fn witness_count(&self) -> usize {
        self.witnesses.len() + self.extra_witnesses.len()
    }

    pub fn is_prime(&self, n: &BigUint) -> bool {
        if let Some(small) = n.to_u64() {
            return is_prime_u64(small);
        }
        if n.is_even() {
            return false;
        }
        for &p in small_primes().iter().take(64) {
            if (n % p).is_zero() {
                return false;
            }
        }
        let witnesses: Box<dyn Iterator<Item = &u64>> = if *n < self.deterministic_threshold {
            Box::new(self.witnesses.iter())
        } else {
            Box::new(self.witnesses.iter().chain(self.extra_witnesses.iter()))
        };
        let n_minus_one = n - 1u32;
        let twos = n_minus_one.trailing_zeros().unwrap_or(0);
        let odd = &n_minus_one >> twos;
        witnesses.into_iter().all(|&a| strong_probable_prime(n, &n_minus_one, &odd, twos, a))
    }
}

fn strong_probable_prime(n: &BigUint, n_minus_one: &BigUint, odd: &BigUint, twos: u64, base: u64) -> bool {
    let a = BigUint::from(base) % n;
    if a.is_zero() {
        return true;
    }
    let mut x = a.modpow(odd, n);
    if x.is_one() || x == *n_minus_one {
        return true;
    }
    for _ in 1..twos {
        x = (&x * &x) % n;
        if x == *n_minus_one {
            return true;
        }
        if x.is_one() {
            return false;
        }
    }
    false
}

/// Primality with the default policy.
pub fn is_prime(n: &BigUint) -> bool {
    PrimalityPolicy::default().is_prime(n)
}

/// Deterministic for all `u64`: the first twelve prime bases suffice below 2⁶⁴.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let odd = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, odd, n);
        if x == 1 || x == d {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == d {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub(crate) fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) const TRIAL_BOUND: u32 = 1 << 12;

/// Primes below [`TRIAL_BOUND`], used for trial division.
pub(crate) fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_BOUND as usize;
        let mut composite = vec![false; n];
        let mut primes = Vec::new();
        for i in 2..n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j < n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}
