use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated rational prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::arg(format!("{p} is not prime")))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn is_odd(self) -> bool {
        self.0 != 2
    }

    pub fn to_biguint(self) -> BigUint {
        BigUint::from(self.0)
    }

    /// `p^e` as an arbitrary-precision integer.
    pub fn pow(self, e: u32) -> BigUint {
        num_traits::pow(self.to_biguint(), e as usize)
    }

    /// `p^e` if it fits in a `u64`.
    pub fn checked_pow(self, e: u32) -> Option<u64> {
        self.0.checked_pow(e)
    }

    pub fn ln(self) -> f64 {
        (self.0 as f64).ln()
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Deterministic primality test.
pub fn is_prime(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

/// All primes `<= bound`, ascending, by the sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<Prime> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(Prime(i as u64));
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Prime factorization of a positive integer. Returns
/// `(prime, exponent)` pairs in ascending order; `1` factors as the empty list.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    if let Some(small) = n.to_u64() {
        return factorize_u64(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
    }
    let mut out = Vec::new();
    let mut rest = n.clone();
    let mut d = BigUint::from(2u32);
    while &d * &d <= rest {
        let mut e = 0;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if !rest.is_one() {
        out.push((rest, 1));
    }
    out
}

fn factorize_u64(n: u64) -> Vec<(u64, u32)> {
    if n <= 1 {
        return Vec::new();
    }
    num_prime::nt_funcs::factorize64(n).into_iter().map(|(p, e)| (p, e as u32)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_matches_trial_division() {
        let sieved: Vec<u64> = primes_up_to(500).into_iter().map(Prime::get).collect();
        let trial: Vec<u64> = (0..=500).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, trial);
        assert_eq!(&sieved[..6], &[2, 3, 5, 7, 11, 13]);
    }

    #[test]
    fn rejects_non_primes() {
        for n in [0, 1, 4, 9, 15, 91, 561] {
            assert!(Prime::new(n).is_err(), "{n}");
        }
        assert!(Prime::new(97).is_ok());
    }

    #[test]
    fn factorization_round_trips() {
        for n in [1u64, 2, 12, 360, 999_999_937, 1_000_000_000] {
            let f = factorize(&BigUint::from(n));
            let back = f
                .iter()
                .fold(BigUint::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize));
            assert_eq!(back, BigUint::from(n));
        }
        let big = BigUint::from(u64::MAX) * BigUint::from(3u32);
        let f = factorize(&big);
        assert_eq!(f[0], (BigUint::from(3u32), 2));
    }
}
