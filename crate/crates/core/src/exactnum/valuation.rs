//! Valuations and absolute values on the rationals.
//!
//! Finite places use the normalization `|x|_p = p^{-ord_p(x)}`, which is the
//! only one under which the product of all absolute values of a nonzero
//! rational equals one.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::prime::{factorize, Prime};
use crate::error::{Error, Result};

/// A place of `Q`: a finite prime or the archimedean place.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Place {
    Finite(Prime),
    Infinite,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => f.write_str("inf"),
        }
    }
}

/// Multiplicity of `p` in a nonzero integer.
pub(crate) fn int_ord(n: &BigUint, p: &BigUint) -> u64 {
    debug_assert!(!n.is_zero());
    let mut e = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        rest = q;
        e += 1;
    }
}

/// The exponent of `p` in the factorization of a nonzero rational.
pub fn ord_p(x: &BigRational, p: Prime) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::domain("ord_p(0) is undefined"));
    }
    Ok(ord_big(x, &p.to_biguint()))
}

fn ord_big(x: &BigRational, p: &BigUint) -> i64 {
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    int_ord(num, p) as i64 - int_ord(den, p) as i64
}

/// `p^e` for a possibly negative exponent, as an exact rational.
pub fn rational_pow(base: &BigUint, e: i64) -> BigRational {
    let mag = BigInt::from(num_traits::pow(base.clone(), e.unsigned_abs() as usize));
    if e >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

/// `|x|_v` at a finite or infinite place; `|0|_v = 0`.
pub fn abs_v(x: &BigRational, place: Place) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    match place {
        Place::Infinite => x.abs(),
        Place::Finite(p) => rational_pow(&p.to_biguint(), -ord_big(x, &p.to_biguint())),
    }
}

/// Product of `|x|_v` over every place where it differs from one (the primes
/// dividing numerator or denominator) together with the archimedean place.
/// Equals one for every nonzero rational.
pub fn artin_whaples_product(x: &BigRational) -> Result<BigRational> {
    if x.is_zero() {
        return Err(Error::domain("the product formula needs a nonzero rational"));
    }
    let mut primes: Vec<BigUint> = factorize(x.numer().magnitude())
        .into_iter()
        .chain(factorize(x.denom().magnitude()))
        .map(|(p, _)| p)
        .collect();
    primes.sort();
    primes.dedup();

    let mut product = x.abs();
    for p in &primes {
        product *= rational_pow(p, -ord_big(x, p));
    }
    Ok(product)
}

/// The archimedean valuation `ln|x|` and each nonzero `-ord_p(x) ln p`,
/// keyed by place. Their sum vanishes up to rounding.
pub fn valuations(x: &BigRational) -> Result<Vec<(String, f64)>> {
    if x.is_zero() {
        return Err(Error::domain("valuations of zero are undefined"));
    }
    let mut primes: Vec<BigUint> = factorize(x.numer().magnitude())
        .into_iter()
        .chain(factorize(x.denom().magnitude()))
        .map(|(p, _)| p)
        .collect();
    primes.sort();
    primes.dedup();

    let mut out = vec![("inf".to_string(), ln_abs(x))];
    for p in primes {
        let ln_p = ln_biguint(&p);
        out.push((p.to_string(), -(ord_big(x, &p) as f64) * ln_p));
    }
    Ok(out)
}

/// Natural log of a positive integer of any size.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return num_traits::ToPrimitive::to_f64(n).unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = num_traits::ToPrimitive::to_f64(&(n >> shift)).unwrap_or(1.0);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln|x|` for a nonzero rational of any size.
pub fn ln_abs(x: &BigRational) -> f64 {
    ln_biguint(x.numer().magnitude()) - ln_biguint(x.denom().magnitude())
}
