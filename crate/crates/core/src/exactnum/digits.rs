use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::prime::Prime;
use super::valuation::{ord_p, rational_pow};
use crate::error::{Error, Result};

/// A truncated p-adic expansion `sum_j digits[j] * p^(start + j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PAdicDigits {
    pub p: Prime,
    pub start: i64,
    pub digits: Vec<u32>,
}

impl PAdicDigits {
    /// The represented rational (the truncation, not the original input).
    pub fn value(&self) -> BigRational {
        let p = self.p.to_biguint();
        let mut acc = BigUint::zero();
        for &d in self.digits.iter().rev() {
            acc = acc * &p + BigUint::from(d);
        }
        BigRational::from_integer(BigInt::from(acc)) * rational_pow(&p, self.start)
    }
}

/// Residue of a p-adic integer `x` modulo `p^n`, in `[0, p^n)`.
pub fn residue_mod_pow(x: &BigRational, p: Prime, n: u32) -> Result<BigUint> {
    let modulus = BigInt::from(p.pow(n));
    let den = x.denom();
    if (den % BigInt::from(p.get())).is_zero() {
        return Err(Error::domain(format!(
            "{x} is not a {p}-adic integer (denominator divisible by {p})"
        )));
    }
    let inv = mod_inverse(&den.mod_floor(&modulus), &modulus)
        .ok_or_else(|| Error::domain("denominator not invertible"))?;
    let r = (x.numer().mod_floor(&modulus) * inv).mod_floor(&modulus);
    Ok(r.magnitude().clone())
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// First `n` p-adic digits `a_0..a_{n-1}` of a p-adic integer.
pub fn digits_of(x: &BigRational, p: Prime, n: usize) -> Result<PAdicDigits> {
    if n == 0 {
        return Err(Error::arg("precision must be at least one digit"));
    }
    let n32 = u32::try_from(n).map_err(|_| Error::arg("precision too large"))?;
    let mut r = residue_mod_pow(x, p, n32)?;
    let pb = p.to_biguint();
    let mut digits = Vec::with_capacity(n);
    for _ in 0..n {
        let (q, d) = r.div_rem(&pb);
        digits.push(d.to_u32().expect("digit below p"));
        r = q;
    }
    Ok(PAdicDigits { p, start: 0, digits })
}

/// Expansion of an arbitrary nonzero rational in `Q_p`, starting at its
/// valuation: `x = p^k u` with `u` a unit, and the first `n` digits of `u`.
pub fn expansion(x: &BigRational, p: Prime, n: usize) -> Result<PAdicDigits> {
    if x.is_zero() {
        return digits_of(x, p, n);
    }
    let k = ord_p(x, p)?;
    let unit = x * rational_pow(&p.to_biguint(), -k);
    let mut out = digits_of(&unit, p, n)?;
    out.start = k;
    Ok(out)
}

/// Integer `a_0 + a_1 p + ... + a_{n-1} p^{n-1}` from little-endian digits.
pub fn from_digits(digits: &[u32], p: Prime) -> Result<BigUint> {
    let pb = p.to_biguint();
    let mut acc = BigUint::zero();
    for &d in digits.iter().rev() {
        if u64::from(d) >= p.get() {
            return Err(Error::arg(format!("digit {d} out of range for p = {p}")));
        }
        acc = acc * &pb + BigUint::from(d);
    }
    Ok(acc)
}

/// Little-endian base-p digits of `n`, padded or cut to exactly `len` digits.
pub fn to_digits(n: &BigUint, p: Prime, len: usize) -> Vec<u32> {
    let pb = p.to_biguint();
    let mut rest = n.clone();
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        let (q, d) = rest.div_rem(&pb);
        out.push(d.to_u32().expect("digit below p"));
        rest = q;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::valuation::ord_p;
    use std::str::FromStr;

    fn q(s: &str) -> BigRational {
        BigRational::from_str(s).unwrap()
    }

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn digit_examples() {
        assert_eq!(digits_of(&q("7"), p(3), 4).unwrap().digits, vec![1, 2, 0, 0]);
        assert_eq!(digits_of(&q("0"), p(5), 3).unwrap().digits, vec![0, 0, 0]);
        assert_eq!(digits_of(&q("-1"), p(3), 3).unwrap().digits, vec![2, 2, 2]);
        // 1/2 in Z_3 is ...1112 (2 * 2 = 4 = 1 + 3)
        assert_eq!(digits_of(&q("1/2"), p(3), 4).unwrap().digits, vec![2, 1, 1, 1]);
    }

    #[test]
    fn rejects_non_integers() {
        assert!(matches!(digits_of(&q("1/3"), p(3), 2), Err(Error::Domain(_))));
        assert!(digits_of(&q("1"), p(3), 0).is_err());
    }

    #[test]
    fn expansion_of_non_integer() {
        let e = expansion(&q("5/9"), p(3), 3).unwrap();
        assert_eq!(e.start, -2);
        assert_eq!(e.digits, vec![2, 1, 0]);
        let diff = q("5/9") - e.value();
        assert!(diff.is_zero() || ord_p(&diff, p(3)).unwrap() >= 1);
    }

    #[test]
    fn digit_bounds_checked() {
        assert!(from_digits(&[0, 3], p(3)).is_err());
        assert_eq!(from_digits(&[0, 2, 2], p(3)).unwrap(), BigUint::from(24u32));
        assert_eq!(to_digits(&BigUint::from(24u32), p(3), 4), vec![0, 2, 2, 0]);
    }
}
