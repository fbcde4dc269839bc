use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{digits_of, from_digits, rational_pow, Prime};

/// Result of testing the first digits of a p-adic integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    /// All inspected digits are even.
    In,
    /// The digit at this index is odd.
    OutAt(usize),
}

fn require_odd(p: Prime) -> Result<()> {
    if p.is_odd() {
        Ok(())
    } else {
        Err(Error::arg("the even-digit Cantor set is defined for odd primes"))
    }
}

/// Depth-`n` membership in the p-adic Cantor set: a point belongs iff every
/// p-adic digit is even.
pub fn cantor_set_membership(x: &BigRational, p: Prime, n: usize) -> Result<Membership> {
    require_odd(p)?;
    let digits = digits_of(x, p, n)?;
    Ok(match digits.digits.iter().position(|d| d % 2 == 1) {
        Some(j) => Membership::OutAt(j),
        None => Membership::In,
    })
}

pub fn all_digits_even(digits: &[u32]) -> bool {
    digits.iter().all(|d| d % 2 == 0)
}

/// The real point `a_0 + a_1 p^-1 + ... + a_{n-1} p^-(n-1)` in `[0, p/(p-1)]`.
pub fn real_point(digits: &[u32], p: Prime) -> Result<BigRational> {
    let reversed: Vec<u32> = digits.iter().rev().copied().collect();
    let int = from_digits(&reversed, p)?;
    let shift = digits.len().saturating_sub(1) as i64;
    Ok(BigRational::from_integer(int.into()) * rational_pow(&p.to_biguint(), -shift))
}

/// Maps the base-p real expansion `sum a_i p^-i` to the p-adic integer
/// `sum a_i p^i` (mod `p^n`), digit by digit.
pub fn homeomorphism_map(digits: &[u32], p: Prime) -> Result<BigUint> {
    from_digits(digits, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn q(s: &str) -> BigRational {
        BigRational::from_str(s).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert_eq!(cantor_set_membership(&q("8"), p(3), 4).unwrap(), Membership::In);
        assert_eq!(cantor_set_membership(&q("7"), p(3), 4).unwrap(), Membership::OutAt(0));
        assert_eq!(cantor_set_membership(&q("0"), p(5), 6).unwrap(), Membership::In);
        // -1 = 2 + 2*3 + 2*9 + ... lies in C_3
        assert_eq!(cantor_set_membership(&q("-1"), p(3), 10).unwrap(), Membership::In);
        assert_eq!(cantor_set_membership(&q("3"), p(3), 4).unwrap(), Membership::OutAt(1));
        assert!(cantor_set_membership(&q("1"), p(2), 4).is_err());
        assert!(cantor_set_membership(&q("1/3"), p(3), 4).is_err());
    }

    #[test]
    fn homeomorphism_examples() {
        assert_eq!(homeomorphism_map(&[0, 2, 2], p(3)).unwrap(), BigUint::from(24u32));
        assert_eq!(homeomorphism_map(&[0, 0, 0, 0], p(5)).unwrap(), BigUint::from(0u32));
        let member = [2, 0, 4, 2];
        let image = homeomorphism_map(&member, p(5)).unwrap();
        let back = digits_of(&BigRational::from_integer(image.into()), p(5), 4).unwrap();
        assert!(all_digits_even(&back.digits));
        assert!(homeomorphism_map(&[3], p(3)).is_err());
    }

    #[test]
    fn real_point_value() {
        // 2 + 0/3 + 2/9
        assert_eq!(real_point(&[2, 0, 2], p(3)).unwrap(), q("20/9"));
    }
}
