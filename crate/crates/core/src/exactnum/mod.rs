//! Exact rational and p-adic primitives.

mod ball;
mod digits;
mod prime;
mod valuation;

pub use ball::{ball_relation, pairwise_disjoint, BallRelation, PAdicBall};
pub use digits::{digits_of, expansion, from_digits, residue_mod_pow, to_digits, PAdicDigits};
pub use prime::{factorize, is_prime, primes_up_to, Prime};
pub use valuation::{
    abs_v, artin_whaples_product, ln_abs, ln_biguint, ord_p, rational_pow, valuations, Place,
};

use std::str::FromStr;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar used for every exact measure.
pub type Rational = BigRational;

/// Parse `"a"` or `"a/b"` into a canonical rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.ends_with("/0") || t.contains("/-") {
        return Err(Error::arg(format!("bad rational {s:?}")));
    }
    Rational::from_str(t).map_err(|_| Error::arg(format!("bad rational {s:?}")))
}

/// `num/den` with an explicit denominator, the exact text form used in
/// every output.
pub fn fmt_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
