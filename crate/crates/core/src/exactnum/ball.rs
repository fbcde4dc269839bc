use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::digits::to_digits;
use super::prime::Prime;
use crate::error::{Error, Result};

/// The coset `center + p^scale Z_p`, with `center` reduced into `[0, p^scale)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PAdicBall {
    pub p: Prime,
    pub scale: u32,
    #[serde(serialize_with = "ser_biguint")]
    pub center: BigUint,
}

fn ser_biguint<S: serde::Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// How two balls over the same prime sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BallRelation {
    Disjoint,
    /// The first ball lies strictly inside the second.
    FirstInSecond,
    /// The second ball lies strictly inside the first.
    SecondInFirst,
    Equal,
}

impl PAdicBall {
    pub fn new(p: Prime, scale: u32, center: BigUint) -> Self {
        let center = center % p.pow(scale);
        PAdicBall { p, scale, center }
    }

    /// The whole ring `Z_p`.
    pub fn unit(p: Prime) -> Self {
        PAdicBall { p, scale: 0, center: BigUint::default() }
    }

    /// Haar measure `p^{-scale}`.
    pub fn measure(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(self.p.pow(self.scale)))
    }

    /// The `p` maximal sub-balls `center + j p^scale + p^{scale+1} Z_p`.
    pub fn children(&self) -> Vec<PAdicBall> {
        let step = self.p.pow(self.scale);
        (0..self.p.get())
            .map(|j| PAdicBall {
                p: self.p,
                scale: self.scale + 1,
                center: &self.center + &step * BigUint::from(j),
            })
            .collect()
    }

    pub fn contains(&self, other: &PAdicBall) -> bool {
        self.p == other.p
            && self.scale <= other.scale
            && &other.center % self.p.pow(self.scale) == self.center
    }

    /// Image under the similarity `x -> offset + p^shift x`.
    pub fn similarity_image(&self, offset: &BigUint, shift: u32) -> PAdicBall {
        PAdicBall::new(
            self.p,
            self.scale + shift,
            offset + self.p.pow(shift) * &self.center,
        )
    }

    /// Little-endian digits of the center, exactly `scale` of them. One ball
    /// contains another iff its key is a prefix of the other's.
    pub fn digit_key(&self) -> Vec<u32> {
        to_digits(&self.center, self.p, self.scale as usize)
    }
}

impl fmt::Display for PAdicBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.scale {
            0 => write!(f, "Z_{}", self.p),
            1 => write!(f, "{}+{}Z_{}", self.center, self.p, self.p),
            k => write!(f, "{}+{}^{}Z_{}", self.center, self.p, k, self.p),
        }
    }
}

/// Ultrametric dichotomy: any two balls are nested or disjoint.
pub fn ball_relation(a: &PAdicBall, b: &PAdicBall) -> Result<BallRelation> {
    if a.p != b.p {
        return Err(Error::arg(format!("balls over different primes {} and {}", a.p, b.p)));
    }
    let k = a.scale.min(b.scale);
    let modulus = a.p.pow(k);
    if &a.center % &modulus != &b.center % &modulus {
        return Ok(BallRelation::Disjoint);
    }
    Ok(match a.scale.cmp(&b.scale) {
        Ordering::Equal => BallRelation::Equal,
        Ordering::Less => BallRelation::SecondInFirst,
        Ordering::Greater => BallRelation::FirstInSecond,
    })
}

/// True iff no two balls in the list intersect. Sorting digit keys puts any
/// containing ball directly before something it contains, so adjacent
/// comparisons suffice.
pub fn pairwise_disjoint(balls: &[PAdicBall]) -> bool {
    let mut keys: Vec<Vec<u32>> = balls.iter().map(PAdicBall::digit_key).collect();
    keys.sort();
    keys.windows(2).all(|w| !w[1].starts_with(&w[0]))
}
