use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::closed_form::{zeta_of, ZetaClosedForm};
use crate::error::{Error, Result};
use crate::exactnum::{primes_up_to, rational_pow, Prime};
use crate::strings::{make_cantor_2, make_cantor_p, make_rational_dim, make_smith, KeptSet};

/// `prod_{p <= pmax} sum_{j <= J} p^{-j s}` exactly, for integer `s`.
pub fn euler_partial_product_exact(s: i64, pmax: u64, j_max: u32) -> BigRational {
    let mut product = BigRational::one();
    for p in primes_up_to(pmax) {
        let pb = p.to_biguint();
        let factor: BigRational = (0..=i64::from(j_max)).map(|j| rational_pow(&pb, -j * s)).sum();
        product *= factor;
    }
    product
}

/// Floating version of [`euler_partial_product_exact`] for complex `s`.
pub fn euler_partial_product(s: Complex64, pmax: u64, j_max: u32) -> Complex64 {
    primes_up_to(pmax)
        .into_iter()
        .map(|p| {
            let x = (-s * p.ln()).exp();
            let mut factor = Complex64::zero();
            let mut power = Complex64::one();
            for _ in 0..=j_max {
                factor += power;
                power *= x;
            }
            factor
        })
        .product()
}

/// Square of the Euler partial product: the Euler string times the harmonic string.
pub fn euler_riemann_partial_exact(s: i64, pmax: u64, j_max: u32) -> BigRational {
    let e = euler_partial_product_exact(s, pmax, j_max);
    &e * &e
}

pub fn euler_riemann_partial(s: Complex64, pmax: u64, j_max: u32) -> Complex64 {
    let e = euler_partial_product(s, pmax, j_max);
    e * e
}

/// Truncated zeta of the harmonic string, `sum_{n <= N} n^-s`, exactly.
pub fn harmonic_partial_exact(s: i64, n: u64) -> BigRational {
    (1..=n)
        .map(|k| rational_pow(&num_bigint::BigUint::from(k), -s))
        .sum()
}

pub fn harmonic_partial(s: Complex64, n: u64) -> Complex64 {
    (1..=n).map(|k| (-s * (k as f64).ln()).exp()).sum()
}

/// Adelic products whose local factors are p-adic string zeta functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdelicFamily {
    /// `prod_p zeta_{L_p}` with every `L_p` of dimension 1/2.
    LHalf,
    /// Smith string of base `m` times `prod_p zeta_{CS_p}`.
    CantorSmith { m: u64 },
}

impl fmt::Display for AdelicFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdelicFamily::LHalf => f.write_str("l-half"),
            AdelicFamily::CantorSmith { m } => write!(f, "cantor-smith({m})"),
        }
    }
}

impl FromStr for AdelicFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l-half" => Ok(AdelicFamily::LHalf),
            "cantor-smith" => Ok(AdelicFamily::CantorSmith { m: 3 }),
            other => other
                .strip_prefix("cantor-smith:")
                .and_then(|m| m.parse().ok())
                .map(|m| AdelicFamily::CantorSmith { m })
                .ok_or_else(|| Error::arg(format!("unknown adelic family {other:?}"))),
        }
    }
}

/// A labelled local factor of an adelic product.
#[derive(Debug, Clone)]
pub struct AdelicFactor {
    pub label: String,
    pub prime: Option<Prime>,
    pub zeta: ZetaClosedForm,
}

fn closed(desc: &crate::strings::FractalStringDesc) -> ZetaClosedForm {
    zeta_of(desc)
        .closed_form()
        .expect("adelic factors are nondegenerate lattice strings")
        .clone()
}

/// Local factors over primes up to `pmax` (plus Smith's archimedean factor).
pub fn adelic_factors(family: AdelicFamily, pmax: u64) -> Result<Vec<AdelicFactor>> {
    let mut out = Vec::new();
    match family {
        AdelicFamily::LHalf => {
            for p in primes_up_to(pmax) {
                let desc = make_rational_dim(p, 2, 1, KeptSet::Diagonal)?;
                out.push(AdelicFactor { label: format!("L_{p}"), prime: Some(p), zeta: closed(&desc) });
            }
        }
        AdelicFamily::CantorSmith { m } => {
            let smith = make_smith(m)?;
            out.push(AdelicFactor { label: format!("Smith_{m}"), prime: None, zeta: closed(&smith) });
            for p in primes_up_to(pmax) {
                let desc = if p.is_odd() { make_cantor_p(p)? } else { make_cantor_2() };
                out.push(AdelicFactor { label: format!("CS_{p}"), prime: Some(p), zeta: closed(&desc) });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorValue {
    pub label: String,
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
}

fn ser_rational<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::exactnum::fmt_rational(x))
}

#[derive(Debug, Clone, Serialize)]
pub struct AdelicAtOne {
    pub factors: Vec<FactorValue>,
    #[serde(serialize_with = "ser_rational")]
    pub product: BigRational,
}

/// Every local factor evaluated exactly at `s = 1`, the one point where the
/// formal products converge.
pub fn adelic_eval_at_one(family: AdelicFamily, pmax: u64) -> Result<AdelicAtOne> {
    let mut product = BigRational::one();
    let mut factors = Vec::new();
    for f in adelic_factors(family, pmax)? {
        let value = f.zeta.eval_exact(1)?;
        product *= &value;
        factors.push(FactorValue { label: f.label, value });
    }
    Ok(AdelicAtOne { factors, product })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    ToZero,
    ToInfinity,
    Stable,
}

impl fmt::Display for Trend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trend::ToZero => "->0",
            Trend::ToInfinity => "->inf",
            Trend::Stable => "stable",
        })
    }
}

/// Mean log-factor over the upper half of the primes below which the
/// product counts as `stable`.
pub const TREND_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct AdelicPartial {
    pub s: f64,
    pub pmax: u64,
    /// `ln |partial product|`.
    pub log_abs: f64,
    /// Sign of the partial product (+1 or -1).
    pub sign: f64,
    /// Mean `ln |factor|` over the upper half of the prime factors.
    pub slope: f64,
    pub trend: Trend,
    /// Exact value when `s` is an integer.
    #[serde(serialize_with = "ser_opt_rational")]
    pub exact: Option<BigRational>,
}

fn ser_opt_rational<S: serde::Serializer>(x: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&crate::exactnum::fmt_rational(v)),
        None => s.serialize_none(),
    }
}

impl AdelicPartial {
    pub fn value(&self) -> f64 {
        self.sign * self.log_abs.exp()
    }
}

/// Partial adelic product over primes up to `pmax` at a real point, with a
/// divergence diagnosis from the size of the late factors.
pub fn adelic_partial_product(family: AdelicFamily, s: f64, pmax: u64) -> Result<AdelicPartial> {
    let factors = adelic_factors(family, pmax)?;
    let integer = s.fract() == 0.0 && s.abs() <= 64.0;

    let mut log_abs = 0.0;
    let mut sign = 1.0;
    let mut prime_logs = Vec::new();
    let mut exact = integer.then(BigRational::one);
    for f in &factors {
        let (ln_v, neg) = if integer {
            let v = f.zeta.eval_exact(s as i64)?;
            if let Some(e) = exact.as_mut() {
                *e *= &v;
            }
            let neg = v < BigRational::zero();
            (crate::exactnum::ln_abs(&v), neg)
        } else {
            let v = f.zeta.eval(Complex64::new(s, 0.0))?.re;
            (v.abs().ln(), v < 0.0)
        };
        log_abs += ln_v;
        if neg {
            sign = -sign;
        }
        if f.prime.is_some() {
            prime_logs.push(ln_v);
        }
    }
    if prime_logs.is_empty() {
        return Err(Error::arg("pmax leaves no prime factors"));
    }
    let upper = &prime_logs[prime_logs.len() / 2..];
    let slope = upper.iter().sum::<f64>() / upper.len() as f64;
    let trend = if exact.as_ref().is_some_and(|e| e.is_one()) || slope.abs() <= TREND_THRESHOLD {
        Trend::Stable
    } else if slope < 0.0 {
        Trend::ToZero
    } else {
        Trend::ToInfinity
    };
    Ok(AdelicPartial { s, pmax, log_abs, sign, slope, trend, exact })
}

/// Local Veneziano amplitude `int_{Q_p} |x|_p^a |1 - x|_p^b dx` in closed form.
///
/// Splitting `Q_p` into the region `|x| < 1`, the unit sphere (with the
/// sub-region `x ≡ 1 mod p` handled separately) and `|x| > 1`, each piece
/// is a geometric series in the sphere index.
pub fn veneziano_amplitude(p: Prime, a: f64, b: f64) -> Result<f64> {
    if !(a > -1.0 && b > -1.0 && a + b < -1.0) {
        return Err(Error::domain(format!(
            "need a > -1, b > -1, a + b < -1 for convergence (a = {a}, b = {b})"
        )));
    }
    let pf = p.get() as f64;
    let geo = |t: f64| t / (1.0 - t);
    let t1 = pf.powf(a + b + 1.0);
    let t2 = pf.powf(-(a + 1.0));
    let t3 = pf.powf(-(b + 1.0));
    Ok((1.0 - 1.0 / pf) * (geo(t1) + geo(t2) + geo(t3)) + (pf - 2.0) / pf)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        BigRational::from_str(s).unwrap()
    }

    #[test]
    fn euler_products() {
        assert_eq!(euler_partial_product_exact(2, 3, 2), q("1911/1296"));
        assert_eq!(euler_partial_product_exact(2, 2, 1), q("5/4"));
        assert_eq!(euler_riemann_partial_exact(2, 3, 2), q("1911/1296") * q("1911/1296"));
        assert_eq!(euler_riemann_partial_exact(2, 2, 1), q("25/16"));
        let f = euler_partial_product(Complex64::new(2.0, 0.0), 3, 2);
        assert!((f.re - 1911.0 / 1296.0).abs() < 1e-14);
    }

    #[test]
    fn euler_product_tends_to_zeta_2() {
        let v = euler_partial_product(Complex64::new(2.0, 0.0), 2000, 60).re;
        let target = std::f64::consts::PI.powi(2) / 6.0;
        assert!((v - target).abs() < 1e-3, "{v}");
    }

    #[test]
    fn harmonic_truncation() {
        assert_eq!(harmonic_partial_exact(2, 3), q("49/36"));
        let v = harmonic_partial(Complex64::new(2.0, 0.0), 3);
        assert!((v.re - 49.0 / 36.0).abs() < 1e-15);
    }

    #[test]
    fn adelic_at_one() {
        let l = adelic_eval_at_one(AdelicFamily::LHalf, 50).unwrap();
        assert_eq!(l.product, q("1"));
        assert!(l.factors.iter().all(|f| f.value == q("1")));
        for m in [3, 4, 7] {
            let cs = adelic_eval_at_one(AdelicFamily::CantorSmith { m }, 30).unwrap();
            assert_eq!(cs.product, q("1"));
            assert_eq!(cs.factors[0].label, format!("Smith_{m}"));
            assert!(cs.factors.iter().all(|f| f.value == q("1")));
        }
    }

    #[test]
    fn adelic_trends() {
        let a = adelic_partial_product(AdelicFamily::LHalf, 2.0, 100).unwrap();
        assert_eq!(a.trend, Trend::ToZero);
        let b = adelic_partial_product(AdelicFamily::LHalf, 1.0, 100).unwrap();
        assert_eq!((b.trend, b.exact.clone()), (Trend::Stable, Some(q("1"))));
        let c = adelic_partial_product(AdelicFamily::LHalf, 0.6, 100).unwrap();
        assert_eq!(c.trend, Trend::ToInfinity);
        let d = adelic_partial_product(AdelicFamily::CantorSmith { m: 3 }, 1.0, 40).unwrap();
        assert_eq!(d.trend, Trend::Stable);
        assert!(adelic_partial_product(AdelicFamily::LHalf, 0.5, 10).is_err());
    }

    #[test]
    fn adelic_family_parsing() {
        assert_eq!("l-half".parse::<AdelicFamily>().unwrap(), AdelicFamily::LHalf);
        assert_eq!("cantor-smith:5".parse::<AdelicFamily>().unwrap(), AdelicFamily::CantorSmith { m: 5 });
        assert!("nope".parse::<AdelicFamily>().is_err());
    }

    #[test]
    fn veneziano_symmetry_and_domain() {
        let p = Prime::new(5).unwrap();
        let x = veneziano_amplitude(p, -0.6, -0.7).unwrap();
        let y = veneziano_amplitude(p, -0.7, -0.6).unwrap();
        assert_eq!(x, y);
        let z = veneziano_amplitude(Prime::new(3).unwrap(), -0.9, -0.9).unwrap();
        assert!(z.is_finite() && z > 0.0);
        assert!(veneziano_amplitude(p, -0.2, -0.3).is_err());
        assert!(veneziano_amplitude(p, -1.0, -0.3).is_err());
    }
}
