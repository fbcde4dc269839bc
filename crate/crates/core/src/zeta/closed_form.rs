use std::f64::consts::TAU;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{fmt_rational, ln_biguint, rational_pow, rational_to_f64, Prime};
use crate::strings::{Family, FractalStringDesc};

/// Relative pole guard: evaluation fails when `|q^s - r| <= POLE_GUARD (1 + r)`.
pub const POLE_GUARD: f64 = 1e-9;

/// Integer arguments up to this size take the exact rational path.
const EXACT_PATH_LIMIT: f64 = 64.0;

/// Shape of the numerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    /// `C / (q^s - r)`.
    Plain,
    /// `C q^s / (q^s - r)`, the form of `1 / (1 - p^-s)`.
    EulerType,
}

/// `zeta(s) = C q^{e s} / (q^s - r)` with exact integer parameters, `e = 0`
/// for [`Shape::Plain`] and `e = 1` for [`Shape::EulerType`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaClosedForm {
    c: BigRational,
    q: BigUint,
    r: BigUint,
    shape: Shape,
    prime: Option<Prime>,
}

/// A pole `D + i n period` of a lattice zeta function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexDimension {
    pub index: i64,
    pub dimension: f64,
    pub period: f64,
}

impl ComplexDimension {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.dimension, self.index as f64 * self.period)
    }
}

impl fmt::Display for ComplexDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.value();
        write!(f, "{} {} {}i (n = {})", w.re, if w.im < 0.0 { '-' } else { '+' }, w.im.abs(), self.index)
    }
}

/// `D` either as an exact rational or as `ln(num) / ln(den)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimensionExact {
    Rational(BigRational),
    LogRatio { num: BigUint, den: BigUint },
}

impl fmt::Display for DimensionExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimensionExact::Rational(x) => f.write_str(&fmt_rational(x)),
            DimensionExact::LogRatio { num, den } => write!(f, "ln({num})/ln({den})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dimension {
    pub exact: DimensionExact,
    pub value: f64,
}

/// The residue `coefficient / ln(log_base)`, the same at every pole.
#[derive(Debug, Clone, PartialEq)]
pub struct Residue {
    pub coefficient: BigRational,
    pub log_base: BigUint,
    pub value: f64,
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/ln({})", fmt_rational(&self.coefficient), self.log_base)
    }
}

/// Largest `m` with `n = b^m` for an integer `b`, returned as `(b, m)`.
fn primitive_root(n: &BigUint) -> (BigUint, u32) {
    let bits = n.bits() as u32;
    for m in (2..=bits.max(2)).rev() {
        let b = n.nth_root(m);
        if b > BigUint::one() && num_traits::pow(b.clone(), m as usize) == *n {
            return (b, m);
        }
    }
    (n.clone(), 1)
}

/// `k` with `n = b^k`, if any.
fn log_exact(n: &BigUint, b: &BigUint) -> Option<u32> {
    let mut k = 0;
    let mut rest = n.clone();
    while rest > BigUint::one() {
        if !(&rest % b).is_zero() {
            return None;
        }
        rest /= b;
        k += 1;
    }
    rest.is_one().then_some(k)
}

impl ZetaClosedForm {
    pub fn new(c: BigRational, q: BigUint, r: BigUint, shape: Shape) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::arg("numerator constant must be nonzero"));
        }
        if q <= BigUint::one() {
            return Err(Error::arg("scale base q must exceed 1"));
        }
        if r.is_zero() {
            return Err(Error::arg("recursion weight r must be positive"));
        }
        Ok(ZetaClosedForm { c, q, r, shape, prime: None })
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    pub fn r(&self) -> &BigUint {
        &self.r
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// The prime of the underlying p-adic string, when there is one.
    pub fn prime(&self) -> Option<Prime> {
        self.prime
    }

    fn ln_q(&self) -> f64 {
        ln_biguint(&self.q)
    }

    fn ln_r(&self) -> f64 {
        ln_biguint(&self.r)
    }

    fn r_f64(&self) -> f64 {
        self.ln_r().exp()
    }

    /// Exact value at an integer point.
    pub fn eval_exact(&self, s: i64) -> Result<BigRational> {
        let qs = rational_pow(&self.q, s);
        let r = BigRational::from_integer(BigInt::from(self.r.clone()));
        let den = &qs - r;
        if den.is_zero() {
            return Err(Error::Pole { nearest: self.pole(0) });
        }
        let num = match self.shape {
            Shape::Plain => self.c.clone(),
            Shape::EulerType => &self.c * qs,
        };
        Ok(num / den)
    }

    /// Meromorphic evaluation. Integer real arguments go through the exact
    /// path; everything else through `q^s = exp(s ln q)`.
    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        if s.im == 0.0 && s.re.fract() == 0.0 && s.re.abs() <= EXACT_PATH_LIMIT {
            let v = self.eval_exact(s.re as i64)?;
            return Ok(Complex64::new(rational_to_f64(&v), 0.0));
        }
        let qs = (s * self.ln_q()).exp();
        let den = qs - self.r_f64();
        if den.norm() <= POLE_GUARD * (1.0 + self.r_f64()) {
            let n = (s.im / self.period()).round() as i64;
            return Err(Error::Pole { nearest: self.pole(n) });
        }
        let c = rational_to_f64(&self.c);
        let num = match self.shape {
            Shape::Plain => Complex64::new(c, 0.0),
            Shape::EulerType => qs * c,
        };
        Ok(num / den)
    }

    /// `D = ln r / ln q`, exactly rational when `q` and `r` are powers of a
    /// common integer.
    pub fn dimension(&self) -> Dimension {
        let value = self.ln_r() / self.ln_q();
        let exact = if self.r.is_one() {
            DimensionExact::Rational(BigRational::zero())
        } else {
            let (b, m) = primitive_root(&self.q);
            match log_exact(&self.r, &b) {
                Some(k) => DimensionExact::Rational(BigRational::new(k.into(), m.into())),
                None => DimensionExact::LogRatio { num: self.r.clone(), den: self.q.clone() },
            }
        };
        Dimension { exact, value }
    }

    /// Oscillatory period `2 pi / ln q`.
    pub fn period(&self) -> f64 {
        TAU / self.ln_q()
    }

    pub fn pole(&self, n: i64) -> ComplexDimension {
        ComplexDimension { index: n, dimension: self.dimension().value, period: self.period() }
    }

    /// All poles with imaginary part in `[t_min, t_max]`.
    pub fn complex_dimensions(&self, t_min: f64, t_max: f64) -> Vec<ComplexDimension> {
        if t_min > t_max {
            return Vec::new();
        }
        let period = self.period();
        let lo = (t_min / period).ceil() as i64;
        let hi = (t_max / period).floor() as i64;
        (lo..=hi).map(|n| self.pole(n)).collect()
    }

    /// The common residue `C r^e / (r ln q)` at every pole.
    pub fn residue(&self) -> Residue {
        let r = BigRational::from_integer(BigInt::from(self.r.clone()));
        let coefficient = match self.shape {
            Shape::Plain => &self.c / r,
            Shape::EulerType => self.c.clone(),
        };
        let value = rational_to_f64(&coefficient) / self.ln_q();
        Residue { coefficient, log_base: self.q.clone(), value }
    }

    /// Residue at `omega`, which must be one of the poles.
    pub fn residue_at(&self, omega: Complex64) -> Result<Residue> {
        let n = (omega.im / self.period()).round() as i64;
        let pole = self.pole(n).value();
        if (omega - pole).norm() > 1e-9 * (1.0 + pole.norm()) {
            return Err(Error::arg(format!("{omega} is not a pole (nearest is {pole})")));
        }
        Ok(self.residue())
    }
}

/// The geometric zeta function of a descriptor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometricZeta {
    Lattice(ZetaClosedForm),
    /// The degenerate empty string.
    Zero,
    /// The harmonic string; only truncations are evaluated.
    Riemann,
}

impl GeometricZeta {
    pub fn closed_form(&self) -> Result<&ZetaClosedForm> {
        match self {
            GeometricZeta::Lattice(z) => Ok(z),
            GeometricZeta::Zero => Err(Error::Domain(
                "the empty string has the zero function as zeta; it has no poles".into(),
            )),
            GeometricZeta::Riemann => Err(Error::Unsupported(
                "the harmonic string's zeta is evaluated only by truncation".into(),
            )),
        }
    }

    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        match self {
            GeometricZeta::Zero => Ok(Complex64::zero()),
            _ => self.closed_form()?.eval(s),
        }
    }
}

/// Closed-form geometric zeta function of a descriptor.
pub fn zeta_of(desc: &FractalStringDesc) -> GeometricZeta {
    if desc.is_degenerate() {
        return GeometricZeta::Zero;
    }
    let Some(lattice) = desc.lattice() else {
        return GeometricZeta::Riemann;
    };
    let shape = if desc.family() == Family::Euler { Shape::EulerType } else { Shape::Plain };
    let c = BigRational::from_integer(BigInt::from(lattice.first));
    let mut z = ZetaClosedForm::new(c, lattice.q, lattice.r, shape)
        .expect("descriptor lattices have valid parameters");
    z.prime = desc.prime();
    GeometricZeta::Lattice(z)
}

/// JSON summary `{C, q, r, D, period, residue}`.
#[derive(Debug, Clone, Serialize)]
pub struct ZetaSummary {
    #[serde(rename = "C")]
    pub c: String,
    pub q: String,
    pub r: String,
    pub shape: Shape,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "D_exact")]
    pub d_exact: String,
    pub period: f64,
    pub residue: f64,
    pub residue_exact: String,
}

impl ZetaClosedForm {
    pub fn summary(&self) -> ZetaSummary {
        let dim = self.dimension();
        let res = self.residue();
        ZetaSummary {
            c: fmt_rational(&self.c),
            q: self.q.to_string(),
            r: self.r.to_string(),
            shape: self.shape,
            d: dim.value,
            d_exact: dim.exact.to_string(),
            period: self.period(),
            residue: res.value,
            residue_exact: res.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::*;
    use std::f64::consts::{LN_2, PI};
    use std::str::FromStr;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn q(s: &str) -> BigRational {
        BigRational::from_str(s).unwrap()
    }

    fn lattice(desc: &FractalStringDesc) -> ZetaClosedForm {
        zeta_of(desc).closed_form().unwrap().clone()
    }

    #[test]
    fn closed_forms() {
        let cs3 = lattice(&make_cantor_p(p(3)).unwrap());
        assert_eq!((cs3.c(), cs3.q(), cs3.r()), (&q("1"), &BigUint::from(3u32), &BigUint::from(2u32)));
        let l = lattice(&make_rational_dim(p(2), 2, 1, KeptSet::Default).unwrap());
        assert_eq!((l.c(), l.q(), l.r()), (&q("2"), &BigUint::from(4u32), &BigUint::from(2u32)));
        let e2 = lattice(&make_euler(p(2)));
        assert_eq!(e2.shape(), Shape::EulerType);
        assert_eq!(e2.eval_exact(1).unwrap(), q("2"));
        assert_eq!(zeta_of(&make_harmonic()), GeometricZeta::Riemann);
        let empty = make_rational_dim(p(2), 2, 2, KeptSet::Default).unwrap();
        assert_eq!(zeta_of(&empty), GeometricZeta::Zero);
        assert_eq!(zeta_of(&empty).eval(Complex64::new(0.3, 1.0)).unwrap(), Complex64::zero());
    }

    #[test]
    fn eval_examples() {
        let cs3 = lattice(&make_cantor_p(p(3)).unwrap());
        assert_eq!(cs3.eval_exact(2).unwrap(), q("1/7"));
        assert_eq!(cs3.eval(Complex64::new(2.0, 0.0)).unwrap(), Complex64::new(1.0 / 7.0, 0.0));
        let l = lattice(&make_rational_dim(p(2), 2, 1, KeptSet::Default).unwrap());
        assert_eq!(l.eval_exact(1).unwrap(), q("1"));
        let cs2 = lattice(&make_cantor_2());
        match cs2.eval(Complex64::new(0.0, 0.0)) {
            Err(Error::Pole { nearest }) => assert_eq!(nearest.index, 0),
            other => panic!("{other:?}"),
        }
        match cs2.eval(Complex64::new(1e-12, TAU / LN_2)) {
            Err(Error::Pole { nearest }) => assert_eq!(nearest.index, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn float_path_matches_exact_path() {
        let cs5 = lattice(&make_cantor_p(p(5)).unwrap());
        let exact = rational_to_f64(&cs5.eval_exact(3).unwrap());
        let float = cs5.eval(Complex64::new(3.0, 1e-300)).unwrap();
        assert!((float.re - exact).abs() < 1e-14 * exact.abs());
    }

    #[test]
    fn dimensions() {
        let cs3 = lattice(&make_cantor_p(p(3)).unwrap()).dimension();
        assert!((cs3.value - 0.630_929_753_571_457_4).abs() < 1e-15);
        assert_eq!(cs3.exact.to_string(), "ln(2)/ln(3)");
        let l = lattice(&make_rational_dim(p(3), 3, 2, KeptSet::Default).unwrap()).dimension();
        assert_eq!(l.exact, DimensionExact::Rational(q("2/3")));
        let cs2 = lattice(&make_cantor_2()).dimension();
        assert_eq!(cs2.exact, DimensionExact::Rational(q("0")));
        // Smith base 4: ln 3 / ln 4 is irrational
        let s4 = lattice(&make_smith(4).unwrap()).dimension();
        assert!(matches!(s4.exact, DimensionExact::LogRatio { .. }));
    }

    #[test]
    fn lattice_windows() {
        let cs3 = lattice(&make_cantor_p(p(3)).unwrap());
        let dims = cs3.complex_dimensions(-10.0, 10.0);
        assert_eq!(dims.iter().map(|d| d.index).collect::<Vec<_>>(), vec![-1, 0, 1]);
        assert!((cs3.period() - 5.719_201_734_760_253).abs() < 1e-12);
        let l = lattice(&make_rational_dim(p(2), 2, 1, KeptSet::Default).unwrap());
        let one = l.complex_dimensions(0.0, 0.0);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].value(), Complex64::new(0.5, 0.0));
        assert!((l.period() - PI / LN_2).abs() < 1e-15);
    }

    #[test]
    fn residues() {
        let cs3 = lattice(&make_cantor_p(p(3)).unwrap()).residue();
        assert_eq!(cs3.coefficient, q("1/2"));
        assert!((cs3.value - 2.0 / (4.0 * 3f64.ln())).abs() < 1e-15);
        let cs2 = lattice(&make_cantor_2()).residue();
        assert!((cs2.value - 1.0 / LN_2).abs() < 1e-15);
        let l = lattice(&make_rational_dim(p(2), 2, 1, KeptSet::Default).unwrap());
        assert!((l.residue().value - 1.0 / (2.0 * LN_2)).abs() < 1e-15);
        assert!(l.residue_at(Complex64::new(0.5, 3.0 * l.period())).is_ok());
        assert!(l.residue_at(Complex64::new(0.5, 0.5 * l.period())).is_err());
        let e3 = lattice(&make_euler(p(3))).residue();
        assert!((e3.value - 1.0 / 3f64.ln()).abs() < 1e-15);
    }
}
