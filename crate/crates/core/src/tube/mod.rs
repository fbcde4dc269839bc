//! Tube formulas for p-adic lattice strings.
//!
//! The volume of the inner neighborhoods is the step function
//! `V(eps) = (1/p) sum_{l_n <= eps} mu_n l_n`. Its complex-dimension expansion
//! `sum_w (res/p) eps^{1-w} / (1-w)` is evaluated as an independent route.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{fmt_rational, ln_abs, ln_biguint, rational_pow, rational_to_f64, Prime};
use crate::strings::{FractalStringDesc, Lattice};
use crate::zeta::{zeta_of, ZetaClosedForm};

/// Distance in `ln eps` below which a scale counts as a jump point.
pub const JUMP_GUARD: f64 = 1e-9;

/// Truncation used when none is given.
pub const DEFAULT_SERIES_N: usize = 10_000;

/// Seed of the random scales drawn by [`scaling_identity_check`].
pub const SCALING_SEED: u64 = 0x5eed_0001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Smoothing {
    None,
    /// Fejer weights `1 - |n| / (N + 1)`.
    #[default]
    Cesaro,
}

impl FromStr for Smoothing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Smoothing::None),
            "cesaro" | "fejer" => Ok(Smoothing::Cesaro),
            other => Err(Error::arg(format!("unknown smoothing {other:?}"))),
        }
    }
}

/// Everything the tube routines need from a descriptor.
#[derive(Debug, Clone)]
struct TubeData {
    p: Prime,
    lattice: Lattice,
    zeta: ZetaClosedForm,
}

impl TubeData {
    fn of(desc: &FractalStringDesc) -> Result<Self> {
        if !desc.is_nonarchimedean() {
            return Err(Error::Unsupported(format!(
                "tube formulas are only available for p-adic strings, not {}",
                desc.family()
            )));
        }
        if desc.is_degenerate() {
            return Err(Error::domain("the empty string has no tube formula"));
        }
        let (Some(p), Some(lattice)) = (desc.prime(), desc.lattice()) else {
            return Err(Error::Unsupported(format!("no lattice data for {desc}")));
        };
        let zeta = zeta_of(desc).closed_form()?.clone();
        Ok(TubeData { p, lattice, zeta })
    }

    fn p_rat(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.p.get()))
    }

    fn ln_q(&self) -> f64 {
        ln_biguint(&self.lattice.q)
    }

    fn dim(&self) -> f64 {
        self.zeta.dimension().value
    }

    /// `q / r = q^{1-D}` exactly.
    fn growth(&self) -> BigRational {
        BigRational::new(BigInt::from(self.lattice.q.clone()), BigInt::from(self.lattice.r.clone()))
    }

    /// `(1/p) sum_{n >= n0} mu_n l_n`.
    fn volume_from(&self, n0: u64) -> BigRational {
        let l = &self.lattice;
        let n0 = n0.max(l.start);
        let tail = if n0 == l.start { l.total() } else { l.tail_length(n0 - 1) };
        tail / self.p_rat()
    }

    /// Smallest `n` with `q^-n <= eps`, for `0 < eps <= 1`.
    fn first_index_below(&self, eps: &BigRational) -> u64 {
        let q = BigRational::from_integer(BigInt::from(self.lattice.q.clone()));
        let mut n = 0;
        let mut scaled = eps.clone();
        while scaled < BigRational::one() {
            scaled *= &q;
            n += 1;
        }
        n
    }

    fn is_jump(&self, ln_eps: f64) -> bool {
        let phase = -ln_eps / self.ln_q();
        (phase - phase.round()).abs() * self.ln_q() < JUMP_GUARD
    }
}

fn check_eps(eps: &BigRational) -> Result<()> {
    if !eps.is_positive() || *eps > BigRational::one() {
        return Err(Error::arg(format!("epsilon must lie in (0, 1], got {}", fmt_rational(eps))));
    }
    Ok(())
}

/// Exact `V(eps) = (1/p) sum_{l_n <= eps} mu_n l_n` for `0 < eps <= 1`.
pub fn volume_direct(desc: &FractalStringDesc, eps: &BigRational) -> Result<BigRational> {
    let t = TubeData::of(desc)?;
    check_eps(eps)?;
    Ok(t.volume_from(t.first_index_below(eps)))
}

/// Truncated complex-dimension expansion of the volume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: f64,
    /// Imaginary part left over by the symmetric summation.
    pub imag_residual: f64,
}

/// `sum_{|n| <= N} w_n (res/p) eps^{1-w_n} / (1-w_n)` over the poles
/// `w_n = D + i n period`.
pub fn volume_series(desc: &FractalStringDesc, eps: f64, n: usize, smoothing: Smoothing) -> Result<SeriesValue> {
    let t = TubeData::of(desc)?;
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::arg(format!("epsilon must lie in (0, 1], got {eps}")));
    }
    let ln_eps = eps.ln();
    if t.is_jump(ln_eps) {
        return Err(Error::JumpPoint { eps });
    }
    let coef = t.zeta.residue().value / t.p.get() as f64;
    let d = t.dim();
    let period = t.zeta.period();
    let term = |k: i64| {
        let one_minus_w = Complex64::new(1.0 - d, -(k as f64) * period);
        (one_minus_w * ln_eps).exp() / one_minus_w
    };
    let weight = |k: usize| match smoothing {
        Smoothing::None => 1.0,
        Smoothing::Cesaro => 1.0 - k as f64 / (n as f64 + 1.0),
    };
    let mut acc = term(0);
    // small terms first to limit rounding
    for k in (1..=n).rev() {
        let w = weight(k);
        let pair = term(k as i64) + term(-(k as i64));
        acc += pair * w;
    }
    acc *= coef;
    Ok(SeriesValue { value: acc.re, imag_residual: acc.im.abs() })
}

/// Checks `V(eps/q) = (r/q) V(eps)` exactly at 50 seeded random rationals in
/// `(0, 1)` and at every `q^-j`, `1 <= j <= 6`.
pub fn scaling_identity_check(desc: &FractalStringDesc) -> Result<bool> {
    let t = TubeData::of(desc)?;
    let q = BigRational::from_integer(BigInt::from(t.lattice.q.clone()));
    let factor = t.growth().recip();
    let mut rng = ChaCha8Rng::seed_from_u64(SCALING_SEED);
    let mut scales: Vec<BigRational> = (0..50)
        .map(|_| {
            let den: u64 = rng.gen_range(2..=1_000_000);
            let num: u64 = rng.gen_range(1..den);
            BigRational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect();
    scales.extend((1..=6).map(|j| rational_pow(&t.lattice.q, -j)));
    for eps in &scales {
        let v = t.volume_from(t.first_index_below(eps));
        let w = t.volume_from(t.first_index_below(&(eps / &q)));
        if w != &factor * &v {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Average Minkowski content `res / (p (1 - D))`, kept as
/// `coefficient / ln(log_arg)` with both parts exact.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AverageContent {
    #[serde(serialize_with = "ser_rational")]
    pub coefficient: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub log_arg: BigRational,
    pub value: f64,
}

fn ser_rational<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(x))
}

pub fn average_content_closed(desc: &FractalStringDesc) -> Result<AverageContent> {
    let t = TubeData::of(desc)?;
    // res = coefficient / ln q and 1 - D = ln(q/r) / ln q
    let coefficient = t.zeta.residue().coefficient / t.p_rat();
    let log_arg = t.growth();
    let value = rational_to_f64(&coefficient) / ln_abs(&log_arg);
    Ok(AverageContent { coefficient, log_arg, value })
}

/// Numeric average over `K` whole periods `[q^-(m0+K), q^-m0]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericContent {
    /// `(1 - D) int V eps^{D-2} d eps`, exact; `value = integral / (K ln(q/r))`.
    #[serde(serialize_with = "ser_rational")]
    pub integral: BigRational,
    pub periods: u32,
    pub value: f64,
}

/// Integrates the piecewise-constant `V` against `eps^{D-2}` piece by piece.
/// On `[q^-n, q^-(n-1))` the antiderivative gives
/// `V_n ((q/r)^n - (q/r)^(n-1)) / (1 - D)`, rational up to the `1 - D`.
pub fn average_content_numeric(desc: &FractalStringDesc, m0: u32, k: u32) -> Result<NumericContent> {
    let t = TubeData::of(desc)?;
    if k == 0 {
        return Err(Error::arg("need at least one period (K >= 1)"));
    }
    let g = t.growth();
    let mut integral = BigRational::zero();
    for n in (u64::from(m0) + 1)..=(u64::from(m0) + u64::from(k)) {
        let v_n = t.volume_from(n);
        let lower = num_traits::pow(g.clone(), n as usize);
        let upper = num_traits::pow(g.clone(), n as usize - 1);
        integral += v_n * (lower - upper);
    }
    let value = rational_to_f64(&integral) / (f64::from(k) * ln_abs(&g));
    Ok(NumericContent { integral, periods: k, value })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "not measurable")]
    NotMeasurable,
    #[serde(rename = "measurable")]
    Measurable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::NotMeasurable => "not measurable",
            Verdict::Measurable => "measurable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContentReport {
    pub m_av_closed: f64,
    pub m_av_numeric: f64,
    pub sup: f64,
    pub inf: f64,
    pub ratio: f64,
    pub verdict: Verdict,
    #[serde(serialize_with = "ser_rational")]
    pub sup_exact: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub inf_exact: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub ratio_exact: BigRational,
    /// `D = 0`: `g` is `V / eps` and the content is a formal evaluation.
    pub zero_dimension: bool,
}

/// Default averaging window of the report.
pub const REPORT_M0: u32 = 2;
pub const REPORT_PERIODS: u32 = 5;

/// Sup and inf of `g(eps) = V(eps) eps^{D-1}` over one multiplicative period.
///
/// On `[q^-n, q^-(n-1))` the volume is constant and `eps^{D-1}` runs from
/// `(q/r)^n` down to `(q/r)^(n-1)`, so both extremes are exact.
pub fn nonmeasurability_witness(desc: &FractalStringDesc) -> Result<ContentReport> {
    let t = TubeData::of(desc)?;
    let g = t.growth();
    let n = t.lattice.start.max(1);
    let v_n = t.volume_from(n);
    let upper = num_traits::pow(g.clone(), n as usize - 1);
    let sup_exact = &v_n * &upper * &g;
    let inf_exact = v_n * upper;
    let ratio_exact = &sup_exact / &inf_exact;
    let ratio = rational_to_f64(&ratio_exact);
    let closed = average_content_closed(desc)?;
    let numeric = average_content_numeric(desc, REPORT_M0, REPORT_PERIODS)?;
    Ok(ContentReport {
        m_av_closed: closed.value,
        m_av_numeric: numeric.value,
        sup: rational_to_f64(&sup_exact),
        inf: rational_to_f64(&inf_exact),
        ratio,
        verdict: if ratio > 1.0 + 1e-9 { Verdict::NotMeasurable } else { Verdict::Measurable },
        sup_exact,
        inf_exact,
        ratio_exact,
        zero_dimension: t.lattice.r.is_one(),
    })
}

/// Log-uniform grid of `n` scales from `lo` to `hi`, written `log:lo:hi:n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let (a, b) = (self.lo.ln(), self.hi.ln());
        (0..self.n)
            .map(|i| {
                if i + 1 == self.n {
                    self.hi
                } else {
                    (a + (b - a) * i as f64 / (self.n - 1) as f64).exp()
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::arg(format!("grid must look like log:lo:hi:n, got {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let [kind, lo, hi, n] = parts.as_slice() else {
            return Err(bad());
        };
        if *kind != "log" {
            return Err(bad());
        }
        let num = |x: &str| -> Result<f64> {
            match x.parse::<f64>() {
                Ok(v) => Ok(v),
                Err(_) => crate::exactnum::parse_rational(x).map(|r| rational_to_f64(&r)),
            }
        };
        let grid = Grid { lo: num(lo)?, hi: num(hi)?, n: n.parse().map_err(|_| bad())? };
        if !(grid.lo > 0.0 && grid.lo <= grid.hi && grid.hi <= 1.0) || grid.n == 0 {
            return Err(Error::arg(format!("grid needs 0 < lo <= hi <= 1 and n >= 1, got {s:?}")));
        }
        Ok(grid)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TubeSample {
    pub ln_eps: f64,
    pub eps: f64,
    #[serde(rename = "V")]
    pub v: f64,
    /// `g = V eps^{D-1}`.
    pub ratio: f64,
    #[serde(skip)]
    pub v_exact: BigRational,
    /// The series route converges to a midpoint here.
    #[serde(skip)]
    pub jump: bool,
}

pub fn wave_table(desc: &FractalStringDesc, grid: &Grid) -> Result<Vec<TubeSample>> {
    let t = TubeData::of(desc)?;
    let d = t.dim();
    grid.points()
        .into_iter()
        .map(|eps| {
            let exact = BigRational::from_float(eps).ok_or_else(|| Error::arg("non-finite scale"))?;
            check_eps(&exact)?;
            let v_exact = t.volume_from(t.first_index_below(&exact));
            let v = rational_to_f64(&v_exact);
            let ln_eps = eps.ln();
            Ok(TubeSample {
                ln_eps,
                eps,
                v,
                ratio: v * ((d - 1.0) * ln_eps).exp(),
                v_exact,
                jump: t.is_jump(ln_eps),
            })
        })
        .collect()
}

/// Integer `q` of a tube-capable descriptor (the multiplicative period is `ln q`).
pub fn scale_base(desc: &FractalStringDesc) -> Result<BigUint> {
    Ok(TubeData::of(desc)?.lattice.q)
}
