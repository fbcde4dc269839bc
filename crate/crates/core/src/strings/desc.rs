use std::fmt;
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{rational_pow, Prime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Digit-block string of dimension `k/m` in `Z_p`.
    Rational,
    /// p-adic Cantor string, odd `p`.
    CantorP,
    /// 2-adic Cantor string `1+2Z_2, 2+4Z_2, ...`.
    Cantor2,
    /// Smith's general Cantor string in `[0, 1]`, base `m`.
    Smith,
    /// Base-p Cantor string in `[0, 1]`.
    BasePReal,
    /// p-adic Euler string.
    Euler,
    /// Harmonic string; its zeta is the Riemann zeta function.
    Harmonic,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Rational => "rational",
            Family::CantorP => "cantor-p",
            Family::Cantor2 => "cantor-2",
            Family::Smith => "smith",
            Family::BasePReal => "base-p-real",
            Family::Euler => "euler",
            Family::Harmonic => "harmonic",
        }
    }

    fn default_world(self) -> World {
        match self {
            Family::Rational | Family::CantorP | Family::Cantor2 | Family::Euler => {
                World::Nonarchimedean
            }
            Family::Smith | Family::BasePReal => World::Archimedean,
            Family::Harmonic => World::Measure,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum World {
    Nonarchimedean,
    Archimedean,
    Measure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Warning {
    /// `k = m`: every block recurses and the string has no lengths.
    DegenerateEmpty,
    /// Smith base `m = 2`, admitted although the classical construction needs `m > 2`.
    DyadicSmith,
}

/// Choice of the recursing block set `S` for a rational-dimension string.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum KeptSet {
    /// `{0, 1, ..., p^k - 1}`.
    #[default]
    Default,
    /// `{j + j p : 0 <= j < p}`, only for `m = 2, k = 1`.
    Diagonal,
    Explicit(Vec<u64>),
}

/// One term of a fractal string: `multiplicity` copies of `length`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthTerm {
    pub index: u64,
    pub length: BigRational,
    pub multiplicity: BigUint,
}

/// Exact lattice data shared by every family but the harmonic one:
/// `mu_n = first * r^(n - start)` and `l_n = q^(-n)` for `n >= start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    pub q: BigUint,
    pub r: BigUint,
    pub first: BigUint,
    pub start: u64,
}

impl Lattice {
    fn term(&self, n: u64) -> LengthTerm {
        let exp = (n - self.start) as usize;
        LengthTerm {
            index: n,
            length: rational_pow(&self.q, -(n as i64)),
            multiplicity: &self.first * num_traits::pow(self.r.clone(), exp),
        }
    }

    fn q_rat(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.q.clone()))
    }

    fn r_rat(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.r.clone()))
    }

    /// `sum_{n >= start} mu_n l_n = first q^(1 - start) / (q - r)`; requires `r < q`.
    pub fn total(&self) -> BigRational {
        let first = BigRational::from_integer(BigInt::from(self.first.clone()));
        first * rational_pow(&self.q, 1 - self.start as i64) / (self.q_rat() - self.r_rat())
    }

    /// `sum_{n > big_n} mu_n l_n` in closed form; requires `r < q`.
    pub fn tail_length(&self, big_n: u64) -> BigRational {
        let first = BigRational::from_integer(BigInt::from(self.first.clone()));
        let r_pow = num_traits::pow(self.r_rat(), (big_n + 1 - self.start) as usize);
        first * r_pow * rational_pow(&self.q, -(big_n as i64)) / (self.q_rat() - self.r_rat())
    }
}

/// Immutable description of a fractal string family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractalStringDesc {
    family: Family,
    prime: Option<Prime>,
    base: u64,
    block: u32,
    dim_k: Option<u32>,
    recursion: Vec<u64>,
    diagonal: bool,
    world: World,
    warnings: Vec<Warning>,
}

impl FractalStringDesc {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn prime(&self) -> Option<Prime> {
        self.prime
    }

    /// The prime `p`, or Smith's base `m`, or 1 for the harmonic string.
    pub fn base(&self) -> u64 {
        self.base
    }

    /// Digit-block size `m` (1 for single-digit recursions).
    pub fn block(&self) -> u32 {
        self.block
    }

    pub fn dim_k(&self) -> Option<u32> {
        self.dim_k
    }

    /// The block values `S` that recurse into the next generation.
    pub fn recursion_set(&self) -> &[u64] {
        &self.recursion
    }

    pub fn world(&self) -> World {
        self.world
    }

    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }

    pub fn is_degenerate(&self) -> bool {
        self.warnings.contains(&Warning::DegenerateEmpty)
    }

    pub fn is_nonarchimedean(&self) -> bool {
        self.world == World::Nonarchimedean
    }

    /// `p^m`, the number of digit blocks per generation.
    pub fn blocks_per_generation(&self) -> u64 {
        self.base.pow(self.block)
    }

    pub fn lattice(&self) -> Option<Lattice> {
        let big = BigUint::from;
        match self.family {
            Family::Harmonic => None,
            Family::Euler => Some(Lattice { q: big(self.base), r: big(1u64), first: big(1u64), start: 0 }),
            Family::Smith => Some(Lattice {
                q: big(self.base),
                r: big(self.base - 1),
                first: big(1u64),
                start: 1,
            }),
            Family::Rational | Family::CantorP | Family::Cantor2 | Family::BasePReal => {
                let q = self.blocks_per_generation();
                let r = self.recursion.len() as u64;
                Some(Lattice { q: big(q), r: big(r), first: big(q - r), start: 1 })
            }
        }
    }

    /// The first index carrying a length (0 for Euler strings, 1 otherwise).
    pub fn first_index(&self) -> u64 {
        self.lattice().map_or(1, |l| l.start)
    }

    /// The `n`-th term, or `None` before the first index or for the
    /// degenerate empty string.
    pub fn term(&self, n: u64) -> Option<LengthTerm> {
        if self.is_degenerate() {
            return None;
        }
        match self.lattice() {
            Some(l) if n >= l.start => Some(l.term(n)),
            Some(_) => None,
            None if n >= 1 => Some(LengthTerm {
                index: n,
                length: BigRational::new(BigInt::one(), BigInt::from(n)),
                multiplicity: BigUint::one(),
            }),
            None => None,
        }
    }

    /// Lazy, unbounded sequence of terms in decreasing length order.
    pub fn terms(&self) -> impl Iterator<Item = LengthTerm> + '_ {
        let start = self.first_index();
        (start..).map_while(move |n| self.term(n))
    }

    /// `sum mu_n l_n` exactly; `None` when it diverges (harmonic string).
    pub fn total_length(&self) -> Option<BigRational> {
        if self.is_degenerate() {
            return Some(BigRational::zero());
        }
        Some(self.lattice()?.total())
    }

    /// `sum_{n > big_n} mu_n l_n` in closed form.
    pub fn tail_length(&self, big_n: u64) -> Option<BigRational> {
        if self.is_degenerate() {
            return Some(BigRational::zero());
        }
        let l = self.lattice()?;
        if big_n + 1 < l.start {
            return self.total_length();
        }
        Some(l.tail_length(big_n))
    }

    /// The string's lengths exhaust a set of measure one.
    pub fn is_filling(&self) -> bool {
        matches!(
            self.family,
            Family::Rational | Family::CantorP | Family::Cantor2 | Family::Smith | Family::BasePReal
        ) && !self.is_degenerate()
    }
}

impl fmt::Display for FractalStringDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Rational => write!(
                f,
                "L_{}(m={},k={})",
                self.base,
                self.block,
                self.dim_k.unwrap_or_default()
            ),
            Family::CantorP => write!(f, "CS_{}", self.base),
            Family::Cantor2 => f.write_str("CS_2"),
            Family::Smith => write!(f, "Smith_{}", self.base),
            Family::BasePReal => write!(f, "CS*_{}", self.base),
            Family::Euler => write!(f, "E_{}", self.base),
            Family::Harmonic => f.write_str("h"),
        }
    }
}

/// The rational-dimension string `L_p(m, k)` with recursing block set `S`.
pub fn make_rational_dim(p: Prime, m: u32, k: u32, set: KeptSet) -> Result<FractalStringDesc> {
    if m == 0 {
        return Err(Error::arg("block size m must be positive"));
    }
    if k > m {
        return Err(Error::arg(format!("k = {k} exceeds m = {m}")));
    }
    let blocks = p
        .checked_pow(m)
        .filter(|&b| b < u64::MAX / 2)
        .ok_or_else(|| Error::arg(format!("{p}^{m} digit blocks do not fit in 64 bits")))?;
    let want = p.checked_pow(k).expect("p^k <= p^m");

    let recursion = match set {
        KeptSet::Default => (0..want).collect(),
        KeptSet::Diagonal => {
            if (m, k) != (2, 1) {
                return Err(Error::arg("the diagonal set needs m = 2, k = 1"));
            }
            (0..p.get()).map(|j| j + j * p.get()).collect()
        }
        KeptSet::Explicit(mut s) => {
            s.sort_unstable();
            s.dedup();
            if let Some(bad) = s.iter().find(|&&a| a >= blocks) {
                return Err(Error::arg(format!("block value {bad} outside [0, {blocks})")));
            }
            if s.len() as u64 != want {
                return Err(Error::arg(format!(
                    "S has {} distinct blocks, need p^k = {want}",
                    s.len()
                )));
            }
            s
        }
    };
    let diagonal = p.get() > 1 && (m, k) == (2, 1) && {
        let d: Vec<u64> = (0..p.get()).map(|j| j + j * p.get()).collect();
        d == recursion
    };
    let mut warnings = Vec::new();
    if k == m {
        warnings.push(Warning::DegenerateEmpty);
    }
    Ok(FractalStringDesc {
        family: Family::Rational,
        prime: Some(p),
        base: p.get(),
        block: m,
        dim_k: Some(k),
        recursion,
        diagonal,
        world: World::Nonarchimedean,
        warnings,
    })
}

fn even_digits(p: Prime) -> Vec<u64> {
    (0..p.get()).step_by(2).collect()
}

pub fn make_cantor_p(p: Prime) -> Result<FractalStringDesc> {
    if !p.is_odd() {
        return Err(Error::arg("the p-adic Cantor string needs an odd prime; use make_cantor_2"));
    }
    Ok(FractalStringDesc {
        family: Family::CantorP,
        prime: Some(p),
        base: p.get(),
        block: 1,
        dim_k: None,
        recursion: even_digits(p),
        diagonal: false,
        world: World::Nonarchimedean,
        warnings: Vec::new(),
    })
}

pub fn make_cantor_2() -> FractalStringDesc {
    FractalStringDesc {
        family: Family::Cantor2,
        prime: Some(Prime::new(2).expect("2 is prime")),
        base: 2,
        block: 1,
        dim_k: None,
        recursion: vec![0],
        diagonal: false,
        world: World::Nonarchimedean,
        warnings: Vec::new(),
    }
}

pub fn make_smith(m: u64) -> Result<FractalStringDesc> {
    if m < 2 {
        return Err(Error::arg(format!("Smith base m = {m} must be at least 2")));
    }
    let warnings = if m == 2 { vec![Warning::DyadicSmith] } else { Vec::new() };
    Ok(FractalStringDesc {
        family: Family::Smith,
        prime: None,
        base: m,
        block: 1,
        dim_k: None,
        recursion: Vec::new(),
        diagonal: false,
        world: World::Archimedean,
        warnings,
    })
}

pub fn make_euler(p: Prime) -> FractalStringDesc {
    FractalStringDesc {
        family: Family::Euler,
        prime: Some(p),
        base: p.get(),
        block: 1,
        dim_k: None,
        recursion: Vec::new(),
        diagonal: false,
        world: World::Nonarchimedean,
        warnings: Vec::new(),
    }
}

pub fn make_base_p_real(p: Prime) -> Result<FractalStringDesc> {
    let mut desc = make_cantor_p(p)?;
    desc.family = Family::BasePReal;
    desc.world = World::Archimedean;
    Ok(desc)
}

pub fn make_harmonic() -> FractalStringDesc {
    FractalStringDesc {
        family: Family::Harmonic,
        prime: None,
        base: 1,
        block: 1,
        dim_k: None,
        recursion: Vec::new(),
        diagonal: false,
        world: World::Measure,
        warnings: Vec::new(),
    }
}

/// On-disk JSON form `{family, p, m, k, S, world}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorDoc {
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub diagonal: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub world: Option<World>,
}

fn need<T>(v: Option<T>, field: &str, family: Family) -> Result<T> {
    v.ok_or_else(|| Error::arg(format!("family {family} needs field `{field}`")))
}

impl DescriptorDoc {
    pub fn build(&self) -> Result<FractalStringDesc> {
        let family = self.family.ok_or_else(|| Error::arg("descriptor needs a `family`"))?;
        let prime = |p: Option<u64>| need(p, "p", family).and_then(Prime::new);
        let desc = match family {
            Family::Rational => {
                let m = need(self.m, "m", family)?;
                let m = u32::try_from(m).map_err(|_| Error::arg("m too large"))?;
                let set = match (&self.s, self.diagonal) {
                    (Some(_), true) => {
                        return Err(Error::arg("give either `S` or `diagonal`, not both"))
                    }
                    (Some(s), false) => KeptSet::Explicit(s.clone()),
                    (None, true) => KeptSet::Diagonal,
                    (None, false) => KeptSet::Default,
                };
                make_rational_dim(prime(self.p)?, m, need(self.k, "k", family)?, set)?
            }
            Family::CantorP => make_cantor_p(prime(self.p)?)?,
            Family::Cantor2 => {
                if self.p.is_some_and(|p| p != 2) {
                    return Err(Error::arg("cantor-2 is defined for p = 2 only"));
                }
                make_cantor_2()
            }
            Family::Smith => make_smith(need(self.m, "m", family)?)?,
            Family::BasePReal => make_base_p_real(prime(self.p)?)?,
            Family::Euler => make_euler(prime(self.p)?),
            Family::Harmonic => make_harmonic(),
        };
        if let Some(w) = self.world {
            if w != family.default_world() {
                return Err(Error::arg(format!("family {family} lives in {:?}, not {w:?}", family.default_world())));
            }
        }
        Ok(desc)
    }
}

impl FractalStringDesc {
    pub fn to_doc(&self) -> DescriptorDoc {
        let mut doc = DescriptorDoc {
            family: Some(self.family),
            world: Some(self.world),
            ..DescriptorDoc::default()
        };
        match self.family {
            Family::Rational => {
                doc.p = Some(self.base);
                doc.m = Some(u64::from(self.block));
                doc.k = self.dim_k;
                doc.s = Some(self.recursion.clone());
            }
            Family::CantorP | Family::BasePReal | Family::Euler | Family::Cantor2 => {
                doc.p = Some(self.base)
            }
            Family::Smith => doc.m = Some(self.base),
            Family::Harmonic => {}
        }
        doc
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<DescriptorDoc>(text)?.build()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_doc())?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Whether `S` is the diagonal `{j + j p}`.
    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }
}
