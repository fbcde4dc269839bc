use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::closed_form::ZetaClosedForm;
use crate::error::{Error, Result};
use crate::exactnum::{ln_abs, ln_biguint, rational_pow};
use crate::strings::FractalStringDesc;

/// Truncated Dirichlet series `sum_{first N terms} mu_n l_n^s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DirichletPartial {
    pub value: Complex64,
    /// Rigorous bound on the omitted tail `sum_{rest} mu_n l_n^{Re s}`;
    /// `None` when the series diverges at `s`.
    pub tail_bound: Option<f64>,
    /// Floating-point allowance for the summation itself.
    pub rounding: f64,
}

impl DirichletPartial {
    pub fn converges(&self) -> bool {
        self.tail_bound.is_some()
    }

    /// `tail_bound + rounding`, the admissible distance to the limit.
    pub fn bound(&self) -> Option<f64> {
        self.tail_bound.map(|t| t + self.rounding)
    }
}

/// Sum the first `n_terms` terms of the length sequence directly.
pub fn dirichlet_partial(desc: &FractalStringDesc, s: Complex64, n_terms: usize) -> DirichletPartial {
    let mut value = Complex64::zero();
    let mut abs_sum = 0.0;
    let mut last_index = desc.first_index().saturating_sub(1);
    for term in desc.terms().take(n_terms) {
        let ln_mu = ln_biguint(&term.multiplicity);
        let ln_l = ln_abs(&term.length);
        let t = (s * ln_l + ln_mu).exp();
        value += t;
        abs_sum += t.norm();
        last_index = term.index;
    }
    let tail_bound = tail_bound(desc, s.re, last_index);
    let rounding = 16.0 * f64::EPSILON * (1.0 + s.norm()) * (abs_sum + value.norm() + 1.0);
    DirichletPartial { value, tail_bound, rounding }
}

/// Bound on `sum_{n > last} mu_n l_n^sigma`, or `None` if it diverges.
fn tail_bound(desc: &FractalStringDesc, sigma: f64, last: u64) -> Option<f64> {
    if desc.is_degenerate() {
        return Some(0.0);
    }
    match desc.lattice() {
        Some(l) => {
            let ln_q = ln_biguint(&l.q);
            let ln_r = ln_biguint(&l.r);
            // ratio of consecutive terms r q^-sigma
            let ln_ratio = ln_r - sigma * ln_q;
            if ln_ratio >= 0.0 {
                return None;
            }
            let next = last + 1;
            let ln_next = ln_biguint(&l.first) + (next - l.start) as f64 * ln_r
                - sigma * next as f64 * ln_q;
            Some(ln_next.exp() / (1.0 - ln_ratio.exp()))
        }
        // harmonic: sum_{n > N} n^-sigma <= N^{1 - sigma} / (sigma - 1)
        None => {
            if sigma <= 1.0 {
                return None;
            }
            let n = last.max(1) as f64;
            Some(n.powf(1.0 - sigma) / (sigma - 1.0))
        }
    }
}

/// Exact truncated series at an integer point together with the exact
/// geometric tail; for lattice families `value + tail` is the closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPartial {
    pub value: BigRational,
    pub tail: Option<BigRational>,
}

pub fn dirichlet_partial_exact(desc: &FractalStringDesc, s: i64, n_terms: usize) -> Result<ExactPartial> {
    let mut value = BigRational::zero();
    let mut last = desc.first_index().saturating_sub(1);
    for term in desc.terms().take(n_terms) {
        let mult = BigRational::from_integer(BigInt::from(term.multiplicity));
        value += mult * pow_rational(&term.length, s);
        last = term.index;
    }
    let tail = match desc.lattice() {
        _ if desc.is_degenerate() => Some(BigRational::zero()),
        None => None,
        Some(l) => {
            // sum_{n > last} first r^{n - start} q^{-n s}, a geometric series
            let ratio = BigRational::from_integer(BigInt::from(l.r.clone())) * rational_pow(&l.q, -s);
            if ratio >= BigRational::one() {
                return Err(Error::domain(format!("series diverges at s = {s}")));
            }
            let next = last + 1;
            let first_term = BigRational::from_integer(BigInt::from(l.first.clone()))
                * rational_pow(&l.r, (next - l.start) as i64)
                * rational_pow(&l.q, -(next as i64) * s);
            Some(first_term / (BigRational::one() - ratio))
        }
    };
    Ok(ExactPartial { value, tail })
}

fn pow_rational(x: &BigRational, e: i64) -> BigRational {
    let base = if e >= 0 { x.clone() } else { x.recip() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

/// Numeric residue: `(s - omega) zeta(s)` averaged over `omega ± h` and
/// `omega ± i h`. The four-point average cancels the first- and second-order
/// terms of the Laurent expansion.
pub fn residue_numeric(z: &ZetaClosedForm, omega: Complex64, h: f64) -> Result<Complex64> {
    if h <= 0.0 {
        return Err(Error::arg("step h must be positive"));
    }
    let offsets = [
        Complex64::new(h, 0.0),
        Complex64::new(-h, 0.0),
        Complex64::new(0.0, h),
        Complex64::new(0.0, -h),
    ];
    let mut acc = Complex64::zero();
    for d in offsets {
        acc += d * z.eval(omega + d)?;
    }
    Ok(acc / 4.0)
}
