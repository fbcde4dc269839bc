use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::desc::{make_cantor_2, make_cantor_p, Family, FractalStringDesc};
use crate::error::{Error, Result};
use crate::exactnum::{PAdicBall, Prime};

/// Upper bound on the number of balls a single unfold may materialize.
pub const MAX_BALLS: u64 = 1 << 22;

/// Ball-level picture of the first `generations` steps of a construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerationUnfold {
    pub generations: u32,
    /// `kept[n - 1]` holds the balls removed at generation `n`.
    pub kept: Vec<Vec<PAdicBall>>,
    /// Balls still to be subdivided after the last generation.
    pub residual: Vec<PAdicBall>,
}

impl GenerationUnfold {
    pub fn kept_counts(&self) -> Vec<usize> {
        self.kept.iter().map(Vec::len).collect()
    }

    pub fn kept_measure(&self) -> BigRational {
        self.kept.iter().flatten().map(PAdicBall::measure).sum()
    }

    pub fn residual_measure(&self) -> BigRational {
        self.residual.iter().map(PAdicBall::measure).sum()
    }

    pub fn all_kept(&self) -> Vec<PAdicBall> {
        self.kept.iter().flatten().cloned().collect()
    }
}

fn require_unfoldable(desc: &FractalStringDesc) -> Result<Prime> {
    match desc.family() {
        Family::Rational | Family::CantorP | Family::Cantor2 => {
            Ok(desc.prime().expect("p-adic family carries a prime"))
        }
        f => Err(Error::Unsupported(format!(
            "family {f} has no ball-level unfolding (only rational, cantor-p, cantor-2)"
        ))),
    }
}

/// Number of balls `unfold(desc, g)` would allocate.
pub fn unfold_ball_count(desc: &FractalStringDesc, g: u32) -> BigUint {
    let q = BigUint::from(desc.blocks_per_generation());
    let r = BigUint::from(desc.recursion_set().len() as u64);
    let kept_per_residual = &q - &r;
    let mut residual = BigUint::from(1u32);
    let mut total = BigUint::zero();
    for _ in 0..g {
        total += &residual * &kept_per_residual;
        residual *= &r;
    }
    total + residual
}

fn check_budget(desc: &FractalStringDesc, g: u32) -> Result<()> {
    let limit = BigUint::from(MAX_BALLS);
    if unfold_ball_count(desc, g) <= limit {
        return Ok(());
    }
    let advisory = (0..g).rev().find(|&h| unfold_ball_count(desc, h) <= limit).unwrap_or(0);
    Err(Error::Resource {
        what: format!(
            "unfolding {desc} to depth {g} needs {} balls (limit {MAX_BALLS})",
            unfold_ball_count(desc, g)
        ),
        advisory,
    })
}

/// Run the construction for `g` generations: every residual ball is split
/// into its `p^m` digit-block children; children whose block lies in the
/// recursion set stay residual, the others become lengths of the string.
pub fn unfold(desc: &FractalStringDesc, g: u32) -> Result<GenerationUnfold> {
    let p = require_unfoldable(desc)?;
    unfold_from(desc, PAdicBall::unit(p), g)
}

/// [`unfold`] started from `root` instead of `Z_p`.
pub fn unfold_from(desc: &FractalStringDesc, root: PAdicBall, g: u32) -> Result<GenerationUnfold> {
    let p = require_unfoldable(desc)?;
    if g == 0 {
        return Err(Error::arg("unfold needs at least one generation"));
    }
    if root.p != p {
        return Err(Error::arg(format!("root ball {root} is not in Z_{p}")));
    }
    check_budget(desc, g)?;

    let m = desc.block();
    let blocks = desc.blocks_per_generation();
    let recursion = desc.recursion_set();
    let mut residual = vec![root];
    let mut kept = Vec::with_capacity(g as usize);

    for _ in 0..g {
        let mut next_kept = Vec::new();
        let mut next_residual = Vec::with_capacity(residual.len() * recursion.len());
        for ball in &residual {
            let step = p.pow(ball.scale);
            let scale = ball.scale + m;
            let mut rec = recursion.iter().peekable();
            for a in 0..blocks {
                let child = PAdicBall {
                    p,
                    scale,
                    center: &ball.center + &step * BigUint::from(a),
                };
                if rec.peek() == Some(&&a) {
                    rec.next();
                    next_residual.push(child);
                } else {
                    next_kept.push(child);
                }
            }
        }
        kept.push(next_kept);
        residual = next_residual;
    }
    Ok(GenerationUnfold { generations: g, kept, residual })
}

fn sorted(mut v: Vec<PAdicBall>) -> Vec<PAdicBall> {
    v.sort_by(|a, b| (a.scale, &a.center).cmp(&(b.scale, &b.center)));
    v
}

/// Centers-only unfolding with machine-word centers, used when `p^(m g)`
/// fits in a `u64`. Returns the kept centers per generation and the
/// residual centers; the scale of generation `n` is `root_scale + n m`.
struct WordUnfold {
    kept: Vec<Vec<u64>>,
    residual: Vec<u64>,
}

struct WordShape {
    p: u64,
    m: u32,
    blocks: u64,
    in_set: Vec<bool>,
}

impl WordShape {
    fn of(desc: &FractalStringDesc, deepest_scale: u32) -> Option<Self> {
        let p = desc.prime()?.get();
        p.checked_pow(deepest_scale)?;
        let blocks = desc.blocks_per_generation();
        let mut in_set = vec![false; blocks as usize];
        for &a in desc.recursion_set() {
            in_set[a as usize] = true;
        }
        Some(WordShape { p, m: desc.block(), blocks, in_set })
    }

    fn unfold(&self, root: u64, root_scale: u32, g: u32) -> WordUnfold {
        let mut residual = vec![root];
        let mut kept = Vec::with_capacity(g as usize);
        for n in 0..g {
            let step = self.p.pow(root_scale + n * self.m);
            let mut next_kept = Vec::new();
            let mut next_residual = Vec::new();
            for &c in &residual {
                for a in 0..self.blocks {
                    let child = c + step * a;
                    if self.in_set[a as usize] {
                        next_residual.push(child);
                    } else {
                        next_kept.push(child);
                    }
                }
            }
            kept.push(next_kept);
            residual = next_residual;
        }
        WordUnfold { kept, residual }
    }
}

fn sorted_words(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

fn selfsimilar_words(desc: &FractalStringDesc, w: &WordShape, g: u32) -> bool {
    let shallow = w.unfold(0, 0, g - 1);
    let shift = w.p.pow(w.m);
    desc.recursion_set().iter().all(|&a| {
        let sub = w.unfold(a, w.m, g - 1);
        let image = |v: &[u64]| sorted_words(v.iter().map(|c| a + shift * c).collect());
        sub.kept.iter().zip(&shallow.kept).all(|(deep, flat)| sorted_words(deep.clone()) == image(flat))
            && sorted_words(sub.residual.clone()) == image(&shallow.residual)
    })
}

/// Verify the fixed-point identity of the depth-`g` construction:
///
/// `string_g = gen-1 kept balls  ∪  ⋃_{a ∈ S} (a + p^m · string_{g-1})`
///
/// for the kept balls of every generation and for the residual balls. The
/// part of `string_g` below each ball `a + p^m Z_p` is unfolded separately
/// and compared, as a sorted multiset, with the image of `string_{g-1}`, so
/// memory stays at the size of one subtree.
pub fn selfsimilar_check(desc: &FractalStringDesc, g: u32) -> Result<bool> {
    let p = require_unfoldable(desc)?;
    if g == 0 {
        return Err(Error::arg("self-similarity needs at least one generation"));
    }
    let m = desc.block();
    if g > 1 {
        check_budget(desc, g - 1)?;
        if let Some(w) = WordShape::of(desc, g * m) {
            return Ok(selfsimilar_words(desc, &w, g));
        }
    }
    let top = unfold(desc, 1)?;
    let shallow = if g > 1 { Some(unfold(desc, g - 1)?) } else { None };

    for (root, &a) in top.residual.iter().zip(desc.recursion_set()) {
        let offset = BigUint::from(a);
        let image = |balls: &[PAdicBall]| -> Vec<PAdicBall> {
            sorted(balls.iter().map(|b| b.similarity_image(&offset, m)).collect())
        };
        let Some(shallow) = &shallow else {
            if *root != PAdicBall::unit(p).similarity_image(&offset, m) {
                return Ok(false);
            }
            continue;
        };
        let sub = unfold_from(desc, root.clone(), g - 1)?;
        for (deep, flat) in sub.kept.iter().zip(&shallow.kept) {
            if sorted(deep.clone()) != image(flat) {
                return Ok(false);
            }
        }
        if sorted(sub.residual) != image(&shallow.residual) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-generation counts and exact measures of the depth-`g` construction,
/// accumulated one first-generation subtree at a time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnfoldCounts {
    pub kept_counts: Vec<u64>,
    pub residual_count: u64,
    #[serde(serialize_with = "ser_rational")]
    pub kept_measure: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub residual_measure: BigRational,
}

pub fn unfold_counts(desc: &FractalStringDesc, g: u32) -> Result<UnfoldCounts> {
    require_unfoldable(desc)?;
    if g == 0 {
        return Err(Error::arg("unfold needs at least one generation"));
    }
    let top = unfold(desc, 1)?;
    let mut kept_counts = vec![top.kept[0].len() as u64];
    let mut kept_measure = top.kept_measure();
    if g == 1 {
        return Ok(UnfoldCounts {
            kept_counts,
            residual_count: top.residual.len() as u64,
            kept_measure,
            residual_measure: top.residual_measure(),
        });
    }
    kept_counts.resize(g as usize, 0);
    check_budget(desc, g - 1)?;
    if let Some(w) = WordShape::of(desc, g * desc.block()) {
        let m = desc.block();
        let mut residual_count = 0;
        for &a in desc.recursion_set() {
            let sub = w.unfold(a, m, g - 1);
            for (n, centers) in sub.kept.iter().enumerate() {
                kept_counts[n + 1] += centers.len() as u64;
            }
            residual_count += sub.residual.len() as u64;
        }
        let measure = |n: u32| crate::exactnum::rational_pow(&BigUint::from(w.p), -i64::from(n * m));
        for (n, &c) in kept_counts.iter().enumerate().skip(1) {
            kept_measure += measure(n as u32 + 1) * BigRational::from_integer(c.into());
        }
        let residual_measure = measure(g) * BigRational::from_integer(residual_count.into());
        return Ok(UnfoldCounts { kept_counts, residual_count, kept_measure, residual_measure });
    }
    let mut residual_count = 0;
    let mut residual_measure = BigRational::zero();
    for root in top.residual {
        let sub = unfold_from(desc, root, g - 1)?;
        for (n, balls) in sub.kept.iter().enumerate() {
            kept_counts[n + 1] += balls.len() as u64;
        }
        kept_measure += sub.kept_measure();
        residual_count += sub.residual.len() as u64;
        residual_measure += sub.residual_measure();
    }
    Ok(UnfoldCounts { kept_counts, residual_count, kept_measure, residual_measure })
}

/// One factor of the truncated adelic Cantor string.
#[derive(Debug, Clone, Serialize)]
pub struct AdelicComponent {
    pub p: Prime,
    pub unfold: GenerationUnfold,
    pub self_similar: bool,
}

/// The adelic Cantor string restricted to finitely many primes.
#[derive(Debug, Clone, Serialize)]
pub struct AdelicApprox {
    pub components: Vec<AdelicComponent>,
    #[serde(serialize_with = "ser_rational")]
    pub residual_product: BigRational,
}

fn ser_rational<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::exactnum::fmt_rational(x))
}

impl AdelicApprox {
    pub fn all_self_similar(&self) -> bool {
        self.components.iter().all(|c| c.self_similar)
    }

    pub fn kept_counts_first_generation(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.unfold.kept[0].len()).collect()
    }
}

/// Per-prime unfoldings of `CS_p` for each listed prime (`CS_2` for `p = 2`),
/// their self-similarity at depth `g`, and the product of residual measures.
pub fn adelic_approx(primes: &[Prime], g: u32) -> Result<AdelicApprox> {
    if primes.is_empty() {
        return Err(Error::arg("need at least one prime"));
    }
    let mut components = Vec::with_capacity(primes.len());
    let mut residual_product = BigRational::from_integer(1.into());
    for &p in primes {
        let desc = if p.is_odd() { make_cantor_p(p)? } else { make_cantor_2() };
        let unfold = unfold(&desc, g)?;
        residual_product *= unfold.residual_measure();
        let self_similar = selfsimilar_check(&desc, g)?;
        components.push(AdelicComponent { p, unfold, self_similar });
    }
    Ok(AdelicApprox { components, residual_product })
}

/// Largest depth `g` for which `unfold` stays within budget, capped at `cap`.
pub fn max_feasible_depth(desc: &FractalStringDesc, cap: u32) -> u32 {
    let limit = BigUint::from(MAX_BALLS);
    (1..=cap)
        .take_while(|&g| unfold_ball_count(desc, g) <= limit)
        .last()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::pairwise_disjoint;
    use crate::strings::{make_base_p_real, make_rational_dim, KeptSet};
    use std::str::FromStr;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn q(s: &str) -> BigRational {
        BigRational::from_str(s).unwrap()
    }

    fn names(balls: &[PAdicBall]) -> Vec<String> {
        balls.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn cantor_3_two_generations() {
        let u = unfold(&make_cantor_p(p(3)).unwrap(), 2).unwrap();
        assert_eq!(u.kept_counts(), vec![1, 2]);
        assert_eq!(u.residual_measure(), q("4/9"));
        assert_eq!(u.kept_measure() + u.residual_measure(), q("1"));
    }

    #[test]
    fn rational_2_2_1_first_generation() {
        let d = make_rational_dim(p(2), 2, 1, KeptSet::Default).unwrap();
        let u = unfold(&d, 1).unwrap();
        assert_eq!(names(&u.kept[0]), vec!["2+2^2Z_2", "3+2^2Z_2"]);
    }

    #[test]
    fn cantor_2_balls() {
        let u = unfold(&make_cantor_2(), 3).unwrap();
        assert_eq!(names(&u.all_kept()), vec!["1+2Z_2", "2+2^2Z_2", "4+2^3Z_2"]);
    }

    #[test]
    fn cantor_5_first_generation() {
        let u = unfold(&make_cantor_p(p(5)).unwrap(), 1).unwrap();
        assert_eq!(names(&u.kept[0]), vec!["1+5Z_5", "3+5Z_5"]);
    }

    #[test]
    fn balls_are_disjoint() {
        let u = unfold(&make_cantor_p(p(5)).unwrap(), 3).unwrap();
        let mut all = u.all_kept();
        all.extend(u.residual.iter().cloned());
        assert!(pairwise_disjoint(&all));
    }

    #[test]
    fn selfsimilar_examples() {
        assert!(selfsimilar_check(&make_cantor_p(p(3)).unwrap(), 3).unwrap());
        let l = make_rational_dim(p(2), 2, 1, KeptSet::Default).unwrap();
        assert!(selfsimilar_check(&l, 3).unwrap());
        let empty = make_rational_dim(p(2), 2, 2, KeptSet::Default).unwrap();
        assert!(selfsimilar_check(&empty, 2).unwrap());
    }

    #[test]
    fn archimedean_rejected() {
        let real = make_base_p_real(p(3)).unwrap();
        assert!(matches!(unfold(&real, 1), Err(Error::Unsupported(_))));
        assert!(matches!(selfsimilar_check(&real, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn resource_limit() {
        let d = make_rational_dim(p(13), 3, 2, KeptSet::Default).unwrap();
        match unfold(&d, 4) {
            Err(Error::Resource { advisory, .. }) => assert_eq!(advisory, 2),
            other => panic!("expected resource error, got {other:?}"),
        }
        assert_eq!(max_feasible_depth(&d, 4), 2);
    }

    #[test]
    fn adelic_examples() {
        let a = adelic_approx(&[p(3), p(5)], 2).unwrap();
        assert_eq!(a.residual_product, q("4/25"));
        assert!(a.all_self_similar());
        let single = adelic_approx(&[p(3)], 2).unwrap();
        assert_eq!(single.components[0].unfold, unfold(&make_cantor_p(p(3)).unwrap(), 2).unwrap());
        let three = adelic_approx(&[p(3), p(5), p(7)], 1).unwrap();
        assert_eq!(three.kept_counts_first_generation(), vec![1, 2, 3]);
    }
}
