//! Points of the geometric realization of a finite lattice.
//!
//! A point is an admissible function `f: L -> [0, 1]`: every level set
//! `f_s = {x : f(x) >= s}` with `s` in `(0, 1]` is a principal ideal. The
//! same point is a convex combination of ideal indicators `phi_a` over a
//! chain. Both forms are exact; conversion between them is lossless.
//!
//! Level maps `h_s(f)` (the join of `f_s`) are constant on half-open
//! intervals `(v_{i+1}, v_i]` between consecutive distinct values of `f`.
//! Meets and joins of points are computed level by level through these maps.

use num_traits::Signed;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{ElementRef, FiniteLattice};
use crate::rational::{self, one, zero, Rational};

/// An admissible function on a lattice, with one exact value per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationPoint {
    lattice: u64,
    values: Vec<Rational>,
}

impl RealizationPoint {
    /// Validates `values` (indexed like the lattice elements) and wraps them.
    pub fn new(lattice: &FiniteLattice, values: Vec<Rational>) -> Result<Self> {
        to_barycentric(lattice, &values)?;
        Ok(RealizationPoint {
            lattice: lattice.fingerprint(),
            values,
        })
    }

    fn new_unchecked(lattice: &FiniteLattice, values: Vec<Rational>) -> Self {
        debug_assert!(is_admissible(lattice, &values));
        RealizationPoint {
            lattice: lattice.fingerprint(),
            values,
        }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, x: ElementRef) -> &Rational {
        &self.values[x.index()]
    }

    pub fn lattice_fingerprint(&self) -> u64 {
        self.lattice
    }

    pub fn belongs_to(&self, lattice: &FiniteLattice) -> bool {
        self.lattice == lattice.fingerprint() && self.values.len() == lattice.len()
    }

    /// The barycentric form of this point.
    pub fn barycentric(&self, lattice: &FiniteLattice) -> BarycentricForm {
        let profile = LevelProfile::of(lattice, self);
        profile.to_barycentric()
    }

    /// Pointwise order: `f <= g` iff `f(x) <= g(x)` for every `x`.
    pub fn leq(&self, other: &RealizationPoint) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }
}

/// The vertex `phi_a`: the indicator of the principal ideal `(a]`.
pub fn phi(lattice: &FiniteLattice, a: ElementRef) -> RealizationPoint {
    let values = lattice
        .elements()
        .map(|x| if lattice.leq(x, a) { one() } else { zero() })
        .collect();
    RealizationPoint::new_unchecked(lattice, values)
}

/// A convex combination `sum u_g phi_g` over a chain `g_1 < ... < g_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarycentricForm {
    chain: Vec<ElementRef>,
    weights: Vec<Rational>,
}

impl BarycentricForm {
    pub fn new(lattice: &FiniteLattice, chain: Vec<ElementRef>, weights: Vec<Rational>) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::InvalidPoint("empty carrier chain".into()));
        }
        if chain.len() != weights.len() {
            return Err(Error::InvalidPoint(format!(
                "{} chain elements but {} weights",
                chain.len(),
                weights.len()
            )));
        }
        if let Some(x) = chain.iter().find(|x| x.index() >= lattice.len()) {
            return Err(Error::InvalidPoint(format!("element {x} out of range")));
        }
        if let Some(w) = chain.windows(2).find(|w| !lattice.lt(w[0], w[1])) {
            return Err(Error::InvalidPoint(format!(
                "`{}` < `{}` does not hold, carrier is not an increasing chain",
                lattice.label(w[0]),
                lattice.label(w[1])
            )));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::InvalidPoint(format!(
                "weight {} is not positive",
                rational::format(w)
            )));
        }
        let total: Rational = weights.iter().sum();
        if total != one() {
            return Err(Error::InvalidPoint(format!(
                "weights sum to {}, not 1",
                rational::format(&total)
            )));
        }
        Ok(BarycentricForm { chain, weights })
    }

    pub fn chain(&self) -> &[ElementRef] {
        &self.chain
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }
}

/// `f(x) = sum of u_g over chain elements g >= x`.
pub fn to_function(lattice: &FiniteLattice, form: &BarycentricForm) -> RealizationPoint {
    let values = lattice
        .elements()
        .map(|x| {
            form.chain
                .iter()
                .zip(&form.weights)
                .filter(|(&g, _)| lattice.leq(x, g))
                .map(|(_, u)| u)
                .sum()
        })
        .collect();
    RealizationPoint::new_unchecked(lattice, values)
}

/// Converts function values (indexed like the lattice) to barycentric form,
/// checking admissibility at each distinct positive value.
pub fn to_barycentric(lattice: &FiniteLattice, values: &[Rational]) -> Result<BarycentricForm> {
    let steps = level_steps(lattice, values)?;
    Ok(LevelProfile { steps }.to_barycentric())
}

fn check_range(lattice: &FiniteLattice, values: &[Rational]) -> Result<()> {
    if values.len() != lattice.len() {
        return Err(Error::InvalidPoint(format!(
            "{} values for a lattice with {} elements",
            values.len(),
            lattice.len()
        )));
    }
    if let Some(v) = values.iter().find(|v| v.is_negative() || **v > one()) {
        return Err(Error::InvalidPoint(format!(
            "value {} outside [0, 1]",
            rational::format(v)
        )));
    }
    Ok(())
}

/// Distinct positive values, descending.
fn distinct_levels(values: &[Rational]) -> Vec<Rational> {
    let mut levels: Vec<Rational> = values.iter().filter(|v| v.is_positive()).cloned().collect();
    levels.sort_unstable_by(|a, b| b.cmp(a));
    levels.dedup();
    levels
}

/// Level-set route: at every distinct value `v`, `f_v` must be exactly the
/// ideal below its own join.
fn level_steps(lattice: &FiniteLattice, values: &[Rational]) -> Result<Vec<(Rational, ElementRef)>> {
    check_range(lattice, values)?;
    let levels = distinct_levels(values);
    if levels.first() != Some(&one()) {
        // f_1 is empty
        return Err(Error::NotAdmissible("1".into()));
    }
    let mut steps = Vec::with_capacity(levels.len());
    for level in levels {
        let members = |x: ElementRef| values[x.index()] >= level;
        let generator = lattice.join_all(lattice.elements().filter(|&x| members(x)));
        let principal = lattice.elements().all(|x| members(x) == lattice.leq(x, generator));
        if !principal {
            return Err(Error::NotAdmissible(rational::format(&level)));
        }
        steps.push((level, generator));
    }
    Ok(steps)
}

/// Admissibility via level sets.
pub fn is_admissible(lattice: &FiniteLattice, values: &[Rational]) -> bool {
    level_steps(lattice, values).is_ok()
}

/// Admissibility via generators: the joins `e_i` of the exact-value classes
/// `{x : f(x) = v_i}` must form a strictly increasing chain from which `f`
/// is recovered as `f(x) = max { v_i : x <= e_i }`.
pub fn is_admissible_by_generators(lattice: &FiniteLattice, values: &[Rational]) -> bool {
    if check_range(lattice, values).is_err() {
        return false;
    }
    let levels = distinct_levels(values);
    if levels.first() != Some(&one()) {
        return false;
    }
    let generators: Vec<ElementRef> = levels
        .iter()
        .map(|v| lattice.join_all(lattice.elements().filter(|x| &values[x.index()] == v)))
        .collect();
    if generators.windows(2).any(|w| !lattice.lt(w[0], w[1])) {
        return false;
    }
    lattice.elements().all(|x| {
        let rebuilt = levels
            .iter()
            .zip(&generators)
            .find(|(_, &g)| lattice.leq(x, g))
            .map(|(v, _)| v.clone())
            .unwrap_or_else(zero);
        rebuilt == values[x.index()]
    })
}

/// The step function `s -> h_s(f)`.
///
/// Steps pair breakpoints `1 = v_1 > ... > v_k > 0` with generators
/// `g_1 < ... < g_k`; `h_s = g_i` for `s` in `(v_{i+1}, v_i]`, `v_{k+1} = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelProfile {
    steps: Vec<(Rational, ElementRef)>,
}

impl LevelProfile {
    pub fn of(lattice: &FiniteLattice, point: &RealizationPoint) -> Self {
        let steps = level_steps(lattice, &point.values).expect("realization points are admissible");
        LevelProfile { steps }
    }

    pub fn steps(&self) -> &[(Rational, ElementRef)] {
        &self.steps
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = &Rational> {
        self.steps.iter().map(|(v, _)| v)
    }

    /// `h_s`, or `None` when `s` lies outside `(0, 1]`.
    pub fn at(&self, s: &Rational) -> Option<ElementRef> {
        if !s.is_positive() || *s > one() {
            return None;
        }
        self.steps.iter().rev().find(|(v, _)| v >= s).map(|&(_, g)| g)
    }

    fn to_barycentric(&self) -> BarycentricForm {
        let chain = self.steps.iter().map(|&(_, g)| g).collect();
        let weights = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, (v, _))| match self.steps.get(i + 1) {
                Some((next, _)) => v - next,
                None => v.clone(),
            })
            .collect();
        BarycentricForm { chain, weights }
    }
}

/// `h_s(f)`, the join of the level set `f_s`.
pub fn level_generator(lattice: &FiniteLattice, point: &RealizationPoint, s: &Rational) -> Result<ElementRef> {
    check_same(lattice, point)?;
    LevelProfile::of(lattice, point)
        .at(s)
        .ok_or_else(|| Error::InvalidParams(format!("level {} outside (0, 1]", rational::format(s))))
}

fn check_same(lattice: &FiniteLattice, point: &RealizationPoint) -> Result<()> {
    if point.belongs_to(lattice) {
        Ok(())
    } else {
        Err(Error::LatticeMismatch)
    }
}

/// Union of the breakpoints of both profiles, descending.
pub fn merged_breakpoints(a: &LevelProfile, b: &LevelProfile) -> Vec<Rational> {
    let mut merged: Vec<Rational> = a.breakpoints().chain(b.breakpoints()).cloned().collect();
    merged.sort_unstable_by(|x, y| y.cmp(x));
    merged.dedup();
    merged
}

/// Combines two points level by level: on each merged interval the level
/// generator of the result is `op(h_s(f), h_s(g))`.
fn combine_by_profile(
    lattice: &FiniteLattice,
    f: &RealizationPoint,
    g: &RealizationPoint,
    op: impl Fn(ElementRef, ElementRef) -> ElementRef,
) -> Result<RealizationPoint> {
    check_same(lattice, f)?;
    check_same(lattice, g)?;
    let pf = LevelProfile::of(lattice, f);
    let pg = LevelProfile::of(lattice, g);
    let steps: Vec<(Rational, ElementRef)> = merged_breakpoints(&pf, &pg)
        .into_iter()
        .map(|w| {
            let c = op(pf.at(&w).expect("in range"), pg.at(&w).expect("in range"));
            (w, c)
        })
        .collect();
    let values = lattice
        .elements()
        .map(|x| {
            steps
                .iter()
                .find(|(_, c)| lattice.leq(x, *c))
                .map(|(w, _)| w.clone())
                .unwrap_or_else(zero)
        })
        .collect();
    Ok(RealizationPoint::new_unchecked(lattice, values))
}

/// Meet as the pointwise minimum.
pub fn meet_points(lattice: &FiniteLattice, f: &RealizationPoint, g: &RealizationPoint) -> Result<RealizationPoint> {
    check_same(lattice, f)?;
    check_same(lattice, g)?;
    let values = f.values.iter().zip(&g.values).map(|(a, b)| a.min(b).clone()).collect();
    Ok(RealizationPoint::new_unchecked(lattice, values))
}

/// Meet through level profiles; agrees with [`meet_points`].
pub fn meet_points_by_profile(
    lattice: &FiniteLattice,
    f: &RealizationPoint,
    g: &RealizationPoint,
) -> Result<RealizationPoint> {
    combine_by_profile(lattice, f, g, |x, y| lattice.meet(x, y))
}

/// Join through level profiles.
pub fn join_points(lattice: &FiniteLattice, f: &RealizationPoint, g: &RealizationPoint) -> Result<RealizationPoint> {
    combine_by_profile(lattice, f, g, |x, y| lattice.join(x, y))
}

/// `max_x |f(x) - g(x)|`.
pub fn sup_distance(f: &RealizationPoint, g: &RealizationPoint) -> Result<Rational> {
    if f.lattice != g.lattice || f.values.len() != g.values.len() {
        return Err(Error::LatticeMismatch);
    }
    Ok(f.values
        .iter()
        .zip(&g.values)
        .map(|(a, b)| (a - b).abs())
        .max()
        .unwrap_or_else(zero))
}

pub const DEFAULT_MAX_DENOMINATOR: u64 = 64;

/// Seeded sampler of realization points.
///
/// Each draw picks a uniform maximal chain, a uniform nonempty subchain, and
/// weights `k_i / D` with `D <= max_denominator` (raised to the subchain
/// length when that is larger).
pub struct PointSampler<'a> {
    lattice: &'a FiniteLattice,
    chains: Vec<Vec<ElementRef>>,
    max_denominator: u64,
    rng: ChaCha8Rng,
}

impl<'a> PointSampler<'a> {
    pub fn new(lattice: &'a FiniteLattice, seed: u64) -> Self {
        Self::with_max_denominator(lattice, seed, DEFAULT_MAX_DENOMINATOR)
    }

    pub fn with_max_denominator(lattice: &'a FiniteLattice, seed: u64, max_denominator: u64) -> Self {
        PointSampler {
            lattice,
            chains: lattice.maximal_chains(),
            max_denominator: max_denominator.max(1),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_barycentric(&mut self) -> BarycentricForm {
        let chain = &self.chains[self.rng.gen_range(0..self.chains.len())];
        let k = chain.len();
        let subchain: Vec<ElementRef> = if k < 64 {
            let mask: u64 = self.rng.gen_range(1..(1u64 << k));
            (0..k).filter(|i| mask >> i & 1 == 1).map(|i| chain[i]).collect()
        } else {
            loop {
                let picked: Vec<ElementRef> = chain.iter().copied().filter(|_| self.rng.gen_bool(0.5)).collect();
                if !picked.is_empty() {
                    break picked;
                }
            }
        };
        let parts = subchain.len() as u64;
        let denom = self.rng.gen_range(parts..=self.max_denominator.max(parts));
        // composition of `denom` into `parts` positive integers
        let mut cuts: Vec<u64> = sample(&mut self.rng, (denom - 1) as usize, (parts - 1) as usize)
            .into_iter()
            .map(|c| c as u64 + 1)
            .collect();
        cuts.sort_unstable();
        let mut weights = Vec::with_capacity(subchain.len());
        let mut prev = 0u64;
        for cut in cuts.into_iter().chain(std::iter::once(denom)) {
            weights.push(rational::ratio((cut - prev) as i64, denom as i64));
            prev = cut;
        }
        BarycentricForm {
            chain: subchain,
            weights,
        }
    }

    pub fn next_point(&mut self) -> RealizationPoint {
        let form = self.next_barycentric();
        to_function(self.lattice, &form)
    }
}

/// One seeded sample.
pub fn sample_point(lattice: &FiniteLattice, seed: u64) -> RealizationPoint {
    PointSampler::new(lattice, seed).next_point()
}
