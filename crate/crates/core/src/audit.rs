//! Law audits for book lattices and their realizations.
//!
//! An audit runs the discrete checks on `M_{d,n}`, the sampled algebra
//! suites on its realization, and the ridge analysis on its order complex,
//! then compares every verdict with the value expected for `(d, n)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{order_complex, RidgeReport};
use crate::error::{Error, Result};
use crate::json::{to_pretty, BarycentricDoc};
use crate::lattice::{ElementRef, FiniteLattice, Law, SublatticeKind, SublatticeWitness, TripleWitness};
use crate::realization::{
    is_admissible, join_points, meet_points, meet_points_by_profile, merged_breakpoints, phi, sup_distance,
    to_barycentric, to_function, LevelProfile, PointSampler, RealizationPoint,
};

pub const DEFAULT_SAMPLES: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Skipped,
}

impl Verdict {
    fn from_holds(holds: bool) -> Self {
        if holds {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

/// A replayable counterexample, with elements and points given by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LawWitness {
    Triple {
        law: String,
        elements: [String; 3],
        lhs: String,
        rhs: String,
    },
    Sublattice {
        template: String,
        template_elements: Vec<String>,
        images: Vec<String>,
    },
    Ridge {
        ridge: Vec<String>,
        degree: usize,
    },
    PointTriple {
        law: String,
        points: Vec<BarycentricDoc>,
        lhs: BarycentricDoc,
        rhs: BarycentricDoc,
    },
    Points {
        check: String,
        points: Vec<BarycentricDoc>,
        detail: String,
    },
}

impl LawWitness {
    pub fn triple(lattice: &FiniteLattice, w: &TripleWitness) -> Self {
        let label = |x: ElementRef| lattice.label(x).to_owned();
        LawWitness::Triple {
            law: w.law.to_string(),
            elements: w.triple.map(label),
            lhs: label(w.lhs),
            rhs: label(w.rhs),
        }
    }

    pub fn sublattice(lattice: &FiniteLattice, w: &SublatticeWitness) -> Self {
        LawWitness::Sublattice {
            template: w.kind.to_string(),
            template_elements: w.kind.template_labels().iter().map(|s| s.to_string()).collect(),
            images: w.images.iter().map(|&x| lattice.label(x).to_owned()).collect(),
        }
    }

    pub fn ridge(vertices: &[String], r: &RidgeReport) -> Self {
        LawWitness::Ridge {
            ridge: r.ridge.iter().map(|&i| vertices[i].clone()).collect(),
            degree: r.degree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub verdict: Verdict,
    pub expected: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<LawWitness>,
}

impl CheckResult {
    fn new(name: &str, holds: bool, expected_holds: bool, witness: Option<LawWitness>) -> Self {
        CheckResult {
            name: name.to_owned(),
            verdict: Verdict::from_holds(holds),
            expected: Verdict::from_holds(expected_holds),
            witness,
        }
    }

    pub fn as_expected(&self) -> bool {
        self.verdict == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subject {
    pub lattice: String,
    pub d: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub ridge: Vec<String>,
    pub degree: usize,
    pub statement: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub subject: Subject,
    pub seed: u64,
    pub sample_count: usize,
    pub vertex_triples: usize,
    pub checks: Vec<CheckResult>,
    pub certificate: Option<Certificate>,
    pub all_expected: bool,
}

impl AuditReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        to_pretty(self)
    }
}

/// Runs every check on `M_{d,n}` with `samples` random triples per law.
pub fn audit_book(d: usize, n: usize, samples: usize, seed: u64) -> Result<AuditReport> {
    if samples == 0 {
        return Err(Error::InvalidParams("at least one sample is required".into()));
    }
    let lattice = FiniteLattice::book(d, n)?;
    let distributive_expected = n <= 2;
    let mut checks = Vec::new();

    // discrete lattice
    let modular = lattice.check_modular();
    let distributive = lattice.check_distributive();
    let n5 = lattice.find_forbidden_sublattice(SublatticeKind::N5);
    let m3 = lattice.find_forbidden_sublattice(SublatticeKind::M3);
    let triple = |w: &Option<TripleWitness>| w.as_ref().map(|w| LawWitness::triple(&lattice, w));
    let sub = |w: &Option<SublatticeWitness>| w.as_ref().map(|w| LawWitness::sublattice(&lattice, w));
    checks.push(CheckResult::new(
        "lattice.modular",
        modular.is_none(),
        true,
        triple(&modular),
    ));
    checks.push(CheckResult::new(
        "lattice.distributive",
        distributive.is_none(),
        distributive_expected,
        triple(&distributive),
    ));
    checks.push(CheckResult::new("lattice.n5_free", n5.is_none(), true, sub(&n5)));
    checks.push(CheckResult::new(
        "lattice.m3_free",
        m3.is_none(),
        distributive_expected,
        sub(&m3),
    ));
    checks.push(CheckResult::new(
        "lattice.dedekind_agreement",
        modular.is_none() == n5.is_none(),
        true,
        None,
    ));
    checks.push(CheckResult::new(
        "lattice.birkhoff_agreement",
        distributive.is_none() == (n5.is_none() && m3.is_none()),
        true,
        None,
    ));

    // realization
    let suite = RealizationSuite::run(&lattice, &book_triples(&lattice, samples, seed));
    checks.extend(suite.into_checks(distributive_expected));

    // order complex
    let complex = order_complex(&lattice);
    let shape_ok = complex.dimension() == d && complex.facets().len() == n;
    checks.push(CheckResult::new("complex.dimension_and_pages", shape_ok, true, None));
    let ridges = complex.nonmanifold_ridges()?;
    checks.push(CheckResult::new(
        "complex.manifold_ridges",
        ridges.is_empty(),
        n <= 2,
        ridges.first().map(|r| LawWitness::ridge(complex.vertices(), r)),
    ));

    let certificate = nonembeddability_certificate(d, n)?;
    let all_expected = checks.iter().all(CheckResult::as_expected);
    Ok(AuditReport {
        subject: Subject {
            lattice: format!("M_{{{d},{n}}}"),
            d,
            n,
        },
        seed,
        sample_count: samples,
        vertex_triples: lattice.len().pow(3),
        checks,
        certificate,
        all_expected,
    })
}

/// Evaluation order: the designated atom triple (when there are three
/// atoms), then every vertex triple, then `samples` random triples mixing
/// sampled interior points with vertices.
fn book_triples(lattice: &FiniteLattice, samples: usize, seed: u64) -> Vec<[RealizationPoint; 3]> {
    let vertices: Vec<RealizationPoint> = lattice.elements().map(|a| phi(lattice, a)).collect();
    let mut triples = Vec::with_capacity(samples + vertices.len().pow(3) + 1);
    let atoms = lattice.atoms();
    if atoms.len() >= 3 {
        let p = |x: ElementRef| phi(lattice, x);
        triples.push([p(atoms[2]), p(atoms[0]), p(atoms[1])]);
    }
    for x in &vertices {
        for y in &vertices {
            for z in &vertices {
                triples.push([x.clone(), y.clone(), z.clone()]);
            }
        }
    }
    let mut sampler = PointSampler::new(lattice, seed);
    let mut mix = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let draw = |sampler: &mut PointSampler, mix: &mut ChaCha8Rng| {
        if mix.gen_ratio(1, 4) {
            vertices[mix.gen_range(0..vertices.len())].clone()
        } else {
            sampler.next_point()
        }
    };
    for _ in 0..samples {
        let f = draw(&mut sampler, &mut mix);
        let g = draw(&mut sampler, &mut mix);
        let h = draw(&mut sampler, &mut mix);
        triples.push([f, g, h]);
    }
    triples
}

/// First failure of each realization check over a list of triples.
#[derive(Debug, Default)]
pub struct RealizationSuite {
    pub round_trip: Option<LawWitness>,
    pub axioms: Option<LawWitness>,
    pub meet_routes: Option<LawWitness>,
    pub homomorphism: Option<LawWitness>,
    pub modular: Option<LawWitness>,
    pub distributive: Option<LawWitness>,
    pub nonexpansive: Option<LawWitness>,
    pub triples: usize,
}

impl RealizationSuite {
    pub fn run(lattice: &FiniteLattice, triples: &[[RealizationPoint; 3]]) -> Self {
        let mut suite = RealizationSuite {
            triples: triples.len(),
            ..Default::default()
        };
        for [f, g, h] in triples {
            let ops = Ops { lattice };
            let doc = |p: &RealizationPoint| BarycentricDoc::from_point(lattice, p);
            let fail = |check: &str, pts: &[&RealizationPoint], detail: &str| LawWitness::Points {
                check: check.to_owned(),
                points: pts.iter().map(|p| doc(p)).collect(),
                detail: detail.to_owned(),
            };

            if suite.round_trip.is_none() {
                if let Some(p) = [f, g, h].into_iter().find(|p| !ops.round_trips(p)) {
                    suite.round_trip = Some(fail("round_trip", &[p], "function/barycentric round trip differs"));
                }
            }
            if suite.axioms.is_none() {
                if let Some(detail) = ops.axiom_failure(f, g, h) {
                    suite.axioms = Some(fail("lattice_axioms", &[f, g, h], detail));
                }
            }
            if suite.meet_routes.is_none() && ops.meet(f, g) != ops.meet_by_profile(f, g) {
                suite.meet_routes = Some(fail(
                    "meet_routes_agree",
                    &[f, g],
                    "pointwise min differs from profile meet",
                ));
            }
            if suite.homomorphism.is_none() {
                if let Some(detail) = ops.homomorphism_failure(f, g) {
                    suite.homomorphism = Some(fail("homomorphism", &[f, g], &detail));
                }
            }
            if suite.modular.is_none() {
                // x <= h by construction
                let x = ops.meet(f, h);
                let lhs = ops.join(&x, &ops.meet(g, h));
                let rhs = ops.meet(&ops.join(&x, g), h);
                if lhs != rhs {
                    suite.modular = Some(LawWitness::PointTriple {
                        law: Law::Modular.to_string(),
                        points: vec![doc(&x), doc(g), doc(h)],
                        lhs: doc(&lhs),
                        rhs: doc(&rhs),
                    });
                }
            }
            if suite.distributive.is_none() {
                if let Some((lhs, rhs)) = ops.distributive_failure(f, g, h) {
                    suite.distributive = Some(LawWitness::PointTriple {
                        law: Law::Distributive.to_string(),
                        points: vec![doc(f), doc(g), doc(h)],
                        lhs: doc(&lhs),
                        rhs: doc(&rhs),
                    });
                }
            }
            if suite.nonexpansive.is_none() {
                if let Some(detail) = ops.expansion(f, g, h) {
                    suite.nonexpansive = Some(fail("nonexpansive", &[f, g, h], &detail));
                }
            }
        }
        suite
    }

    fn into_checks(self, distributive_expected: bool) -> Vec<CheckResult> {
        let c = |name: &str, w: Option<LawWitness>, expected: bool| CheckResult::new(name, w.is_none(), expected, w);
        vec![
            c("realization.round_trip", self.round_trip, true),
            c("realization.lattice_axioms", self.axioms, true),
            c("realization.meet_routes_agree", self.meet_routes, true),
            c("realization.homomorphism", self.homomorphism, true),
            c("realization.modular", self.modular, true),
            c("realization.distributive", self.distributive, distributive_expected),
            c("realization.nonexpansive", self.nonexpansive, true),
        ]
    }
}

/// Infallible wrappers for points known to share one lattice.
struct Ops<'a> {
    lattice: &'a FiniteLattice,
}

impl Ops<'_> {
    fn meet(&self, f: &RealizationPoint, g: &RealizationPoint) -> RealizationPoint {
        meet_points(self.lattice, f, g).expect("same lattice")
    }

    fn meet_by_profile(&self, f: &RealizationPoint, g: &RealizationPoint) -> RealizationPoint {
        meet_points_by_profile(self.lattice, f, g).expect("same lattice")
    }

    fn join(&self, f: &RealizationPoint, g: &RealizationPoint) -> RealizationPoint {
        join_points(self.lattice, f, g).expect("same lattice")
    }

    fn round_trips(&self, f: &RealizationPoint) -> bool {
        let form = match to_barycentric(self.lattice, f.values()) {
            Ok(form) => form,
            Err(_) => return false,
        };
        let back = to_function(self.lattice, &form);
        back == *f && back.barycentric(self.lattice) == form
    }

    fn axiom_failure(&self, f: &RealizationPoint, g: &RealizationPoint, h: &RealizationPoint) -> Option<&'static str> {
        if self.meet(f, g) != self.meet(g, f) {
            return Some("meet is not commutative");
        }
        if self.join(f, g) != self.join(g, f) {
            return Some("join is not commutative");
        }
        if self.meet(&self.meet(f, g), h) != self.meet(f, &self.meet(g, h)) {
            return Some("meet is not associative");
        }
        if self.join(&self.join(f, g), h) != self.join(f, &self.join(g, h)) {
            return Some("join is not associative");
        }
        if self.meet(f, f) != *f || self.join(f, f) != *f {
            return Some("idempotence fails");
        }
        if self.meet(f, &self.join(f, g)) != *f || self.join(f, &self.meet(f, g)) != *f {
            return Some("absorption fails");
        }
        if (self.meet(f, g) == *f) != f.leq(g) {
            return Some("meet disagrees with the pointwise order");
        }
        let j_fg = self.join(f, g);
        if !is_admissible(self.lattice, j_fg.values()) || !f.leq(&j_fg) || !g.leq(&j_fg) {
            return Some("join is not an admissible upper bound");
        }
        None
    }

    /// Checks `h_s(f ^ g) = h_s(f) ^ h_s(g)` and the dual at every merged
    /// breakpoint of `f` and `g`.
    fn homomorphism_failure(&self, f: &RealizationPoint, g: &RealizationPoint) -> Option<String> {
        let l = self.lattice;
        let (pf, pg) = (LevelProfile::of(l, f), LevelProfile::of(l, g));
        let pm = LevelProfile::of(l, &self.meet(f, g));
        let pj = LevelProfile::of(l, &self.join(f, g));
        for s in merged_breakpoints(&pf, &pg) {
            let (hf, hg) = (pf.at(&s).expect("in range"), pg.at(&s).expect("in range"));
            if pm.at(&s) != Some(l.meet(hf, hg)) {
                return Some(format!("meet level map differs at s = {s}"));
            }
            if pj.at(&s) != Some(l.join(hf, hg)) {
                return Some(format!("join level map differs at s = {s}"));
            }
        }
        None
    }

    fn distributive_failure(
        &self,
        x: &RealizationPoint,
        y: &RealizationPoint,
        z: &RealizationPoint,
    ) -> Option<(RealizationPoint, RealizationPoint)> {
        let lhs = self.meet(x, &self.join(y, z));
        let rhs = self.join(&self.meet(x, y), &self.meet(x, z));
        (lhs != rhs).then_some((lhs, rhs))
    }

    /// `d(f op g, f' op g) <= d(f, f')` for both operations, with `f' = h`.
    fn expansion(&self, f: &RealizationPoint, g: &RealizationPoint, f2: &RealizationPoint) -> Option<String> {
        let d = |a: &RealizationPoint, b: &RealizationPoint| sup_distance(a, b).expect("same lattice");
        let base = d(f, f2);
        let dm = d(&self.meet(f, g), &self.meet(f2, g));
        if dm > base {
            return Some(format!("meet moved by {dm} > {base}"));
        }
        let dj = d(&self.join(f, g), &self.join(f2, g));
        if dj > base {
            return Some(format!("join moved by {dj} > {base}"));
        }
        None
    }
}

/// The atom triple `(phi_a3, phi_a1, phi_a2)` with both sides of the
/// distributive law evaluated on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointTripleWitness {
    pub points: [RealizationPoint; 3],
    pub lhs: RealizationPoint,
    pub rhs: RealizationPoint,
}

pub fn distributive_witness_on_realization(d: usize, n: usize) -> Result<PointTripleWitness> {
    if n < 3 {
        return Err(Error::InvalidParams(format!(
            "a distributive failure needs at least three pages, got n = {n}"
        )));
    }
    let lattice = FiniteLattice::book(d, n)?;
    let atoms = lattice.atoms();
    let points = [atoms[2], atoms[0], atoms[1]].map(|a| phi(&lattice, a));
    let ops = Ops { lattice: &lattice };
    let [x, y, z] = &points;
    let lhs = ops.meet(x, &ops.join(y, z));
    let rhs = ops.join(&ops.meet(x, y), &ops.meet(x, z));
    Ok(PointTripleWitness { points, lhs, rhs })
}

/// The spine ridge of `Delta(M_{d,n})` when it lies in three or more pages.
pub fn nonembeddability_certificate(d: usize, n: usize) -> Result<Option<Certificate>> {
    let lattice = FiniteLattice::book(d, n)?;
    let complex = order_complex(&lattice);
    let ridges = complex.nonmanifold_ridges()?;
    Ok(ridges.first().map(|r| Certificate {
        ridge: r.ridge.iter().map(|&i| complex.vertices()[i].clone()).collect(),
        degree: r.degree,
        statement: format!(
            "the spine ridge lies in {} facets of the {d}-dimensional book-space with {n} pages; \
             the space does not embed in R^{d}, so it carries no distributive topological lattice structure",
            r.degree
        ),
    }))
}

/// Law verdicts for an arbitrary lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeCheck {
    pub elements: usize,
    pub modular: LawVerdict,
    pub distributive: LawVerdict,
    pub n5: LawVerdict,
    pub m3: LawVerdict,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawVerdict {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<LawWitness>,
}

impl LatticeCheck {
    pub fn all_hold(&self) -> bool {
        [&self.modular, &self.distributive, &self.n5, &self.m3]
            .iter()
            .all(|v| v.verdict == Verdict::Holds)
    }

    pub fn to_json(&self) -> String {
        to_pretty(self)
    }
}

/// Identity scans and forbidden-sublattice searches; `n5`/`m3` hold when no
/// copy is found. `consistent` records the Dedekind and Birkhoff agreements.
pub fn check_lattice(lattice: &FiniteLattice) -> LatticeCheck {
    let modular = lattice.check_modular();
    let distributive = lattice.check_distributive();
    let n5 = lattice.find_forbidden_sublattice(SublatticeKind::N5);
    let m3 = lattice.find_forbidden_sublattice(SublatticeKind::M3);
    let consistent = modular.is_none() == n5.is_none() && distributive.is_none() == (n5.is_none() && m3.is_none());
    let triple = |w: Option<TripleWitness>| LawVerdict {
        verdict: Verdict::from_holds(w.is_none()),
        witness: w.map(|w| LawWitness::triple(lattice, &w)),
    };
    let sub = |w: Option<SublatticeWitness>| LawVerdict {
        verdict: Verdict::from_holds(w.is_none()),
        witness: w.map(|w| LawWitness::sublattice(lattice, &w)),
    };
    LatticeCheck {
        elements: lattice.len(),
        modular: triple(modular),
        distributive: triple(distributive),
        n5: sub(n5),
        m3: sub(m3),
        consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distributive_witness_values() {
        for d in [2, 3, 5] {
            let l = FiniteLattice::book(d, 3).unwrap();
            let w = distributive_witness_on_realization(d, 3).unwrap();
            assert_eq!(w.lhs, phi(&l, l.element("a3").unwrap()));
            assert_eq!(w.rhs, phi(&l, l.bottom()));
            assert_ne!(w.lhs, w.rhs);
        }
        assert!(matches!(
            distributive_witness_on_realization(3, 2),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn certificates() {
        let c = nonembeddability_certificate(3, 5).unwrap().unwrap();
        assert_eq!(c.ridge, ["0", "b1", "1"]);
        assert_eq!(c.degree, 5);
        assert!(nonembeddability_certificate(2, 2).unwrap().is_none());
        assert!(nonembeddability_certificate(4, 1).unwrap().is_none());
    }

    #[test]
    fn small_audits() {
        let r = audit_book(3, 3, 50, 1).unwrap();
        assert!(r.all_expected, "{}", r.to_json());
        assert_eq!(r.check("realization.distributive").unwrap().verdict, Verdict::Fails);
        assert_eq!(r.check("realization.modular").unwrap().verdict, Verdict::Holds);

        let r = audit_book(2, 2, 50, 1).unwrap();
        assert!(r.all_expected);
        assert!(r.checks.iter().all(|c| c.verdict == Verdict::Holds));
        assert!(r.certificate.is_none());

        assert!(audit_book(1, 2, 10, 1).is_err());
        assert!(audit_book(2, 2, 0, 1).is_err());
    }

    #[test]
    fn check_lattice_reports() {
        let c = check_lattice(&SublatticeKind::N5.template());
        assert_eq!(c.modular.verdict, Verdict::Fails);
        assert_eq!(c.n5.verdict, Verdict::Fails);
        assert!(c.consistent);
        assert!(!c.all_hold());
        let c = check_lattice(&FiniteLattice::chain(2).unwrap());
        assert!(c.all_hold() && c.consistent);
    }
}
