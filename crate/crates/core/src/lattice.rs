//! Finite lattices stored as explicit order, meet and join tables.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::error::{Error, Result};

/// Position of an element inside a [`FiniteLattice`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementRef(usize);

impl ElementRef {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A finite lattice with precomputed tables.
///
/// Element identity is the label; the index order is the order in which the
/// labels were supplied and drives every deterministic scan in this crate.
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    order: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
    fingerprint: u64,
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.order == other.order
    }
}

impl Eq for FiniteLattice {}

impl FiniteLattice {
    /// Builds a lattice from labels and a generating relation (usually the
    /// Hasse diagram). The order is the reflexive-transitive closure of
    /// `covers`; meets and joins are found by exhaustive search.
    #[allow(clippy::needless_range_loop)]
    pub fn from_covers<S: AsRef<str>>(labels: &[S], covers: &[(S, S)]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyLattice);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            let label = label.as_ref();
            if index.insert(label.to_owned(), i).is_some() {
                return Err(Error::DuplicateLabel(label.to_owned()));
            }
        }
        let size = labels.len();
        let lookup = |label: &str| {
            index
                .get(label)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
        };

        let mut order = vec![vec![false; size]; size];
        for (i, row) in order.iter_mut().enumerate() {
            row[i] = true;
        }
        for (lower, upper) in covers {
            let (lower, upper) = (lookup(lower.as_ref())?, lookup(upper.as_ref())?);
            if lower == upper {
                return Err(Error::CyclicCovers);
            }
            order[lower][upper] = true;
        }
        // Warshall closure.
        for k in 0..size {
            for i in 0..size {
                if order[i][k] {
                    for j in 0..size {
                        if order[k][j] {
                            order[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..size {
            for j in (i + 1)..size {
                if order[i][j] && order[j][i] {
                    return Err(Error::CyclicCovers);
                }
            }
        }

        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_owned()).collect();
        let mut meet = vec![vec![0; size]; size];
        let mut join = vec![vec![0; size]; size];
        for x in 0..size {
            for y in x..size {
                let not_a_lattice = || Error::NotALattice(labels[x].clone(), labels[y].clone());
                let glb = greatest(&order, |z| order[z][x] && order[z][y]).ok_or_else(not_a_lattice)?;
                let lub = least(&order, |z| order[x][z] && order[y][z]).ok_or_else(not_a_lattice)?;
                meet[x][y] = glb;
                meet[y][x] = glb;
                join[x][y] = lub;
                join[y][x] = lub;
            }
        }
        let bottom = (0..size).fold(0, |acc, x| meet[acc][x]);
        let top = (0..size).fold(0, |acc, x| join[acc][x]);

        let mut hasher = DefaultHasher::new();
        labels.hash(&mut hasher);
        order.hash(&mut hasher);
        let fingerprint = hasher.finish();

        Ok(FiniteLattice {
            labels,
            index,
            order,
            meet,
            join,
            bottom,
            top,
            fingerprint,
        })
    }

    /// The `(d, n)`-book lattice: `0 < a_i < b_1 < ... < b_{d-2} < 1` for
    /// `i = 1..=n`. Elements are ordered `0, a_1..a_n, b_1..b_{d-2}, 1`.
    pub fn book(d: usize, n: usize) -> Result<Self> {
        if d < 2 || n < 1 {
            return Err(Error::InvalidParams(format!(
                "book lattice needs d >= 2 and n >= 1, got d = {d}, n = {n}"
            )));
        }
        let atoms: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
        let spine: Vec<String> = (1..=d - 2).map(|j| format!("b{j}")).collect();

        let mut labels = vec!["0".to_owned()];
        labels.extend(atoms.iter().cloned());
        labels.extend(spine.iter().cloned());
        labels.push("1".to_owned());

        let above_atoms = spine.first().cloned().unwrap_or_else(|| "1".to_owned());
        let mut covers = Vec::new();
        for atom in &atoms {
            covers.push(("0".to_owned(), atom.clone()));
        }
        for atom in &atoms {
            covers.push((atom.clone(), above_atoms.clone()));
        }
        for pair in spine.windows(2) {
            covers.push((pair[0].clone(), pair[1].clone()));
        }
        if let Some(last) = spine.last() {
            covers.push((last.clone(), "1".to_owned()));
        }
        Self::from_covers(&labels, &covers)
    }

    /// A chain with `k` elements labelled `0, c1, ..., c{k-2}, 1`.
    pub fn chain(k: usize) -> Result<Self> {
        let labels: Vec<String> = match k {
            0 => return Err(Error::InvalidParams("a chain needs at least one element".into())),
            1 => vec!["0".to_owned()],
            _ => std::iter::once("0".to_owned())
                .chain((1..k - 1).map(|i| format!("c{i}")))
                .chain(std::iter::once("1".to_owned()))
                .collect(),
        };
        let covers: Vec<(String, String)> = labels.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        Self::from_covers(&labels, &covers)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: ElementRef) -> &str {
        &self.labels[x.0]
    }

    pub fn element(&self, label: &str) -> Result<ElementRef> {
        self.index
            .get(label)
            .map(|&i| ElementRef(i))
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    pub fn element_at(&self, index: usize) -> Option<ElementRef> {
        (index < self.len()).then_some(ElementRef(index))
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = ElementRef> + ExactSizeIterator {
        (0..self.len()).map(ElementRef)
    }

    pub fn bottom(&self) -> ElementRef {
        ElementRef(self.bottom)
    }

    pub fn top(&self) -> ElementRef {
        ElementRef(self.top)
    }

    /// Identifies the lattice (labels and order) for cross-lattice checks.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn leq(&self, x: ElementRef, y: ElementRef) -> bool {
        self.order[x.0][y.0]
    }

    pub fn lt(&self, x: ElementRef, y: ElementRef) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: ElementRef, y: ElementRef) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn meet(&self, x: ElementRef, y: ElementRef) -> ElementRef {
        ElementRef(self.meet[x.0][y.0])
    }

    pub fn join(&self, x: ElementRef, y: ElementRef) -> ElementRef {
        ElementRef(self.join[x.0][y.0])
    }

    /// Join of a finite set; the bottom for the empty set.
    pub fn join_all<I: IntoIterator<Item = ElementRef>>(&self, items: I) -> ElementRef {
        items.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    /// Meet of a finite set; the top for the empty set.
    pub fn meet_all<I: IntoIterator<Item = ElementRef>>(&self, items: I) -> ElementRef {
        items.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// Cover pairs `(x, y)` with `x < y` and nothing strictly between, sorted
    /// by index.
    pub fn covers(&self) -> Vec<(ElementRef, ElementRef)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.lt(x, y) && !self.elements().any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn atoms(&self) -> Vec<ElementRef> {
        self.covers()
            .into_iter()
            .filter(|&(x, _)| x == self.bottom())
            .map(|(_, y)| y)
            .collect()
    }

    /// All maximal chains, each listed bottom to top. Chains are produced in
    /// lexicographic order of their index sequences.
    pub fn maximal_chains(&self) -> Vec<Vec<ElementRef>> {
        let covers = self.covers();
        let mut up: Vec<Vec<ElementRef>> = vec![Vec::new(); self.len()];
        for (x, y) in covers {
            up[x.0].push(y);
        }
        let mut chains = Vec::new();
        let mut stack = vec![self.bottom()];
        extend_chains(&up, self.top(), &mut stack, &mut chains);
        chains
    }

    /// Recognizes a lattice isomorphic to some book lattice, returning `(d, n)`.
    ///
    /// The atoms play the role of the `a_i` and the remaining non-bottom
    /// elements must form a chain above every atom.
    pub fn book_shape(&self) -> Option<(usize, usize)> {
        let atoms = self.atoms();
        let n = atoms.len();
        if n == 0 || self.len() < n + 2 {
            return None;
        }
        let d = self.len() - n;
        let rest: Vec<ElementRef> = self
            .elements()
            .filter(|&x| x != self.bottom() && !atoms.contains(&x))
            .collect();
        let forms_chain = rest.iter().all(|&x| rest.iter().all(|&y| self.comparable(x, y)));
        let above_atoms = rest.iter().all(|&x| atoms.iter().all(|&a| self.lt(a, x)));
        let atoms_antichain = atoms
            .iter()
            .all(|&x| atoms.iter().all(|&y| x == y || !self.comparable(x, y)));
        (d >= 2 && forms_chain && above_atoms && atoms_antichain).then_some((d, n))
    }

    /// Scans triples `(x, a, b)` with `x <= b` in lexicographic index order
    /// for a failure of `x v (a ^ b) = (x v a) ^ b`.
    pub fn check_modular(&self) -> Option<TripleWitness> {
        for x in self.elements() {
            for a in self.elements() {
                for b in self.elements() {
                    if !self.leq(x, b) {
                        continue;
                    }
                    let lhs = self.join(x, self.meet(a, b));
                    let rhs = self.meet(self.join(x, a), b);
                    if lhs != rhs {
                        return Some(TripleWitness {
                            law: Law::Modular,
                            triple: [x, a, b],
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        None
    }

    /// Scans triples `(x, y, z)` in lexicographic index order for a failure
    /// of `x ^ (y v z) = (x ^ y) v (x ^ z)`.
    pub fn check_distributive(&self) -> Option<TripleWitness> {
        for x in self.elements() {
            for y in self.elements() {
                for z in self.elements() {
                    if let Some(w) = self.distributive_violation(x, y, z) {
                        return Some(w);
                    }
                }
            }
        }
        None
    }

    /// Evaluates the distributive law on one triple.
    pub fn distributive_violation(&self, x: ElementRef, y: ElementRef, z: ElementRef) -> Option<TripleWitness> {
        let lhs = self.meet(x, self.join(y, z));
        let rhs = self.join(self.meet(x, y), self.meet(x, z));
        (lhs != rhs).then_some(TripleWitness {
            law: Law::Distributive,
            triple: [x, y, z],
            lhs,
            rhs,
        })
    }

    /// Exhaustive search for an injective map from the template into `self`
    /// preserving meets and joins. Candidates are tried in index order, so the
    /// first witness is deterministic.
    pub fn find_forbidden_sublattice(&self, kind: SublatticeKind) -> Option<SublatticeWitness> {
        let template = kind.template();
        let mut images = Vec::with_capacity(5);
        if self.extend_embedding(&template, &mut images) {
            let images = [images[0], images[1], images[2], images[3], images[4]];
            Some(SublatticeWitness { kind, images })
        } else {
            None
        }
    }

    fn extend_embedding(&self, template: &FiniteLattice, images: &mut Vec<ElementRef>) -> bool {
        let next = images.len();
        if next == template.len() {
            return true;
        }
        for candidate in self.elements() {
            if images.contains(&candidate) {
                continue;
            }
            images.push(candidate);
            if self.consistent_prefix(template, images) && self.extend_embedding(template, images) {
                return true;
            }
            images.pop();
        }
        false
    }

    fn consistent_prefix(&self, template: &FiniteLattice, images: &[ElementRef]) -> bool {
        let k = images.len();
        for i in 0..k {
            for j in 0..k {
                let (ti, tj) = (ElementRef(i), ElementRef(j));
                let m = template.meet(ti, tj).0;
                if m < k && self.meet(images[i], images[j]) != images[m] {
                    return false;
                }
                let v = template.join(ti, tj).0;
                if v < k && self.join(images[i], images[j]) != images[v] {
                    return false;
                }
            }
        }
        true
    }

    /// True when `images` is an injective meet/join-preserving map of the
    /// template of `kind`.
    pub fn is_sublattice_embedding(&self, kind: SublatticeKind, images: &[ElementRef; 5]) -> bool {
        let distinct = (0..5).all(|i| (0..i).all(|j| images[i] != images[j]));
        distinct && images.iter().all(|x| x.0 < self.len()) && self.consistent_prefix(&kind.template(), images)
    }
}

fn greatest(order: &[Vec<bool>], member: impl Fn(usize) -> bool) -> Option<usize> {
    let set: Vec<usize> = (0..order.len()).filter(|&z| member(z)).collect();
    set.iter().copied().find(|&z| set.iter().all(|&w| order[w][z]))
}

fn least(order: &[Vec<bool>], member: impl Fn(usize) -> bool) -> Option<usize> {
    let set: Vec<usize> = (0..order.len()).filter(|&z| member(z)).collect();
    set.iter().copied().find(|&z| set.iter().all(|&w| order[z][w]))
}

fn extend_chains(
    up: &[Vec<ElementRef>],
    top: ElementRef,
    stack: &mut Vec<ElementRef>,
    chains: &mut Vec<Vec<ElementRef>>,
) {
    let last = *stack.last().expect("chain stack starts at bottom");
    if last == top {
        chains.push(stack.clone());
        return;
    }
    for &next in &up[last.0] {
        stack.push(next);
        extend_chains(up, top, stack, chains);
        stack.pop();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Law {
    Modular,
    Distributive,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Law::Modular => f.write_str("modular"),
            Law::Distributive => f.write_str("distributive"),
        }
    }
}

/// A triple of elements on which a lattice identity fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleWitness {
    pub law: Law,
    pub triple: [ElementRef; 3],
    pub lhs: ElementRef,
    pub rhs: ElementRef,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SublatticeKind {
    /// Pentagon: `0 < a < 1`, `0 < b < c < 1`.
    N5,
    /// Diamond: three atoms under a common top.
    M3,
}

impl SublatticeKind {
    pub fn template_labels(self) -> [&'static str; 5] {
        match self {
            SublatticeKind::N5 => ["0", "a", "b", "c", "1"],
            SublatticeKind::M3 => ["0", "a1", "a2", "a3", "1"],
        }
    }

    pub fn template(self) -> FiniteLattice {
        let labels = self.template_labels();
        let covers: &[(&str, &str)] = match self {
            SublatticeKind::N5 => &[("0", "a"), ("a", "1"), ("0", "b"), ("b", "c"), ("c", "1")],
            SublatticeKind::M3 => &[
                ("0", "a1"),
                ("0", "a2"),
                ("0", "a3"),
                ("a1", "1"),
                ("a2", "1"),
                ("a3", "1"),
            ],
        };
        FiniteLattice::from_covers(&labels, covers).expect("templates are lattices")
    }
}

impl fmt::Display for SublatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SublatticeKind::N5 => f.write_str("N5"),
            SublatticeKind::M3 => f.write_str("M3"),
        }
    }
}

/// Images of the five template elements, in template order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SublatticeWitness {
    pub kind: SublatticeKind,
    pub images: [ElementRef; 5],
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(l: &FiniteLattice, s: &str) -> ElementRef {
        l.element(s).unwrap()
    }

    #[test]
    fn three_chain_meet() {
        let l = FiniteLattice::from_covers(&["0", "a", "1"], &[("0", "a"), ("a", "1")]).unwrap();
        assert_eq!(l.meet(el(&l, "a"), el(&l, "1")), el(&l, "a"));
        assert_eq!(l.bottom(), el(&l, "0"));
        assert_eq!(l.top(), el(&l, "1"));
    }

    #[test]
    fn diamond_from_covers() {
        let l = SublatticeKind::M3.template();
        assert_eq!(l.meet(el(&l, "a1"), el(&l, "a2")), el(&l, "0"));
        assert_eq!(l.join(el(&l, "a1"), el(&l, "a2")), el(&l, "1"));
        assert_eq!(l.join(el(&l, "a1"), el(&l, "a3")), el(&l, "1"));
    }

    #[test]
    fn bowtie_is_not_a_lattice() {
        // x, y below both p and q, with no element in between
        let err = FiniteLattice::from_covers(&["x", "y", "p", "q"], &[("x", "p"), ("x", "q"), ("y", "p"), ("y", "q")])
            .unwrap_err();
        assert!(matches!(err, Error::NotALattice(..)), "{err:?}");
    }

    #[test]
    fn cycles_and_bad_labels_rejected() {
        let cyc = FiniteLattice::from_covers(&["0", "a", "1"], &[("0", "a"), ("a", "1"), ("1", "0")]);
        assert_eq!(cyc.unwrap_err(), Error::CyclicCovers);
        let dup = FiniteLattice::from_covers(&["0", "0"], &[]);
        assert_eq!(dup.unwrap_err(), Error::DuplicateLabel("0".into()));
        let unk = FiniteLattice::from_covers(&["0", "1"], &[("0", "2")]);
        assert_eq!(unk.unwrap_err(), Error::UnknownLabel("2".into()));
        let empty: &[&str] = &[];
        assert_eq!(FiniteLattice::from_covers(empty, &[]).unwrap_err(), Error::EmptyLattice);
    }

    #[test]
    fn book_lattice_shapes() {
        let m3 = FiniteLattice::book(2, 3).unwrap();
        assert_eq!(m3.labels(), ["0", "a1", "a2", "a3", "1"]);
        assert_eq!(m3.join(el(&m3, "a1"), el(&m3, "a3")), m3.top());

        let chain = FiniteLattice::book(4, 1).unwrap();
        assert_eq!(chain.len(), 5);
        assert!(chain
            .elements()
            .all(|x| chain.elements().all(|y| chain.comparable(x, y))));

        let b32 = FiniteLattice::book(3, 2).unwrap();
        assert_eq!(b32.labels(), ["0", "a1", "a2", "b1", "1"]);
        assert_eq!(b32.join(el(&b32, "a1"), el(&b32, "a2")), el(&b32, "b1"));
        assert!(b32.leq(el(&b32, "a1"), el(&b32, "b1")));

        assert!(matches!(FiniteLattice::book(1, 3), Err(Error::InvalidParams(_))));
        assert!(matches!(FiniteLattice::book(3, 0), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn book_shape_recognition() {
        for d in 2..=5 {
            for n in 1..=4 {
                assert_eq!(FiniteLattice::book(d, n).unwrap().book_shape(), Some((d, n)));
            }
        }
        assert_eq!(SublatticeKind::N5.template().book_shape(), None);
        assert_eq!(FiniteLattice::chain(4).unwrap().book_shape(), Some((3, 1)));
        assert_eq!(FiniteLattice::chain(2).unwrap().book_shape(), None);
    }

    #[test]
    fn pentagon_modular_witness() {
        let n5 = SublatticeKind::N5.template();
        let w = n5.check_modular().unwrap();
        assert_eq!(w.triple, [el(&n5, "b"), el(&n5, "a"), el(&n5, "c")]);
        assert_eq!(w.lhs, el(&n5, "b"));
        assert_eq!(w.rhs, el(&n5, "c"));
    }

    #[test]
    fn diamond_distributive_witness() {
        let m3 = SublatticeKind::M3.template();
        // first triple in index order
        let w = m3.check_distributive().unwrap();
        assert_eq!(w.triple, [el(&m3, "a1"), el(&m3, "a2"), el(&m3, "a3")]);
        assert_eq!((w.lhs, w.rhs), (el(&m3, "a1"), el(&m3, "0")));
        // the rotated triple fails the same way
        let w = m3
            .distributive_violation(el(&m3, "a3"), el(&m3, "a1"), el(&m3, "a2"))
            .unwrap();
        assert_eq!((w.lhs, w.rhs), (el(&m3, "a3"), el(&m3, "0")));
        assert!(m3.check_modular().is_none());
    }

    #[test]
    fn chains_satisfy_everything() {
        for k in 1..=6 {
            let c = FiniteLattice::chain(k).unwrap();
            assert!(c.check_modular().is_none());
            assert!(c.check_distributive().is_none());
            assert!(c.find_forbidden_sublattice(SublatticeKind::M3).is_none());
            assert!(c.find_forbidden_sublattice(SublatticeKind::N5).is_none());
        }
    }

    #[test]
    fn forbidden_sublattices_in_books() {
        let l = FiniteLattice::book(3, 4).unwrap();
        let w = l.find_forbidden_sublattice(SublatticeKind::M3).unwrap();
        let names: Vec<&str> = w.images.iter().map(|&x| l.label(x)).collect();
        assert_eq!(names, ["0", "a1", "a2", "a3", "b1"]);
        assert!(l.is_sublattice_embedding(SublatticeKind::M3, &w.images));

        let m3 = FiniteLattice::book(2, 3).unwrap();
        let w = m3.find_forbidden_sublattice(SublatticeKind::M3).unwrap();
        let names: Vec<&str> = w.images.iter().map(|&x| m3.label(x)).collect();
        assert_eq!(names, ["0", "a1", "a2", "a3", "1"]);

        assert!(FiniteLattice::book(4, 6)
            .unwrap()
            .find_forbidden_sublattice(SublatticeKind::N5)
            .is_none());
    }

    #[test]
    fn maximal_chains_of_book() {
        let l = FiniteLattice::book(3, 2).unwrap();
        let chains: Vec<Vec<&str>> = l
            .maximal_chains()
            .iter()
            .map(|c| c.iter().map(|&x| l.label(x)).collect())
            .collect();
        assert_eq!(chains, vec![vec!["0", "a1", "b1", "1"], vec!["0", "a2", "b1", "1"]]);
    }
}
