//! Order complexes and their facet combinatorics.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::realization::{to_function, BarycentricForm, RealizationPoint};

/// A simplicial complex stored by its facets. Faces are enumerated on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Validates a facet list: every facet nonempty with in-range indices, no
    /// facet inside another, every vertex used.
    pub fn new(vertices: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut normalized: Vec<Vec<usize>> = Vec::with_capacity(facets.len());
        for facet in facets {
            let set: BTreeSet<usize> = facet.iter().copied().collect();
            if set.is_empty() {
                return Err(Error::InvalidComplex("empty facet".into()));
            }
            if set.len() != facet.len() {
                return Err(Error::InvalidComplex(format!("repeated vertex in facet {facet:?}")));
            }
            if let Some(&bad) = set.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::InvalidComplex(format!("vertex index {bad} out of range")));
            }
            normalized.push(set.into_iter().collect());
        }
        for (i, f) in normalized.iter().enumerate() {
            for (j, g) in normalized.iter().enumerate() {
                if i != j && is_subset(f, g) {
                    return Err(Error::InvalidComplex(format!(
                        "facet {f:?} is contained in facet {g:?}"
                    )));
                }
            }
        }
        for (v, label) in vertices.iter().enumerate() {
            if !normalized.iter().any(|f| f.contains(&v)) {
                return Err(Error::InvalidComplex(format!("vertex `{label}` lies in no facet")));
            }
        }
        Ok(SimplicialComplex {
            vertices,
            facets: normalized,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Facets as sorted vertex index lists.
    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn dimension(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(1) - 1
    }

    pub fn is_pure(&self) -> bool {
        let sizes = self.facet_size_range();
        sizes.0 == sizes.1
    }

    fn facet_size_range(&self) -> (usize, usize) {
        let min = self.facets.iter().map(Vec::len).min().unwrap_or(0);
        let max = self.facets.iter().map(Vec::len).max().unwrap_or(0);
        (min, max)
    }

    /// `f_k` = number of faces with `k + 1` vertices, for `k = 0..=dim`.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for facet in &self.facets {
            let k = facet.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| facet[i]).collect();
                faces.insert(face);
            }
        }
        let mut counts = vec![0u64; self.dimension() + 1];
        for face in faces {
            counts[face.len() - 1] += 1;
        }
        counts
    }

    /// Codimension-one faces lying in three or more facets.
    pub fn nonmanifold_ridges(&self) -> Result<Vec<RidgeReport>> {
        Ok(self.ridge_degrees()?.into_iter().filter(|r| r.degree >= 3).collect())
    }

    /// Every ridge with the number of facets containing it, sorted by vertex
    /// list. A 0-dimensional complex has no ridges.
    pub fn ridge_degrees(&self) -> Result<Vec<RidgeReport>> {
        let (min, max) = self.facet_size_range();
        if min != max {
            return Err(Error::NotPure(min, max));
        }
        let mut degrees: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        if max < 2 {
            return Ok(Vec::new());
        }
        for facet in &self.facets {
            for skip in 0..facet.len() {
                let ridge: Vec<usize> = facet
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                *degrees.entry(ridge).or_insert(0) += 1;
            }
        }
        Ok(degrees
            .into_iter()
            .map(|(ridge, degree)| RidgeReport { ridge, degree })
            .collect())
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.contains(v))
}

/// A ridge with the number of facets that contain it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RidgeReport {
    pub ridge: Vec<usize>,
    pub degree: usize,
}

/// The order complex: one facet per maximal chain. Vertex `i` is element `i`.
pub fn order_complex(lattice: &FiniteLattice) -> SimplicialComplex {
    let facets = lattice
        .maximal_chains()
        .into_iter()
        .map(|chain| {
            let mut f: Vec<usize> = chain.into_iter().map(|x| x.index()).collect();
            f.sort_unstable();
            f
        })
        .collect();
    SimplicialComplex {
        vertices: lattice.labels().to_vec(),
        facets,
    }
}

/// Spine and pages of the book complex for `M_{d,n}`.
#[derive(Debug, Clone)]
pub struct BookAnatomy {
    pub lattice: FiniteLattice,
    /// Vertex indices of the chain `0 < b_1 < ... < b_{d-2} < 1`.
    pub spine: Vec<usize>,
    /// One facet per atom, in atom order.
    pub pages: Vec<Vec<usize>>,
    /// Uniform barycentric combination of the spine vertices.
    pub spine_barycenter: RealizationPoint,
}

pub fn book_anatomy(d: usize, n: usize) -> Result<BookAnatomy> {
    let lattice = FiniteLattice::book(d, n)?;
    let complex = order_complex(&lattice);
    let atoms = lattice.atoms();
    let spine: Vec<usize> = lattice
        .elements()
        .filter(|x| !atoms.contains(x))
        .map(|x| x.index())
        .collect();
    let pages: Vec<Vec<usize>> = atoms
        .iter()
        .map(|a| {
            complex
                .facets()
                .iter()
                .find(|f| f.contains(&a.index()))
                .cloned()
                .expect("every atom lies on a maximal chain")
        })
        .collect();
    let weight = BigRational::new(BigInt::from(1), BigInt::from(spine.len()));
    let form = BarycentricForm::new(
        &lattice,
        spine
            .iter()
            .map(|&i| lattice.element_at(i).expect("spine index in range"))
            .collect(),
        vec![weight; spine.len()],
    )?;
    let spine_barycenter = to_function(&lattice, &form);
    Ok(BookAnatomy {
        lattice,
        spine,
        pages,
        spine_barycenter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn facets_by_label(l: &FiniteLattice, k: &SimplicialComplex) -> Vec<Vec<String>> {
        k.facets()
            .iter()
            .map(|f| f.iter().map(|&i| l.labels()[i].clone()).collect())
            .collect()
    }

    #[test]
    fn diamond_complex() {
        let l = FiniteLattice::book(2, 3).unwrap();
        let k = order_complex(&l);
        assert_eq!(k.dimension(), 2);
        assert_eq!(
            facets_by_label(&l, &k),
            [["0", "a1", "1"], ["0", "a2", "1"], ["0", "a3", "1"]]
        );
        assert_eq!(k.f_vector(), [5, 7, 3]);
    }

    #[test]
    fn chain_is_one_simplex() {
        let l = FiniteLattice::chain(3).unwrap();
        let k = order_complex(&l);
        assert_eq!(k.facets(), [vec![0, 1, 2]]);
        assert_eq!(k.f_vector(), [3, 3, 1]);
        assert!(k.nonmanifold_ridges().unwrap().is_empty());

        let point = order_complex(&FiniteLattice::chain(1).unwrap());
        assert_eq!(point.dimension(), 0);
        assert!(point.nonmanifold_ridges().unwrap().is_empty());
    }

    #[test]
    fn full_simplex_f_vector_is_binomial() {
        for d in 0..6usize {
            let l = FiniteLattice::chain(d + 1).unwrap();
            let f = order_complex(&l).f_vector();
            let mut binom = 1u64;
            for (k, &count) in f.iter().enumerate() {
                binom = binom * (d as u64 + 1 - k as u64) / (k as u64 + 1);
                assert_eq!(count, binom);
            }
        }
    }

    #[test]
    fn book_32_facets() {
        let l = FiniteLattice::book(3, 2).unwrap();
        let k = order_complex(&l);
        assert_eq!(
            facets_by_label(&l, &k),
            [["0", "a1", "b1", "1"], ["0", "a2", "b1", "1"]]
        );
        assert!(k.nonmanifold_ridges().unwrap().is_empty());
    }

    #[test]
    fn dimensions() {
        for (d, n) in [(2, 3), (3, 1), (4, 5), (5, 2)] {
            let k = order_complex(&FiniteLattice::book(d, n).unwrap());
            assert_eq!(k.dimension(), d);
        }
    }

    #[test]
    fn impure_complex_rejected() {
        let k = SimplicialComplex::new(
            vec!["p".into(), "q".into(), "r".into(), "s".into()],
            vec![vec![0, 1, 2], vec![2, 3]],
        )
        .unwrap();
        assert_eq!(k.nonmanifold_ridges(), Err(Error::NotPure(2, 3)));
        // N5 has maximal chains of lengths 3 and 4
        let n5 = order_complex(&crate::lattice::SublatticeKind::N5.template());
        assert!(matches!(n5.nonmanifold_ridges(), Err(Error::NotPure(3, 4))));
    }

    #[test]
    fn invalid_complexes() {
        let v = || vec!["p".to_owned(), "q".to_owned()];
        assert!(SimplicialComplex::new(v(), vec![vec![]]).is_err());
        assert!(SimplicialComplex::new(v(), vec![vec![0, 1], vec![1]]).is_err());
        assert!(SimplicialComplex::new(v(), vec![vec![0]]).is_err());
        assert!(SimplicialComplex::new(v(), vec![vec![0, 2]]).is_err());
        assert!(SimplicialComplex::new(v(), vec![vec![0, 1]]).is_ok());
    }

    #[test]
    fn spine_ridge_of_books() {
        let l = FiniteLattice::book(3, 4).unwrap();
        let ridges = order_complex(&l).nonmanifold_ridges().unwrap();
        assert_eq!(ridges.len(), 1);
        let spine: Vec<&str> = ridges[0].ridge.iter().map(|&i| l.labels()[i].as_str()).collect();
        assert_eq!(spine, ["0", "b1", "1"]);
        assert_eq!(ridges[0].degree, 4);
    }

    #[test]
    fn anatomy() {
        let a = book_anatomy(3, 4).unwrap();
        let spine: Vec<&str> = a.spine.iter().map(|&i| a.lattice.labels()[i].as_str()).collect();
        assert_eq!(spine, ["0", "b1", "1"]);
        assert_eq!(a.pages.len(), 4);
        let bary = a.spine_barycenter.barycentric(&a.lattice);
        assert_eq!(bary.weights(), [ratio(1, 3), ratio(1, 3), ratio(1, 3)]);

        let a = book_anatomy(2, 3).unwrap();
        let bary = a.spine_barycenter.barycentric(&a.lattice);
        let chain: Vec<&str> = bary.chain().iter().map(|&x| a.lattice.label(x)).collect();
        assert_eq!(chain, ["0", "1"]);
        assert_eq!(bary.weights(), [ratio(1, 2), ratio(1, 2)]);

        let a = book_anatomy(2, 1).unwrap();
        assert_eq!(a.spine, [0, 2]);
        assert_eq!(a.pages, [vec![0, 1, 2]]);

        assert!(book_anatomy(1, 1).is_err());
    }

    #[test]
    fn pages_meet_in_spine() {
        for d in 2..=5 {
            for n in 1..=6 {
                let a = book_anatomy(d, n).unwrap();
                assert_eq!(a.pages.len(), n);
                for (i, p) in a.pages.iter().enumerate() {
                    assert!(is_subset(&a.spine, p));
                    for q in &a.pages[i + 1..] {
                        let common: Vec<usize> = p.iter().copied().filter(|v| q.contains(v)).collect();
                        assert_eq!(common, a.spine);
                    }
                }
            }
        }
    }
}
