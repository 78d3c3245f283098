#![allow(dead_code)]

use std::collections::BTreeSet;

use bookspace::{FiniteLattice, SublatticeKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random lattice on `size` elements: the intersection closure of random
/// subsets of a 4-element ground set, ordered by inclusion.
pub fn random_lattice(seed: u64, size: usize) -> FiniteLattice {
    assert!((2..=16).contains(&size));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family = loop {
        let mut family = BTreeSet::from([0b1111u8]);
        while family.len() < size {
            let mut next = family.clone();
            next.insert(rng.gen_range(0..16u8));
            loop {
                let meets: Vec<u8> = next.iter().flat_map(|&a| next.iter().map(move |&b| a & b)).collect();
                let before = next.len();
                next.extend(meets);
                if next.len() == before {
                    break;
                }
            }
            if next.len() > size {
                break;
            }
            family = next;
        }
        if family.len() == size {
            break family;
        }
    };
    let mut sets: Vec<u8> = family.into_iter().collect();
    sets.sort_by_key(|s| (s.count_ones(), *s));
    let labels: Vec<String> = (0..size)
        .map(|i| match i {
            0 => "0".to_owned(),
            i if i + 1 == size => "1".to_owned(),
            i => format!("x{i}"),
        })
        .collect();
    let mut covers = Vec::new();
    for (i, &a) in sets.iter().enumerate() {
        for (j, &b) in sets.iter().enumerate() {
            if i != j && a & b == a {
                covers.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    FiniteLattice::from_covers(&labels, &covers).expect("closure systems are lattices")
}

/// Twenty random lattices with 6 to 9 elements.
pub fn random_corpus() -> Vec<FiniteLattice> {
    (0..20u64)
        .map(|i| random_lattice(1000 + i, 6 + (i as usize % 4)))
        .collect()
}

pub fn grid() -> impl Iterator<Item = (usize, usize)> {
    (2..=5).flat_map(|d| (1..=6).map(move |n| (d, n)))
}

/// Grid books, N5, M3 and the random corpus.
pub fn corpus() -> Vec<(String, FiniteLattice)> {
    let mut out: Vec<(String, FiniteLattice)> = grid()
        .map(|(d, n)| (format!("M_{{{d},{n}}}"), FiniteLattice::book(d, n).unwrap()))
        .collect();
    out.push(("N5".into(), SublatticeKind::N5.template()));
    out.push(("M3".into(), SublatticeKind::M3.template()));
    for (i, l) in random_corpus().into_iter().enumerate() {
        out.push((format!("random#{i}"), l));
    }
    out
}

/// Every chain of `l` by brute force over element subsets, counted by size.
pub fn chain_counts(l: &FiniteLattice) -> Vec<u64> {
    let elems: Vec<_> = l.elements().collect();
    let mut counts = vec![0u64; elems.len()];
    for mask in 1u64..(1u64 << elems.len()) {
        let set: Vec<_> = (0..elems.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| elems[i])
            .collect();
        let is_chain = set.iter().all(|&x| set.iter().all(|&y| l.comparable(x, y)));
        if is_chain {
            counts[set.len() - 1] += 1;
        }
    }
    while counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}
