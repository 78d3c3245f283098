mod common;

use bookspace::rational::ratio;
use bookspace::realization::{
    is_admissible, is_admissible_by_generators, meet_points_by_profile, merged_breakpoints, PointSampler,
};
use bookspace::{
    join_points, level_generator, meet_points, sup_distance, to_barycentric, to_function, FiniteLattice, LevelProfile,
    Rational, RealizationPoint,
};
use proptest::prelude::*;

fn book() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=5, 1usize..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn table_axioms(seed in any::<u64>(), size in 3usize..=9) {
        let l = common::random_lattice(seed, size);
        for x in l.elements() {
            prop_assert_eq!(l.meet(x, x), x);
            prop_assert_eq!(l.join(x, x), x);
            prop_assert!(l.leq(l.bottom(), x) && l.leq(x, l.top()));
            for y in l.elements() {
                prop_assert_eq!(l.meet(x, y), l.meet(y, x));
                prop_assert_eq!(l.join(x, y), l.join(y, x));
                prop_assert_eq!(l.meet(x, l.join(x, y)), x);
                prop_assert_eq!(l.join(x, l.meet(x, y)), x);
                prop_assert_eq!(l.leq(x, y), l.meet(x, y) == x);
                for z in l.elements() {
                    prop_assert_eq!(l.meet(l.meet(x, y), z), l.meet(x, l.meet(y, z)));
                    prop_assert_eq!(l.join(l.join(x, y), z), l.join(x, l.join(y, z)));
                }
            }
        }
    }

    #[test]
    fn law_scans_match_sublattice_searches(seed in any::<u64>(), size in 2usize..=9) {
        let l = common::random_lattice(seed, size);
        let n5 = l.find_forbidden_sublattice(bookspace::SublatticeKind::N5);
        let m3 = l.find_forbidden_sublattice(bookspace::SublatticeKind::M3);
        prop_assert_eq!(l.check_modular().is_none(), n5.is_none());
        prop_assert_eq!(l.check_distributive().is_none(), n5.is_none() && m3.is_none());
        if let Some(w) = n5 {
            prop_assert!(l.is_sublattice_embedding(w.kind, &w.images));
        }
    }

    #[test]
    fn book_shape((d, n) in book()) {
        let l = FiniteLattice::book(d, n).unwrap();
        prop_assert_eq!(l.len(), n + d);
        let atoms = l.atoms();
        prop_assert_eq!(atoms.len(), n);
        let above = if d == 2 { l.top() } else { l.element("b1").unwrap() };
        for &a in &atoms {
            for &b in &atoms {
                if a != b {
                    prop_assert_eq!(l.join(a, b), above);
                }
            }
        }
    }

    #[test]
    fn round_trips((d, n) in book(), seed in any::<u64>()) {
        let l = FiniteLattice::book(d, n).unwrap();
        let mut sampler = PointSampler::new(&l, seed);
        for _ in 0..8 {
            let b = sampler.next_barycentric();
            let f = to_function(&l, &b);
            prop_assert_eq!(&to_barycentric(&l, f.values()).unwrap(), &b);
            prop_assert_eq!(to_function(&l, &f.barycentric(&l)), f);
        }
    }

    #[test]
    fn admissibility_routes_agree(seed in any::<u64>(), raw in prop::collection::vec(0u8..=4, 5..=9)) {
        // values in {0, 1/4, ..., 1} on a random lattice of matching size
        let l = common::random_lattice(seed, raw.len());
        let mut values: Vec<Rational> = raw.iter().map(|&k| ratio(k as i64, 4)).collect();
        values[l.bottom().index()] = ratio(1, 1);
        prop_assert_eq!(is_admissible(&l, &values), is_admissible_by_generators(&l, &values));
    }

    #[test]
    fn level_maps_are_homomorphic((d, n) in book(), seed in any::<u64>()) {
        let l = FiniteLattice::book(d, n).unwrap();
        let mut sampler = PointSampler::new(&l, seed);
        let (f, g) = (sampler.next_point(), sampler.next_point());
        let m = meet_points(&l, &f, &g).unwrap();
        let j = join_points(&l, &f, &g).unwrap();
        prop_assert_eq!(&m, &meet_points_by_profile(&l, &f, &g).unwrap());
        let (pf, pg) = (LevelProfile::of(&l, &f), LevelProfile::of(&l, &g));
        let breaks = merged_breakpoints(&pf, &pg);
        // breakpoints and the midpoints between them
        let mut levels = breaks.clone();
        for w in breaks.windows(2) {
            levels.push((&w[0] + &w[1]) / ratio(2, 1));
        }
        levels.push(breaks.last().unwrap() / ratio(2, 1));
        for s in levels {
            let (hf, hg) = (level_generator(&l, &f, &s).unwrap(), level_generator(&l, &g, &s).unwrap());
            prop_assert_eq!(level_generator(&l, &m, &s).unwrap(), l.meet(hf, hg));
            prop_assert_eq!(level_generator(&l, &j, &s).unwrap(), l.join(hf, hg));
        }
    }

    #[test]
    fn realization_is_a_modular_lattice((d, n) in book(), seed in any::<u64>()) {
        let l = FiniteLattice::book(d, n).unwrap();
        let mut sampler = PointSampler::new(&l, seed);
        let (f, g, h) = (sampler.next_point(), sampler.next_point(), sampler.next_point());
        let meet = |a: &RealizationPoint, b: &RealizationPoint| meet_points(&l, a, b).unwrap();
        let join = |a: &RealizationPoint, b: &RealizationPoint| join_points(&l, a, b).unwrap();
        prop_assert_eq!(meet(&f, &g), meet(&g, &f));
        prop_assert_eq!(join(&f, &g), join(&g, &f));
        prop_assert_eq!(join(&join(&f, &g), &h), join(&f, &join(&g, &h)));
        prop_assert_eq!(meet(&meet(&f, &g), &h), meet(&f, &meet(&g, &h)));
        prop_assert_eq!(meet(&f, &join(&f, &g)), f.clone());
        prop_assert_eq!(join(&f, &meet(&f, &g)), f.clone());
        prop_assert_eq!(meet(&f, &g) == f, f.leq(&g));
        let x = meet(&f, &h);
        prop_assert_eq!(join(&x, &meet(&g, &h)), meet(&join(&x, &g), &h));
        if n <= 2 {
            prop_assert_eq!(meet(&f, &join(&g, &h)), join(&meet(&f, &g), &meet(&f, &h)));
        }
    }

    #[test]
    fn operations_are_nonexpansive((d, n) in book(), seed in any::<u64>()) {
        let l = FiniteLattice::book(d, n).unwrap();
        let mut sampler = PointSampler::new(&l, seed);
        let (f, f2, g) = (sampler.next_point(), sampler.next_point(), sampler.next_point());
        let base = sup_distance(&f, &f2).unwrap();
        let dm = sup_distance(&meet_points(&l, &f, &g).unwrap(), &meet_points(&l, &f2, &g).unwrap()).unwrap();
        let dj = sup_distance(&join_points(&l, &f, &g).unwrap(), &join_points(&l, &f2, &g).unwrap()).unwrap();
        prop_assert!(dm <= base);
        prop_assert!(dj <= base);
    }
}
