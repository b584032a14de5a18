use std::sync::OnceLock;

use proptest::prelude::*;

use gq42::covers::{enumerate_rosettes, Fan};
use gq42::symmetry::{preserves_lines, Permutation};
use gq42::veldkamp::{vline_members, Composition};
use gq42::{GramForm, Model, PointSet};

fn model() -> &'static Model {
    static M: OnceLock<Model> = OnceLock::new();
    M.get_or_init(|| Model::build(GramForm::SymplecticJ).unwrap())
}

/// Product of generators selected by `word`.
fn element(word: &[usize]) -> Permutation {
    let gens = &model().group().generators;
    word.iter().fold(Permutation::identity(45), |acc, &i| {
        acc.then(&gens[i % gens.len()])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vline_symmetric_maximal_and_exact(a in 0usize..245, b in 0usize..245) {
        prop_assume!(a != b);
        let cat = &model().catalog;
        let l = vline_members(cat, a, b);
        prop_assert_eq!(&l, &vline_members(cat, b, a));
        prop_assert!(l.len() >= 2 && l.contains(&a) && l.contains(&b));
        let (ha, hb) = (cat.get(a).points, cat.get(b).points);
        let core = ha & hb;
        for h in cat.all() {
            let qualifies = h.points & ha == core && h.points & hb == core;
            prop_assert_eq!(l.contains(&h.id), qualifies || h.id == a || h.id == b);
        }
    }

    #[test]
    fn group_elements_preserve_structure(word in prop::collection::vec(0usize..64, 1..12)) {
        let m = model();
        let g = element(&word);
        prop_assert!(preserves_lines(m.gq(), &g));
        for h in m.catalog.all() {
            let img = m.catalog.hyperplane_id(g.apply_set(h.points));
            prop_assert!(img.is_some());
            let img = m.catalog.get(img.unwrap());
            prop_assert_eq!(img.is_perp(), h.is_perp());
            prop_assert_eq!(img.is_plane_ovoid(), h.is_plane_ovoid());
        }
        let inv = g.inverse();
        prop_assert!(g.then(&inv).is_identity());
    }

    #[test]
    fn group_maps_fans_to_fans(word in prop::collection::vec(0usize..64, 1..8), f in 0usize..520) {
        let m = model();
        let g = element(&word);
        let fan = m.fans()[f];
        let mut img: Vec<usize> = fan.0.iter()
            .map(|&o| m.catalog.ovoid_id(g.apply_set(m.ovoids()[o])).unwrap())
            .collect();
        img.sort_unstable();
        let img = Fan(img.try_into().unwrap());
        prop_assert!(m.fans().contains(&img));
    }

    #[test]
    fn fan_invariants(f in 0usize..520) {
        let m = model();
        let fan = m.fans()[f];
        let sets: Vec<PointSet> = fan.0.iter().map(|&o| m.ovoids()[o]).collect();
        for i in 0..5 {
            for j in i + 1..5 {
                prop_assert!(sets[i].is_disjoint(sets[j]));
            }
        }
        let union = sets.iter().fold(PointSet::empty(), |acc, &s| acc | s);
        prop_assert_eq!(union, m.gq().universe());
    }

    #[test]
    fn rosette_invariants(x in 0usize..45) {
        let m = model();
        let gq = m.gq();
        let far = gq.universe() - gq.perp(x);
        for r in enumerate_rosettes(gq, m.ovoids(), x) {
            let sets: Vec<PointSet> = r.members.iter().map(|&o| m.ovoids()[o]).collect();
            for i in 0..4 {
                prop_assert!(sets[i].contains(x));
                for j in i + 1..4 {
                    prop_assert_eq!(sets[i] & sets[j], PointSet::singleton(x));
                }
            }
            let union = sets.iter().fold(PointSet::empty(), |acc, &s| acc | s);
            prop_assert_eq!(union - PointSet::singleton(x), far);
        }
    }

    #[test]
    fn orbit_of_a_census_line_stays_in_the_census(word in prop::collection::vec(0usize..64, 1..8), i in 0usize..13357) {
        let m = model();
        let census = m.census();
        let g = element(&word);
        let l = &census.vlines[i % census.len()];
        let mut img: Vec<usize> = l.members.iter()
            .map(|&h| m.catalog.hyperplane_id(g.apply_set(m.catalog.get(h).points)).unwrap())
            .collect();
        img.sort_unstable();
        let j = census.find(&img);
        prop_assert!(j.is_some());
        let j = j.unwrap();
        prop_assert_eq!(census.compositions[j], Composition::of(&m.catalog, &l.members));
        prop_assert_eq!(census.core_types[j], census.core_types[i % census.len()]);
    }
}
