//! Brute-force recomputations of derived counts, independent of the
//! exact-cover and census machinery they check.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use gq42::covers::{enumerate_rosettes, fan_configuration};
use gq42::symmetry::{enumerate_group, stabilizer_generators};
use gq42::veldkamp::{comp, CoreType, VeldkampCensus};
use gq42::{GramForm, IncidenceStructure, Model, PointSet};

fn model() -> &'static Model {
    static M: OnceLock<Model> = OnceLock::new();
    M.get_or_init(|| Model::build(GramForm::SymplecticJ).unwrap())
}

/// Sets of `k` pairwise noncollinear points, extended in increasing order.
fn partial_ovoids(gq: &IncidenceStructure, k: usize) -> Vec<PointSet> {
    fn grow(
        gq: &IncidenceStructure,
        k: usize,
        start: usize,
        cur: PointSet,
        out: &mut Vec<PointSet>,
    ) {
        if cur.len() == k {
            out.push(cur);
            return;
        }
        for p in start..gq.n_points() {
            if cur.iter().all(|q| !gq.collinear(p, q)) {
                let mut next = cur;
                next.insert(p);
                grow(gq, k, p + 1, next, out);
            }
        }
    }
    let mut out = Vec::new();
    grow(gq, k, 0, PointSet::empty(), &mut out);
    out
}

#[test]
fn ovoids_by_point_backtracking() {
    let m = model();
    let found = partial_ovoids(m.gq(), 9);
    assert_eq!(found.len(), 200);
    let listed: BTreeSet<PointSet> = m.ovoids().iter().copied().collect();
    assert_eq!(found.into_iter().collect::<BTreeSet<_>>(), listed);
}

/// Five pairwise disjoint ovoids, chosen in increasing index order.
fn fans_by_disjointness(ovoids: &[PointSet]) -> Vec<Vec<usize>> {
    fn grow(
        ovoids: &[PointSet],
        start: usize,
        used: PointSet,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == 5 {
            out.push(cur.clone());
            return;
        }
        for o in start..ovoids.len() {
            if ovoids[o].is_disjoint(used) {
                cur.push(o);
                grow(ovoids, o + 1, used | ovoids[o], cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(ovoids, 0, PointSet::empty(), &mut Vec::new(), &mut out);
    out
}

#[test]
fn fans_by_disjointness_match() {
    let m = model();
    let brute = fans_by_disjointness(m.ovoids());
    let listed: Vec<Vec<usize>> = m.fans().iter().map(|f| f.0.to_vec()).collect();
    assert_eq!(brute, listed);
    for o in 0..m.ovoids().len() {
        assert_eq!(brute.iter().filter(|f| f.contains(&o)).count(), 13);
    }
}

#[test]
fn rosettes_by_pairwise_intersection() {
    let m = model();
    let gq = m.gq();
    for x in [0, 17, 44] {
        let through: Vec<usize> = (0..m.ovoids().len())
            .filter(|&o| m.ovoids()[o].contains(x))
            .collect();
        assert_eq!(through.len(), 40);
        let base = PointSet::singleton(x);
        let mut count = 0;
        for (i, &a) in through.iter().enumerate() {
            for (j, &b) in through.iter().enumerate().skip(i + 1) {
                if m.ovoids()[a] & m.ovoids()[b] != base {
                    continue;
                }
                for (k, &c) in through.iter().enumerate().skip(j + 1) {
                    let abc = [a, b]
                        .iter()
                        .all(|&y| m.ovoids()[y] & m.ovoids()[c] == base);
                    if !abc {
                        continue;
                    }
                    for &d in &through[k + 1..] {
                        if [a, b, c]
                            .iter()
                            .all(|&y| m.ovoids()[y] & m.ovoids()[d] == base)
                        {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(count, enumerate_rosettes(gq, m.ovoids(), x).len());
        assert_eq!(count, 26);
    }
}

#[test]
fn group_order_by_closure() {
    let m = model();
    let g = m.group();
    let elements = enumerate_group(&g.generators);
    assert_eq!(elements.len() as u64, g.order);
    assert_eq!(
        g.order,
        g.basic_orbits.iter().map(|&b| b as u64).product::<u64>()
    );
    let copy = m.copy(0).unwrap();
    let stab = enumerate_group(&stabilizer_generators(&g.generators, copy));
    let fixing = elements
        .iter()
        .filter(|p| p.apply_set(copy) == copy)
        .count();
    assert_eq!(stab.len(), fixing);
    assert_eq!(stab.len() as u64 * 36, g.order);
}

#[test]
fn census_size_three_lines_by_construction() {
    // Perp of x with a tripod through a unicentric triad centred at x; the
    // third member is the other tripod through the same triad.
    let m = model();
    let gq = m.gq();
    let census: &VeldkampCensus = m.census();
    let mut lines = BTreeSet::new();
    for x in 0..gq.n_points() {
        for t in gq.unicentric_triads_at(x) {
            let tripods: Vec<usize> = m
                .catalog
                .tripod_ids()
                .into_iter()
                .filter(|&o| m.ovoids()[o] & gq.perp(x) == t)
                .map(|o| o + m.catalog.n_perps())
                .collect();
            assert_eq!(tripods.len(), 2, "two tripods meet x^⊥ in the triad");
            lines.insert(vec![x, tripods[0], tripods[1]]);
        }
    }
    assert_eq!(lines.len(), 2160);
    for l in &lines {
        assert!(census.find(l).is_some());
    }
    assert_eq!(
        census.count(3, comp(1, 0, 2), CoreType::UnicentricTriad),
        lines.len()
    );
}

#[test]
fn every_generating_pair_regenerates_its_line() {
    let m = model();
    let census = m.census();
    for l in census.vlines.iter().step_by(7) {
        for &(a, b) in &l.generating_pairs {
            assert_eq!(gq42::veldkamp::vline_members(&m.catalog, a, b), l.members);
            assert_eq!(m.catalog.get(a).points & m.catalog.get(b).points, l.core);
        }
        let meet = l
            .members
            .iter()
            .fold(m.gq().universe(), |acc, &h| acc & m.catalog.get(h).points);
        assert_eq!(meet, l.core);
    }
    let pairs: usize = census.vlines.iter().map(|l| l.generating_pairs.len()).sum();
    assert_eq!(pairs, 245 * 244 / 2);
}

#[test]
fn multiplicity_conservation_for_every_ovoid() {
    let m = model();
    let classes = m.ovoid_classes(0).unwrap();
    for o in 0..m.ovoids().len() {
        let r = fan_configuration(o, m.ovoids(), m.fans(), &classes);
        assert_eq!(r.fans.len(), 13);
        assert_eq!(r.multiplicity_sum, 52);
        let disjoint = m
            .ovoids()
            .iter()
            .filter(|x| x.is_disjoint(m.ovoids()[o]))
            .count();
        assert_eq!(r.partners.len(), disjoint);
        let expected = if m.catalog.ovoid(o).is_plane_ovoid() {
            40
        } else {
            31
        };
        assert_eq!(disjoint, expected);
    }
}

#[test]
fn tricentric_triad_count_by_double_perp() {
    let gq = model().gq();
    let mut via_pairs = BTreeSet::new();
    for x in 0..gq.n_points() {
        for y in x + 1..gq.n_points() {
            if !gq.collinear(x, y) {
                let pair: PointSet = [x, y].iter().collect();
                let centers = gq.perp_of_set(pair);
                assert_eq!(centers.len(), 3);
                via_pairs.insert(gq.perp_of_set(centers));
            }
        }
    }
    assert_eq!(via_pairs.len(), 240);
}
