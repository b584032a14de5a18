//! GQ(2,2) subquadrangles of GQ(4,2), the grid / dual-grid partition, and
//! symmetric differences of ovoids on a common tricentric triad.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use crate::galois::{solve, Vector4};
use crate::hyperplanes::OvoidClass;
use crate::symmetry::Permutation;
use crate::{Error, HermitianSurface, IncidenceStructure, PointSet, TriadKind};

/// Baer subgeometries PG(3,2) whose 15 points are all isotropic, found from
/// 5-point frames of isotropic points. Sorted ascending.
pub fn frame_search_copies(surface: &HermitianSurface) -> Vec<PointSet> {
    let n = surface.n_points();
    let coords: Vec<Vector4> = (0..n).map(|p| surface.coords(p)).collect();
    let mut found = BTreeSet::new();
    for (a, b, c, d) in (0..n).tuple_combinations() {
        let basis = [coords[a], coords[b], coords[c], coords[d]];
        if crate::galois::rank(&basis) < 4 {
            continue;
        }
        for &target in &coords[d + 1..] {
            let Some(lambda) = solve(&basis, target) else {
                continue;
            };
            if lambda.iter().any(|l| l.is_zero()) {
                continue;
            }
            let scaled: Vec<Vector4> = basis.iter().zip(lambda).map(|(v, l)| v.scale(l)).collect();
            if let Some(sub) = baer_points(surface, &scaled) {
                found.insert(sub);
            }
        }
    }
    found.into_iter().collect()
}

/// The 15 points spanned over GF(2) by `basis`, if all are isotropic.
fn baer_points(surface: &HermitianSurface, basis: &[Vector4]) -> Option<PointSet> {
    let mut set = PointSet::empty();
    for mask in 1u8..16 {
        let v = (0..4)
            .filter(|i| mask >> i & 1 == 1)
            .fold(Vector4::ZERO, |acc, i| acc + basis[i]);
        let pg = surface.space.point_id(v);
        set.insert(surface.gq_id(pg)?);
    }
    Some(set)
}

/// Images of `seed` under the group generated by `gens`, sorted ascending.
pub fn orbit_copies(gens: &[Permutation], seed: PointSet) -> Vec<PointSet> {
    let mut seen = BTreeSet::from([seed]);
    let mut stack = vec![seed];
    while let Some(s) = stack.pop() {
        for g in gens {
            let img = g.apply_set(s);
            if seen.insert(img) {
                stack.push(img);
            }
        }
    }
    seen.into_iter().collect()
}

/// Both constructions; they must agree and every copy must induce GQ(2,2).
/// The result lists `reference` first, then the rest ascending.
pub fn enumerate_gq22_copies(
    surface: &HermitianSurface,
    gens: &[Permutation],
    reference: PointSet,
) -> Result<Vec<PointSet>, Error> {
    let by_orbit = orbit_copies(gens, reference);
    let by_frames = frame_search_copies(surface);
    if by_orbit != by_frames {
        return Err(Error::Structure(format!(
            "group orbit gives {} copies, frame search gives {}",
            by_orbit.len(),
            by_frames.len()
        )));
    }
    for &q in &by_orbit {
        surface.gq.induced(q)?.validate_gq(2, 2)?;
    }
    Ok(reference_first(by_orbit, reference))
}

pub fn reference_first(mut copies: Vec<PointSet>, reference: PointSet) -> Vec<PointSet> {
    copies.retain(|&q| q != reference);
    copies.insert(0, reference);
    copies
}

/// All ways to write a copy as a grid (9 points) plus a dual grid (6 points).
pub fn grid_splits(gq: &IncidenceStructure, copy: PointSet) -> Vec<(PointSet, PointSet)> {
    copy.iter()
        .combinations(6)
        .map(|c| c.into_iter().collect::<PointSet>())
        .filter(|&dual| gq.is_dual_grid(dual).unwrap_or(false))
        .filter_map(|dual| {
            let grid = copy - dual;
            gq.is_grid(grid).unwrap_or(false).then_some((grid, dual))
        })
        .collect()
}

/// Ways to split a 12-point set into two dual grids.
pub fn dual_grid_halves(gq: &IncidenceStructure, a: PointSet) -> Vec<[PointSet; 2]> {
    let Some(first) = a.first() else {
        return Vec::new();
    };
    (a - PointSet::singleton(first))
        .iter()
        .combinations(5)
        .filter_map(|c| {
            let half: PointSet = c.into_iter().chain([first]).collect();
            let rest = a - half;
            (gq.is_dual_grid(half).unwrap_or(false) && gq.is_dual_grid(rest).unwrap_or(false))
                .then_some([half, rest])
        })
        .collect()
}

/// A partition of the points into three grids and three dual grids.
#[derive(Clone, Debug, Serialize)]
pub struct PartitionWitness {
    pub grids: [PointSet; 3],
    pub dual_grids: [PointSet; 3],
    /// Index of a dual grid that forms a GQ(2,2) with every grid.
    pub anchor: usize,
    /// `pairs[d][g]`: dual grid `d` together with grid `g` is a GQ(2,2) copy.
    pub pairs: [[bool; 3]; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionReport {
    pub witness: Option<PartitionWitness>,
    /// Partitions in which some dual grid pairs with all three grids.
    pub anchored_partitions: usize,
    /// Some such partition has every dual grid pairing with every grid.
    pub full_pairing_exists: bool,
    /// Some such partition pairs the dual grids and grids one-to-one.
    pub perfect_matching_exists: bool,
}

pub fn partition_witness(gq: &IncidenceStructure, copies: &[PointSet]) -> PartitionReport {
    let copy_set: BTreeSet<PointSet> = copies.iter().copied().collect();
    // dual grid -> grids completing it to a copy
    let mut partners: std::collections::BTreeMap<PointSet, BTreeSet<PointSet>> = Default::default();
    for &q in copies {
        for (grid, dual) in grid_splits(gq, q) {
            partners.entry(dual).or_default().insert(grid);
        }
    }
    let mut report = PartitionReport {
        witness: None,
        anchored_partitions: 0,
        full_pairing_exists: false,
        perfect_matching_exists: false,
    };
    let mut seen = BTreeSet::new();
    for (&anchor, grids) in &partners {
        for (g1, g2, g3) in grids.iter().copied().tuple_combinations() {
            if !(g1.is_disjoint(g2) && g1.is_disjoint(g3) && g2.is_disjoint(g3)) {
                continue;
            }
            let rest = gq.universe() - anchor - g1 - g2 - g3;
            for [d2, d3] in dual_grid_halves(gq, rest) {
                let mut duals = [anchor, d2, d3];
                duals.sort();
                let mut gs = [g1, g2, g3];
                gs.sort();
                if !seen.insert((duals, gs)) {
                    continue;
                }
                let mut pairs = [[false; 3]; 3];
                for (d, dual) in duals.iter().enumerate() {
                    for (g, grid) in gs.iter().enumerate() {
                        pairs[d][g] = copy_set.contains(&(*dual | *grid));
                    }
                }
                report.anchored_partitions += 1;
                if pairs.iter().flatten().all(|&b| b) {
                    report.full_pairing_exists = true;
                }
                if (0..3)
                    .permutations(3)
                    .any(|p| (0..3).all(|d| pairs[d][p[d]]))
                {
                    report.perfect_matching_exists = true;
                }
                if report.witness.is_none() {
                    let anchor_idx = duals.iter().position(|&d| d == anchor).unwrap();
                    report.witness = Some(PartitionWitness {
                        grids: gs,
                        dual_grids: duals,
                        anchor: anchor_idx,
                        pairs,
                    });
                }
            }
        }
    }
    report
}

/// Splits of `O1 Δ O2` into two dual grids, for ovoids meeting in a
/// tricentric triad.
pub fn symmetric_difference_check(
    gq: &IncidenceStructure,
    o1: PointSet,
    o2: PointSet,
) -> Result<Vec<[PointSet; 2]>, Error> {
    let common = o1 & o2;
    if gq.classify_triad(common)?.tag != TriadKind::Tricentric {
        return Err(Error::Structure(format!(
            "{common:?} is not a tricentric triad"
        )));
    }
    let diff = o1 ^ o2;
    if diff.len() != 12 {
        return Err(Error::Cardinality {
            what: "symmetric difference",
            expected: 12,
            found: diff.len(),
        });
    }
    Ok(dual_grid_halves(gq, diff))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SymDiffCensus {
    /// Pairs on a common tricentric triad, by class pair.
    pub pairs: std::collections::BTreeMap<String, usize>,
    /// Of those, pairs whose symmetric difference is two dual grids.
    pub passing: std::collections::BTreeMap<String, usize>,
    pub example_plane_pair: Option<(usize, usize)>,
    pub example_tri_pair: Option<(usize, usize)>,
}

/// Scan every pair of plane ovoids / tri-tripods (relative to one copy)
/// meeting in a tricentric triad. `classes[i]` classifies ovoid `i`.
pub fn symmetric_difference_census(
    gq: &IncidenceStructure,
    ovoids: &[PointSet],
    classes: &[OvoidClass],
) -> SymDiffCensus {
    let mut census = SymDiffCensus::default();
    let eligible: Vec<usize> = (0..ovoids.len())
        .filter(|&i| matches!(classes[i], OvoidClass::Plane | OvoidClass::TriTripod))
        .collect();
    for (&a, &b) in eligible.iter().tuple_combinations() {
        let Ok(splits) = symmetric_difference_check(gq, ovoids[a], ovoids[b]) else {
            continue;
        };
        let key = pair_label(classes[a], classes[b]);
        *census.pairs.entry(key.clone()).or_default() += 1;
        if !splits.is_empty() {
            *census.passing.entry(key).or_default() += 1;
            match (classes[a], classes[b]) {
                (OvoidClass::Plane, OvoidClass::Plane) => {
                    census.example_plane_pair.get_or_insert((a, b));
                }
                _ => {
                    census.example_tri_pair.get_or_insert((a, b));
                }
            }
        }
    }
    census
}

fn pair_label(a: OvoidClass, b: OvoidClass) -> String {
    let name = |c| match c {
        OvoidClass::Plane => "plane",
        OvoidClass::TriTripod => "tri",
        OvoidClass::UniTripod => "uni",
    };
    let (x, y) = if a <= b { (a, b) } else { (b, a) };
    format!("{}-{}", name(x), name(y))
}

/// All points of `copy` have GF(2) coordinates.
pub fn is_prime_rational(surface: &HermitianSurface, copy: PointSet) -> bool {
    copy.iter().all(|p| surface.coords(p).is_prime_rational())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GramForm;
    use std::sync::OnceLock;

    fn surface() -> &'static HermitianSurface {
        static S: OnceLock<HermitianSurface> = OnceLock::new();
        S.get_or_init(|| HermitianSurface::build(GramForm::SymplecticJ).unwrap())
    }

    #[test]
    fn frame_search_finds_36_copies() {
        let s = surface();
        let copies = frame_search_copies(s);
        assert_eq!(copies.len(), 36);
        let q = s.canonical_gq22().unwrap();
        assert!(copies.contains(&q));
        assert_eq!(
            copies.iter().filter(|&&c| is_prime_rational(s, c)).count(),
            1
        );
        for &c in &copies {
            let sub = s.gq.induced(c).unwrap();
            assert!(sub.validate_gq(2, 2).is_ok());
            assert_eq!(sub.lines().len(), 15);
        }
    }

    #[test]
    fn canonical_copy_splits() {
        let s = surface();
        let q = s.canonical_gq22().unwrap();
        let splits = grid_splits(&s.gq, q);
        assert!(!splits.is_empty());
        for (g, d) in splits {
            assert_eq!(g.len() + d.len(), 15);
            assert!(s.gq.induced(g).unwrap().validate_gq(2, 1).is_ok());
        }
    }

    #[test]
    fn line_plus_point_is_not_a_dual_grid() {
        let s = surface();
        let l = s.gq.lines()[0];
        let extra = (0..45).find(|&p| !l.contains(p)).unwrap();
        assert!(!s.gq.is_dual_grid(l | PointSet::singleton(extra)).unwrap());
    }
}
