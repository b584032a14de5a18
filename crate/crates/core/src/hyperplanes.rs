//! Geometric hyperplanes of GQ(4,2): perps, plane ovoids and tripods.
//!
//! Completeness is established twice. [`enumerate_hyperplane_sets`] runs a
//! depth-first search over lines (each line is either full or meets the set
//! in one point) and makes no assumption about what hyperplanes look like;
//! [`enumerate_ovoids`] finds ovoids as exact covers of the line set.
//! [`HyperplaneCatalog::build`] requires the two to agree.

use std::collections::HashMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::exact_cover::ExactCover;
use crate::{Error, HermitianSurface, IncidenceStructure, PointSet, TriadKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HyperplaneKind {
    Perp { center: usize },
    PlaneOvoid { plane: usize },
    Tripod { triads: [PointSet; 3] },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperplane {
    pub id: usize,
    pub points: PointSet,
    #[serde(flatten)]
    pub kind: HyperplaneKind,
}

impl Hyperplane {
    pub fn is_perp(&self) -> bool {
        matches!(self.kind, HyperplaneKind::Perp { .. })
    }

    pub fn is_plane_ovoid(&self) -> bool {
        matches!(self.kind, HyperplaneKind::PlaneOvoid { .. })
    }

    pub fn is_tripod(&self) -> bool {
        matches!(self.kind, HyperplaneKind::Tripod { .. })
    }

    pub fn is_ovoid(&self) -> bool {
        !self.is_perp()
    }
}

/// Every proper subset meeting each line in one or all of its points.
pub fn enumerate_hyperplane_sets(gq: &IncidenceStructure) -> Vec<PointSet> {
    let mut out = Vec::new();
    line_dfs(gq, 0, PointSet::empty(), PointSet::empty(), &mut out);
    out.sort();
    out
}

fn consistent(gq: &IncidenceStructure, inside: PointSet, outside: PointSet) -> bool {
    gq.lines().iter().all(|&l| {
        let i = (l & inside).len();
        let o = (l & outside).len();
        o < l.len() && !(i >= 2 && o > 0)
    })
}

fn line_dfs(
    gq: &IncidenceStructure,
    idx: usize,
    inside: PointSet,
    outside: PointSet,
    out: &mut Vec<PointSet>,
) {
    let lines = gq.lines();
    if idx == lines.len() {
        if inside != gq.universe() {
            out.push(inside);
        }
        return;
    }
    let l = lines[idx];
    let mut descend = |inside: PointSet, outside: PointSet| {
        if consistent(gq, inside, outside) {
            line_dfs(gq, idx + 1, inside, outside, out);
        }
    };
    let hit = l & inside;
    let blocked = l & outside;
    match hit.len() {
        0 => {
            if blocked.is_empty() {
                descend(inside | l, outside);
            }
            for p in (l - outside).iter() {
                let single = PointSet::singleton(p);
                descend(inside | single, outside | (l - single));
            }
        }
        1 => {
            if blocked.is_empty() {
                descend(inside | l, outside);
            }
            descend(inside, outside | (l - hit));
        }
        _ => {
            if blocked.is_empty() {
                descend(inside | l, outside);
            }
        }
    }
}

/// Ovoids as exact covers: items are lines, each point covers its lines.
pub fn enumerate_ovoids(gq: &IncidenceStructure) -> Vec<PointSet> {
    let mut ec = ExactCover::new(gq.lines().len());
    for p in 0..gq.n_points() {
        let through: Vec<usize> = gq.lines_through(p).collect();
        ec.add_option(&through);
    }
    let mut ovoids: Vec<PointSet> = ec
        .solutions()
        .into_iter()
        .map(|sol| sol.into_iter().collect())
        .collect();
    ovoids.sort();
    ovoids
}

pub fn is_ovoid(gq: &IncidenceStructure, o: PointSet) -> bool {
    gq.lines().iter().all(|&l| (l & o).len() == 1)
}

pub fn is_hyperplane(gq: &IncidenceStructure, h: PointSet) -> bool {
    h != gq.universe()
        && gq.lines().iter().all(|&l| {
            let k = (l & h).len();
            k == 1 || k == l.len()
        })
}

/// Span shape of an ovoid in PG(3,4).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OvoidShape {
    Plane { plane: usize },
    Tripod,
}

pub fn classify_ovoid(surface: &HermitianSurface, o: PointSet) -> Result<OvoidShape, Error> {
    if !is_ovoid(&surface.gq, o) {
        return Err(Error::NotAnOvoid(o));
    }
    match surface.span_rank(o) {
        3 => {
            let plane = surface
                .containing_plane(o)
                .ok_or_else(|| Error::Structure(format!("no plane through {o:?}")))?;
            Ok(OvoidShape::Plane { plane })
        }
        4 => Ok(OvoidShape::Tripod),
        r => Err(Error::Structure(format!("ovoid {o:?} spans rank {r}"))),
    }
}

/// Tricentric triads contained in `a`.
pub fn tricentric_triads_in(gq: &IncidenceStructure, a: PointSet) -> Vec<PointSet> {
    a.iter()
        .tuple_combinations()
        .map(|(x, y, z)| [x, y, z].iter().collect::<PointSet>())
        .filter(|&t| {
            gq.classify_triad(t)
                .map(|c| c.tag == TriadKind::Tricentric)
                .unwrap_or(false)
        })
        .collect()
}

/// All partitions of `o` into three pairwise disjoint tricentric triads.
pub fn triad_partitions(gq: &IncidenceStructure, o: PointSet) -> Vec<[PointSet; 3]> {
    let members: Vec<usize> = o.iter().collect();
    let triads = tricentric_triads_in(gq, o);
    let mut ec = ExactCover::new(members.len());
    for t in &triads {
        let items: Vec<usize> = t
            .iter()
            .map(|p| members.binary_search(&p).unwrap())
            .collect();
        ec.add_option(&items);
    }
    ec.solutions()
        .into_iter()
        .filter(|sol| sol.len() == 3)
        .map(|sol| {
            let mut parts = [triads[sol[0]], triads[sol[1]], triads[sol[2]]];
            parts.sort();
            parts
        })
        .collect()
}

/// The unique split of a tripod into three tricentric triads.
pub fn tripod_decomposition(gq: &IncidenceStructure, o: PointSet) -> Result<[PointSet; 3], Error> {
    let parts = triad_partitions(gq, o);
    match parts.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::Structure(format!(
            "{o:?} has {} triad partitions, expected exactly one",
            parts.len()
        ))),
    }
}

/// `(P \ {x,y}^⊥⊥) ∪ {x,y}^⊥` for distinct points `x`, `y` of a plane ovoid.
pub fn derive_tripod(
    gq: &IncidenceStructure,
    plane_ovoid: PointSet,
    x: usize,
    y: usize,
) -> Result<PointSet, Error> {
    if !plane_ovoid.contains(x) || !plane_ovoid.contains(y) {
        return Err(Error::Structure(format!(
            "{x}, {y} not both in {plane_ovoid:?}"
        )));
    }
    let hyperbolic = gq.hyperbolic_line(x, y)?;
    if !hyperbolic.is_subset(plane_ovoid) {
        return Err(Error::Structure(format!(
            "hyperbolic line {hyperbolic:?} leaves {plane_ovoid:?}"
        )));
    }
    let pair: PointSet = [x, y].iter().collect();
    Ok((plane_ovoid - hyperbolic) | gq.perp_of_set(pair))
}

/// Class of an ovoid relative to a GQ(2,2) copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OvoidClass {
    Plane,
    TriTripod,
    UniTripod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RelativeClass {
    pub tag: OvoidClass,
    pub shared_triad: PointSet,
}

/// Classify an ovoid against a GQ(2,2) copy through the triad they share.
/// A plane ovoid must share a tricentric triad.
pub fn classify_relative(
    gq: &IncidenceStructure,
    o: PointSet,
    is_plane: bool,
    copy: PointSet,
) -> Result<RelativeClass, Error> {
    let shared = o & copy;
    let cls = gq.classify_triad(shared)?;
    let tag = match (is_plane, cls.tag) {
        (true, TriadKind::Tricentric) => OvoidClass::Plane,
        (false, TriadKind::Tricentric) => OvoidClass::TriTripod,
        (false, TriadKind::Unicentric) => OvoidClass::UniTripod,
        (_, other) => {
            return Err(Error::Structure(format!(
                "ovoid {o:?} meets the copy in a {other:?} triad"
            )))
        }
    };
    Ok(RelativeClass {
        tag,
        shared_triad: shared,
    })
}

/// The 245 hyperplanes: ids `0..45` are perps ordered by center, ids
/// `45..245` are ovoids in ascending bitset order.
#[derive(Clone, Debug)]
pub struct HyperplaneCatalog {
    hyperplanes: Vec<Hyperplane>,
    n_perps: usize,
    index: HashMap<PointSet, usize>,
}

impl HyperplaneCatalog {
    pub fn build(surface: &HermitianSurface) -> Result<HyperplaneCatalog, Error> {
        let gq = &surface.gq;
        let dfs = enumerate_hyperplane_sets(gq);
        let ovoids = enumerate_ovoids(gq);
        let n_perps = gq.n_points();

        let mut hyperplanes = Vec::with_capacity(n_perps + ovoids.len());
        for center in 0..n_perps {
            hyperplanes.push(Hyperplane {
                id: center,
                points: gq.perp(center),
                kind: HyperplaneKind::Perp { center },
            });
        }
        for &o in &ovoids {
            let kind = match classify_ovoid(surface, o)? {
                OvoidShape::Plane { plane } => HyperplaneKind::PlaneOvoid { plane },
                OvoidShape::Tripod => HyperplaneKind::Tripod {
                    triads: tripod_decomposition(gq, o)?,
                },
            };
            hyperplanes.push(Hyperplane {
                id: hyperplanes.len(),
                points: o,
                kind,
            });
        }

        let mut union: Vec<PointSet> = hyperplanes.iter().map(|h| h.points).collect();
        union.sort();
        if union != dfs {
            return Err(Error::Structure(format!(
                "line search found {} hyperplanes, perps and exact-cover ovoids give {}",
                dfs.len(),
                union.len()
            )));
        }
        let index = hyperplanes.iter().map(|h| (h.points, h.id)).collect();
        Ok(HyperplaneCatalog {
            hyperplanes,
            n_perps,
            index,
        })
    }

    pub fn all(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn get(&self, id: usize) -> &Hyperplane {
        &self.hyperplanes[id]
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn n_perps(&self) -> usize {
        self.n_perps
    }

    pub fn perps(&self) -> &[Hyperplane] {
        &self.hyperplanes[..self.n_perps]
    }

    pub fn ovoids(&self) -> &[Hyperplane] {
        &self.hyperplanes[self.n_perps..]
    }

    /// Point sets of the ovoids, indexed by ovoid id (`hyperplane id - 45`).
    pub fn ovoid_sets(&self) -> Vec<PointSet> {
        self.ovoids().iter().map(|h| h.points).collect()
    }

    pub fn ovoid(&self, ovoid_id: usize) -> &Hyperplane {
        &self.hyperplanes[self.n_perps + ovoid_id]
    }

    pub fn hyperplane_id(&self, points: PointSet) -> Option<usize> {
        self.index.get(&points).copied()
    }

    pub fn ovoid_id(&self, points: PointSet) -> Option<usize> {
        self.hyperplane_id(points)
            .filter(|&id| id >= self.n_perps)
            .map(|id| id - self.n_perps)
    }

    pub fn plane_ovoid_ids(&self) -> Vec<usize> {
        (0..self.ovoids().len())
            .filter(|&o| self.ovoid(o).is_plane_ovoid())
            .collect()
    }

    pub fn tripod_ids(&self) -> Vec<usize> {
        (0..self.ovoids().len())
            .filter(|&o| self.ovoid(o).is_tripod())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GramForm;
    use std::collections::BTreeSet;
    use std::sync::OnceLock;

    fn fixture() -> &'static (HermitianSurface, HyperplaneCatalog) {
        static F: OnceLock<(HermitianSurface, HyperplaneCatalog)> = OnceLock::new();
        F.get_or_init(|| {
            let s = HermitianSurface::build(GramForm::SymplecticJ).unwrap();
            let c = HyperplaneCatalog::build(&s).unwrap();
            (s, c)
        })
    }

    #[test]
    fn counts() {
        let (_, cat) = fixture();
        assert_eq!(cat.len(), 245);
        assert_eq!(cat.perps().len(), 45);
        assert_eq!(cat.ovoids().len(), 200);
        assert_eq!(cat.plane_ovoid_ids().len(), 40);
        assert_eq!(cat.tripod_ids().len(), 160);
    }

    #[test]
    fn hyperplanes_with_a_full_line_are_perps() {
        let (s, cat) = fixture();
        for h in cat.all() {
            let full = s.gq.lines().iter().any(|l| l.is_subset(h.points));
            assert_eq!(full, h.is_perp());
            if h.is_ovoid() {
                assert_eq!(h.points.len(), 9);
            } else {
                assert_eq!(h.points.len(), 13);
            }
        }
    }

    #[test]
    fn every_line_meets_in_one_or_five() {
        let (s, cat) = fixture();
        for h in cat.all() {
            for &l in s.gq.lines() {
                let k = (l & h.points).len();
                assert!(k == 1 || k == 5);
                let c = (l - h.points).len();
                assert!(c == 0 || c == 4);
            }
        }
    }

    #[test]
    fn ovoids_through_each_point() {
        let (_, cat) = fixture();
        let ovoids = cat.ovoid_sets();
        for p in 0..45 {
            assert_eq!(
                ovoids.iter().filter(|o| o.contains(p)).count(),
                200 * 9 / 45
            );
        }
    }

    #[test]
    fn plane_ovoids_are_secant_plane_sections() {
        let (s, cat) = fixture();
        let secant: BTreeSet<usize> = s.secant_planes().into_iter().collect();
        let mut seen = BTreeSet::new();
        for h in cat.ovoids() {
            if let HyperplaneKind::PlaneOvoid { plane } = h.kind {
                assert_eq!(s.plane_section(plane), h.points);
                assert_eq!(s.span_rank(h.points), 3);
                seen.insert(plane);
            } else {
                assert_eq!(s.span_rank(h.points), 4);
            }
        }
        assert_eq!(seen, secant);
        for &pl in &secant {
            assert!(is_ovoid(&s.gq, s.plane_section(pl)));
        }
    }

    #[test]
    fn plane_ovoids_have_four_triad_partitions() {
        let (s, cat) = fixture();
        for o in cat.plane_ovoid_ids() {
            let pts = cat.ovoid(o).points;
            assert_eq!(tricentric_triads_in(&s.gq, pts).len(), 12);
            assert_eq!(triad_partitions(&s.gq, pts).len(), 4);
            assert!(tripod_decomposition(&s.gq, pts).is_err());
        }
        for o in cat.tripod_ids() {
            assert_eq!(triad_partitions(&s.gq, cat.ovoid(o).points).len(), 1);
        }
    }

    #[test]
    fn tripod_triads_lie_on_concurrent_secant_lines() {
        let (s, cat) = fixture();
        for h in cat.ovoids() {
            let HyperplaneKind::Tripod { triads } = h.kind else {
                continue;
            };
            let masks: Vec<u128> = triads
                .iter()
                .map(|t| {
                    let pts: Vec<usize> = t.iter().collect();
                    let line = s.joining_line(pts[0], pts[1]);
                    assert_eq!(s.line_section(line.id), *t);
                    assert_eq!(s.gq.hyperbolic_line(pts[0], pts[1]).unwrap(), *t);
                    line.mask
                })
                .collect();
            let common = masks[0] & masks[1] & masks[2];
            assert_eq!(common.count_ones(), 1);
            assert!(!s.is_isotropic(common.trailing_zeros() as usize));
        }
    }

    #[test]
    fn derived_tripods_cover_all_tripods() {
        let (s, cat) = fixture();
        let mut image = BTreeSet::new();
        for o in cat.plane_ovoid_ids() {
            let p = cat.ovoid(o).points;
            for (x, y) in p.iter().tuple_combinations() {
                assert!(s.gq.hyperbolic_line(x, y).unwrap().is_subset(p));
                let t = derive_tripod(&s.gq, p, x, y).unwrap();
                assert_eq!(classify_ovoid(s, t).unwrap(), OvoidShape::Tripod);
                image.insert(t);
            }
        }
        let tripods: BTreeSet<PointSet> = cat
            .tripod_ids()
            .iter()
            .map(|&o| cat.ovoid(o).points)
            .collect();
        assert_eq!(image, tripods);
    }

    #[test]
    fn relative_classes_for_canonical_copy() {
        let (s, cat) = fixture();
        let q = s.canonical_gq22().unwrap();
        let mut tally = HashMap::new();
        for h in cat.ovoids() {
            let cls = classify_relative(&s.gq, h.points, h.is_plane_ovoid(), q).unwrap();
            assert_eq!(cls.shared_triad.len(), 3);
            *tally.entry(cls.tag).or_insert(0) += 1;
        }
        assert_eq!(tally[&OvoidClass::Plane], 40);
        assert_eq!(tally[&OvoidClass::TriTripod], 40);
        assert_eq!(tally[&OvoidClass::UniTripod], 120);
    }

    #[test]
    fn grid_hyperplanes_via_generic_dfs() {
        // 3x3 grid: hyperplanes are the 9 "crosses" (perps) and 6 transversals.
        let set = |xs: &[usize]| xs.iter().collect::<PointSet>();
        let mut lines = Vec::new();
        for r in 0..3 {
            lines.push(set(&[3 * r, 3 * r + 1, 3 * r + 2]));
        }
        for c in 0..3 {
            lines.push(set(&[c, c + 3, c + 6]));
        }
        let g = IncidenceStructure::new(9, lines).unwrap();
        let hs = enumerate_hyperplane_sets(&g);
        assert_eq!(hs.len(), 9 + 6);
        assert_eq!(enumerate_ovoids(&g).len(), 6);
    }
}
