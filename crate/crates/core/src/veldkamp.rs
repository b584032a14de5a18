//! The Veldkamp space: points are geometric hyperplanes, and the line
//! through `H1`, `H2` is every `H` with `H ∩ H1 = H ∩ H2 = H1 ∩ H2`,
//! together with `H1` and `H2`.
//!
//! Hyperplanes are referred to by catalog id. A V-line is identified by its
//! member set; different generating pairs may produce different member sets
//! through the same two V-points.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use serde::Serialize;

use crate::hyperplanes::{HyperplaneCatalog, HyperplaneKind};
use crate::{HermitianSurface, IncidenceStructure, PointSet, TriadKind};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Composition {
    pub perps: usize,
    pub planes: usize,
    pub tripods: usize,
}

impl Composition {
    pub fn of(catalog: &HyperplaneCatalog, members: &[usize]) -> Composition {
        let mut c = Composition::default();
        for &h in members {
            match catalog.get(h).kind {
                HyperplaneKind::Perp { .. } => c.perps += 1,
                HyperplaneKind::PlaneOvoid { .. } => c.planes += 1,
                HyperplaneKind::Tripod { .. } => c.tripods += 1,
            }
        }
        c
    }
}

impl std::fmt::Display for Composition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}p/{}o/{}t", self.perps, self.planes, self.tripods)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoreType {
    FullLine,
    TricentricTriad,
    UnicentricTriad,
    SinglePoint,
    SixSet,
    Empty,
    Other,
}

impl CoreType {
    pub fn of(gq: &IncidenceStructure, core: PointSet) -> CoreType {
        if core.is_empty() {
            return CoreType::Empty;
        }
        if gq.lines().contains(&core) {
            return CoreType::FullLine;
        }
        match core.len() {
            1 => CoreType::SinglePoint,
            6 => CoreType::SixSet,
            3 => match gq.classify_triad(core).map(|c| c.tag) {
                Ok(TriadKind::Tricentric) => CoreType::TricentricTriad,
                Ok(TriadKind::Unicentric) => CoreType::UnicentricTriad,
                _ => CoreType::Other,
            },
            _ => CoreType::Other,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VLine {
    /// Sorted hyperplane ids.
    pub members: Vec<usize>,
    /// Pairs `(a, b)`, `a < b`, generating exactly this member set.
    pub generating_pairs: Vec<(usize, usize)>,
    /// Common intersection of any two members.
    pub core: PointSet,
}

impl VLine {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, h: usize) -> bool {
        self.members.binary_search(&h).is_ok()
    }
}

/// Member set of the V-line generated by `h1 != h2`.
pub fn vline_members(catalog: &HyperplaneCatalog, h1: usize, h2: usize) -> Vec<usize> {
    let (a, b) = (catalog.get(h1).points, catalog.get(h2).points);
    let core = a & b;
    catalog
        .all()
        .iter()
        .filter(|h| h.id == h1 || h.id == h2 || (h.points & a == core && h.points & b == core))
        .map(|h| h.id)
        .collect()
}

pub fn vline(catalog: &HyperplaneCatalog, h1: usize, h2: usize) -> VLine {
    let members = vline_members(catalog, h1, h2);
    VLine {
        members,
        generating_pairs: vec![(h1.min(h2), h1.max(h2))],
        core: catalog.get(h1).points & catalog.get(h2).points,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CensusKey {
    pub size: usize,
    pub composition: Composition,
    pub core: CoreType,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    #[serde(flatten)]
    pub key: CensusKey,
    pub count: usize,
}

#[derive(Clone, Debug)]
pub struct VeldkampCensus {
    /// Distinct V-lines ordered by member list.
    pub vlines: Vec<VLine>,
    pub compositions: Vec<Composition>,
    pub core_types: Vec<CoreType>,
    index: HashMap<Vec<usize>, usize>,
}

impl VeldkampCensus {
    /// V-lines generated by all pairs of distinct hyperplanes.
    pub fn build(gq: &IncidenceStructure, catalog: &HyperplaneCatalog) -> VeldkampCensus {
        let mut by_members: BTreeMap<Vec<usize>, VLine> = BTreeMap::new();
        for (a, b) in (0..catalog.len()).tuple_combinations() {
            let members = vline_members(catalog, a, b);
            by_members
                .entry(members)
                .and_modify(|l| l.generating_pairs.push((a, b)))
                .or_insert_with_key(|m| VLine {
                    members: m.clone(),
                    generating_pairs: vec![(a, b)],
                    core: catalog.get(a).points & catalog.get(b).points,
                });
        }
        let vlines: Vec<VLine> = by_members.into_values().collect();
        let compositions = vlines
            .iter()
            .map(|l| Composition::of(catalog, &l.members))
            .collect();
        let core_types = vlines.iter().map(|l| CoreType::of(gq, l.core)).collect();
        let index = vlines
            .iter()
            .enumerate()
            .map(|(i, l)| (l.members.clone(), i))
            .collect();
        VeldkampCensus {
            vlines,
            compositions,
            core_types,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.vlines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vlines.is_empty()
    }

    /// Index of the V-line with exactly these (sorted) members.
    pub fn find(&self, members: &[usize]) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn key(&self, i: usize) -> CensusKey {
        CensusKey {
            size: self.vlines[i].size(),
            composition: self.compositions[i],
            core: self.core_types[i],
        }
    }

    pub fn table(&self) -> Vec<CensusRow> {
        let mut counts: BTreeMap<CensusKey, usize> = BTreeMap::new();
        for i in 0..self.len() {
            *counts.entry(self.key(i)).or_default() += 1;
        }
        counts
            .into_iter()
            .map(|(key, count)| CensusRow { key, count })
            .collect()
    }

    pub fn count(&self, size: usize, composition: Composition, core: CoreType) -> usize {
        (0..self.len())
            .filter(|&i| {
                self.key(i)
                    == CensusKey {
                        size,
                        composition,
                        core,
                    }
            })
            .count()
    }

    /// Two distinct V-lines share at least two V-points.
    pub fn shares_two_points(&self) -> bool {
        let mut seen = HashSet::new();
        for l in &self.vlines {
            for (&a, &b) in l.members.iter().tuple_combinations() {
                if !seen.insert((a, b)) {
                    return true;
                }
            }
        }
        false
    }
}

pub const fn comp(perps: usize, planes: usize, tripods: usize) -> Composition {
    Composition {
        perps,
        planes,
        tripods,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubspaceReport {
    pub v_points: usize,
    pub perps: usize,
    pub plane_ovoids: usize,
    pub pencils: usize,
    /// Pencils whose member set is a census V-line.
    pub pencils_in_census: usize,
    /// Pencils by composition.
    pub types: BTreeMap<String, usize>,
    /// Pairs of V-points, and pairs on exactly one pencil.
    pub point_pairs: usize,
    pub pairs_on_one_pencil: usize,
    pub first_failure: Option<String>,
}

impl SubspaceReport {
    pub fn passes(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// The 85 hyperplanes that are plane sections (45 perps via tangent planes,
/// 40 plane ovoids via secant planes) and the 357 pencils of planes.
pub fn pg34_subspace_check(
    surface: &HermitianSurface,
    catalog: &HyperplaneCatalog,
    census: &VeldkampCensus,
) -> SubspaceReport {
    let space = &surface.space;
    let mut plane_to_h: Vec<Option<usize>> = vec![None; space.planes.len()];
    let mut failure: Option<String> = None;
    let mut fail = |msg: String| {
        failure.get_or_insert(msg);
    };
    let (mut perps, mut plane_ovoids) = (0, 0);
    for h in catalog.all() {
        let plane = match h.kind {
            HyperplaneKind::Perp { center } => {
                perps += 1;
                surface.tangent_plane(center).id
            }
            HyperplaneKind::PlaneOvoid { plane } => {
                plane_ovoids += 1;
                plane
            }
            HyperplaneKind::Tripod { .. } => continue,
        };
        if surface.plane_section(plane) != h.points {
            fail(format!(
                "hyperplane {} is not the section of plane {plane}",
                h.id
            ));
        }
        if let Some(prev) = plane_to_h[plane].replace(h.id) {
            fail(format!(
                "plane {plane} carries hyperplanes {prev} and {}",
                h.id
            ));
        }
    }
    let v_points = plane_to_h.iter().flatten().count();
    if v_points != space.planes.len() {
        fail(format!(
            "{v_points} of {} planes carry a hyperplane",
            space.planes.len()
        ));
    }

    let mut types: BTreeMap<String, usize> = BTreeMap::new();
    let mut pencils_in_census = 0;
    let mut pair_count: HashMap<(usize, usize), usize> = HashMap::new();
    for line in &space.lines {
        let mut members: Vec<usize> = space
            .pencil(line)
            .into_iter()
            .filter_map(|pl| plane_to_h[pl])
            .collect();
        members.sort_unstable();
        let composition = Composition::of(catalog, &members);
        *types.entry(composition.to_string()).or_default() += 1;
        match census.find(&members) {
            Some(_) => pencils_in_census += 1,
            None => fail(format!(
                "pencil of line {} ({members:?}) is not a V-line",
                line.id
            )),
        }
        for (&a, &b) in members.iter().tuple_combinations() {
            *pair_count.entry((a, b)).or_default() += 1;
        }
    }
    let points: Vec<usize> = plane_to_h.iter().flatten().copied().sorted().collect();
    let point_pairs = points.len() * points.len().saturating_sub(1) / 2;
    let pairs_on_one_pencil = points
        .iter()
        .tuple_combinations()
        .filter(|&(&a, &b)| pair_count.get(&(a, b)) == Some(&1))
        .count();
    if pairs_on_one_pencil != point_pairs {
        fail(format!(
            "{} of {point_pairs} V-point pairs lie on exactly one pencil",
            pairs_on_one_pencil
        ));
    }
    SubspaceReport {
        v_points,
        perps,
        plane_ovoids,
        pencils: space.lines.len(),
        pencils_in_census,
        types,
        point_pairs,
        pairs_on_one_pencil,
        first_failure: failure,
    }
}

/// Two V-lines sharing exactly three members.
#[derive(Clone, Debug, Serialize)]
pub struct SharedTripleWitness {
    pub with_plane_ovoids: VLine,
    pub with_tripods: VLine,
    pub shared: Vec<usize>,
    pub triad: PointSet,
}

/// Two V-points and several census V-lines through both.
#[derive(Clone, Debug, Serialize)]
pub struct PairWitness {
    pub pair: (usize, usize),
    pub vlines: Vec<VLine>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairSearch {
    pub required: usize,
    /// Largest number of qualifying V-lines through one pair.
    pub best: usize,
    pub pairs_at_best: usize,
    pub witness: Option<PairWitness>,
}

impl PairSearch {
    pub fn passes(&self) -> bool {
        self.best >= self.required
    }
}

/// Fans whose member set is not a census V-line, and what their pairs
/// generate instead.
#[derive(Clone, Debug, Serialize)]
pub struct FanDiscrepancy {
    pub fans: usize,
    pub fans_in_census: usize,
    pub example: Option<MissingFan>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MissingFan {
    pub members: Vec<usize>,
    /// Size of the V-line generated by each member pair.
    pub generated_sizes: Vec<((usize, usize), usize)>,
    /// Every generated V-line contains the fan.
    pub contained_in_all: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonlinearityReport {
    pub shared_triple: Option<SharedTripleWitness>,
    pub rosettes: PairSearch,
    pub fans: PairSearch,
    pub fan_discrepancy: FanDiscrepancy,
    pub not_partial_linear_space: bool,
}

impl NonlinearityReport {
    pub fn passes(&self) -> bool {
        self.shared_triple.is_some()
            && self.rosettes.passes()
            && self.fans.passes()
            && self.not_partial_linear_space
    }
}

fn pair_search(
    census: &VeldkampCensus,
    candidates: impl Iterator<Item = usize>,
    pair_filter: impl Fn(usize, usize) -> bool,
    required: usize,
) -> PairSearch {
    let mut through: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for i in candidates {
        for (&a, &b) in census.vlines[i].members.iter().tuple_combinations() {
            if pair_filter(a, b) {
                through.entry((a, b)).or_default().push(i);
            }
        }
    }
    let best = through.values().map(Vec::len).max().unwrap_or(0);
    let pairs_at_best = through.values().filter(|v| v.len() == best).count();
    let witness = through
        .iter()
        .find(|(_, v)| v.len() == best && best > 0)
        .map(|(&pair, v)| PairWitness {
            pair,
            vlines: v.iter().map(|&i| census.vlines[i].clone()).collect(),
        });
    PairSearch {
        required,
        best,
        pairs_at_best,
        witness,
    }
}

/// Members pairwise disjoint with union the whole point set.
fn is_partition(gq: &IncidenceStructure, sets: &[PointSet]) -> bool {
    let union = sets.iter().fold(PointSet::empty(), |acc, &s| acc | s);
    union == gq.universe() && sets.iter().map(|s| s.len()).sum::<usize>() == gq.n_points()
}

/// Tripods through `x`, pairwise meeting in `{x}`, covering all points not
/// collinear with `x`.
fn is_rosette_at(gq: &IncidenceStructure, x: usize, sets: &[PointSet]) -> bool {
    let base = PointSet::singleton(x);
    let rest: Vec<PointSet> = sets.iter().map(|&s| s - base).collect();
    sets.iter().all(|s| s.contains(x))
        && rest.iter().fold(PointSet::empty(), |acc, &s| acc | s) == gq.universe() - gq.perp(x)
        && rest.iter().map(|s| s.len()).sum::<usize>() == gq.n_points() - gq.perp(x).len()
}

/// `fans` lists every fan as sorted hyperplane ids.
pub fn nonlinearity_witnesses(
    gq: &IncidenceStructure,
    catalog: &HyperplaneCatalog,
    census: &VeldkampCensus,
    fans: &[Vec<usize>],
) -> NonlinearityReport {
    let h = |id: usize| catalog.get(id);

    // 3 perps + 2 plane ovoids and 3 perps + 2 tripods on one triad.
    let mut by_perps: BTreeMap<Vec<usize>, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, l) in census.vlines.iter().enumerate() {
        if l.size() != 5 || census.core_types[i] != CoreType::TricentricTriad {
            continue;
        }
        let perps: Vec<usize> = l
            .members
            .iter()
            .copied()
            .filter(|&m| h(m).is_perp())
            .collect();
        let entry = by_perps.entry(perps).or_default();
        match census.compositions[i] {
            c if c == comp(3, 2, 0) => entry.0.push(i),
            c if c == comp(3, 0, 2) => entry.1.push(i),
            _ => {}
        }
    }
    let shared_triple = by_perps.iter().find_map(|(perps, (planes, tripods))| {
        let (&a, &b) = (planes.first()?, tripods.first()?);
        let (la, lb) = (&census.vlines[a], &census.vlines[b]);
        let shared: Vec<usize> = la
            .members
            .iter()
            .copied()
            .filter(|&m| lb.contains(m))
            .collect();
        (shared == *perps && shared.len() == 3).then(|| SharedTripleWitness {
            with_plane_ovoids: la.clone(),
            with_tripods: lb.clone(),
            shared,
            triad: la.core,
        })
    });

    // perp + 4 tripods forming a rosette at the perp's center.
    let rosette_lines = (0..census.len()).filter(|&i| {
        let l = &census.vlines[i];
        census.compositions[i] == comp(1, 0, 4) && {
            let center = match h(l.members[0]).kind {
                HyperplaneKind::Perp { center } => center,
                _ => unreachable!("perps have the smallest ids"),
            };
            let tripods: Vec<PointSet> = l.members[1..].iter().map(|&m| h(m).points).collect();
            is_rosette_at(gq, center, &tripods)
        }
    });
    let rosettes = pair_search(
        census,
        rosette_lines,
        |a, b| h(a).is_perp() && h(b).is_tripod(),
        3,
    );

    // fans
    let fan_lines = (0..census.len()).filter(|&i| {
        let l = &census.vlines[i];
        census.compositions[i] == comp(0, 1, 4)
            && is_partition(
                gq,
                &l.members.iter().map(|&m| h(m).points).collect::<Vec<_>>(),
            )
    });
    let fan_search = pair_search(
        census,
        fan_lines,
        |a, b| {
            h(a).is_plane_ovoid() && h(b).is_tripod() || h(a).is_tripod() && h(b).is_plane_ovoid()
        },
        4,
    );

    let missing: Vec<&Vec<usize>> = fans.iter().filter(|f| census.find(f).is_none()).collect();
    let example = missing.first().map(|f| {
        let generated: Vec<((usize, usize), Vec<usize>)> = f
            .iter()
            .tuple_combinations()
            .map(|(&a, &b)| ((a, b), vline_members(catalog, a, b)))
            .collect();
        MissingFan {
            members: f.to_vec(),
            contained_in_all: generated
                .iter()
                .all(|(_, m)| f.iter().all(|x| m.binary_search(x).is_ok())),
            generated_sizes: generated.into_iter().map(|(p, m)| (p, m.len())).collect(),
        }
    });

    NonlinearityReport {
        shared_triple,
        rosettes,
        fans: fan_search,
        fan_discrepancy: FanDiscrepancy {
            fans: fans.len(),
            fans_in_census: fans.len() - missing.len(),
            example,
        },
        not_partial_linear_space: census.shares_two_points(),
    }
}

/// V-lines through the perp of `x` made of that perp and two tripods on a
/// unicentric triad centred at `x`.
pub fn unicentric_vlines_at(census: &VeldkampCensus, x: usize) -> usize {
    (0..census.len())
        .filter(|&i| {
            census.key(i)
                == CensusKey {
                    size: 3,
                    composition: comp(1, 0, 2),
                    core: CoreType::UnicentricTriad,
                }
                && census.vlines[i].contains(x)
        })
        .count()
}

/// Ovoids containing each tricentric triad (as a set of distinct counts)
/// and the sizes of the V-lines generated by two perps meeting in one.
pub fn tricentric_triad_stats(
    gq: &IncidenceStructure,
    catalog: &HyperplaneCatalog,
) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let mut ovoid_counts = BTreeSet::new();
    let mut perp_line_sizes = BTreeSet::new();
    for t in gq.tricentric_triads() {
        ovoid_counts.insert(
            catalog
                .ovoids()
                .iter()
                .filter(|o| t.is_subset(o.points))
                .count(),
        );
        let centers = gq.perp_of_set(t).to_vec();
        perp_line_sizes.insert(vline_members(catalog, centers[0], centers[1]).len());
    }
    (ovoid_counts, perp_line_sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GramForm;
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
    fn perps_on_a_line() {
        let (s, c) = fixture();
        let line = s.gq.lines()[0];
        let pts = line.to_vec();
        let l = vline(c, pts[0], pts[1]);
        assert_eq!(l.members, pts);
        assert_eq!(l.core, line);
        assert_eq!(CoreType::of(&s.gq, l.core), CoreType::FullLine);
    }

    #[test]
    fn vline_is_symmetric_and_exact() {
        let (_, c) = fixture();
        for (a, b) in [(0, 1), (3, 60), (50, 200), (100, 244), (7, 45)] {
            let (la, lb) = (vline_members(c, a, b), vline_members(c, b, a));
            assert_eq!(la, lb);
            let core = c.get(a).points & c.get(b).points;
            for &m in &la {
                if m != a && m != b {
                    assert_eq!(c.get(m).points & c.get(a).points, core);
                    assert_eq!(c.get(m).points & c.get(b).points, core);
                }
            }
        }
    }

    #[test]
    fn plane_ovoids_on_a_tricentric_triad() {
        let (s, c) = fixture();
        let planes = c.plane_ovoid_ids();
        let (a, b) = planes
            .iter()
            .tuple_combinations()
            .map(|(&a, &b)| (a + 45, b + 45))
            .find(|&(a, b)| {
                let t = c.get(a).points & c.get(b).points;
                CoreType::of(&s.gq, t) == CoreType::TricentricTriad
            })
            .unwrap();
        let l = vline(c, a, b);
        assert_eq!(Composition::of(c, &l.members), comp(3, 2, 0));
    }
}
