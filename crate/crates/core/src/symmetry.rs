//! Automorphisms of a point-line geometry and orbits of its subsets.
//!
//! The group is found by individualization and colour refinement on the
//! collinearity graph. For a base `b₁, b₂, ..` the orbit of `bᵢ` under the
//! pointwise stabilizer of `b₁..bᵢ₋₁` is computed exactly, deepest level
//! first, by searching for one automorphism per candidate image not yet
//! reached. The product of these orbit lengths is the group order.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::{IncidenceStructure, PointSet};

/// A permutation of `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation((0..n).collect())
    }

    /// Fails unless `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Option<Permutation> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, p: usize) -> usize {
        self.0[p]
    }

    pub fn apply_set(&self, s: PointSet) -> PointSet {
        s.iter().map(|p| self.0[p]).collect()
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&p| other.0[p]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }
}

/// True iff `g` maps the line set of `geom` onto itself.
pub fn preserves_lines(geom: &IncidenceStructure, g: &Permutation) -> bool {
    let mut lines: Vec<PointSet> = geom.lines().to_vec();
    let mut images: Vec<PointSet> = lines.iter().map(|&l| g.apply_set(l)).collect();
    lines.sort();
    images.sort();
    lines == images
}

/// Generators and order of the automorphism group.
#[derive(Clone, Debug, Serialize)]
pub struct AutomorphismGroup {
    pub order: u64,
    pub base: Vec<usize>,
    /// Length of the basic orbit at each base level.
    pub basic_orbits: Vec<usize>,
    pub generators: Vec<Permutation>,
}

impl AutomorphismGroup {
    pub fn degree(&self) -> usize {
        self.generators.first().map_or(0, Permutation::len)
    }

    /// Orbits of `0..n` under the group.
    pub fn point_orbits(&self, n: usize) -> Vec<Vec<usize>> {
        let points: Vec<usize> = (0..n).collect();
        orbits(&self.generators, &points, |g, &p| g.apply(p))
            .into_iter()
            .map(|orb| orb.into_iter().map(|i| points[i]).collect())
            .collect()
    }
}

/// Compute the full automorphism group of `geom`.
pub fn automorphism_group(geom: &IncidenceStructure) -> AutomorphismGroup {
    let search = Search::new(geom);
    let n = geom.n_points();

    // Base: individualize the first vertex of the first non-singleton cell until discrete.
    let mut base = Vec::new();
    loop {
        let colors = search.refine_single(&base);
        match first_nontrivial_cell(&colors) {
            Some(v) => base.push(v),
            None => break,
        }
    }

    let mut generators: Vec<Permutation> = Vec::new();
    let mut basic_orbits = vec![0; base.len()];
    for level in (0..base.len()).rev() {
        let prefix = &base[..level];
        let target = base[level];
        // Candidates: the cell of `target` after individualizing the prefix.
        let before = search.refine_single(prefix);
        let candidates: Vec<usize> = (0..n).filter(|&v| before[v] == before[target]).collect();
        let mut orbit = orbit_of(&generators, target);
        for &c in &candidates {
            if orbit.contains(&c) {
                continue;
            }
            let mut right = prefix.to_vec();
            right.push(c);
            let mut left = prefix.to_vec();
            left.push(target);
            if let Some(g) = search.find(&left, &right) {
                generators.push(g);
                orbit = orbit_of(&generators, target);
            }
        }
        basic_orbits[level] = orbit.len();
    }
    let order = basic_orbits.iter().map(|&k| k as u64).product();
    AutomorphismGroup {
        order,
        base,
        basic_orbits,
        generators,
    }
}

fn orbit_of(gens: &[Permutation], p: usize) -> std::collections::BTreeSet<usize> {
    let mut seen = std::collections::BTreeSet::from([p]);
    let mut queue = VecDeque::from([p]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply(x);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn first_nontrivial_cell(colors: &[usize]) -> Option<usize> {
    let mut size: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in colors {
        *size.entry(c).or_default() += 1;
    }
    let cell = size.iter().find(|(_, &k)| k > 1).map(|(&c, _)| c)?;
    colors.iter().position(|&c| c == cell)
}

/// A vertex colour with the multiset of its neighbours' colours.
type Signature = (usize, Vec<(usize, usize)>);

struct Search<'a> {
    geom: &'a IncidenceStructure,
    adjacency: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(geom: &'a IncidenceStructure) -> Search<'a> {
        let adjacency = (0..geom.n_points())
            .map(|p| (geom.perp(p) - PointSet::singleton(p)).to_vec())
            .collect();
        Search { geom, adjacency }
    }

    fn individualized(&self, seq: &[usize]) -> Vec<usize> {
        let mut colors = vec![0; self.geom.n_points()];
        for (i, &v) in seq.iter().enumerate() {
            colors[v] = i + 1;
        }
        colors
    }

    fn refine_single(&self, seq: &[usize]) -> Vec<usize> {
        let c = self.individualized(seq);
        self.refine_pair(c.clone(), c)
            .expect("a colouring is compatible with itself")
            .0
    }

    /// Colour refinement applied to two colourings with a shared relabelling.
    /// Returns `None` as soon as the colour class sizes differ.
    fn refine_pair(
        &self,
        mut left: Vec<usize>,
        mut right: Vec<usize>,
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut n_colors = 0;
        loop {
            let sig = |colors: &[usize], v: usize| -> (usize, Vec<(usize, usize)>) {
                let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
                for &u in &self.adjacency[v] {
                    *counts.entry(colors[u]).or_default() += 1;
                }
                (colors[v], counts.into_iter().collect())
            };
            let ls: Vec<_> = (0..left.len()).map(|v| sig(&left, v)).collect();
            let rs: Vec<_> = (0..right.len()).map(|v| sig(&right, v)).collect();
            let mut table: BTreeMap<&Signature, usize> = BTreeMap::new();
            for s in ls.iter().chain(rs.iter()) {
                table.entry(s).or_default();
            }
            for (i, v) in table.values_mut().enumerate() {
                *v = i;
            }
            left = ls.iter().map(|s| table[s]).collect();
            right = rs.iter().map(|s| table[s]).collect();
            let mut lc = vec![0usize; table.len()];
            let mut rc = vec![0usize; table.len()];
            left.iter().for_each(|&c| lc[c] += 1);
            right.iter().for_each(|&c| rc[c] += 1);
            if lc != rc {
                return None;
            }
            if table.len() == n_colors {
                return Some((left, right));
            }
            n_colors = table.len();
        }
    }

    /// An automorphism mapping `left[i]` to `right[i]` for all `i`, if any.
    fn find(&self, left: &[usize], right: &[usize]) -> Option<Permutation> {
        let (l, r) = self.refine_pair(self.individualized(left), self.individualized(right))?;
        self.extend(l, r)
    }

    fn extend(&self, left: Vec<usize>, right: Vec<usize>) -> Option<Permutation> {
        let Some(v) = first_nontrivial_cell(&left) else {
            let mut images = vec![0; left.len()];
            for (u, &c) in left.iter().enumerate() {
                images[u] = right.iter().position(|&d| d == c)?;
            }
            let g = Permutation::from_images(images)?;
            return self.is_automorphism(&g).then_some(g);
        };
        let fresh = left.len() + left.iter().max().copied().unwrap_or(0) + 1;
        for w in (0..right.len()).filter(|&w| right[w] == left[v]) {
            let mut l = left.clone();
            let mut r = right.clone();
            l[v] = fresh;
            r[w] = fresh;
            if let Some((l2, r2)) = self.refine_pair(l, r) {
                if let Some(g) = self.extend(l2, r2) {
                    return Some(g);
                }
            }
        }
        None
    }

    fn is_automorphism(&self, g: &Permutation) -> bool {
        (0..self.adjacency.len()).all(|v| {
            self.adjacency[v]
                .iter()
                .all(|&u| self.geom.collinear(g.apply(v), g.apply(u)))
        }) && preserves_lines(self.geom, g)
    }
}

/// Partition `objects` (by index) into orbits under the group generated by
/// `gens`. Objects are assumed distinct; images not in `objects` panic.
/// Orbits are listed by smallest member, each sorted.
pub fn orbits<T, F>(gens: &[Permutation], objects: &[T], act: F) -> Vec<Vec<usize>>
where
    T: Eq + Hash + Clone,
    F: Fn(&Permutation, &T) -> T,
{
    let index: HashMap<&T, usize> = objects.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let mut orbit_of = vec![usize::MAX; objects.len()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..objects.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        orbit_of[start] = id;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let img = act(g, &objects[i]);
                let j = *index
                    .get(&img)
                    .expect("object set is closed under the group");
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Orbit sizes sorted descending.
pub fn orbit_sizes(orbits: &[Vec<usize>]) -> Vec<usize> {
    let mut s: Vec<usize> = orbits.iter().map(Vec::len).collect();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

/// Generators of the setwise stabilizer of `seed` (Schreier generators
/// from a transversal of its orbit).
pub fn stabilizer_generators(gens: &[Permutation], seed: PointSet) -> Vec<Permutation> {
    let n = gens.first().map_or(0, Permutation::len);
    let mut transversal: HashMap<PointSet, Permutation> =
        HashMap::from([(seed, Permutation::identity(n))]);
    let mut queue = VecDeque::from([seed]);
    while let Some(s) = queue.pop_front() {
        let u = transversal[&s].clone();
        for g in gens {
            let img = g.apply_set(s);
            if let std::collections::hash_map::Entry::Vacant(e) = transversal.entry(img) {
                e.insert(u.then(g));
                queue.push_back(img);
            }
        }
    }
    let mut out: Vec<Permutation> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut keys: Vec<&PointSet> = transversal.keys().collect();
    keys.sort();
    for s in keys {
        let u = &transversal[s];
        for g in gens {
            let img = g.apply_set(*s);
            let schreier = u.then(g).then(&transversal[&img].inverse());
            if !schreier.is_identity() && seen.insert(schreier.clone()) {
                out.push(schreier);
            }
        }
    }
    out
}

/// Every element of the group generated by `gens` (closure by BFS).
/// Only sensible for small groups.
pub fn enumerate_group(gens: &[Permutation]) -> Vec<Permutation> {
    let n = gens.first().map_or(0, Permutation::len);
    let id = Permutation::identity(n);
    let mut seen = std::collections::HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    out
}
