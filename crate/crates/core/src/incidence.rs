//! Point-line incidence structures over at most 64 points: generalized
//! quadrangle axioms, perps, triads, hyperbolic lines, grids and dual grids.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::{Error, PointSet};

/// Points are `0..n_points`; each line is a [`PointSet`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceStructure {
    n_points: usize,
    lines: Vec<PointSet>,
    #[serde(skip)]
    collinear: Vec<PointSet>,
}

impl IncidenceStructure {
    /// Build a structure, checking that every line has at least two points
    /// and that two distinct points share at most one line.
    pub fn new(n_points: usize, lines: Vec<PointSet>) -> Result<IncidenceStructure, Error> {
        if n_points > PointSet::CAPACITY {
            return Err(Error::Structure(format!(
                "{n_points} points exceed bitset capacity"
            )));
        }
        let universe = PointSet::full(n_points);
        for (i, l) in lines.iter().enumerate() {
            if l.len() < 2 || !l.is_subset(universe) {
                return Err(Error::Structure(format!("line {i} is degenerate: {l:?}")));
            }
        }
        for ((i, a), (j, b)) in lines.iter().enumerate().tuple_combinations() {
            if (*a & *b).len() > 1 {
                return Err(Error::Structure(format!(
                    "lines {i} and {j} share two points"
                )));
            }
        }
        let mut collinear = vec![PointSet::empty(); n_points];
        for l in &lines {
            for p in l.iter() {
                collinear[p] = collinear[p] | *l;
            }
        }
        for (p, c) in collinear.iter_mut().enumerate() {
            c.insert(p);
        }
        Ok(IncidenceStructure {
            n_points,
            lines,
            collinear,
        })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn lines(&self) -> &[PointSet] {
        &self.lines
    }

    pub fn universe(&self) -> PointSet {
        PointSet::full(self.n_points)
    }

    pub fn lines_through(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        self.lines
            .iter()
            .enumerate()
            .filter(move |(_, l)| l.contains(p))
            .map(|(i, _)| i)
    }

    pub fn collinear(&self, x: usize, y: usize) -> bool {
        self.collinear[x].contains(y)
    }

    /// The line through two distinct collinear points.
    pub fn line_through(&self, x: usize, y: usize) -> Option<usize> {
        self.lines
            .iter()
            .position(|l| l.contains(x) && l.contains(y) && x != y)
    }

    /// x together with every point collinear with x.
    pub fn perp(&self, x: usize) -> PointSet {
        self.collinear[x]
    }

    /// Intersection of the perps of the members of `a`; the whole point set
    /// when `a` is empty.
    pub fn perp_of_set(&self, a: PointSet) -> PointSet {
        a.iter()
            .fold(self.universe(), |acc, x| acc & self.collinear[x])
    }

    /// `{x, y}^⊥⊥` for noncollinear `x`, `y`.
    pub fn hyperbolic_line(&self, x: usize, y: usize) -> Result<PointSet, Error> {
        if x == y || self.collinear(x, y) {
            return Err(Error::Collinear(x, y));
        }
        let pair: PointSet = [x, y].iter().collect();
        Ok(self.perp_of_set(self.perp_of_set(pair)))
    }

    /// No two members collinear.
    pub fn is_partial_ovoid(&self, a: PointSet) -> bool {
        a.iter()
            .all(|x| (self.collinear[x] & a) == PointSet::singleton(x))
    }

    pub fn is_triad(&self, t: PointSet) -> bool {
        t.len() == 3 && self.is_partial_ovoid(t)
    }

    pub fn classify_triad(&self, t: PointSet) -> Result<TriadClass, Error> {
        if !self.is_triad(t) {
            return Err(Error::NotATriad(t));
        }
        let centers = self.perp_of_set(t);
        let tag = match centers.len() {
            0 => TriadKind::Acentric,
            1 => TriadKind::Unicentric,
            3 => TriadKind::Tricentric,
            n => return Err(Error::Structure(format!("triad {t:?} has {n} centers"))),
        };
        Ok(TriadClass { tag, centers })
    }

    /// Sub-structure induced on `a`: points renumbered in ascending order,
    /// lines are the intersections with `a` of at least two points.
    pub fn induced(&self, a: PointSet) -> Result<IncidenceStructure, Error> {
        let index: Vec<usize> = a.iter().collect();
        let relabel = |s: PointSet| -> PointSet {
            s.iter()
                .map(|p| index.binary_search(&p).expect("member"))
                .collect()
        };
        let lines = self
            .lines
            .iter()
            .map(|l| *l & a)
            .filter(|l| l.len() >= 2)
            .map(relabel)
            .collect();
        IncidenceStructure::new(index.len(), lines)
    }

    /// 6 points whose collinearity graph is K₃,₃ (a GQ(1,2)).
    pub fn is_dual_grid(&self, a: PointSet) -> Result<bool, Error> {
        if a.len() != 6 {
            return Err(Error::Cardinality {
                what: "dual grid",
                expected: 6,
                found: a.len(),
            });
        }
        let first = a.first().unwrap();
        let side = a - (self.collinear[first] - PointSet::singleton(first));
        let other = a - side;
        let ok = side.len() == 3
            && self.is_partial_ovoid(side)
            && self.is_partial_ovoid(other)
            && side.iter().all(|x| other.is_subset(self.collinear[x]));
        Ok(ok)
    }

    /// 9 points carrying a 3×3 grid (a GQ(2,1)) of induced 3-point lines.
    pub fn is_grid(&self, a: PointSet) -> Result<bool, Error> {
        if a.len() != 9 {
            return Err(Error::Cardinality {
                what: "grid",
                expected: 9,
                found: a.len(),
            });
        }
        Ok(self.induced(a)?.validate_gq(2, 1).is_ok())
    }

    /// Check the generalized quadrangle axioms for order `(s, t)`.
    pub fn validate_gq(&self, s: usize, t: usize) -> Result<(), GqViolation> {
        // (i) 1+t lines per point; two points on at most one line (checked in `new`).
        for p in 0..self.n_points {
            let k = self.lines_through(p).count();
            if k != t + 1 {
                return Err(GqViolation {
                    axiom: GqAxiom::LinesPerPoint,
                    point: Some(p),
                    line: None,
                    detail: format!("point {p} is on {k} lines, expected {}", t + 1),
                });
            }
        }
        // (ii) 1+s points per line; two lines share at most one point (checked in `new`).
        for (i, l) in self.lines.iter().enumerate() {
            if l.len() != s + 1 {
                return Err(GqViolation {
                    axiom: GqAxiom::PointsPerLine,
                    point: None,
                    line: Some(i),
                    detail: format!("line {i} has {} points, expected {}", l.len(), s + 1),
                });
            }
        }
        // (iii) a point off a line is collinear with exactly one point of it.
        for x in 0..self.n_points {
            for (i, l) in self.lines.iter().enumerate() {
                if l.contains(x) {
                    continue;
                }
                let k = (self.collinear[x] & *l).len();
                if k != 1 {
                    return Err(GqViolation {
                        axiom: GqAxiom::UniqueProjection,
                        point: Some(x),
                        line: Some(i),
                        detail: format!("point {x} is collinear with {k} points of line {i}"),
                    });
                }
            }
        }
        let want_points = (s + 1) * (s * t + 1);
        let want_lines = (t + 1) * (s * t + 1);
        if self.n_points != want_points || self.lines.len() != want_lines {
            return Err(GqViolation {
                axiom: GqAxiom::Counts,
                point: None,
                line: None,
                detail: format!(
                    "{} points / {} lines, expected {want_points} / {want_lines}",
                    self.n_points,
                    self.lines.len()
                ),
            });
        }
        Ok(())
    }

    /// Classify all 3-subsets of the point set.
    pub fn triad_census(&self) -> TriadCensus {
        let mut census = TriadCensus {
            tricentric_through: vec![0; self.n_points],
            ..TriadCensus::default()
        };
        for (a, b, c) in (0..self.n_points).tuple_combinations() {
            let t: PointSet = [a, b, c].iter().collect();
            match self.classify_triad(t) {
                Err(Error::NotATriad(_)) => census.with_collinear_pair += 1,
                Err(e) => panic!("{e}"),
                Ok(cls) => match cls.tag {
                    TriadKind::Acentric => census.acentric += 1,
                    TriadKind::Unicentric => census.unicentric += 1,
                    TriadKind::Tricentric => {
                        census.tricentric += 1;
                        for p in [a, b, c] {
                            census.tricentric_through[p] += 1;
                        }
                    }
                },
            }
        }
        census
    }

    /// All tricentric triads in ascending order.
    pub fn tricentric_triads(&self) -> Vec<PointSet> {
        (0..self.n_points)
            .tuple_combinations()
            .map(|(a, b, c)| [a, b, c].iter().collect::<PointSet>())
            .filter(|&t| self.is_triad(t) && self.perp_of_set(t).len() == 3)
            .collect()
    }

    /// Triads inside `x^⊥ \ {x}` whose only center is `x`.
    pub fn unicentric_triads_at(&self, x: usize) -> Vec<PointSet> {
        let around = self.perp(x) - PointSet::singleton(x);
        around
            .iter()
            .tuple_combinations()
            .map(|(a, b, c)| [a, b, c].iter().collect::<PointSet>())
            .filter(|&t| self.is_triad(t) && self.perp_of_set(t) == PointSet::singleton(x))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TriadKind {
    Acentric,
    Unicentric,
    Tricentric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriadClass {
    pub tag: TriadKind,
    pub centers: PointSet,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TriadCensus {
    pub with_collinear_pair: usize,
    pub acentric: usize,
    pub unicentric: usize,
    pub tricentric: usize,
    pub tricentric_through: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GqAxiom {
    /// (i): each point on 1+t lines.
    LinesPerPoint,
    /// (ii): each line has 1+s points.
    PointsPerLine,
    /// (iii): unique projection of a point onto a line not through it.
    UniqueProjection,
    /// |P| = (s+1)(st+1), |B| = (t+1)(st+1).
    Counts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GqViolation {
    pub axiom: GqAxiom,
    pub point: Option<usize>,
    pub line: Option<usize>,
    pub detail: String,
}

impl fmt::Display for GqViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.axiom, self.detail)
    }
}

impl std::error::Error for GqViolation {}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> PointSet {
        xs.iter().collect()
    }

    /// Points r*3+c of a 3x3 grid; rows and columns are the lines.
    fn grid3() -> IncidenceStructure {
        let mut lines = Vec::new();
        for r in 0..3 {
            lines.push(set(&[3 * r, 3 * r + 1, 3 * r + 2]));
        }
        for c in 0..3 {
            lines.push(set(&[c, c + 3, c + 6]));
        }
        IncidenceStructure::new(9, lines).unwrap()
    }

    #[test]
    fn grid_is_gq_2_1() {
        let g = grid3();
        assert!(g.validate_gq(2, 1).is_ok());
        assert_eq!(
            g.validate_gq(1, 2).unwrap_err().axiom,
            GqAxiom::LinesPerPoint
        );
        assert!(g.is_grid(g.universe()).unwrap());
        assert_eq!(g.perp(4).to_vec(), vec![1, 3, 4, 5, 7]);
    }

    #[test]
    fn dual_grid_recognition() {
        // K3,3 as 9 two-point lines.
        let mut lines = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                lines.push(set(&[a, b]));
            }
        }
        let dg = IncidenceStructure::new(6, lines).unwrap();
        assert!(dg.validate_gq(1, 2).is_ok());
        assert!(dg.is_dual_grid(dg.universe()).unwrap());
        assert!(dg.is_dual_grid(set(&[0, 1])).is_err());
    }

    #[test]
    fn structure_rejects_double_incidence() {
        let err = IncidenceStructure::new(4, vec![set(&[0, 1, 2]), set(&[1, 2, 3])]);
        assert!(err.is_err());
        assert!(IncidenceStructure::new(3, vec![set(&[0])]).is_err());
    }

    #[test]
    fn grid_triads_and_hyperbolic_lines() {
        let g = grid3();
        // Diagonal {0,4,8} is a triad; its perp is empty in a 3x3 grid.
        let t = set(&[0, 4, 8]);
        assert_eq!(g.classify_triad(t).unwrap().tag, TriadKind::Acentric);
        assert!(matches!(
            g.classify_triad(set(&[0, 1, 8])),
            Err(Error::NotATriad(_))
        ));
        // {0,4}^⊥ = {1,3}; {1,3}^⊥ = {0,4}.
        assert_eq!(g.hyperbolic_line(0, 4).unwrap(), set(&[0, 4]));
        assert!(matches!(
            g.hyperbolic_line(0, 1),
            Err(Error::Collinear(0, 1))
        ));
    }

    #[test]
    fn induced_substructure_relabels() {
        let g = grid3();
        let sub = g.induced(set(&[0, 1, 2, 3, 6])).unwrap();
        assert_eq!(sub.n_points(), 5);
        assert_eq!(sub.lines(), &[set(&[0, 1, 2]), set(&[0, 3, 4])]);
    }
}
