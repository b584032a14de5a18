//! PG(3,4), a nondegenerate Hermitian form on it, and the Hermitian surface
//! H(3,4) whose 45 isotropic points and 27 generators form GQ(4,2).

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::galois::{normalize, Gf4, ProjectivePoint, Vector4};
use crate::{Error, IncidenceStructure, PointSet};

/// Membership mask over the 85 points of PG(3,4).
pub type PgMask = u128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PgLine {
    pub id: usize,
    pub points: [usize; 5],
    pub mask: PgMask,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PgPlane {
    pub id: usize,
    /// Dual coordinates `a`: the plane is `{x : Σ aᵢxᵢ = 0}`.
    pub dual: Vector4,
    pub points: Vec<usize>,
    pub mask: PgMask,
}

/// Points, lines and planes of PG(3,4) with ids in lexicographic order of
/// canonical coordinates. Plane `i` has dual coordinates equal to point `i`.
#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    pub points: Vec<ProjectivePoint>,
    pub lines: Vec<PgLine>,
    pub planes: Vec<PgPlane>,
}

impl ProjectiveSpace {
    pub fn enumerate() -> ProjectiveSpace {
        let points: Vec<ProjectivePoint> = Vector4::all()
            .filter(|v| !v.is_zero())
            .map(|v| normalize(v).unwrap())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut space = ProjectiveSpace {
            points,
            lines: Vec::new(),
            planes: Vec::new(),
        };

        let mut lines = BTreeSet::new();
        for (a, b) in (0..space.points.len()).tuple_combinations() {
            let (va, vb) = (space.points[a].rep(), space.points[b].rep());
            let mut pts: Vec<usize> = Vec::with_capacity(5);
            for l in Gf4::ALL {
                for m in Gf4::ALL {
                    let v = va.scale(l) + vb.scale(m);
                    if !v.is_zero() {
                        pts.push(space.point_id(v));
                    }
                }
            }
            pts.sort_unstable();
            pts.dedup();
            lines.insert(<[usize; 5]>::try_from(pts).expect("5 points per line"));
        }
        space.lines = lines
            .into_iter()
            .enumerate()
            .map(|(id, points)| PgLine {
                id,
                points,
                mask: mask_of(&points),
            })
            .collect();

        space.planes = (0..space.points.len())
            .map(|id| {
                let dual = space.points[id].rep();
                let points: Vec<usize> = (0..space.points.len())
                    .filter(|&p| dual.dot(&space.points[p].rep()).is_zero())
                    .collect();
                PgPlane {
                    id,
                    dual,
                    mask: mask_of(&points),
                    points,
                }
            })
            .collect();
        space
    }

    /// Id of the point spanned by a nonzero vector.
    pub fn point_id(&self, v: Vector4) -> usize {
        let p = normalize(v).expect("nonzero vector");
        self.points
            .binary_search(&p)
            .expect("every canonical point is listed")
    }

    pub fn line_through(&self, a: usize, b: usize) -> Option<&PgLine> {
        if a == b {
            return None;
        }
        let m = (1u128 << a) | (1u128 << b);
        self.lines.iter().find(|l| l.mask & m == m)
    }

    /// The plane with the given dual coordinates.
    pub fn plane_with_dual(&self, a: Vector4) -> &PgPlane {
        &self.planes[self.point_id(a)]
    }

    /// The five planes through a line.
    pub fn pencil(&self, line: &PgLine) -> Vec<usize> {
        self.planes
            .iter()
            .filter(|pl| pl.mask & line.mask == line.mask)
            .map(|pl| pl.id)
            .collect()
    }
}

fn mask_of(points: &[usize]) -> PgMask {
    points.iter().fold(0, |m, &p| m | 1u128 << p)
}

/// Choice of Gram matrix for the Hermitian form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GramForm {
    /// `[[0,1,0,0],[1,0,0,0],[0,0,0,1],[0,0,1,0]]`; all GF(2)-rational points isotropic.
    #[default]
    SymplecticJ,
    /// The identity: x₀³ + x₁³ + x₂³ + x₃³ = 0.
    Diagonal,
}

/// 4×4 Hermitian Gram matrix `A`, `A[i][j] = conj(A[j][i])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GramMatrix(pub [[Gf4; 4]; 4]);

impl GramMatrix {
    pub fn of(form: GramForm) -> GramMatrix {
        let (o, l) = (Gf4::ZERO, Gf4::ONE);
        match form {
            GramForm::SymplecticJ => {
                GramMatrix([[o, l, o, o], [l, o, o, o], [o, o, o, l], [o, o, l, o]])
            }
            GramForm::Diagonal => {
                GramMatrix([[l, o, o, o], [o, l, o, o], [o, o, l, o], [o, o, o, l]])
            }
        }
    }

    pub fn is_hermitian(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| self.0[i][j] == self.0[j][i].conj()))
    }

    pub fn is_nondegenerate(&self) -> bool {
        crate::galois::rank(&self.0.map(Vector4)) == 4
    }

    /// h(x, y) = Σᵢⱼ A(i,j)·xᵢ·conj(yⱼ).
    pub fn form(&self, x: &Vector4, y: &Vector4) -> Gf4 {
        let mut s = Gf4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                s = s + self.0[i][j] * x.0[i] * y.0[j].conj();
            }
        }
        s
    }

    /// Dual coordinates of `{y : h(x, y) = 0}`: aⱼ = conj(Σᵢ xᵢ A(i,j)).
    pub fn polar_dual(&self, x: &Vector4) -> Vector4 {
        let mut a = [Gf4::ZERO; 4];
        for (j, slot) in a.iter_mut().enumerate() {
            let s = (0..4).fold(Gf4::ZERO, |acc, i| acc + x.0[i] * self.0[i][j]);
            *slot = s.conj();
        }
        Vector4(a)
    }
}

/// How a PG(3,4) line meets the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LineSection {
    Generator,
    Secant,
    Tangent,
}

/// H(3,4) inside PG(3,4), with GQ(4,2) on its isotropic points.
#[derive(Clone, Debug)]
pub struct HermitianSurface {
    pub form: GramForm,
    pub gram: GramMatrix,
    pub space: ProjectiveSpace,
    /// PG point id of each GQ point, ascending.
    pub isotropic: Vec<usize>,
    /// PG line id of each GQ line.
    pub generator_ids: Vec<usize>,
    pub gq: IncidenceStructure,
    iso_index: Vec<Option<usize>>,
}

impl HermitianSurface {
    pub fn build(form: GramForm) -> Result<HermitianSurface, Error> {
        let gram = GramMatrix::of(form);
        if !gram.is_hermitian() || !gram.is_nondegenerate() {
            return Err(Error::Structure(format!(
                "{form:?} is not a nondegenerate Hermitian form"
            )));
        }
        let space = ProjectiveSpace::enumerate();
        let isotropic: Vec<usize> = (0..space.points.len())
            .filter(|&p| {
                let v = space.points[p].rep();
                gram.form(&v, &v).is_zero()
            })
            .collect();
        let mut iso_index = vec![None; space.points.len()];
        for (i, &p) in isotropic.iter().enumerate() {
            iso_index[p] = Some(i);
        }
        let iso_mask = mask_of(&isotropic);
        let generator_ids: Vec<usize> = space
            .lines
            .iter()
            .filter(|l| l.mask & iso_mask == l.mask)
            .map(|l| l.id)
            .collect();
        let lines = generator_ids
            .iter()
            .map(|&l| {
                space.lines[l]
                    .points
                    .iter()
                    .map(|&p| iso_index[p].unwrap())
                    .collect()
            })
            .collect();
        let gq = IncidenceStructure::new(isotropic.len(), lines)?;
        Ok(HermitianSurface {
            form,
            gram,
            space,
            isotropic,
            generator_ids,
            gq,
            iso_index,
        })
    }

    pub fn n_points(&self) -> usize {
        self.isotropic.len()
    }

    /// Coordinates of GQ point `p`.
    pub fn coords(&self, p: usize) -> Vector4 {
        self.space.points[self.isotropic[p]].rep()
    }

    /// GQ id of a PG point, if isotropic.
    pub fn gq_id(&self, pg_point: usize) -> Option<usize> {
        self.iso_index[pg_point]
    }

    pub fn hermitian_value(&self, x: usize, y: usize) -> Gf4 {
        let (vx, vy) = (self.space.points[x].rep(), self.space.points[y].rep());
        self.gram.form(&vx, &vy)
    }

    pub fn is_isotropic(&self, pg_point: usize) -> bool {
        self.iso_index[pg_point].is_some()
    }

    /// GQ points lying in a set of PG points.
    pub fn section(&self, mask: PgMask) -> PointSet {
        self.isotropic
            .iter()
            .enumerate()
            .filter(|(_, &p)| mask >> p & 1 == 1)
            .map(|(i, _)| i)
            .collect()
    }

    /// Polar plane of an isotropic PG point (its tangent plane).
    pub fn polar_plane(&self, pg_point: usize) -> Result<&PgPlane, Error> {
        if !self.is_isotropic(pg_point) {
            return Err(Error::NotIsotropic(pg_point));
        }
        Ok(self.polar_plane_any(pg_point))
    }

    /// The polar plane `{y : h(x, y) = 0}` of any PG point.
    pub fn polar_plane_any(&self, pg_point: usize) -> &PgPlane {
        let dual = self.gram.polar_dual(&self.space.points[pg_point].rep());
        self.space.plane_with_dual(dual)
    }

    /// The tangent plane at GQ point `p`.
    pub fn tangent_plane(&self, p: usize) -> &PgPlane {
        self.polar_plane_any(self.isotropic[p])
    }

    pub fn plane_section(&self, plane: usize) -> PointSet {
        self.section(self.space.planes[plane].mask)
    }

    pub fn line_section(&self, line: usize) -> PointSet {
        self.section(self.space.lines[line].mask)
    }

    pub fn classify_line(&self, line: usize) -> LineSection {
        match self.line_section(line).len() {
            5 => LineSection::Generator,
            3 => LineSection::Secant,
            1 => LineSection::Tangent,
            n => panic!("line {line} meets the surface in {n} points"),
        }
    }

    /// The PG line joining two distinct GQ points.
    pub fn joining_line(&self, x: usize, y: usize) -> &PgLine {
        self.space
            .line_through(self.isotropic[x], self.isotropic[y])
            .expect("distinct points")
    }

    /// The non-tangent planes: those meeting the surface in 9 points.
    pub fn secant_planes(&self) -> Vec<usize> {
        (0..self.space.planes.len())
            .filter(|&pl| self.plane_section(pl).len() == 9)
            .collect()
    }

    /// Rank of the span of a set of GQ points.
    pub fn span_rank(&self, a: PointSet) -> usize {
        let vs: Vec<Vector4> = a.iter().map(|p| self.coords(p)).collect();
        crate::galois::rank(&vs)
    }

    /// The plane containing all of `a`, if `a` spans at most a plane and
    /// determines it uniquely.
    pub fn containing_plane(&self, a: PointSet) -> Option<usize> {
        let mask = a.iter().fold(0u128, |m, p| m | 1u128 << self.isotropic[p]);
        let mut it = self.space.planes.iter().filter(|pl| pl.mask & mask == mask);
        let first = it.next()?.id;
        it.next().is_none().then_some(first)
    }

    /// The 15 points with all coordinates in GF(2). Only defined when all
    /// of them are isotropic, as for [`GramForm::SymplecticJ`].
    pub fn canonical_gq22(&self) -> Result<PointSet, Error> {
        let rational: Vec<usize> = (0..self.space.points.len())
            .filter(|&p| self.space.points[p].rep().is_prime_rational())
            .collect();
        let iso: PointSet = rational.iter().filter_map(|&p| self.gq_id(p)).collect();
        if iso.len() != 15 {
            return Err(Error::Cardinality {
                what: "GF(2)-rational isotropic points",
                expected: 15,
                found: iso.len(),
            });
        }
        Ok(iso)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;
    use std::sync::OnceLock;

    fn surface() -> &'static HermitianSurface {
        static S: OnceLock<HermitianSurface> = OnceLock::new();
        S.get_or_init(|| HermitianSurface::build(GramForm::SymplecticJ).unwrap())
    }

    #[test]
    fn pg_counts() {
        let pg = &surface().space;
        assert_eq!(pg.points.len(), 85);
        assert_eq!(pg.lines.len(), 357);
        assert_eq!(pg.planes.len(), 85);
        for l in &pg.lines {
            assert_eq!(pg.pencil(l).len(), 5);
        }
        for pl in &pg.planes {
            assert_eq!(pl.points.len(), 21);
            let n = pg
                .lines
                .iter()
                .filter(|l| l.mask & pl.mask == l.mask)
                .count();
            assert_eq!(n, 21);
        }
    }

    #[test]
    fn lines_are_closed_under_span() {
        let pg = &surface().space;
        for l in &pg.lines {
            for (&a, &b) in l.points.iter().tuple_combinations() {
                assert_eq!(pg.line_through(a, b).unwrap().id, l.id);
            }
        }
    }

    #[test]
    fn hermitian_value_examples() {
        let s = surface();
        let e0 = s.space.point_id(Vector4::from_tags([1, 0, 0, 0]).unwrap());
        assert_eq!(s.hermitian_value(e0, e0), Gf4::ZERO);
        for x in 0..85 {
            for y in 0..85 {
                assert_eq!(s.hermitian_value(y, x), s.hermitian_value(x, y).conj());
            }
        }
        assert_eq!(s.isotropic.len(), 45);
    }

    #[test]
    fn gq42_shape() {
        let s = surface();
        assert_eq!(s.gq.lines().len(), 27);
        assert!(s.gq.lines().iter().all(|l| l.len() == 5));
        assert!((0..45).all(|p| s.gq.lines_through(p).count() == 3));
        assert_eq!(s.n_points(), (4 + 1) * (4 * 2 + 1));
        assert!(s.gq.validate_gq(4, 2).is_ok());
    }

    #[test]
    fn tangent_and_secant_planes() {
        let s = surface();
        let mut tangents = BTreeSet::new();
        for p in 0..45 {
            let pl = s.polar_plane(s.isotropic[p]).unwrap();
            assert_eq!(s.plane_section(pl.id), s.gq.perp(p));
            assert_eq!(s.plane_section(pl.id).len(), 13);
            tangents.insert(pl.id);
        }
        assert_eq!(tangents.len(), 45);
        let secants = s.secant_planes();
        assert_eq!(secants.len(), 40);
        assert!(secants.iter().all(|pl| !tangents.contains(pl)));
        let non_iso = (0..85).find(|&p| !s.is_isotropic(p)).unwrap();
        assert!(matches!(
            s.polar_plane(non_iso),
            Err(Error::NotIsotropic(_))
        ));
    }

    #[test]
    fn polar_plane_matches_form_and_is_a_polarity() {
        let s = surface();
        for x in 0..85 {
            let pl = s.polar_plane_any(x);
            for y in 0..85 {
                assert_eq!(pl.mask >> y & 1 == 1, s.hermitian_value(x, y).is_zero());
                let back = s.polar_plane_any(y);
                assert_eq!(pl.mask >> y & 1, back.mask >> x & 1);
            }
        }
    }

    #[test]
    fn line_sections_27_240_90() {
        let s = surface();
        let mut counts = BTreeMap::new();
        for l in 0..357 {
            *counts.entry(s.classify_line(l)).or_insert(0) += 1;
        }
        assert_eq!(counts[&LineSection::Generator], 27);
        assert_eq!(counts[&LineSection::Secant], 240);
        assert_eq!(counts[&LineSection::Tangent], 357 - 27 - 240);
    }

    #[test]
    fn collinear_iff_joined_by_generator() {
        let s = surface();
        for (x, y) in (0..45).tuple_combinations() {
            let gen = s.classify_line(s.joining_line(x, y).id) == LineSection::Generator;
            assert_eq!(gen, s.gq.collinear(x, y));
        }
    }

    #[test]
    fn canonical_copy_is_gq22() {
        let s = surface();
        let q = s.canonical_gq22().unwrap();
        assert_eq!(q.len(), 15);
        let sub = s.gq.induced(q).unwrap();
        assert!(sub.validate_gq(2, 2).is_ok());
        // Brute-force: GQ lines meeting the copy in three points.
        let meeting3 = s.gq.lines().iter().filter(|l| (**l & q).len() == 3).count();
        assert_eq!(meeting3, 15);
    }

    #[test]
    fn diagonal_form_also_gives_gq42() {
        let d = HermitianSurface::build(GramForm::Diagonal).unwrap();
        assert_eq!(d.n_points(), 45);
        assert!(d.gq.validate_gq(4, 2).is_ok());
        assert!(d.canonical_gq22().is_err());
    }
}
