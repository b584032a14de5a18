//! Machine-readable exports. JSON documents are built from canonical
//! (sorted) data, so identical inputs give byte-identical output.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::symmetry::Permutation;
use crate::veldkamp::Composition;
use crate::{Error, HermitianSurface, IncidenceStructure, Model, PointSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub id: usize,
    pub coords: [u8; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRecord {
    pub id: usize,
    pub points: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Geometry {
    pub points: Vec<PointRecord>,
    pub lines: Vec<LineRecord>,
}

impl Geometry {
    pub fn of(surface: &HermitianSurface) -> Geometry {
        Geometry {
            points: (0..surface.n_points())
                .map(|id| PointRecord {
                    id,
                    coords: surface.coords(id).tags(),
                })
                .collect(),
            lines: surface
                .gq
                .lines()
                .iter()
                .enumerate()
                .map(|(id, l)| LineRecord {
                    id,
                    points: l.to_vec(),
                })
                .collect(),
        }
    }

    /// Rebuild the incidence structure, checking ids are `0..n` in order.
    pub fn to_incidence(&self) -> Result<IncidenceStructure, Error> {
        for (i, p) in self.points.iter().enumerate() {
            if p.id != i {
                return Err(Error::Structure(format!(
                    "point record {i} has id {}",
                    p.id
                )));
            }
            for &t in &p.coords {
                crate::Gf4::from_tag(t)?;
            }
        }
        let n = self.points.len();
        let mut lines = Vec::with_capacity(self.lines.len());
        for (i, l) in self.lines.iter().enumerate() {
            if l.id != i {
                return Err(Error::Structure(format!("line record {i} has id {}", l.id)));
            }
            if let Some(&bad) = l.points.iter().find(|&&p| p >= n) {
                return Err(Error::Structure(format!("line {i} refers to point {bad}")));
            }
            lines.push(l.points.iter().collect::<PointSet>());
        }
        IncidenceStructure::new(n, lines)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VLineRecord {
    pub members: Vec<usize>,
    pub size: usize,
    pub composition: Composition,
    pub core: PointSet,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupRecord<'a> {
    pub order: u64,
    pub generators: &'a [Permutation],
}

pub fn geometry_json(model: &Model) -> Result<String, Error> {
    Ok(serde_json::to_string_pretty(&Geometry::of(&model.surface))?)
}

pub fn import_geometry(json: &str) -> Result<(Geometry, IncidenceStructure), Error> {
    let g: Geometry = serde_json::from_str(json)?;
    let inc = g.to_incidence()?;
    Ok((g, inc))
}

pub fn hyperplanes_json(model: &Model) -> Result<String, Error> {
    Ok(serde_json::to_string_pretty(model.catalog.all())?)
}

pub fn vlines_json(model: &Model) -> Result<String, Error> {
    let census = model.census();
    let records: Vec<VLineRecord> = census
        .vlines
        .iter()
        .zip(&census.compositions)
        .map(|(l, &composition)| VLineRecord {
            members: l.members.clone(),
            size: l.size(),
            composition,
            core: l.core,
        })
        .collect();
    Ok(serde_json::to_string_pretty(&records)?)
}

pub fn group_json(model: &Model) -> Result<String, Error> {
    let g = model.group();
    Ok(serde_json::to_string_pretty(&GroupRecord {
        order: g.order,
        generators: &g.generators,
    })?)
}

/// Collinearity graph; every edge carries the id of the line it lies on,
/// and each line is listed as a clique comment.
pub fn collinearity_dot(surface: &HermitianSurface) -> String {
    let gq = &surface.gq;
    let mut out = String::from("graph collinearity {\n");
    for p in 0..gq.n_points() {
        let c = surface.coords(p);
        writeln!(out, "  {p} [label=\"{p}\\n{c:?}\"];").unwrap();
    }
    for (id, line) in gq.lines().iter().enumerate() {
        let pts = line.to_vec();
        writeln!(out, "  // line {id}: clique {pts:?}").unwrap();
        for (i, &a) in pts.iter().enumerate() {
            for &b in &pts[i + 1..] {
                writeln!(out, "  {a} -- {b} [line={id}];").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}
