//! Everything derived from one Hermitian form, computed on first use.

use std::sync::OnceLock;

use crate::covers::{enumerate_fans, Fan};
use crate::hyperplanes::{classify_relative, HyperplaneCatalog, OvoidClass};
use crate::subquads::{enumerate_gq22_copies, frame_search_copies};
use crate::symmetry::{automorphism_group, AutomorphismGroup};
use crate::veldkamp::VeldkampCensus;
use crate::{Error, GramForm, HermitianSurface, IncidenceStructure, PointSet};

pub struct Model {
    pub surface: HermitianSurface,
    pub catalog: HyperplaneCatalog,
    ovoid_sets: Vec<PointSet>,
    group: OnceLock<AutomorphismGroup>,
    copies: OnceLock<Result<Vec<PointSet>, String>>,
    fans: OnceLock<Vec<Fan>>,
    census: OnceLock<VeldkampCensus>,
}

impl Model {
    pub fn build(form: GramForm) -> Result<Model, Error> {
        let surface = HermitianSurface::build(form)?;
        let catalog = HyperplaneCatalog::build(&surface)?;
        let ovoid_sets = catalog.ovoid_sets();
        Ok(Model {
            surface,
            catalog,
            ovoid_sets,
            group: OnceLock::new(),
            copies: OnceLock::new(),
            fans: OnceLock::new(),
            census: OnceLock::new(),
        })
    }

    pub fn form(&self) -> GramForm {
        self.surface.form
    }

    pub fn gq(&self) -> &IncidenceStructure {
        &self.surface.gq
    }

    /// Ovoid point sets by ovoid id.
    pub fn ovoids(&self) -> &[PointSet] {
        &self.ovoid_sets
    }

    pub fn is_plane(&self) -> Vec<bool> {
        self.catalog
            .ovoids()
            .iter()
            .map(|h| h.is_plane_ovoid())
            .collect()
    }

    pub fn group(&self) -> &AutomorphismGroup {
        self.group.get_or_init(|| automorphism_group(self.gq()))
    }

    /// The copy anchoring copy index 0: the GF(2)-rational points when they
    /// are all isotropic, otherwise the first copy found by frame search.
    pub fn reference_copy(&self) -> Result<PointSet, Error> {
        self.surface.canonical_gq22().or_else(|_| {
            frame_search_copies(&self.surface)
                .first()
                .copied()
                .ok_or_else(|| Error::NoWitness("GQ(2,2) copy".into()))
        })
    }

    /// The 36 GQ(2,2) copies, reference copy first.
    pub fn copies(&self) -> Result<&[PointSet], Error> {
        self.copies
            .get_or_init(|| {
                let reference = self.reference_copy().map_err(|e| e.to_string())?;
                enumerate_gq22_copies(&self.surface, &self.group().generators, reference)
                    .map_err(|e| e.to_string())
            })
            .as_deref()
            .map_err(|e| Error::Structure(e.clone()))
    }

    pub fn copy(&self, index: usize) -> Result<PointSet, Error> {
        let copies = self.copies()?;
        copies.get(index).copied().ok_or(Error::Cardinality {
            what: "copy index bound",
            expected: copies.len(),
            found: index,
        })
    }

    /// Class of every ovoid relative to copy `index`.
    pub fn ovoid_classes(&self, index: usize) -> Result<Vec<OvoidClass>, Error> {
        let copy = self.copy(index)?;
        self.catalog
            .ovoids()
            .iter()
            .map(|h| {
                classify_relative(self.gq(), h.points, h.is_plane_ovoid(), copy).map(|c| c.tag)
            })
            .collect()
    }

    pub fn fans(&self) -> &[Fan] {
        self.fans
            .get_or_init(|| enumerate_fans(self.gq(), &self.ovoid_sets))
    }

    /// Fans as sorted hyperplane ids.
    pub fn fan_hyperplanes(&self) -> Vec<Vec<usize>> {
        let offset = self.catalog.n_perps();
        self.fans()
            .iter()
            .map(|f| f.0.iter().map(|&o| o + offset).collect())
            .collect()
    }

    pub fn census(&self) -> &VeldkampCensus {
        self.census
            .get_or_init(|| VeldkampCensus::build(self.gq(), &self.catalog))
    }
}
