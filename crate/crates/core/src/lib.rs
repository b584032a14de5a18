//! GQ(4,2) realized as the Hermitian surface H(3,4) in PG(3,4): its
//! geometric hyperplanes, ovoids, fans and rosettes, GQ(2,2) subquadrangles,
//! automorphism group, and the Veldkamp space built on the hyperplanes.
//!
//! [`Model`] assembles everything for one choice of Hermitian form; the
//! individual modules can also be used on their own.

pub mod cli;
pub mod covers;
pub mod exact_cover;
pub mod export;
pub mod galois;
pub mod hermitian;
pub mod hyperplanes;
pub mod incidence;
pub mod model;
pub mod pointset;
pub mod subquads;
pub mod symmetry;
pub mod veldkamp;
pub mod verify;

pub use galois::{Gf4, ProjectivePoint, Vector4};
pub use hermitian::{GramForm, HermitianSurface, ProjectiveSpace};
pub use incidence::{IncidenceStructure, TriadClass, TriadKind};
pub use model::Model;
pub use pointset::PointSet;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("the zero vector has no projective point")]
    ZeroVector,
    #[error("invalid GF(4) tag {0}")]
    InvalidTag(u8),
    #[error("PG point {0} is not isotropic")]
    NotIsotropic(usize),
    #[error("points {0} and {1} are collinear")]
    Collinear(usize, usize),
    #[error("{0:?} is not a triad")]
    NotATriad(PointSet),
    #[error("{0:?} is not an ovoid")]
    NotAnOvoid(PointSet),
    #[error("expected {expected} elements for {what}, found {found}")]
    Cardinality {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("GQ axiom violated: {0}")]
    Axiom(#[from] incidence::GqViolation),
    #[error("structural check failed: {0}")]
    Structure(String),
    #[error("no witness found: {0}")]
    NoWitness(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
