//! Combinatorial surfaces with boundary (ribbon graphs), curves and arcs on
//! them, integral first homology, the intersection pairing and Dehn twists.

mod curve;
mod doc;
mod homology;
mod ribbon;
mod twist;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use curve::{
    closed_walk_passages, crossings_with, local_crossing_sign, reverse_walk, same_cyclic_sequence, walk_pairing,
    CombPath, Crossing, CurveOnSurface, Passage, Port,
};
pub use doc::{to_dot, CurveDoc, EdgeDoc, RibbonGraphDoc, RIBBON_GRAPH_SCHEMA};
pub use homology::{HomologyBasis, HomologyClass, OrientedSurface};
pub use ribbon::{Contraction, Edge, EdgeId, HalfEdgeId, RibbonGraph, VertexId};
pub use twist::{cutting_arc_system, dehn_twist_on_path, twist_arc, twist_walk, Route, TwistedRoute};

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("invalid ribbon graph: {0}")]
    Structure(String),
    #[error("surface is not orientable")]
    NonOrientable,
    #[error("ribbon graph has twisted bands; orient it first")]
    Twisted,
    #[error("ribbon graph is disconnected")]
    Disconnected,
    #[error("curve {name:?} is not carried by the host: {why}")]
    BadCurve { name: String, why: String },
    #[error("path is not carried by the host: {0}")]
    BadPath(String),
    #[error("homology class belongs to a different host or basis")]
    HostMismatch,
    #[error("malformed document: {0}")]
    Document(String),
}

/// χ, boundary count, genus (when orientable) and orientability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub chi: i64,
    pub boundary: usize,
    pub genus: Option<i64>,
    pub orientable: bool,
}

impl SurfaceInvariants {
    /// `Some((genus, boundary))` for orientable surfaces.
    pub fn genus_boundary(&self) -> Option<(i64, usize)> {
        self.genus.map(|h| (h, self.boundary))
    }
}

pub fn surface_invariants(s: &RibbonGraph) -> SurfaceInvariants {
    let chi = s.euler_characteristic();
    let boundary = s.boundary_count();
    let orientable = s.is_orientable();
    // For a disconnected graph the formula gives the sum over components of
    // (h_i − 1) + 1; it is only a genus for connected surfaces.
    let genus = orientable.then(|| (2 - chi - boundary as i64) / 2);
    SurfaceInvariants {
        chi,
        boundary,
        genus,
        orientable,
    }
}

/// Ordered co-tree edges of the deterministic spanning tree.
pub fn homology_basis(s: &RibbonGraph) -> Result<Vec<EdgeId>, SurfaceError> {
    Ok(HomologyBasis::new(s)?.cotree_edges().to_vec())
}

pub fn curve_class(s: &OrientedSurface, c: &CurveOnSurface) -> Result<HomologyClass, SurfaceError> {
    s.curve_class(c)
}

pub fn algebraic_intersection(s: &OrientedSurface, x: &HomologyClass, y: &HomologyClass) -> Result<i64, SurfaceError> {
    s.intersection(x, y)
}

pub fn dehn_twist_on_class(
    s: &OrientedSurface,
    c: &CurveOnSurface,
    x: &HomologyClass,
) -> Result<HomologyClass, SurfaceError> {
    s.twist_class(c, x)
}
