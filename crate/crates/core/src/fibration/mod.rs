//! Lefschetz fibrations as explicit data: a fiber surface plus an ordered
//! list of vanishing cycles, built by plumbing annuli (Johns) or from the
//! standard divide (Ishikawa), together with the planar fibration over the
//! sphere case.

mod acampo;
mod plumbing;
mod surgery;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::divides::{standard_divide, DivideError};
use crate::surface::{
    surface_invariants, CurveDoc, CurveOnSurface, Edge, HalfEdgeId, OrientedSurface, RibbonGraph, RibbonGraphDoc,
    SurfaceError,
};

pub use acampo::{acampo_fiber, divide_fibration, divide_vanishing_cycles, AcampoFiber, DivideCycles, DivideFibration};
pub use plumbing::{johns_pattern, realize_plumbing, PlumbedSurface, PlumbingPattern, Square};
pub use surgery::simultaneous_surgery;

pub const FIBRATION_SCHEMA: &str = "lf-forge/lefschetz-fibration/v1";

#[derive(Debug, Error)]
pub enum FibrationError {
    #[error("invalid plumbing pattern: {0}")]
    Pattern(String),
    #[error("surgery precondition violated: {0}")]
    Surgery(String),
    #[error("builder defect: {0}")]
    BuilderDefect(String),
    #[error("invalid fibration: {0}")]
    Invalid(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Divide(#[from] DivideError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Johns,
    Ishikawa,
    Sphere,
    Custom,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Johns => "johns",
            Construction::Ishikawa => "ishikawa",
            Construction::Sphere => "sphere",
            Construction::Custom => "custom",
        })
    }
}

/// A Lefschetz fibration over the disk: an oriented fiber and its vanishing
/// cycles. The monodromy is the product of positive Dehn twists along the
/// cycles, applied first-to-last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzFibration {
    construction: Construction,
    genus: Option<u32>,
    fiber: RibbonGraph,
    cycles: Vec<CurveOnSurface>,
}

impl LefschetzFibration {
    /// The fiber must be connected and twist-free (already oriented); every
    /// cycle must be an edge-simple closed curve on it.
    pub fn new(
        construction: Construction,
        genus: Option<u32>,
        fiber: RibbonGraph,
        cycles: Vec<CurveOnSurface>,
    ) -> Result<Self, FibrationError> {
        if fiber.has_twists() {
            return Err(FibrationError::Invalid(
                "fiber must be stored oriented (no twists)".into(),
            ));
        }
        if !fiber.is_connected() {
            return Err(FibrationError::Invalid("fiber must be connected".into()));
        }
        let cycles = cycles
            .into_iter()
            .map(|c| CurveOnSurface::new(&fiber, c.name(), c.walk().to_vec()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LefschetzFibration {
            construction,
            genus,
            fiber,
            cycles,
        })
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn genus(&self) -> Option<u32> {
        self.genus
    }

    pub fn fiber(&self) -> &RibbonGraph {
        &self.fiber
    }

    pub fn cycles(&self) -> &[CurveOnSurface] {
        &self.cycles
    }

    pub fn cycle(&self, name: &str) -> Option<&CurveOnSurface> {
        self.cycles.iter().find(|c| c.name() == name)
    }

    pub fn order(&self) -> Vec<String> {
        self.cycles.iter().map(|c| c.name().to_string()).collect()
    }

    pub fn surface(&self) -> OrientedSurface {
        OrientedSurface::new(&self.fiber).expect("validated at construction")
    }

    /// Sizes of the three cycle families (first, second, resolved) for the
    /// two genus-g constructions: `(2, 2g+2, 2)`.
    pub fn families(&self) -> Option<[std::ops::Range<usize>; 3]> {
        match (self.construction, self.genus) {
            (Construction::Johns | Construction::Ishikawa, Some(g)) => {
                let n = 2 * g as usize + 2;
                (self.cycles.len() == n + 4).then(|| [0..2, 2..2 + n, 2 + n..n + 4])
            }
            _ => None,
        }
    }

    pub fn to_doc(&self) -> FibrationDoc {
        FibrationDoc {
            schema: FIBRATION_SCHEMA.to_string(),
            construction: self.construction,
            genus: self.genus,
            fiber: RibbonGraphDoc::from_graph(&self.fiber, &[]),
            cycles: self
                .cycles
                .iter()
                .map(|c| CurveDoc::from_curve(&self.fiber, c))
                .collect(),
            order: self.order(),
        }
    }

    pub fn from_doc(doc: &FibrationDoc) -> Result<Self, FibrationError> {
        if doc.schema != FIBRATION_SCHEMA {
            return Err(FibrationError::Invalid(format!("unsupported schema {:?}", doc.schema)));
        }
        let (fiber, _) = doc.fiber.to_graph()?;
        let cycles = doc
            .cycles
            .iter()
            .map(|c| c.to_curve(&fiber))
            .collect::<Result<Vec<_>, _>>()?;
        let names: Vec<&str> = cycles.iter().map(|c| c.name()).collect();
        if names != doc.order.iter().map(String::as_str).collect::<Vec<_>>() {
            return Err(FibrationError::Invalid(
                "`order` must list the cycles in word order".into(),
            ));
        }
        LefschetzFibration::new(doc.construction, doc.genus, fiber, cycles)
    }
}

/// JSON form of a Lefschetz fibration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationDoc {
    pub schema: String,
    pub construction: Construction,
    pub genus: Option<u32>,
    pub fiber: RibbonGraphDoc,
    pub cycles: Vec<CurveDoc>,
    pub order: Vec<String>,
}

/// The builders' invariant gate: a connected orientable fiber of genus one
/// with `4g+4` boundary components.
fn genus_one_gate(fiber: &RibbonGraph, g: u32) -> Result<(), FibrationError> {
    let inv = surface_invariants(fiber);
    let b = 4 * g as usize + 4;
    if !fiber.is_connected() || inv.genus != Some(1) || inv.boundary != b || inv.chi != -(b as i64) {
        return Err(FibrationError::BuilderDefect(format!(
            "fiber has chi={}, b={}, genus={:?}; expected chi={}, b={b}, genus 1",
            inv.chi,
            inv.boundary,
            inv.genus,
            -(b as i64)
        )));
    }
    Ok(())
}

/// Johns' fibration: the plumbing fiber with word
/// `a1 a2 b1 … b_{2g+2} c1 c2`, the `c` curves being the left-turn
/// resolution of the `a` and `b` cores.
pub fn johns_fibration(g: u32) -> Result<LefschetzFibration, FibrationError> {
    let plumbed = realize_plumbing(&johns_pattern(g))?;
    genus_one_gate(&plumbed.graph, g)?;
    let surface = OrientedSurface::new(&plumbed.graph)?;
    let resolved = simultaneous_surgery(&surface, &plumbed.horizontal, &plumbed.vertical)?;
    if resolved.len() != 2 {
        return Err(FibrationError::BuilderDefect(format!(
            "resolution has {} components, expected 2",
            resolved.len()
        )));
    }
    let a = plumbed
        .horizontal
        .iter()
        .enumerate()
        .map(|(i, c)| c.renamed(format!("a{}", i + 1)));
    let b = plumbed
        .vertical
        .iter()
        .enumerate()
        .map(|(j, c)| c.renamed(format!("b{}", j + 1)));
    let cycles = a.chain(b).chain(resolved).collect();
    LefschetzFibration::new(Construction::Johns, Some(g), plumbed.graph, cycles)
}

/// Ishikawa's fibration from the standard divide: word
/// `alpha1 alpha2 beta1 … beta_{2g+2} gamma1 gamma2`.
pub fn ishikawa_fibration(g: u32) -> Result<LefschetzFibration, FibrationError> {
    let df = divide_fibration(&standard_divide(g))?;
    genus_one_gate(&df.fiber, g)?;
    let cycles = df.alpha.into_iter().chain(df.beta).chain(df.gamma).collect();
    LefschetzFibration::new(Construction::Ishikawa, Some(g), df.fiber, cycles)
}

/// The planar fibration for the sphere: annulus fiber, word = core twice.
pub fn sphere_planar_fibration() -> LefschetzFibration {
    let annulus =
        RibbonGraph::new(vec![vec![HalfEdgeId(0), HalfEdgeId(1)]], vec![Edge::new(0, 1, false)]).expect("annulus");
    let core = |name: &str| CurveOnSurface::new(&annulus, name, vec![HalfEdgeId(0)]).expect("core");
    let cycles = vec![core("core1"), core("core2")];
    LefschetzFibration::new(Construction::Sphere, Some(0), annulus, cycles).expect("valid")
}

/// Build one of the named constructions.
pub fn build(construction: Construction, g: u32) -> Result<LefschetzFibration, FibrationError> {
    match construction {
        Construction::Johns => johns_fibration(g),
        Construction::Ishikawa => ishikawa_fibration(g),
        Construction::Sphere if g == 0 => Ok(sphere_planar_fibration()),
        Construction::Sphere => Err(FibrationError::Invalid(
            "the sphere fibration only exists for genus 0".into(),
        )),
        Construction::Custom => Err(FibrationError::Invalid(
            "custom fibrations are loaded, not built".into(),
        )),
    }
}
