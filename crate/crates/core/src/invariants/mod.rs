//! Homology of the total space of a Lefschetz fibration and of the
//! 3-manifold carrying the induced open book on its boundary.

mod certificate;
mod snf;

use thiserror::Error;

use crate::fibration::LefschetzFibration;
use crate::surface::{cutting_arc_system, twist_arc, CurveOnSurface, OrientedSurface, RibbonGraph, SurfaceError};

pub use certificate::{certify, Certificate, Check, FiberSummary, CERTIFICATE_SCHEMA};
pub use snf::{cokernel, rank, smith_diagonal, FinAbGroup};

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("integer overflow in Smith normal form")]
    Overflow,
    #[error("matrix shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// `χ(fiber) + #cycles`: one 0-handle-and-1-handles thickening of the fiber
/// plus one 2-handle per vanishing cycle.
pub fn total_space_euler(lf: &LefschetzFibration) -> i64 {
    lf.fiber().euler_characteristic() + lf.cycles().len() as i64
}

/// Matrix whose rows are the homology classes of the given curves.
fn class_rows(surface: &OrientedSurface, curves: &[CurveOnSurface]) -> Result<Vec<Vec<i64>>, InvariantError> {
    curves
        .iter()
        .map(|c| Ok(surface.curve_class(c)?.coeffs().to_vec()))
        .collect()
}

/// `(H₁, H₂)` of the total space: the cokernel and kernel of the map
/// `Z^{#cycles} → H₁(fiber)` sending each 2-handle to its attaching class.
pub fn total_space_homology(lf: &LefschetzFibration) -> Result<(FinAbGroup, FinAbGroup), InvariantError> {
    let surface = lf.surface();
    let rows = class_rows(&surface, lf.cycles())?;
    let h1 = cokernel(surface.rank(), &rows)?;
    let h2 = FinAbGroup::free(lf.cycles().len() - rank(&rows)?);
    Ok((h1, h2))
}

/// Open book with page `page` and monodromy the product of positive twists
/// along `word`, applied first-to-last.
#[derive(Clone, Debug)]
pub struct OpenBook {
    pub page: RibbonGraph,
    pub word: Vec<CurveOnSurface>,
}

impl OpenBook {
    pub fn binding_components(&self) -> usize {
        self.page.boundary_count()
    }
}

pub fn boundary_open_book(lf: &LefschetzFibration) -> OpenBook {
    OpenBook {
        page: lf.fiber().clone(),
        word: lf.cycles().to_vec(),
    }
}

/// `H₁` of the open-book 3-manifold. Generators: a basis of `H₁(page)`; one
/// relation per arc `α` of a disk-cutting system, namely the class of the
/// closed loop `φ(α) ⋆ ᾱ`, with `φ` the monodromy acting on arcs.
pub fn open_book_h1(ob: &OpenBook) -> Result<FinAbGroup, InvariantError> {
    let surface = OrientedSurface::new(&ob.page)?;
    let relations = open_book_relations(&surface, &ob.word)?;
    cokernel(surface.rank(), &relations)
}

/// Relation rows `[φ(α)⋆ᾱ]` over the cutting arcs of `surface`.
pub fn open_book_relations(
    surface: &OrientedSurface,
    word: &[CurveOnSurface],
) -> Result<Vec<Vec<i64>>, InvariantError> {
    cutting_arc_system(surface)
        .into_iter()
        .map(|arc| {
            let mut p = arc;
            for c in word {
                p = twist_arc(surface, c, &p)?;
            }
            // ᾱ runs inside one vertex disk, so it adds nothing to the class.
            Ok(surface.class_of_darts(p.darts()).coeffs().to_vec())
        })
        .collect()
}

/// `Z^{2g} ⊕ Z/|2−2g|`: `H₁` of a circle bundle of Euler number `±(2−2g)`
/// over the closed genus-g surface (Gysin sequence).
pub fn unit_cotangent_h1(g: u32) -> FinAbGroup {
    FinAbGroup::free_plus_cyclic(2 * g as usize, (2 - 2 * g as i64).unsigned_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibration::{johns_fibration, sphere_planar_fibration};
    use crate::surface::{Edge, HalfEdgeId};

    fn annulus_book(k: usize) -> OpenBook {
        let page = RibbonGraph::new(vec![vec![HalfEdgeId(0), HalfEdgeId(1)]], vec![Edge::new(0, 1, false)]).unwrap();
        let core = CurveOnSurface::new(&page, "core", vec![HalfEdgeId(0)]).unwrap();
        OpenBook {
            page,
            word: vec![core; k],
        }
    }

    #[test]
    fn annulus_oracles() {
        assert_eq!(open_book_h1(&annulus_book(0)).unwrap(), FinAbGroup::free(1));
        assert_eq!(open_book_h1(&annulus_book(1)).unwrap(), FinAbGroup::trivial());
        assert_eq!(
            open_book_h1(&annulus_book(2)).unwrap(),
            FinAbGroup::free_plus_cyclic(0, 2)
        );
        assert_eq!(
            open_book_h1(&annulus_book(3)).unwrap(),
            FinAbGroup::free_plus_cyclic(0, 3)
        );
    }

    #[test]
    fn sphere_fibration() {
        let lf = sphere_planar_fibration();
        assert_eq!(total_space_euler(&lf), 2);
        let (h1, h2) = total_space_homology(&lf).unwrap();
        assert_eq!((h1, h2), (FinAbGroup::trivial(), FinAbGroup::free(1)));
        assert_eq!(open_book_h1(&boundary_open_book(&lf)).unwrap(), unit_cotangent_h1(0));
    }

    #[test]
    fn johns_genus_one() {
        let lf = johns_fibration(1).unwrap();
        assert_eq!(total_space_euler(&lf), 0);
        let (h1, h2) = total_space_homology(&lf).unwrap();
        assert_eq!((h1, h2), (FinAbGroup::free(2), FinAbGroup::free(1)));
        let ob = boundary_open_book(&lf);
        assert_eq!(ob.binding_components(), 8);
        assert_eq!(open_book_h1(&ob).unwrap(), FinAbGroup::free(3));
    }

    #[test]
    fn gysin_values() {
        assert_eq!(unit_cotangent_h1(0).to_string(), "Z/2");
        assert_eq!(unit_cotangent_h1(1).to_string(), "Z^3");
        assert_eq!(unit_cotangent_h1(2).to_string(), "Z^4 + Z/2");
        assert_eq!(unit_cotangent_h1(3).to_string(), "Z^6 + Z/4");
    }
}
