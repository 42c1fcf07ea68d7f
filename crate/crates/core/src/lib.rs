//! Genus-one Lefschetz fibrations on disk cotangent bundles, built as
//! explicit combinatorial data and certified homologically.
//!
//! * [`surface`] — ribbon graphs, curves, homology, intersection, Dehn twists.
//! * [`divides`] — divides, admissibility, checkerboard colorings.
//! * [`fibration`] — the plumbing and divide constructions, surgery.
//! * [`invariants`] — total space and open-book homology, certificates.
//! * [`equivalence`] — plumbing patterns and fibration isomorphisms.
//! * [`cli`] — the `lf-forge` command line.

pub mod cli;
pub mod divides;
pub mod equivalence;
pub mod fibration;
pub mod invariants;
pub mod surface;

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Surface(#[from] surface::SurfaceError),
    #[error(transparent)]
    Divide(#[from] divides::DivideError),
    #[error(transparent)]
    Fibration(#[from] fibration::FibrationError),
    #[error(transparent)]
    Invariant(#[from] invariants::InvariantError),
}
