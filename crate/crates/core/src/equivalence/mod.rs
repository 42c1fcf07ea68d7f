//! Comparing fibrations: the annulus-plumbing pattern behind a fiber, and a
//! search for fiber-preserving isomorphisms that carry one vanishing-cycle
//! word onto another.

mod iso;
mod pattern;

use thiserror::Error;

pub use iso::{
    compare, find_isomorphism, verify_isomorphism, CyclePairing, FibrationIso, IsoCertificate, IsoStage, Side,
    ISO_SCHEMA,
};
pub use pattern::{extract_plumbing_pattern, PatternMatch};

#[derive(Debug, Error)]
pub enum EquivalenceError {
    #[error("fiber is not a plumbing of the cycle neighborhoods: {0}")]
    NotPlumbed(String),
}
