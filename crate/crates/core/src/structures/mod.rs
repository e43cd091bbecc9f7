//! Typed forms of phantoms, crystals, kaleidoscopes, contraptions and
//! crystallized vertices, with clause-by-clause validators.

mod contraption;
mod crystal;
mod crystallized;
mod kaleidoscope;
mod phantom;

pub use contraption::{contraption, Contraption};
pub use crystal::{
    crystal_realizes_graph, is_clear_crystal, validate_crystal, Crystal, CrystalArm, CrystalClause,
    CrystalViolation,
};
pub use crystallized::{is_crystallized, CrystallizedCertificate};
pub use kaleidoscope::{
    is_mirrored, validate_kaleidoscope, Kaleidoscope, KaleidoscopeViolation, MirrorViolation,
};
pub use phantom::{sub_phantom, validate_phantom, Phantom, PhantomClause, PhantomViolation};

use serde::Serialize;

/// Outcome of a validator: either every clause holds or the first
/// violated clause is reported.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "violation", rename_all = "lowercase")]
pub enum Validity<V> {
    Valid,
    Invalid(V),
}

impl<V> Validity<V> {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }

    pub fn violation(&self) -> Option<&V> {
        match self {
            Validity::Valid => None,
            Validity::Invalid(v) => Some(v),
        }
    }
}

/// Normalizes an edge key to `(min, max)`.
pub(crate) fn edge_key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}
