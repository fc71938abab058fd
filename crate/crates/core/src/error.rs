use thiserror::Error;

use crate::combo::BasisLabel;
use crate::lattice::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("index {level} is outside {min}..={max}")]
    LevelOutOfRange { level: u8, min: u8, max: u8 },

    #[error("basis mismatch: {left} vs {right}")]
    BasisMismatch { left: BasisLabel, right: BasisLabel },

    /// A mathematical invariant failed. Reaching this is a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
