//! Tiled orders and their fractional ideals, locally (exponent matrices) and
//! globally (matrices of fractional ideals).

mod global;
mod local;

use thiserror::Error;

use crate::base_rings::BaseRing;

pub use global::{is_hereditary_global, GlobalHereditary, GlobalIdealMatrix, GlobalTiledOrder, IdealMatrix};
pub use local::{
    basic_idempotent_corner, column_multiplicities, dual_ideal, ideal_multiply, inverse_ideal, is_hereditary_local,
    is_invertible, is_left_isomorphic_to_order, left_module_class, projective_profile, radical, right_dual_ideal,
    validate_order, ExponentMatrix, FractionalIdealMatrix, IntMatrix, LeftModuleClass, ProjectiveProfile,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TiledError {
    #[error("rows have different lengths")]
    Ragged,
    #[error("matrix is not square or has the wrong size")]
    NotSquare,
    #[error("diagonal entry {0} is not zero (not R)")]
    ZeroDiagonalViolation(usize),
    #[error("ring closure fails at (i, j, k) = ({0}, {1}, {2})")]
    ClosureViolation(usize, usize, usize),
    #[error("bimodule closure fails at (i, j, k) = ({0}, {1}, {2})")]
    BimoduleViolation(usize, usize, usize),
    #[error("lattice is not a bimodule over the order")]
    NotABimodule,
    #[error("ideals belong to different orders")]
    OrderMismatch,
    #[error("order is not hereditary")]
    NotHereditary,
    #[error("ideal is not invertible")]
    NotInvertible,
    #[error("block sizes must be positive")]
    EmptyBlock,
    #[error("invalid index selection")]
    InvalidIndices,
    #[error("entry over {0} in a matrix over a different ring")]
    RingMismatch(BaseRing),
}
