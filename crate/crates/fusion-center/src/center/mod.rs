//! Half-braided objects: the regular half-braiding, the representation of
//! the fusion algebra on `Mor(1, Z)`, GNS objects from positive multipliers,
//! the finite-dimensional `C*(C)` and invariant vectors.

mod braid;
mod cstar;
mod invariance;
mod regular;
mod rep;
mod zphi;

pub use braid::{verify_half_braiding, HalfBraidedObject};
pub use cstar::{decompose_cstar_finite, CStarBlock, CStarDecomposition};
pub use invariance::{invariance_diagnostics, InvarianceReport, InvarianceSummary};
pub use regular::{
    block_multiplicativity_residual, block_unitarity_residual, random_unitary, regular_block, regular_block_alt, regular_block_with_basis,
    regular_blocks, regular_half_braiding, two_formula_residual, unit_column_residual, RegularSpace,
};
pub use rep::{almost_invariance_identity_residual, regular_rep_residual, rep_from_braiding, vector_morphism, FusionRepresentation};
pub use zphi::{build_zphi, intertwining_residual, GnsCenterObject};
