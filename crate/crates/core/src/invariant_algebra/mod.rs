//! Binary forms, finite subgroups of SU(2) and their invariants.
//!
//! A group element `g = [[a, b], [c, d]]` acts on a form by substitution,
//! `p ↦ p(a z + b w, c z + d w)`. Every group here is closed under inverses,
//! so this choice does not change which forms are invariant.

mod group;
mod klein;
mod poly;

pub use group::{
    generate_group, mat2_det, mat2_identity, mat2_mul, mat2_unitarity_defect, BinaryGroup,
    GroupFamily, Mat2,
};
pub use klein::{
    check_relative_invariance, expected_anticoherence, generator_degrees, klein_generators,
    CharacterReport,
};
pub use poly::HomoPoly;
