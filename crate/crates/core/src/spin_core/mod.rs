//! Spin operators, moment spaces and anticoherence certification.

mod certify;
mod moments;
mod range;
mod search;
mod spin;

pub use certify::{
    anticoherence_order, state_residuals, subspace_order, subspace_residual, subspace_residuals,
    Subspace, ORTHONORMAL_TOL,
};
pub use moments::{moment_basis, moment_basis_shared, MomentBasis, BASIS_CUTOFF};
pub use range::{sample_joint_range, spin_vector, RangeSample};
pub use search::{search_anticoherent_subspace, search_with_report, SearchConfig, SearchReport};
pub use spin::{expectation, spin_operators, SpinOperators, SpinQuantum, SpinState};

/// Default tolerance for certifying residuals.
pub const CERT_TOL: f64 = 1e-10;
