//! Anticoherent spin subspaces built from the invariant polynomials of the
//! binary polyhedral groups.
//!
//! The crate is organised around five pieces:
//!
//! * [`invariant_algebra`]: homogeneous polynomials in `(z, w)`, explicit
//!   finite subgroups of SU(2), Klein's absolute invariants and an
//!   invariance oracle.
//! * [`spin_core`]: spin operators, the traceless moment spaces `V(s, t)`,
//!   anticoherence certification of states and subspaces, joint numerical
//!   range sampling and a search for rank-`k` anticoherent subspaces.
//! * [`majorana`]: the Majorana correspondence between spin states,
//!   polynomials, root multisets and points on the unit sphere.
//! * [`subspaces`]: construction of anticoherent subspaces from products of
//!   invariants.
//! * [`designs`]: spherical `t`-design verification with exact sphere
//!   moments.

pub mod designs;
pub mod error;
pub mod invariant_algebra;
pub mod linalg;
pub mod majorana;
pub mod spin_core;
pub mod subspaces;

pub use error::{Error, Result};

pub use num_complex::Complex64 as C64;

pub use designs::{design_order, design_residual, sphere_monomial_average, DesignReport};
pub use invariant_algebra::{
    check_relative_invariance, generate_group, klein_generators, BinaryGroup, CharacterReport,
    GroupFamily, HomoPoly, Mat2,
};
pub use majorana::{
    from_majorana_poly, majorana_points, poly_roots, state_from_points, stereo_lift,
    stereo_project, to_majorana_poly, ExtendedComplex, MajoranaPoly, PointSet, RootMultiset,
};
pub use spin_core::{
    anticoherence_order, expectation, moment_basis, sample_joint_range,
    search_anticoherent_subspace, spin_operators, subspace_order, subspace_residual,
    MomentBasis, RangeSample, SearchConfig, SearchReport, SpinOperators, SpinQuantum, SpinState,
    Subspace,
};
pub use subspaces::{
    build_anticoherent_subspace, candidate_polynomials, construct_report, degree_solutions,
    scan_dimensions, SCAN_CSV_HEADER,
    Candidate, ConstructionReport, DegreeSolution,
};
