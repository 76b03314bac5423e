//! Anticoherence certification for states and subspaces.
//!
//! A state is anticoherent to order `t` exactly when its expectation of every
//! operator in `V(s, t)` vanishes; a subspace is when the compression `P A P`
//! of every such operator vanishes.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::moments::{moment_basis_shared, MomentBasis};
use super::spin::{expectation, SpinQuantum, SpinState};
use crate::error::{Error, Result};
use crate::linalg::{gaussian_vector, hermitian_norm, CMat, CVec};
use crate::C64;

/// Gram tolerance for an orthonormal basis.
pub const ORTHONORMAL_TOL: f64 = 1e-10;

/// Largest `|⟨ψ|A|ψ⟩|` over the operators first appearing at order `t`.
fn state_defect(state: &SpinState, basis: &MomentBasis, t: usize) -> f64 {
    basis
        .ops_at(t)
        .iter()
        .map(|a| expectation(state, a).expect("dimension checked").abs())
        .fold(0.0, f64::max)
}

/// Largest `t ≤ t_max` such that `⟨ψ|A|ψ⟩` vanishes to `tol` on `V(s, t)`;
/// 0 when the state is not even 1-anticoherent.
pub fn anticoherence_order(state: &SpinState, t_max: usize, tol: f64) -> usize {
    let basis = moment_basis_shared(state.spin(), t_max.max(1));
    let mut order = 0;
    for t in 1..=t_max {
        if state_defect(state, &basis, t) > tol {
            break;
        }
        order = t;
    }
    order
}

/// Per-order state defects `max |⟨ψ|A|ψ⟩|` over `V(s, t)`, `t = 1..=t_max`.
pub fn state_residuals(state: &SpinState, t_max: usize) -> Vec<f64> {
    let basis = moment_basis_shared(state.spin(), t_max.max(1));
    let mut acc = 0.0_f64;
    (1..=t_max)
        .map(|t| {
            acc = acc.max(state_defect(state, &basis, t));
            acc
        })
        .collect()
}

/// Orthonormal set of spin states spanning a subspace.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(into = "SubspaceJson", try_from = "SubspaceJson")]
pub struct Subspace {
    spin: SpinQuantum,
    basis: Vec<SpinState>,
    certified_order: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct SubspaceJson {
    doubled_spin: u32,
    dim: usize,
    basis: Vec<SpinState>,
    certified_order: Option<usize>,
}

impl From<Subspace> for SubspaceJson {
    fn from(s: Subspace) -> Self {
        Self {
            doubled_spin: s.spin.doubled(),
            dim: s.basis.len(),
            basis: s.basis,
            certified_order: s.certified_order,
        }
    }
}

impl TryFrom<SubspaceJson> for Subspace {
    type Error = Error;

    fn try_from(raw: SubspaceJson) -> Result<Self> {
        let spin = SpinQuantum::from_doubled(raw.doubled_spin)?;
        if raw.dim != raw.basis.len() {
            return Err(Error::DimensionMismatch {
                expected: raw.dim,
                found: raw.basis.len(),
            });
        }
        let mut sub = Subspace::from_orthonormal(spin, raw.basis)?;
        sub.certified_order = raw.certified_order;
        Ok(sub)
    }
}

impl Subspace {
    /// Wraps an already orthonormal basis, checking its Gram matrix.
    pub fn from_orthonormal(spin: SpinQuantum, basis: Vec<SpinState>) -> Result<Self> {
        for b in &basis {
            if b.spin() != spin {
                return Err(Error::DimensionMismatch {
                    expected: spin.dim(),
                    found: b.spin().dim(),
                });
            }
        }
        let sub = Self {
            spin,
            basis,
            certified_order: None,
        };
        let deviation = sub.gram_deviation();
        if deviation > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(sub)
    }

    /// Subspace spanned by the columns of `frame`, which must be orthonormal.
    pub fn from_frame(spin: SpinQuantum, frame: &CMat) -> Result<Self> {
        if frame.nrows() != spin.dim() {
            return Err(Error::DimensionMismatch {
                expected: spin.dim(),
                found: frame.nrows(),
            });
        }
        let basis = frame
            .column_iter()
            .map(|c| SpinState::from_vector(spin, &c.into_owned()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_orthonormal(spin, basis)
    }

    /// Orthonormalises arbitrary spanning states, dropping dependent ones.
    pub fn span(spin: SpinQuantum, states: &[SpinState], rel_tol: f64) -> Result<Self> {
        if states.is_empty() {
            return Self::from_orthonormal(spin, Vec::new());
        }
        let cols: Vec<CVec> = states.iter().map(SpinState::to_vector).collect();
        let q = crate::linalg::orthonormalize_columns(&CMat::from_columns(&cols), rel_tol);
        Self::from_frame(spin, &q)
    }

    pub fn spin(&self) -> SpinQuantum {
        self.spin
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SpinState] {
        &self.basis
    }

    pub fn certified_order(&self) -> Option<usize> {
        self.certified_order
    }

    /// `d × k` matrix whose columns are the basis states.
    pub fn frame(&self) -> CMat {
        let d = self.spin.dim();
        if self.basis.is_empty() {
            return CMat::zeros(d, 0);
        }
        let cols: Vec<CVec> = self.basis.iter().map(SpinState::to_vector).collect();
        CMat::from_columns(&cols)
    }

    pub fn projector(&self) -> CMat {
        let q = self.frame();
        &q * q.adjoint()
    }

    pub fn gram_deviation(&self) -> f64 {
        let q = self.frame();
        let k = q.ncols();
        (q.adjoint() * &q - CMat::identity(k, k))
            .iter()
            .fold(0.0, |m, x| m.max(x.norm()))
    }

    /// Unit vector with Gaussian coordinates in the basis.
    pub fn random_unit_vector<R: Rng + ?Sized>(&self, rng: &mut R) -> SpinState {
        let coeffs = gaussian_vector(rng, self.dim());
        let v = self.frame() * coeffs;
        let n = v.norm();
        SpinState::from_vector(self.spin, &(v / C64::new(n, 0.0))).expect("dimension")
    }

    /// Runs [`subspace_order`] and records the result.
    pub fn certify(&mut self, t_max: usize, tol: f64) -> usize {
        let t = subspace_order(self, t_max, tol);
        self.certified_order = Some(t);
        t
    }
}

fn compression_defect(frame: &CMat, ops: &[CMat]) -> f64 {
    let adj = frame.adjoint();
    ops.iter()
        .map(|a| hermitian_norm(&(&adj * a * frame)))
        .fold(0.0, f64::max)
}

/// Largest operator norm of `P A P` over an orthonormal basis of `V(s, t)`.
pub fn subspace_residual(sub: &Subspace, t: usize) -> f64 {
    if sub.dim() == 0 {
        return 0.0;
    }
    let basis = moment_basis_shared(sub.spin(), t);
    compression_defect(&sub.frame(), basis.ops_upto(t))
}

/// [`subspace_residual`] for each `t = 1..=t_max`.
pub fn subspace_residuals(sub: &Subspace, t_max: usize) -> Vec<f64> {
    let basis = moment_basis_shared(sub.spin(), t_max.max(1));
    let frame = sub.frame();
    let mut acc = 0.0_f64;
    (1..=t_max)
        .map(|t| {
            acc = acc.max(compression_defect(&frame, basis.ops_at(t)));
            acc
        })
        .collect()
}

/// Largest `t ≤ t_max` whose residual is within `tol`; 0 if none.
pub fn subspace_order(sub: &Subspace, t_max: usize, tol: f64) -> usize {
    if sub.dim() == 0 {
        return 0;
    }
    let frame = sub.frame();
    let mut order = 0;
    for t in 1..=t_max {
        let basis = moment_basis_shared(sub.spin(), t);
        if compression_defect(&frame, basis.ops_at(t)) > tol {
            break;
        }
        order = t;
    }
    order
}
