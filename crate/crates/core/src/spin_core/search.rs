//! Search for rank-`k` anticoherent subspaces.
//!
//! Minimises `f(Q) = Σ_j ‖Q† A_j Q‖²_F` over orthonormal `d × k` frames `Q`,
//! where `A_j` runs over an orthonormal basis of `V(s, t)`. The gradient is
//! projected onto the tangent space of the frame manifold, a step is taken
//! and the frame is re-orthonormalised by QR. Steps that fail to decrease `f`
//! are halved.
//!
//! A frame is only ever returned after [`subspace_residual`] confirms it; that
//! check computes operator norms of the compressions and shares no code with
//! the objective.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::certify::{subspace_residual, Subspace};
use super::moments::moment_basis_shared;
use super::spin::SpinQuantum;
use crate::error::{Error, Result};
use crate::linalg::{gaussian_matrix, CMat};
use crate::C64;

#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub restarts: usize,
    /// Success threshold on the certified residual.
    pub tol: f64,
    pub seed: u64,
    pub max_iter: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 50,
            tol: 1e-8,
            seed: 0,
            max_iter: 10_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    /// Certified subspace, if any restart succeeded.
    pub subspace: Option<Subspace>,
    /// Smallest certified residual seen over all restarts.
    pub best_residual: f64,
    /// Smallest objective value seen over all restarts.
    pub best_objective: f64,
    pub restarts_run: usize,
    pub iterations: usize,
}

struct Objective<'a> {
    ops: &'a [CMat],
}

impl Objective<'_> {
    fn value(&self, q: &CMat) -> f64 {
        let qa = q.adjoint();
        self.ops
            .iter()
            .map(|a| (&qa * a * q).norm_squared())
            .sum()
    }

    /// Value and Riemannian gradient `(I - Q Q†) · 4 Σ A Q (Q† A Q)`.
    fn value_and_gradient(&self, q: &CMat) -> (f64, CMat) {
        let qa = q.adjoint();
        let mut f = 0.0;
        let mut g = CMat::zeros(q.nrows(), q.ncols());
        for a in self.ops {
            let aq = a * q;
            let m = &qa * &aq;
            f += m.norm_squared();
            g += aq * m * C64::new(4.0, 0.0);
        }
        let proj = &g - q * (&qa * &g);
        (f, proj)
    }
}

fn orthonormalize(m: CMat) -> CMat {
    m.qr().q()
}

/// Runs the frame search and returns the full outcome.
pub fn search_with_report(
    spin: SpinQuantum,
    t: usize,
    k: usize,
    config: &SearchConfig,
) -> Result<SearchReport> {
    let d = spin.dim();
    if k == 0 || k > d {
        return Err(Error::InvalidRank { k, dim: d });
    }
    if t == 0 {
        return Err(Error::InvalidArgument("moment order must be at least 1".into()));
    }
    let basis = moment_basis_shared(spin, t);
    let objective = Objective {
        ops: basis.ops_upto(t),
    };
    // sqrt(f) bounds every compression norm, so reaching this is a strong hint.
    let target = (0.01 * config.tol).powi(2);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = SearchReport {
        subspace: None,
        best_residual: f64::INFINITY,
        best_objective: f64::INFINITY,
        restarts_run: 0,
        iterations: 0,
    };

    for _ in 0..config.restarts {
        report.restarts_run += 1;
        let mut q = orthonormalize(gaussian_matrix(&mut rng, d, k));
        let mut eta = 0.1;
        let (mut f, mut grad) = objective.value_and_gradient(&q);
        let mut checkpoint = f;
        for it in 1..=config.max_iter {
            report.iterations += 1;
            if f <= target {
                break;
            }
            let mut accepted = false;
            while eta > 1e-14 {
                let trial = orthonormalize(&q - &grad * C64::new(eta, 0.0));
                let ft = objective.value(&trial);
                if ft < f {
                    q = trial;
                    eta = (eta * 1.5).min(10.0);
                    accepted = true;
                    break;
                }
                eta *= 0.5;
            }
            if !accepted {
                break;
            }
            (f, grad) = objective.value_and_gradient(&q);
            if it % 250 == 0 {
                if checkpoint - f <= 1e-8 * checkpoint {
                    break;
                }
                checkpoint = f;
            }
        }
        report.best_objective = report.best_objective.min(f);

        let candidate = Subspace::from_frame(spin, &q)?;
        let residual = subspace_residual(&candidate, t);
        report.best_residual = report.best_residual.min(residual);
        if residual <= config.tol {
            let mut sub = candidate;
            sub.certify(t, config.tol);
            report.subspace = Some(sub);
            break;
        }
    }
    Ok(report)
}

/// Searches for a `k`-dimensional subspace whose unit vectors are all
/// anticoherent to order `t`. Returns `None` once the restart budget is spent.
pub fn search_anticoherent_subspace(
    spin: SpinQuantum,
    t: usize,
    k: usize,
    config: &SearchConfig,
) -> Result<Option<Subspace>> {
    Ok(search_with_report(spin, t, k, config)?.subspace)
}
