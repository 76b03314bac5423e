//! The traceless moment spaces `V(s, t)`: spans of the traceless parts of all
//! products of at most `t` spin operators.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::spin::{spin_operators, SpinQuantum};
use crate::linalg::{frobenius_norm, hs_inner, trace, CMat};
use crate::C64;

/// Relative residual below which a candidate operator counts as dependent.
pub const BASIS_CUTOFF: f64 = 1e-9;

/// Hilbert–Schmidt orthonormal Hermitian traceless basis of `V(s, t)`.
///
/// Operators are ordered by the word length that first produced them, so the
/// first `dim_at(t')` entries span `V(s, t')` for every `t' ≤ t`.
#[derive(Debug, Clone)]
pub struct MomentBasis {
    spin: SpinQuantum,
    t: usize,
    ops: Vec<CMat>,
    dims: Vec<usize>,
    words: Vec<CMat>,
    frontier: Vec<CMat>,
}

impl MomentBasis {
    fn seed(spin: SpinQuantum) -> Self {
        let d = spin.dim();
        let id = CMat::identity(d, d) * C64::new(1.0 / (d as f64).sqrt(), 0.0);
        Self {
            spin,
            t: 0,
            ops: Vec::new(),
            dims: vec![0],
            words: vec![id.clone()],
            frontier: vec![id],
        }
    }

    /// Appends the operators of word length `self.t + 1`.
    fn grow(&mut self) {
        let spin_ops = spin_operators(self.spin);
        let d = self.spin.dim();
        let mut fresh = Vec::new();
        for w in &self.frontier {
            for s in spin_ops.as_array() {
                if let Some(q) = complex_residual(w * s, &self.words) {
                    self.words.push(q.clone());
                    fresh.push(q);
                }
            }
        }
        let half = C64::new(0.5, 0.0);
        let half_i = C64::new(0.0, -0.5);
        for w in &fresh {
            let wa = w.adjoint();
            // Words are unit norm; a part this small is round-off, not a direction.
            let floor = BASIS_CUTOFF * frobenius_norm(w);
            for mut h in [(w + &wa) * half, (w - &wa) * half_i] {
                if frobenius_norm(&h) <= floor {
                    continue;
                }
                let tr = trace(&h) / d as f64;
                for k in 0..d {
                    h[(k, k)] -= tr;
                }
                if let Some(q) = real_residual(h, &self.ops) {
                    self.ops.push(q);
                }
            }
        }
        self.frontier = fresh;
        self.t += 1;
        self.dims.push(self.ops.len());
    }

    pub fn spin(&self) -> SpinQuantum {
        self.spin
    }

    /// Highest word length included.
    pub fn order(&self) -> usize {
        self.t
    }

    pub fn dim(&self) -> usize {
        self.ops.len()
    }

    /// Dimension of `V(s, t')` for `t' ≤ t`.
    pub fn dim_at(&self, t: usize) -> usize {
        self.dims[t.min(self.t)]
    }

    pub fn ops(&self) -> &[CMat] {
        &self.ops
    }

    /// Basis of `V(s, t')`.
    pub fn ops_upto(&self, t: usize) -> &[CMat] {
        &self.ops[..self.dim_at(t)]
    }

    /// Operators first appearing at word length exactly `t`.
    pub fn ops_at(&self, t: usize) -> &[CMat] {
        if t == 0 || t > self.t {
            return &[];
        }
        &self.ops[self.dims[t - 1]..self.dims[t]]
    }
}

/// Complex Gram–Schmidt step; `None` if `m` is dependent on `basis`.
fn complex_residual(mut m: CMat, basis: &[CMat]) -> Option<CMat> {
    let n0 = frobenius_norm(&m);
    if n0 == 0.0 {
        return None;
    }
    for _ in 0..2 {
        for q in basis {
            let c = hs_inner(q, &m);
            m -= q * c;
        }
    }
    let n = frobenius_norm(&m);
    (n > BASIS_CUTOFF * n0).then(|| m / C64::new(n, 0.0))
}

/// Gram–Schmidt over the reals for Hermitian matrices (`Re tr(A B)`).
fn real_residual(mut m: CMat, basis: &[CMat]) -> Option<CMat> {
    let n0 = frobenius_norm(&m);
    if n0 == 0.0 {
        return None;
    }
    for _ in 0..2 {
        for q in basis {
            let c = hs_inner(q, &m).re;
            m -= q * C64::new(c, 0.0);
        }
    }
    let n = frobenius_norm(&m);
    (n > BASIS_CUTOFF * n0).then(|| m / C64::new(n, 0.0))
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<MomentBasis>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<MomentBasis>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Basis of `V(s, t)`.
///
/// Bases are cached per spin and extended on demand; the returned value may
/// have been built to a higher order than `t`, so callers index it through
/// [`MomentBasis::ops_upto`]. Use [`moment_basis`] for an exact-order copy.
pub fn moment_basis_shared(spin: SpinQuantum, t: usize) -> Arc<MomentBasis> {
    if let Some(b) = cache().lock().unwrap().get(&spin.doubled()) {
        if b.order() >= t {
            return Arc::clone(b);
        }
    }
    let start = cache()
        .lock()
        .unwrap()
        .get(&spin.doubled())
        .map(|b| (**b).clone());
    let mut basis = start.unwrap_or_else(|| MomentBasis::seed(spin));
    while basis.order() < t {
        basis.grow();
    }
    let basis = Arc::new(basis);
    let mut guard = cache().lock().unwrap();
    let entry = guard
        .entry(spin.doubled())
        .or_insert_with(|| Arc::clone(&basis));
    if entry.order() < basis.order() {
        *entry = Arc::clone(&basis);
    }
    basis
}

/// Orthonormal Hermitian traceless basis of `V(s, t)`, truncated to order `t`.
pub fn moment_basis(spin: SpinQuantum, t: usize) -> MomentBasis {
    assert!(t >= 1, "moment order must be at least 1");
    let shared = moment_basis_shared(spin, t);
    let mut b = (*shared).clone();
    if b.t > t {
        b.ops.truncate(b.dims[t]);
        b.dims.truncate(t + 1);
        b.t = t;
        // Words beyond order t are not tracked for a truncated copy.
        b.words.clear();
        b.frontier.clear();
    }
    b
}
