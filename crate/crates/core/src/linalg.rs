//! Small dense linear-algebra helpers shared by the other modules.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::C64;

pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// 3×3 real rotation, row-major.
pub type Rot3 = [[f64; 3]; 3];

/// Hilbert–Schmidt inner product `tr(a† b)`.
pub fn hs_inner(a: &CMat, b: &CMat) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn frobenius_norm(a: &CMat) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn trace(a: &CMat) -> C64 {
    a.diagonal().iter().sum()
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(a: &CMat) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(a.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}

/// Operator norm of a Hermitian matrix, i.e. its largest |eigenvalue|.
pub fn hermitian_norm(a: &CMat) -> f64 {
    match a.nrows() {
        0 => 0.0,
        1 => a[(0, 0)].norm(),
        _ => hermitian_eigenvalues(a)
            .into_iter()
            .fold(0.0_f64, |m, e| m.max(e.abs())),
    }
}

/// Largest deviation of `a` from being Hermitian.
pub fn hermiticity_defect(a: &CMat) -> f64 {
    (a - a.adjoint()).iter().fold(0.0_f64, |m, x| m.max(x.norm()))
}

/// Orthonormalises the columns of `m` by modified Gram–Schmidt with one
/// reorthogonalisation pass. Columns whose residual norm falls below
/// `rel_tol` times their original norm are dropped.
pub fn orthonormalize_columns(m: &CMat, rel_tol: f64) -> CMat {
    let mut kept: Vec<CVec> = Vec::with_capacity(m.ncols());
    for j in 0..m.ncols() {
        let mut v: CVec = m.column(j).into_owned();
        let n0 = v.norm();
        if n0 == 0.0 {
            continue;
        }
        for _ in 0..2 {
            for q in &kept {
                let c = q.dotc(&v);
                v.axpy(-c, q, C64::new(1.0, 0.0));
            }
        }
        let n = v.norm();
        if n > rel_tol * n0 {
            kept.push(v.unscale(n));
        }
    }
    if kept.is_empty() {
        return CMat::zeros(m.nrows(), 0);
    }
    CMat::from_columns(&kept)
}

/// Thin singular value decomposition by one-sided Jacobi rotations.
///
/// Returns the singular values in descending order together with the
/// matching left singular vectors as columns. Columns of `m` are rotated
/// pairwise until mutually orthogonal, which keeps small singular values
/// accurate relative to the largest.
pub fn jacobi_svd(m: &CMat) -> (Vec<f64>, CMat) {
    let mut a = m.clone();
    let n = a.ncols();
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = a.column(p).norm_squared();
                let beta = a.column(q).norm_squared();
                let gamma = a.column(p).dotc(&a.column(q));
                let g = gamma.norm();
                if g <= f64::EPSILON * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..a.nrows() {
                    let ap = a[(i, p)];
                    let aq = a[(i, q)] * phase.conj();
                    a[(i, p)] = ap * c - aq * s;
                    a[(i, q)] = ap * s + aq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut cols: Vec<(f64, CVec)> = (0..n)
        .map(|j| {
            let v: CVec = a.column(j).into_owned();
            (v.norm(), v)
        })
        .collect();
    cols.sort_by(|x, y| y.0.total_cmp(&x.0));
    let sv = cols.iter().map(|c| c.0).collect();
    let mut u = CMat::zeros(a.nrows(), n);
    for (j, (sigma, v)) in cols.iter().enumerate() {
        if *sigma > 0.0 {
            u.set_column(j, &v.unscale(*sigma));
        }
    }
    (sv, u)
}

/// Vector of independent complex standard normals.
pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVec {
    CVec::from_iterator(
        dim,
        (0..dim).map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))),
    )
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    CMat::from_iterator(
        rows,
        cols,
        (0..rows * cols).map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))),
    )
}

/// `exp(-i θ H)` for Hermitian `H`.
pub fn unitary_exp(h: &CMat, theta: f64) -> CMat {
    let eig = SymmetricEigen::new(h.clone());
    let u = &eig.eigenvectors;
    let phases = CMat::from_diagonal(&CVec::from_iterator(
        h.nrows(),
        eig.eigenvalues.iter().map(|&e| C64::from_polar(1.0, -theta * e)),
    ));
    u * phases * u.adjoint()
}

/// Rotation by `angle` about the unit `axis` (Rodrigues formula).
pub fn axis_angle_rotation(axis: [f64; 3], angle: f64) -> Rot3 {
    let n = norm3(axis);
    let [x, y, z] = [axis[0] / n, axis[1] / n, axis[2] / n];
    let (s, c) = angle.sin_cos();
    let t = 1.0 - c;
    [
        [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
        [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
        [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
    ]
}

pub fn apply_rot(r: &Rot3, v: [f64; 3]) -> [f64; 3] {
    [
        r[0][0] * v[0] + r[0][1] * v[1] + r[0][2] * v[2],
        r[1][0] * v[0] + r[1][1] * v[1] + r[1][2] * v[2],
        r[2][0] * v[0] + r[2][1] * v[1] + r[2][2] * v[2],
    ]
}

pub fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

pub fn dist3(a: [f64; 3], b: [f64; 3]) -> f64 {
    norm3([a[0] - b[0], a[1] - b[1], a[2] - b[2]])
}
