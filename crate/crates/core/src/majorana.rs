//! The Majorana correspondence.
//!
//! A spin-`s` state with amplitudes `a_i` on `|s, s - i⟩` maps to the
//! polynomial `M(z) = Σ_k c_k z^k` with
//!
//! ```text
//! c_{2s-i} = (-1)^i · a_i · sqrt(C(2s, 2s-i))
//! ```
//!
//! Its `2s` roots, with missing degree counted as roots at infinity, project
//! stereographically to points on the unit sphere. `z = 0` lands on the south
//! pole, so `|s, s⟩` is `2s` copies of `(0, 0, -1)`.
//!
//! The homogeneous form `M^H(z, w) = Σ_k c_k z^k w^{2s-k}` has the same
//! coefficients and is the bridge to [`HomoPoly`].

use nalgebra::linalg::Schur;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariant_algebra::{HomoPoly, Mat2};
use crate::linalg::{apply_rot, dist3, norm3, CMat, Rot3};
use crate::spin_core::{SpinQuantum, SpinState};
use crate::C64;

/// Leading coefficients below this fraction of the largest are zero.
pub const LEADING_ZERO_TOL: f64 = 1e-12;
/// Largest allowed deviation from unit norm in a [`PointSet`].
pub const UNIT_TOL: f64 = 1e-9;

/// `sqrt(C(n, k))` in floating point.
fn sqrt_binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut c = 1.0f64;
    for j in 0..k {
        c = c * (n - j) as f64 / (j + 1) as f64;
    }
    c.sqrt()
}

fn sign(i: usize) -> f64 {
    if i % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Univariate Majorana polynomial; `coeffs[k]` multiplies `z^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaPoly {
    spin: SpinQuantum,
    coeffs: Vec<C64>,
}

impl MajoranaPoly {
    pub fn new(spin: SpinQuantum, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != spin.dim() {
            return Err(Error::DimensionMismatch {
                expected: spin.dim(),
                found: coeffs.len(),
            });
        }
        if coeffs.iter().all(|c| *c == C64::new(0.0, 0.0)) {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self { spin, coeffs })
    }

    /// Reads `M^H(z, w)`; the degree fixes `2s`.
    pub fn from_homogeneous(p: &HomoPoly) -> Result<Self> {
        let doubled = u32::try_from(p.degree())
            .map_err(|_| Error::InvalidSpin(format!("degree {} too large", p.degree())))?;
        let spin = SpinQuantum::from_doubled(doubled)?;
        Self::new(spin, p.coeffs().to_vec())
    }

    pub fn to_homogeneous(&self) -> HomoPoly {
        HomoPoly::new(self.coeffs.clone()).expect("nonempty coefficient list")
    }

    pub fn spin(&self) -> SpinQuantum {
        self.spin
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, c| acc * z + c)
    }
}

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedComplex {
    Finite(C64),
    Infinity,
}

impl From<C64> for ExtendedComplex {
    fn from(z: C64) -> Self {
        ExtendedComplex::Finite(z)
    }
}

/// Roots of a Majorana polynomial; `finite_roots.len() + inf_mult = 2s`.
///
/// Repeated roots are not clustered and appear as nearby simple roots.
#[derive(Debug, Clone, PartialEq)]
pub struct RootMultiset {
    pub finite_roots: Vec<C64>,
    pub inf_mult: usize,
}

impl RootMultiset {
    pub fn len(&self) -> usize {
        self.finite_roots.len() + self.inf_mult
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_extended(&self) -> Vec<ExtendedComplex> {
        self.finite_roots
            .iter()
            .map(|&z| ExtendedComplex::Finite(z))
            .chain(std::iter::repeat_n(ExtendedComplex::Infinity, self.inf_mult))
            .collect()
    }
}

/// Multiset of unit vectors in R³.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPoints")]
pub struct PointSet {
    points: Vec<[f64; 3]>,
}

#[derive(Deserialize)]
struct RawPoints {
    points: Vec<[f64; 3]>,
}

impl TryFrom<RawPoints> for PointSet {
    type Error = Error;

    fn try_from(raw: RawPoints) -> Result<Self> {
        PointSet::new(raw.points)
    }
}

impl PointSet {
    pub fn new(points: Vec<[f64; 3]>) -> Result<Self> {
        for (index, p) in points.iter().enumerate() {
            let norm = norm3(*p);
            if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOL {
                return Err(Error::OffSphere { index, norm });
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn rotated(&self, r: &Rot3) -> Self {
        Self {
            points: self.points.iter().map(|p| apply_rot(r, *p)).collect(),
        }
    }

    /// Bottleneck distance of the greedy matching; `None` if sizes differ.
    pub fn matching_distance(&self, other: &Self) -> Option<f64> {
        matching_distance(&self.points, &other.points)
    }

    /// Matching tolerance appropriate for point sets of this size.
    pub fn matching_tolerance(&self) -> f64 {
        if self.points.len() > 40 {
            1e-4
        } else {
            1e-6
        }
    }
}

/// Greedy minimal matching between two equal-size multisets.
///
/// Pairs are taken globally in order of increasing distance. Returns the
/// largest distance used, or `None` if the sizes differ.
pub fn matching_distance(a: &[[f64; 3]], b: &[[f64; 3]]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(a.len() * b.len());
    for (i, p) in a.iter().enumerate() {
        for (j, q) in b.iter().enumerate() {
            pairs.push((dist3(*p, *q), i, j));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut worst = 0.0f64;
    let mut matched = 0;
    for (d, i, j) in pairs {
        if matched == a.len() {
            break;
        }
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            worst = worst.max(d);
            matched += 1;
        }
    }
    Some(worst)
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff_distance(a: &[[f64; 3]], b: &[[f64; 3]]) -> f64 {
    let one_sided = |x: &[[f64; 3]], y: &[[f64; 3]]| {
        x.iter()
            .map(|p| y.iter().map(|q| dist3(*p, *q)).fold(f64::INFINITY, f64::min))
            .fold(0.0f64, f64::max)
    };
    one_sided(a, b).max(one_sided(b, a))
}

pub fn to_majorana_poly(state: &SpinState) -> Result<MajoranaPoly> {
    let spin = state.spin();
    let n = spin.doubled() as usize;
    let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
    for (i, a) in state.amps().iter().enumerate() {
        coeffs[n - i] = a * (sign(i) * sqrt_binomial(n, n - i));
    }
    if state.norm() == 0.0 {
        return Err(Error::ZeroState);
    }
    MajoranaPoly::new(spin, coeffs)
}

/// Inverse of [`to_majorana_poly`], normalised to unit norm.
pub fn from_majorana_poly(p: &MajoranaPoly) -> Result<SpinState> {
    let spin = p.spin();
    let n = spin.doubled() as usize;
    let amps = (0..=n)
        .map(|i| p.coeffs[n - i] * (sign(i) / sqrt_binomial(n, n - i)))
        .collect();
    SpinState::new(spin, amps)?.normalized()
}

/// Parlett–Reinsch balancing with radix 2, in place.
fn balance(a: &mut CMat) {
    let n = a.nrows();
    let radix = 2.0f64;
    let sq = radix * radix;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].norm();
                    r += a[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= sq;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= sq;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= inv;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Roots of a monic polynomial `z^m + Σ_{i<m} a_i z^i` via its companion matrix.
fn companion_roots(lower: &[C64]) -> Result<Vec<C64>> {
    let m = lower.len();
    match m {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![-lower[0]]),
        _ => {}
    }
    let mut c = CMat::zeros(m, m);
    for i in 1..m {
        c[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for i in 0..m {
        c[(i, m - 1)] = -lower[i];
    }
    balance(&mut c);
    let schur = Schur::try_new(c, f64::EPSILON, 10_000).ok_or(Error::NoConvergence)?;
    let (_, t) = schur.unpack();
    Ok(t.diagonal().iter().copied().collect())
}

fn horner_with_derivative(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// A few Newton steps, each kept only if it lowers `|p|`.
fn polish(coeffs: &[C64], mut z: C64) -> C64 {
    let (mut p, mut dp) = horner_with_derivative(coeffs, z);
    for _ in 0..4 {
        if p.norm() == 0.0 || dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        let (pn, dpn) = horner_with_derivative(coeffs, next);
        if !(pn.norm() < p.norm()) {
            break;
        }
        z = next;
        p = pn;
        dp = dpn;
    }
    z
}

/// All `2s` roots, with vanished leading terms reported as roots at infinity.
pub fn poly_roots(p: &MajoranaPoly) -> Result<RootMultiset> {
    let max = p.coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if max == 0.0 {
        return Err(Error::ZeroPolynomial);
    }
    let cut = LEADING_ZERO_TOL * max;
    let n = p.coeffs.len() - 1;
    let top = (0..=n).rev().find(|&k| p.coeffs[k].norm() > cut).expect("max > cut");
    let bottom = (0..=top).find(|&k| p.coeffs[k].norm() > cut).expect("top qualifies");
    let inf_mult = n - top;
    let core = &p.coeffs[bottom..=top];
    let lead = core[core.len() - 1];
    let monic: Vec<C64> = core[..core.len() - 1].iter().map(|c| c / lead).collect();

    let mut finite_roots = vec![C64::new(0.0, 0.0); bottom];
    for z in companion_roots(&monic)? {
        finite_roots.push(polish(core, z));
    }
    Ok(RootMultiset {
        finite_roots,
        inf_mult,
    })
}

/// `v(z) = (2 Re z, 2 Im z, |z|² - 1) / (|z|² + 1)`, `v(∞) = (0, 0, 1)`.
pub fn stereo_project(z: ExtendedComplex) -> [f64; 3] {
    match z {
        ExtendedComplex::Infinity => [0.0, 0.0, 1.0],
        ExtendedComplex::Finite(z) => {
            let r2 = z.norm_sqr();
            if !r2.is_finite() {
                return [0.0, 0.0, 1.0];
            }
            let d = r2 + 1.0;
            [2.0 * z.re / d, 2.0 * z.im / d, (r2 - 1.0) / d]
        }
    }
}

/// Inverse of [`stereo_project`] on the unit sphere.
pub fn stereo_lift(x: [f64; 3]) -> ExtendedComplex {
    let [x1, x2, x3] = x;
    if x3 <= 0.0 {
        ExtendedComplex::Finite(C64::new(x1, x2) / (1.0 - x3))
    } else {
        // (x1 + i x2)/(1 - x3) = (1 + x3)/(x1 - i x2) on the sphere.
        let den = C64::new(x1, -x2);
        if den.norm() == 0.0 {
            ExtendedComplex::Infinity
        } else {
            ExtendedComplex::Finite(C64::new(1.0 + x3, 0.0) / den)
        }
    }
}

/// Homogeneous coordinates `(z : w)` of a sphere point, well conditioned everywhere.
pub fn homogeneous_lift(x: [f64; 3]) -> (C64, C64) {
    let [x1, x2, x3] = x;
    let (z, w) = if x3 <= 0.0 {
        (C64::new(x1, x2), C64::new(1.0 - x3, 0.0))
    } else {
        (C64::new(1.0 + x3, 0.0), C64::new(x1, -x2))
    };
    let n = (z.norm_sqr() + w.norm_sqr()).sqrt();
    (z / n, w / n)
}

/// Sphere point of the projective point `(z : w)`.
pub fn homogeneous_project(z: C64, w: C64) -> [f64; 3] {
    let zw = z * w.conj();
    let n = z.norm_sqr() + w.norm_sqr();
    [2.0 * zw.re / n, 2.0 * zw.im / n, (z.norm_sqr() - w.norm_sqr()) / n]
}

/// Rotation induced on the sphere by `(z, w) ↦ g·(z, w)` for `g ∈ SU(2)`.
///
/// If `p` has Majorana points `X`, then `p ∘ g` has points `R(g⁻¹) X`.
pub fn mobius_rotation(g: &Mat2) -> Rot3 {
    let mut r = [[0.0; 3]; 3];
    for (j, e) in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        .into_iter()
        .enumerate()
    {
        let (z, w) = homogeneous_lift(e);
        let image = homogeneous_project(g[0][0] * z + g[0][1] * w, g[1][0] * z + g[1][1] * w);
        for i in 0..3 {
            r[i][j] = image[i];
        }
    }
    r
}

pub fn majorana_points(state: &SpinState) -> Result<PointSet> {
    let roots = poly_roots(&to_majorana_poly(state)?)?;
    Ok(PointSet {
        points: roots.to_extended().into_iter().map(stereo_project).collect(),
    })
}

/// State whose Majorana points are the given multiset; `2s` is the point count.
pub fn state_from_points(points: &PointSet) -> Result<SpinState> {
    let n = points.len();
    let doubled = u32::try_from(n)
        .map_err(|_| Error::InvalidArgument(format!("{n} points is too many")))?;
    if doubled == 0 {
        return Err(Error::PointCount {
            expected: 1,
            found: 0,
        });
    }
    let mut poly = HomoPoly::one();
    for &x in points.points() {
        let (zi, wi) = homogeneous_lift(x);
        // w_i z - z_i w vanishes exactly at (z_i : w_i).
        poly = poly.mul(&HomoPoly::linear(wi, -zi));
    }
    from_majorana_poly(&MajoranaPoly::from_homogeneous(&poly)?)
}
