//! Oracles shared by the integration suites. Nothing here calls into the
//! code path it is used to check.
#![allow(dead_code)]

use spinlab_core::linalg::{axis_angle_rotation, unitary_exp, CMat, Rot3};
use spinlab_core::{spin_operators, SpinQuantum, SpinState, C64};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn spin(doubled: u32) -> SpinQuantum {
    SpinQuantum::from_doubled(doubled).unwrap()
}

/// `(|3,-2⟩ - |3,2⟩)/√2`.
pub fn octahedron_state() -> SpinState {
    let s = SpinQuantum::integer(3);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![c(0.0, 0.0); 7];
    amps[s.index_of(-4).unwrap()] = c(r, 0.0);
    amps[s.index_of(4).unwrap()] = c(-r, 0.0);
    SpinState::new(s, amps).unwrap()
}

pub fn octahedron_vertices() -> Vec<[f64; 3]> {
    vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ]
}

/// Regular tetrahedron with one vertex at the north pole.
pub fn tetrahedron_vertices() -> Vec<[f64; 3]> {
    let z: f64 = -1.0 / 3.0;
    let r = (1.0 - z * z).sqrt();
    let mut v = vec![[0.0, 0.0, 1.0]];
    for k in 0..3 {
        let phi = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
        v.push([r * phi.cos(), r * phi.sin(), z]);
    }
    v
}

/// The 12 vertices `(0, ±1, ±φ)` and cyclic permutations, normalised.
pub fn icosahedron_vertices() -> Vec<[f64; 3]> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let n = (1.0 + phi * phi).sqrt();
    let mut v = Vec::new();
    for a in [-1.0, 1.0] {
        for b in [-phi, phi] {
            v.push([0.0, a / n, b / n]);
            v.push([a / n, b / n, 0.0]);
            v.push([b / n, 0.0, a / n]);
        }
    }
    v
}

/// `exp(-i θ n̂·S)` built from the spin operators and a Hermitian
/// exponential.
pub fn rotation_unitary(s: SpinQuantum, axis: [f64; 3], angle: f64) -> CMat {
    let n = spinlab_core::linalg::norm3(axis);
    let unit = [axis[0] / n, axis[1] / n, axis[2] / n];
    unitary_exp(&spin_operators(s).along(unit), angle)
}

/// Rotation of the Majorana points induced by `exp(-i θ n̂·S)`.
///
/// Majorana points are the reflection `diag(1, 1, -1)` of spin directions
/// (`|s, s⟩` sits at the south pole), so the induced map is `F R F`.
pub fn induced_point_rotation(axis: [f64; 3], angle: f64) -> Rot3 {
    let r = axis_angle_rotation(axis, angle);
    let f = [1.0, 1.0, -1.0];
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = f[i] * r[i][j] * f[j];
        }
    }
    out
}

/// Elimination argument for 1-anticoherent subspaces `W` of dimension `k`
/// at spin `s` (given as `2s`). Returns `true` when the argument rules `W`
/// out.
///
/// Every unit vector of `W` has `⟨S_z⟩ = 0`, and `P S_± P = 0`.
///
/// * Half-integer `s`: if `k + dim span{m > 0} > 2s + 1`, `W` contains a
///   nonzero vector supported on `m > 0`, whose `⟨S_z⟩` is positive.
/// * Integer `s`: if `k + dim span{m ≥ 0} > 2s + 1`, `W` meets
///   `span{m ≥ 0}`; zero `⟨S_z⟩` there forces `|s,0⟩ ∈ W`. Then
///   `S_±|s,0⟩ ∝ |s,±1⟩` lie in `W^⊥`. `W' = W ∩ |s,0⟩^⊥` has dimension
///   `k - 1` inside `span{|m| ≥ 2}` (dimension `2s - 2`), so it meets
///   `span{m ≥ 2}` (dimension `s - 1`) once `(k - 1) + (s - 1) > 2s - 2`,
///   again giving a vector with positive `⟨S_z⟩`.
pub fn elimination_forbids(doubled: u32, k: usize) -> bool {
    let d = doubled as usize + 1;
    if doubled % 2 == 1 {
        let positive = d / 2;
        return k + positive > d;
    }
    let s = doubled as usize / 2;
    let nonnegative = s + 1;
    if k + nonnegative <= d {
        return false;
    }
    // |s,0⟩ ∈ W and |s,±1⟩ ⊥ W.
    if s == 0 {
        return true;
    }
    let outer = d - 3; // span{|m| ≥ 2}
    let upper = s - 1; // span{m ≥ 2}
    (k - 1) + upper > outer
}
