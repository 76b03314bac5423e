use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::spin::{expectation, spin_operators, SpinQuantum, SpinState};
use crate::linalg::norm3;

/// Sampled points `(⟨S_x⟩, ⟨S_y⟩, ⟨S_z⟩)` of the joint numerical range.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RangeSample {
    #[serde(rename = "doubled_spin")]
    pub spin: SpinQuantum,
    pub points: Vec<[f64; 3]>,
}

impl RangeSample {
    pub fn count(&self) -> usize {
        self.points.len()
    }

    pub fn norms(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| norm3(*p))
    }

    pub fn max_norm(&self) -> f64 {
        self.norms().fold(0.0, f64::max)
    }

    pub fn min_norm(&self) -> f64 {
        self.norms().fold(f64::INFINITY, f64::min)
    }
}

/// Spin expectation vector of a state.
pub fn spin_vector(state: &SpinState) -> [f64; 3] {
    let ops = spin_operators(state.spin());
    let e = |a| expectation(state, a).expect("matching dimension");
    [e(&ops.sx), e(&ops.sy), e(&ops.sz)]
}

/// Draws `count` Haar-random unit states with a ChaCha8 stream seeded by
/// `seed` and records their spin expectation vectors.
pub fn sample_joint_range(spin: SpinQuantum, count: usize, seed: u64) -> RangeSample {
    let ops = spin_operators(spin);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..count)
        .map(|_| {
            let psi = SpinState::random(spin, &mut rng);
            let e = |a| expectation(&psi, a).expect("matching dimension");
            [e(&ops.sx), e(&ops.sy), e(&ops.sz)]
        })
        .collect();
    RangeSample { spin, points }
}
