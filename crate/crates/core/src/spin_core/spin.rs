use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{gaussian_vector, CMat, CVec};
use crate::C64;

/// Spin quantum number stored as `2s` so half-integers stay exact.
///
/// Serialises as the integer `2s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct SpinQuantum(u32);

impl TryFrom<u32> for SpinQuantum {
    type Error = Error;

    fn try_from(doubled: u32) -> Result<Self> {
        Self::from_doubled(doubled)
    }
}

impl From<SpinQuantum> for u32 {
    fn from(s: SpinQuantum) -> u32 {
        s.0
    }
}

impl SpinQuantum {
    pub fn from_doubled(doubled: u32) -> Result<Self> {
        if doubled == 0 {
            return Err(Error::InvalidSpin("spin must be positive".into()));
        }
        Ok(Self(doubled))
    }

    pub fn integer(s: u32) -> Self {
        Self::from_doubled(2 * s).expect("positive integer spin")
    }

    pub fn doubled(self) -> u32 {
        self.0
    }

    /// Hilbert space dimension `2s + 1`.
    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Magnetic quantum numbers `s, s-1, ..., -s` in basis order.
    pub fn m_values(self) -> impl Iterator<Item = f64> {
        let s = self.value();
        (0..self.dim()).map(move |i| s - i as f64)
    }

    /// Basis index of `|s, m⟩` given `2m`.
    pub fn index_of(self, doubled_m: i32) -> Result<usize> {
        let d = self.0 as i32;
        if doubled_m.abs() > d || (d - doubled_m) % 2 != 0 {
            return Err(Error::InvalidSpin(format!(
                "m = {}/2 is not a level of spin {self}",
                doubled_m
            )));
        }
        Ok(((d - doubled_m) / 2) as usize)
    }
}

impl fmt::Display for SpinQuantum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for SpinQuantum {
    type Err = Error;

    /// Parses `"6"` or `"13/2"`.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::InvalidSpin(format!("cannot parse spin '{text}'"));
        match text.split_once('/') {
            Some((num, "2")) => Self::from_doubled(num.trim().parse().map_err(|_| bad())?),
            Some(_) => Err(bad()),
            None => {
                let s: u32 = text.parse().map_err(|_| bad())?;
                Self::from_doubled(s.checked_mul(2).ok_or_else(bad)?)
            }
        }
    }
}

/// Pure spin-`s` state; amplitudes run over `m = s, s-1, ..., -s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "StateJson", try_from = "StateJson")]
pub struct SpinState {
    spin: SpinQuantum,
    amps: Vec<C64>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct StateJson {
    doubled_spin: u32,
    amps: Vec<C64>,
}

impl From<SpinState> for StateJson {
    fn from(s: SpinState) -> Self {
        Self {
            doubled_spin: s.spin.doubled(),
            amps: s.amps,
        }
    }
}

impl TryFrom<StateJson> for SpinState {
    type Error = Error;

    fn try_from(raw: StateJson) -> Result<Self> {
        SpinState::new(SpinQuantum::from_doubled(raw.doubled_spin)?, raw.amps)
    }
}

impl SpinState {
    pub fn new(spin: SpinQuantum, amps: Vec<C64>) -> Result<Self> {
        if amps.len() != spin.dim() {
            return Err(Error::DimensionMismatch {
                expected: spin.dim(),
                found: amps.len(),
            });
        }
        Ok(Self { spin, amps })
    }

    pub fn from_vector(spin: SpinQuantum, v: &CVec) -> Result<Self> {
        Self::new(spin, v.iter().copied().collect())
    }

    /// Eigenstate `|s, m⟩` of `S_z`, given `2m`.
    pub fn basis(spin: SpinQuantum, doubled_m: i32) -> Result<Self> {
        let idx = spin.index_of(doubled_m)?;
        let mut amps = vec![C64::new(0.0, 0.0); spin.dim()];
        amps[idx] = C64::new(1.0, 0.0);
        Ok(Self { spin, amps })
    }

    /// Haar-random unit state.
    pub fn random<R: Rng + ?Sized>(spin: SpinQuantum, rng: &mut R) -> Self {
        let v = gaussian_vector(rng, spin.dim());
        let n = v.norm();
        Self {
            spin,
            amps: v.iter().map(|a| a / n).collect(),
        }
    }

    pub fn spin(&self) -> SpinQuantum {
        self.spin
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn to_vector(&self) -> CVec {
        CVec::from_column_slice(&self.amps)
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroState);
        }
        Ok(Self {
            spin: self.spin,
            amps: self.amps.iter().map(|a| a / n).collect(),
        })
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|` for unit states.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm()
    }

    pub fn apply(&self, op: &CMat) -> Result<Self> {
        if op.nrows() != self.spin.dim() || op.ncols() != self.spin.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.spin.dim(),
                found: op.nrows(),
            });
        }
        Self::from_vector(self.spin, &(op * self.to_vector()))
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            spin: self.spin,
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }
}

/// `S_x, S_y, S_z` in the descending-`m` basis with `ħ = 1`.
#[derive(Debug, Clone)]
pub struct SpinOperators {
    pub spin: SpinQuantum,
    pub sx: CMat,
    pub sy: CMat,
    pub sz: CMat,
}

impl SpinOperators {
    pub fn as_array(&self) -> [&CMat; 3] {
        [&self.sx, &self.sy, &self.sz]
    }

    /// `n̂ · S`.
    pub fn along(&self, n: [f64; 3]) -> CMat {
        &self.sx * C64::new(n[0], 0.0) + &self.sy * C64::new(n[1], 0.0) + &self.sz * C64::new(n[2], 0.0)
    }

    /// Raising operator `S_+ = S_x + i S_y`.
    pub fn raising(&self) -> CMat {
        &self.sx + &self.sy * C64::new(0.0, 1.0)
    }
}

/// Standard ladder construction: `S_z = diag(s, ..., -s)`,
/// `⟨m+1|S_+|m⟩ = √(s(s+1) - m(m+1))`.
pub fn spin_operators(spin: SpinQuantum) -> SpinOperators {
    let d = spin.dim();
    let s = spin.value();
    let m: Vec<f64> = spin.m_values().collect();
    let sz = CMat::from_diagonal(&CVec::from_iterator(d, m.iter().map(|&x| C64::new(x, 0.0))));
    let mut sp = CMat::zeros(d, d);
    for i in 1..d {
        // column i holds |m_i⟩, row i-1 holds |m_i + 1⟩
        sp[(i - 1, i)] = C64::new((s * (s + 1.0) - m[i] * (m[i] + 1.0)).sqrt(), 0.0);
    }
    let sm = sp.adjoint();
    let sx = (&sp + &sm) * C64::new(0.5, 0.0);
    let sy = (&sp - &sm) * C64::new(0.0, -0.5);
    SpinOperators { spin, sx, sy, sz }
}

/// `⟨ψ|A|ψ⟩` with the (round-off) imaginary part discarded.
pub fn expectation(state: &SpinState, a: &CMat) -> Result<f64> {
    let d = state.spin().dim();
    if a.nrows() != d || a.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: a.nrows(),
        });
    }
    let v = state.to_vector();
    Ok(v.dotc(&(a * &v)).re)
}
