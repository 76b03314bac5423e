use serde::{Deserialize, Serialize};

use super::group::Mat2;
use crate::error::{Error, Result};
use crate::C64;

/// Homogeneous polynomial `Σ_k c_k z^k w^(d-k)` of degree `d`.
///
/// The zero form keeps its declared degree, so `z² - z²` is the zero form
/// of degree 2 rather than a degree-less zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawHomoPoly")]
pub struct HomoPoly {
    degree: usize,
    coeffs: Vec<C64>,
}

#[derive(Deserialize)]
struct RawHomoPoly {
    degree: usize,
    coeffs: Vec<C64>,
}

impl TryFrom<RawHomoPoly> for HomoPoly {
    type Error = Error;

    fn try_from(raw: RawHomoPoly) -> Result<Self> {
        if raw.coeffs.len() != raw.degree + 1 {
            return Err(Error::MalformedPolynomial {
                degree: raw.degree,
                len: raw.coeffs.len(),
            });
        }
        Ok(Self {
            degree: raw.degree,
            coeffs: raw.coeffs,
        })
    }
}

impl HomoPoly {
    /// Builds a form from `c_0..c_d`; the degree is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::MalformedPolynomial { degree: 0, len: 0 });
        }
        Ok(Self {
            degree: coeffs.len() - 1,
            coeffs,
        })
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: vec![C64::new(0.0, 0.0); degree + 1],
        }
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    pub fn constant(c: C64) -> Self {
        Self {
            degree: 0,
            coeffs: vec![c],
        }
    }

    /// `c · z^z_pow · w^w_pow`.
    pub fn monomial(c: C64, z_pow: usize, w_pow: usize) -> Self {
        let mut p = Self::zero(z_pow + w_pow);
        p.coeffs[z_pow] = c;
        p
    }

    /// Real-coefficient form of the given degree from `(z power, coefficient)` pairs.
    pub fn from_terms(degree: usize, terms: &[(usize, f64)]) -> Self {
        let mut p = Self::zero(degree);
        for &(k, c) in terms {
            assert!(k <= degree, "z power {k} exceeds degree {degree}");
            p.coeffs[k] += C64::new(c, 0.0);
        }
        p
    }

    /// Linear form `a z + b w`.
    pub fn linear(a: C64, b: C64) -> Self {
        Self {
            degree: 1,
            coeffs: vec![b, a],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    /// Coefficient of `z^k w^(d-k)`.
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs[k]
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs_coeff() <= tol
    }

    pub fn eval(&self, z: C64, w: C64) -> C64 {
        let mut out = C64::new(0.0, 0.0);
        let mut zp = C64::new(1.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            out += c * zp * w.powu((self.degree - k) as u32);
            zp *= z;
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Product of two forms: degrees add and coefficients convolve.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == C64::new(0.0, 0.0) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// `self^k`, with `p^0 = 1` at degree 0.
    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Linear combination `Σ α_i p_i` of forms sharing one degree.
    pub fn combine(terms: &[(C64, &HomoPoly)]) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::InvalidArgument("empty linear combination".into()));
        };
        let degree = first.degree;
        let mut out = Self::zero(degree);
        for (alpha, p) in terms {
            if p.degree != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: p.degree,
                });
            }
            for (o, c) in out.coeffs.iter_mut().zip(&p.coeffs) {
                *o += alpha * c;
            }
        }
        Ok(out)
    }

    /// `p(a z + b w, c z + d w)` for `g = [[a, b], [c, d]]`.
    ///
    /// Computed by direct expansion. For unitary `g` with irrational entries
    /// the round-off grows roughly like `2^(d/2)` relative to the largest
    /// coefficient, so results past degree ~50 are only good to a few digits.
    pub fn substitute(&self, g: &Mat2) -> Self {
        let [[a, b], [c, d]] = *g;
        let left = Self::linear(a, b);
        let right = Self::linear(c, d);
        let mut left_pows = Vec::with_capacity(self.degree + 1);
        let mut right_pows = Vec::with_capacity(self.degree + 1);
        left_pows.push(Self::one());
        right_pows.push(Self::one());
        for k in 1..=self.degree {
            left_pows.push(left_pows[k - 1].mul(&left));
            right_pows.push(right_pows[k - 1].mul(&right));
        }
        let mut out = Self::zero(self.degree);
        for (k, ck) in self.coeffs.iter().enumerate() {
            if *ck == C64::new(0.0, 0.0) {
                continue;
            }
            let term = left_pows[k].mul(&right_pows[self.degree - k]);
            for (o, t) in out.coeffs.iter_mut().zip(term.coeffs) {
                *o += ck * t;
            }
        }
        out
    }

    /// Largest coefficient-wise distance to another form of the same degree.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }
}
