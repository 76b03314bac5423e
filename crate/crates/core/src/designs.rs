//! Spherical `t`-design checks by exact monomial moments.
//!
//! A finite multiset `X` on the unit sphere is a `t`-design when the average
//! of every polynomial of degree at most `t` over `X` equals its average over
//! the sphere. Monomials `x^a y^b z^c` span these polynomials, and their
//! sphere averages are exact rationals:
//!
//! ```text
//! ⟨x^a y^b z^c⟩ = (a-1)!! (b-1)!! (c-1)!! / (a+b+c+1)!!   (all exponents even)
//! ```
//!
//! and zero otherwise.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::majorana::PointSet;

/// Default tolerance on moment residuals.
pub const DESIGN_TOL: f64 = 1e-8;

/// `n!!` with `(-1)!! = 0!! = 1`.
fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// Average of `x^a y^b z^c` over the unit sphere in R³, exactly.
pub fn sphere_monomial_average(a: u32, b: u32, c: u32) -> BigRational {
    if a % 2 == 1 || b % 2 == 1 || c % 2 == 1 {
        return BigRational::zero();
    }
    let num = double_factorial(a as i64 - 1)
        * double_factorial(b as i64 - 1)
        * double_factorial(c as i64 - 1);
    let den = double_factorial((a + b + c) as i64 + 1);
    BigRational::new(num, den)
}

fn monomials_of_degree(k: u32) -> impl Iterator<Item = (u32, u32, u32)> {
    (0..=k).flat_map(move |a| (0..=k - a).map(move |b| (a, b, k - a - b)))
}

fn point_average(points: &[[f64; 3]], (a, b, c): (u32, u32, u32)) -> f64 {
    let sum: f64 = points
        .iter()
        .map(|p| p[0].powi(a as i32) * p[1].powi(b as i32) * p[2].powi(c as i32))
        .sum();
    sum / points.len() as f64
}

/// Largest moment deviation among monomials of degree exactly `k`.
pub fn degree_residual(points: &PointSet, k: u32) -> f64 {
    if points.is_empty() {
        return f64::INFINITY;
    }
    monomials_of_degree(k)
        .map(|m| {
            let exact = sphere_monomial_average(m.0, m.1, m.2)
                .to_f64()
                .expect("finite rational");
            (point_average(points.points(), m) - exact).abs()
        })
        .fold(0.0, f64::max)
}

/// Largest moment deviation among monomials of degree at most `t`.
pub fn design_residual(points: &PointSet, t: u32) -> f64 {
    (1..=t)
        .map(|k| degree_residual(points, k))
        .fold(0.0, f64::max)
}

/// Design order together with the per-degree residual table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignReport {
    pub order: u32,
    /// Residual at each degree `1..=t_max`, keyed by degree.
    pub residuals: BTreeMap<u32, f64>,
}

/// Largest `t ≤ t_max` such that every degree `1..=t` is within `tol`.
pub fn design_order(points: &PointSet, t_max: u32, tol: f64) -> DesignReport {
    let residuals: BTreeMap<u32, f64> = (1..=t_max)
        .map(|k| (k, degree_residual(points, k)))
        .collect();
    let order = residuals
        .iter()
        .take_while(|(_, r)| **r <= tol)
        .map(|(k, _)| *k)
        .last()
        .unwrap_or(0);
    DesignReport { order, residuals }
}
