use serde::{Deserialize, Serialize};

use super::group::{BinaryGroup, GroupFamily};
use super::poly::HomoPoly;
use crate::error::{Error, Result};
use crate::C64;

/// Outcome of testing `p ∘ g = χ(g) p` over a whole group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterReport {
    /// All characters are 1 within tolerance.
    pub invariant: bool,
    /// `χ(g)` indexed like the group's element list.
    pub characters: Vec<C64>,
    /// Largest coefficient deviation of `p ∘ g - χ(g) p`, relative to the
    /// largest coefficient of `p`.
    pub max_residual: f64,
}

impl CharacterReport {
    /// `true` when only a nontrivial character makes the form invariant.
    pub fn is_relative(&self) -> bool {
        !self.invariant
    }
}

fn require_supported(family: GroupFamily) -> Result<()> {
    family.validate()?;
    match family {
        GroupFamily::Cyclic(_) => Err(Error::UnsupportedFamily(family)),
        _ => Ok(()),
    }
}

/// Degrees of the three generating invariants.
pub fn generator_degrees(family: GroupFamily) -> Result<[usize; 3]> {
    require_supported(family)?;
    Ok(match family {
        GroupFamily::BinaryDihedral(n) => [4, 2 * n as usize, 2 * n as usize + 2],
        GroupFamily::BinaryTetrahedral => [6, 8, 12],
        GroupFamily::BinaryOctahedral => [8, 12, 18],
        GroupFamily::BinaryIcosahedral => [12, 20, 30],
        GroupFamily::Cyclic(_) => unreachable!(),
    })
}

/// Anticoherence order guaranteed for states whose Majorana polynomial is
/// invariant under the family: 1, 2, 3 and 5.
pub fn expected_anticoherence(family: GroupFamily) -> Result<usize> {
    require_supported(family)?;
    Ok(match family {
        GroupFamily::BinaryDihedral(_) => 1,
        GroupFamily::BinaryTetrahedral => 2,
        GroupFamily::BinaryOctahedral => 3,
        GroupFamily::BinaryIcosahedral => 5,
        GroupFamily::Cyclic(_) => unreachable!(),
    })
}

/// Klein's three generating invariants `(h1, h2, h3)` of the family.
///
/// For the binary dihedral group of odd `n`, `(z^n - w^n)²` is not invariant
/// under `z ↦ w, w ↦ -z`; `z^(2n) + w^(2n)` is used instead.
pub fn klein_generators(family: GroupFamily) -> Result<[HomoPoly; 3]> {
    require_supported(family)?;
    let tet_h3 = HomoPoly::from_terms(12, &[(12, 1.0), (8, -33.0), (4, -33.0), (0, 1.0)]);
    let tet_h2 = HomoPoly::from_terms(8, &[(8, 1.0), (4, 14.0), (0, 1.0)]);
    let gens = match family {
        GroupFamily::BinaryDihedral(n) => {
            let n = n as usize;
            let h1 = HomoPoly::from_terms(4, &[(2, 1.0)]);
            let h2 = if n % 2 == 0 {
                HomoPoly::from_terms(2 * n, &[(2 * n, 1.0), (n, -2.0), (0, 1.0)])
            } else {
                HomoPoly::from_terms(2 * n, &[(2 * n, 1.0), (0, 1.0)])
            };
            let h3 = HomoPoly::from_terms(2 * n + 2, &[(2 * n + 1, 1.0), (1, -1.0)]);
            [h1, h2, h3]
        }
        GroupFamily::BinaryTetrahedral => {
            let h1 = HomoPoly::from_terms(6, &[(5, 1.0), (1, -1.0)]);
            [h1, tet_h2, tet_h3]
        }
        GroupFamily::BinaryOctahedral => {
            let zw = HomoPoly::from_terms(2, &[(1, 1.0)]);
            let z4_w4 = HomoPoly::from_terms(4, &[(4, 1.0), (0, -1.0)]);
            let h2 = zw.pow(2).mul(&z4_w4.pow(2));
            let h3 = zw.mul(&z4_w4).mul(&tet_h3);
            [tet_h2, h2, h3]
        }
        GroupFamily::BinaryIcosahedral => {
            let h1 = HomoPoly::from_terms(12, &[(11, 1.0), (6, 11.0), (1, -1.0)]);
            let h2 = HomoPoly::from_terms(
                20,
                &[(20, -1.0), (0, -1.0), (15, 228.0), (5, -228.0), (10, -494.0)],
            );
            let h3 = HomoPoly::from_terms(
                30,
                &[
                    (30, 1.0),
                    (0, 1.0),
                    (25, 522.0),
                    (5, -522.0),
                    (20, -10005.0),
                    (10, -10005.0),
                ],
            );
            [h1, h2, h3]
        }
        GroupFamily::Cyclic(_) => unreachable!(),
    };
    Ok(gens)
}

/// Tests whether `p` is a relative invariant of `group`.
///
/// For every element the character is read off the largest-magnitude
/// coefficient of `p`; the form passes when `p ∘ g - χ(g) p` vanishes to
/// `tol` relative to `max |p_k|`.
pub fn check_relative_invariance(
    p: &HomoPoly,
    group: &BinaryGroup,
    tol: f64,
) -> Result<CharacterReport> {
    let scale = p.max_abs_coeff();
    if scale == 0.0 {
        return Err(Error::ZeroPolynomial);
    }
    let pivot = p
        .coeffs()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(k, _)| k)
        .expect("nonempty coefficients");

    let mut characters = Vec::with_capacity(group.order());
    let mut max_residual = 0.0_f64;
    for (idx, g) in group.elements().iter().enumerate() {
        let q = p.substitute(g);
        let chi = q.coeff(pivot) / p.coeff(pivot);
        let residual = q
            .coeffs()
            .iter()
            .zip(p.coeffs())
            .fold(0.0_f64, |m, (qk, pk)| m.max((qk - chi * pk).norm()))
            / scale;
        if residual > tol {
            return Err(Error::NotRelativeInvariant {
                element: idx,
                residual,
            });
        }
        max_residual = max_residual.max(residual);
        characters.push(chi);
    }
    let invariant = characters
        .iter()
        .all(|chi| (chi - C64::new(1.0, 0.0)).norm() <= tol);
    Ok(CharacterReport {
        invariant,
        characters,
        max_residual,
    })
}
