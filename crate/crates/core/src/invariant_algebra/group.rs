use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// 2×2 complex matrix, row-major.
pub type Mat2 = [[C64; 2]; 2];

const DEDUP_TOL: f64 = 1e-10;

pub fn mat2_identity() -> Mat2 {
    let (o, z) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    [[o, z], [z, o]]
}

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub(crate) fn mat2_dist(a: &Mat2, b: &Mat2) -> f64 {
    let mut m = 0.0_f64;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((a[i][j] - b[i][j]).norm());
        }
    }
    m
}

pub fn mat2_det(a: &Mat2) -> C64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Largest entry of `a† a - I`.
pub fn mat2_unitarity_defect(a: &Mat2) -> f64 {
    let adj = [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ];
    mat2_dist(&mat2_mul(&adj, a), &mat2_identity())
}

/// The finite subgroups of SU(2), up to conjugacy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupFamily {
    Cyclic(u32),
    BinaryDihedral(u32),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl GroupFamily {
    /// Accepts the canonical names and the short forms used on the command
    /// line (`dihedral`, `tetrahedral`, ...). Parameterised families need `n`.
    pub fn parse(name: &str, n: Option<u32>) -> Result<Self> {
        let need_n = |n: Option<u32>| {
            n.ok_or_else(|| Error::InvalidFamily(format!("{name} requires a parameter n")))
        };
        let family = match name.to_ascii_lowercase().as_str() {
            "cyclic" => Self::Cyclic(need_n(n)?),
            "dihedral" | "binary_dihedral" => Self::BinaryDihedral(need_n(n)?),
            "tetrahedral" | "binary_tetrahedral" => Self::BinaryTetrahedral,
            "octahedral" | "binary_octahedral" => Self::BinaryOctahedral,
            "icosahedral" | "binary_icosahedral" => Self::BinaryIcosahedral,
            other => return Err(Error::InvalidFamily(format!("unknown family '{other}'"))),
        };
        family.validate()?;
        Ok(family)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Cyclic(0) | Self::BinaryDihedral(0) => {
                Err(Error::InvalidFamily(format!("{self}: n must be at least 1")))
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Cyclic(_) => "cyclic",
            Self::BinaryDihedral(_) => "binary_dihedral",
            Self::BinaryTetrahedral => "binary_tetrahedral",
            Self::BinaryOctahedral => "binary_octahedral",
            Self::BinaryIcosahedral => "binary_icosahedral",
        }
    }

    pub fn parameter(&self) -> Option<u32> {
        match self {
            Self::Cyclic(n) | Self::BinaryDihedral(n) => Some(*n),
            _ => None,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Self::Cyclic(n) => *n as usize,
            Self::BinaryDihedral(n) => 4 * *n as usize,
            Self::BinaryTetrahedral => 24,
            Self::BinaryOctahedral => 48,
            Self::BinaryIcosahedral => 120,
        }
    }

    /// Generating matrices of the family's standard presentation.
    pub fn generators(&self) -> Vec<Mat2> {
        let z = C64::new(0.0, 0.0);
        let diag = |a: C64| [[a, z], [z, a.inv()]];
        let cis = |t: f64| C64::from_polar(1.0, t);
        let swap = [[z, C64::new(1.0, 0.0)], [C64::new(-1.0, 0.0), z]];
        match *self {
            Self::Cyclic(n) => vec![diag(cis(2.0 * PI / n as f64))],
            Self::BinaryDihedral(n) => vec![diag(cis(PI / n as f64)), swap],
            Self::BinaryTetrahedral => {
                let mut g = Self::BinaryDihedral(2).generators();
                let e8 = cis(PI / 4.0);
                let r = 0.5_f64.sqrt();
                g.push([
                    [e8 * r, e8.powu(3) * r],
                    [e8 * r, e8.powu(7) * r],
                ]);
                g
            }
            Self::BinaryOctahedral => {
                let mut g = Self::BinaryTetrahedral.generators();
                g.push(diag(cis(PI / 4.0)));
                g
            }
            Self::BinaryIcosahedral => {
                let e5 = cis(2.0 * PI / 5.0);
                let r = 1.0 / 5.0_f64.sqrt();
                let a = (e5 - e5.powu(4)) * r;
                let b = (e5.powu(2) - e5.powu(3)) * r;
                vec![[[e5.powu(3), z], [z, e5.powu(2)]], [[-a, b], [b, a]]]
            }
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter() {
            Some(n) => write!(f, "{}({})", self.name(), n),
            None => f.write_str(self.name()),
        }
    }
}

/// A finite subgroup of SU(2) given by its full element list.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(into = "GroupJson", try_from = "GroupJson")]
pub struct BinaryGroup {
    family: GroupFamily,
    elements: Vec<Mat2>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    family: String,
    n: Option<u32>,
    order: usize,
    elements: Vec<Mat2>,
}

impl From<BinaryGroup> for GroupJson {
    fn from(g: BinaryGroup) -> Self {
        Self {
            family: g.family.name().to_string(),
            n: g.family.parameter(),
            order: g.elements.len(),
            elements: g.elements,
        }
    }
}

impl TryFrom<GroupJson> for BinaryGroup {
    type Error = Error;

    fn try_from(raw: GroupJson) -> Result<Self> {
        let family = GroupFamily::parse(&raw.family, raw.n)?;
        if raw.order != raw.elements.len() || raw.order != family.order() {
            return Err(Error::GroupOrder {
                family,
                expected: family.order(),
                found: raw.elements.len(),
            });
        }
        Ok(Self {
            family,
            elements: raw.elements,
        })
    }
}

impl BinaryGroup {
    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Index of the element within `tol` of `m`, if any.
    pub fn find(&self, m: &Mat2, tol: f64) -> Option<usize> {
        self.elements.iter().position(|e| mat2_dist(e, m) <= tol)
    }
}

/// Closes the family's generators under multiplication.
pub fn generate_group(family: GroupFamily) -> Result<BinaryGroup> {
    family.validate()?;
    let gens = family.generators();
    let limit = 4 * family.order();
    let mut elements = vec![mat2_identity()];
    let mut frontier = elements.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for g in &gens {
                let p = mat2_mul(g, a);
                if !elements.iter().any(|e| mat2_dist(e, &p) <= DEDUP_TOL) {
                    elements.push(p);
                    next.push(p);
                    if elements.len() > limit {
                        return Err(Error::ClosureOverflow { family, limit });
                    }
                }
            }
        }
        frontier = next;
    }
    if elements.len() != family.order() {
        return Err(Error::GroupOrder {
            family,
            expected: family.order(),
            found: elements.len(),
        });
    }
    Ok(BinaryGroup { family, elements })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_families() -> Vec<GroupFamily> {
        let mut v = vec![
            GroupFamily::BinaryTetrahedral,
            GroupFamily::BinaryOctahedral,
            GroupFamily::BinaryIcosahedral,
        ];
        for n in 1..=6 {
            v.push(GroupFamily::Cyclic(n));
            v.push(GroupFamily::BinaryDihedral(n));
        }
        v
    }

    #[test]
    fn orders_match_classification() {
        assert_eq!(generate_group(GroupFamily::BinaryDihedral(2)).unwrap().order(), 8);
        assert_eq!(generate_group(GroupFamily::BinaryTetrahedral).unwrap().order(), 24);
        assert_eq!(generate_group(GroupFamily::BinaryOctahedral).unwrap().order(), 48);
        assert_eq!(generate_group(GroupFamily::BinaryIcosahedral).unwrap().order(), 120);
        for f in all_families() {
            assert_eq!(generate_group(f).unwrap().order(), f.order(), "{f}");
        }
    }

    #[test]
    fn cyclic_three_is_generated_by_rotation() {
        let g = generate_group(GroupFamily::Cyclic(3)).unwrap();
        let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
        let z = C64::new(0.0, 0.0);
        assert!(g.find(&[[w, z], [z, w.conj()]], 1e-12).is_some());
        assert!(g.find(&mat2_identity(), 1e-12).is_some());
    }

    #[test]
    fn elements_are_special_unitary_and_closed() {
        for f in all_families() {
            let g = generate_group(f).unwrap();
            for e in g.elements() {
                assert!(mat2_unitarity_defect(e) < 1e-12, "{f}");
                assert!((mat2_det(e) - C64::new(1.0, 0.0)).norm() < 1e-12, "{f}");
            }
            for a in g.elements() {
                for b in g.elements() {
                    assert!(g.find(&mat2_mul(a, b), 1e-10).is_some(), "{f}");
                }
            }
        }
    }

    #[test]
    fn regeneration_matches_bijectively() {
        for f in all_families() {
            let a = generate_group(f).unwrap();
            let b = generate_group(f).unwrap();
            let mut hit = vec![false; b.order()];
            for e in a.elements() {
                let i = b.find(e, 1e-10).unwrap();
                assert!(!hit[i]);
                hit[i] = true;
            }
            assert!(hit.iter().all(|&h| h));
        }
    }

    #[test]
    fn binary_families_contain_minus_identity() {
        let minus = [
            [C64::new(-1.0, 0.0), C64::new(0.0, 0.0)],
            [C64::new(0.0, 0.0), C64::new(-1.0, 0.0)],
        ];
        for f in all_families() {
            if matches!(f, GroupFamily::Cyclic(_)) {
                continue;
            }
            assert!(generate_group(f).unwrap().find(&minus, 1e-12).is_some(), "{f}");
        }
    }

    #[test]
    fn parse_and_validate() {
        assert_eq!(
            GroupFamily::parse("dihedral", Some(2)).unwrap(),
            GroupFamily::BinaryDihedral(2)
        );
        assert_eq!(
            GroupFamily::parse("icosahedral", None).unwrap(),
            GroupFamily::BinaryIcosahedral
        );
        assert!(GroupFamily::parse("dihedral", None).is_err());
        assert!(GroupFamily::parse("cyclic", Some(0)).is_err());
        assert!(GroupFamily::parse("dodecahedral", None).is_err());
        assert!(generate_group(GroupFamily::BinaryDihedral(0)).is_err());
    }

    #[test]
    fn group_json_roundtrip() {
        let g = generate_group(GroupFamily::BinaryDihedral(2)).unwrap();
        let js = serde_json::to_value(&g).unwrap();
        assert_eq!(js["family"], "binary_dihedral");
        assert_eq!(js["n"], 2);
        assert_eq!(js["order"], 8);
        assert_eq!(js["elements"][0][0][0], serde_json::json!([1.0, 0.0]));
        let back: BinaryGroup = serde_json::from_value(js).unwrap();
        assert_eq!(back.order(), 8);
    }
}
