//! Anticoherent subspaces spanned by products of invariants.
//!
//! For a family with generator degrees `(d1, d2, d3)`, every solution of
//! `u·d1 + v·d2 + w·d3 = 2s` gives an invariant form `h1^u h2^v h3^w` of
//! degree `2s`. Read as Majorana polynomials these are spin-`s` states. Their
//! span is the candidate subspace; its dimension is the numerical rank of the
//! stacked states, since three or more products can be linearly dependent.
//! The anticoherence order is always certified, never assumed.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::invariant_algebra::{expected_anticoherence, generator_degrees, klein_generators};
use crate::invariant_algebra::{GroupFamily, HomoPoly};
use crate::linalg::{jacobi_svd, CMat};
use crate::majorana::{from_majorana_poly, MajoranaPoly};
use crate::spin_core::{subspace_residuals, SpinQuantum, SpinState, Subspace, CERT_TOL};

/// Default relative cutoff on singular values.
pub const RANK_TOL: f64 = 1e-9;

/// Exponents `(u, v, w)` of `h1^u h2^v h3^w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DegreeSolution {
    pub u: usize,
    pub v: usize,
    pub w: usize,
}

/// All nonnegative `(u, v, w)` with `u·d1 + v·d2 + w·d3 = target`, in
/// descending lexicographic order.
///
/// A zero degree contributes only exponent 0.
pub fn degree_solutions(d1: usize, d2: usize, d3: usize, target: usize) -> Vec<DegreeSolution> {
    let max_exp = |d: usize, budget: usize| if d == 0 { 0 } else { budget / d };
    let mut out = Vec::new();
    for u in (0..=max_exp(d1, target)).rev() {
        let r1 = target - u * d1;
        for v in (0..=max_exp(d2, r1)).rev() {
            let r2 = r1 - v * d2;
            if r2 == 0 {
                out.push(DegreeSolution { u, v, w: 0 });
            } else if d3 != 0 && r2 % d3 == 0 {
                out.push(DegreeSolution { u, v, w: r2 / d3 });
            }
        }
    }
    out
}

/// One product of invariants and the state it defines.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub solution: DegreeSolution,
    pub poly: HomoPoly,
    pub state: SpinState,
}

fn product(gens: &[HomoPoly; 3], sol: DegreeSolution) -> HomoPoly {
    gens[0]
        .pow(sol.u as u32)
        .mul(&gens[1].pow(sol.v as u32))
        .mul(&gens[2].pow(sol.w as u32))
}

/// The forms `h1^u h2^v h3^w` of degree `2s`, one per solution.
pub fn candidate_polynomials(family: GroupFamily, spin: SpinQuantum) -> Result<Vec<HomoPoly>> {
    Ok(candidates(family, spin)?.into_iter().map(|c| c.poly).collect())
}

/// Candidates with their solutions and normalised states.
pub fn candidates(family: GroupFamily, spin: SpinQuantum) -> Result<Vec<Candidate>> {
    let [d1, d2, d3] = generator_degrees(family)?;
    let gens = klein_generators(family)?;
    degree_solutions(d1, d2, d3, spin.doubled() as usize)
        .into_iter()
        .map(|solution| {
            let poly = product(&gens, solution);
            let state = from_majorana_poly(&MajoranaPoly::from_homogeneous(&poly)?)?;
            Ok(Candidate {
                solution,
                poly,
                state,
            })
        })
        .collect()
}

/// Outcome of a construction at one spin.
#[derive(Debug, Clone)]
pub struct ConstructionReport {
    pub family: GroupFamily,
    pub spin: SpinQuantum,
    pub solutions: Vec<DegreeSolution>,
    pub candidate_count: usize,
    /// Numerical rank of the candidate states.
    pub dim: usize,
    /// Singular values of the stacked candidate states, descending.
    pub singular_values: Vec<f64>,
    /// `None` when there are no candidates.
    pub subspace: Option<Subspace>,
    pub certified_order: usize,
    /// Order guaranteed for the family; stored next to, never instead of,
    /// the certified order.
    pub expected_order: usize,
    /// Subspace residuals for `t = 1, 2, ...` up to one past the certified order.
    pub residuals: Vec<f64>,
}

impl ConstructionReport {
    pub fn is_nontrivial(&self) -> bool {
        self.dim >= 2
    }

    /// Certification fell short of the family's guaranteed order.
    pub fn is_deficient(&self) -> bool {
        self.dim >= 1 && self.certified_order < self.expected_order
    }

    pub fn summary_line(&self) -> String {
        format!(
            "family={} s={} candidates={} dim={} order={}",
            self.family, self.spin, self.candidate_count, self.dim, self.certified_order
        )
    }

    /// `family,s,candidates,dim,order` row.
    pub fn csv_record(&self) -> [String; 5] {
        [
            self.family.to_string(),
            self.spin.to_string(),
            self.candidate_count.to_string(),
            self.dim.to_string(),
            self.certified_order.to_string(),
        ]
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.name(),
            "n": self.family.parameter(),
            "doubled_spin": self.spin.doubled(),
            "s": self.spin.to_string(),
            "solutions": self.solutions,
            "candidate_count": self.candidate_count,
            "dim": self.dim,
            "singular_values": self.singular_values,
            "certified_order": self.certified_order,
            "expected_order": self.expected_order,
            "residuals": self.residuals,
            "subspace": self.subspace,
        })
    }
}

pub const SCAN_CSV_HEADER: [&str; 5] = ["family", "s", "candidates", "dim", "order"];

/// Orthonormal basis for the column span, keeping singular values above
/// `tol · σ_max`; also returns all singular values, descending.
fn numerical_span(states: &[SpinState], tol: f64) -> (CMat, Vec<f64>) {
    let d = states[0].amps().len();
    let m = CMat::from_fn(d, states.len(), |i, j| states[j].amps()[i]);
    let (sv, u) = jacobi_svd(&m);
    let cut = tol * sv[0];
    let rank = sv.iter().filter(|&&x| x > cut).count();
    (u.columns(0, rank).into_owned(), sv)
}

/// Like [`build_anticoherent_subspace`], but an empty construction is a
/// report with `dim = 0` rather than an error.
pub fn construct_report(
    family: GroupFamily,
    spin: SpinQuantum,
    tol: f64,
) -> Result<ConstructionReport> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidArgument(format!("rank tolerance {tol} outside (0, 1)")));
    }
    let expected_order = expected_anticoherence(family)?;
    let cands = candidates(family, spin)?;
    let solutions: Vec<DegreeSolution> = cands.iter().map(|c| c.solution).collect();
    let mut report = ConstructionReport {
        family,
        spin,
        candidate_count: cands.len(),
        solutions,
        dim: 0,
        singular_values: Vec::new(),
        subspace: None,
        certified_order: 0,
        expected_order,
        residuals: Vec::new(),
    };
    if cands.is_empty() {
        return Ok(report);
    }
    let states: Vec<SpinState> = cands.into_iter().map(|c| c.state).collect();
    let (frame, sv) = numerical_span(&states, tol);
    let mut sub = Subspace::from_frame(spin, &frame)?;
    let t_max = spin.doubled() as usize;
    let order = sub.certify(t_max, CERT_TOL);
    report.dim = sub.dim();
    report.singular_values = sv;
    report.certified_order = order;
    report.residuals = subspace_residuals(&sub, (order + 1).min(t_max));
    report.subspace = Some(sub);
    Ok(report)
}

/// Builds and certifies the invariant subspace of `family` at spin `s`.
///
/// `tol` is the relative singular-value cutoff for the rank.
pub fn build_anticoherent_subspace(
    family: GroupFamily,
    spin: SpinQuantum,
    tol: f64,
) -> Result<ConstructionReport> {
    let report = construct_report(family, spin, tol)?;
    if report.dim == 0 {
        return Err(Error::EmptySubspace {
            family,
            doubled: spin.doubled(),
        });
    }
    Ok(report)
}

/// One report per spin from `s_min` to `s_max` in steps of 1/2; empty
/// constructions are reported with `dim = 0`.
pub fn scan_dimensions(
    family: GroupFamily,
    s_min: SpinQuantum,
    s_max: SpinQuantum,
) -> Result<Vec<ConstructionReport>> {
    if s_min > s_max {
        return Err(Error::InvalidArgument(format!("empty spin range {s_min}..{s_max}")));
    }
    generator_degrees(family)?;
    (s_min.doubled()..=s_max.doubled())
        .into_par_iter()
        .map(|d| construct_report(family, SpinQuantum::from_doubled(d)?, RANK_TOL))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sol(u: usize, v: usize, w: usize) -> DegreeSolution {
        DegreeSolution { u, v, w }
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(degree_solutions(6, 8, 12, 12), vec![sol(2, 0, 0), sol(0, 0, 1)]);
        assert!(degree_solutions(4, 4, 6, 2).is_empty());
        assert_eq!(
            degree_solutions(12, 20, 30, 60),
            vec![sol(5, 0, 0), sol(0, 3, 0), sol(0, 0, 2)]
        );
        assert_eq!(degree_solutions(4, 4, 6, 0), vec![sol(0, 0, 0)]);
    }

    #[test]
    fn tetrahedral_spin_six_candidates() {
        let polys = candidate_polynomials(GroupFamily::BinaryTetrahedral, SpinQuantum::integer(6)).unwrap();
        let h1sq = HomoPoly::from_terms(12, &[(10, 1.0), (6, -2.0), (2, 1.0)]);
        let h3 = HomoPoly::from_terms(12, &[(12, 1.0), (8, -33.0), (4, -33.0), (0, 1.0)]);
        assert_eq!(polys.len(), 2);
        assert!(polys[0].max_abs_diff(&h1sq) < 1e-12);
        assert!(polys[1].max_abs_diff(&h3) < 1e-12);
    }

    #[test]
    fn dihedral_candidates() {
        let fam = GroupFamily::BinaryDihedral(2);
        let polys = candidate_polynomials(fam, SpinQuantum::integer(2)).unwrap();
        assert_eq!(polys.len(), 2);
        assert!(polys[0].max_abs_diff(&HomoPoly::from_terms(4, &[(2, 1.0)])) < 1e-12);
        assert!(polys[1].max_abs_diff(&HomoPoly::from_terms(4, &[(4, 1.0), (2, -2.0), (0, 1.0)])) < 1e-12);
        let polys = candidate_polynomials(fam, SpinQuantum::integer(3)).unwrap();
        assert_eq!(polys.len(), 1);
        assert!(polys[0].max_abs_diff(&HomoPoly::from_terms(6, &[(5, 1.0), (1, -1.0)])) < 1e-12);
    }

    #[test]
    fn cyclic_is_unsupported() {
        assert!(matches!(
            candidate_polynomials(GroupFamily::Cyclic(3), SpinQuantum::integer(2)),
            Err(Error::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn empty_construction() {
        let err = build_anticoherent_subspace(GroupFamily::BinaryDihedral(2), SpinQuantum::integer(1), RANK_TOL);
        assert!(matches!(err, Err(Error::EmptySubspace { .. })));
    }

    #[test]
    fn tetrahedral_spin_six() {
        let r = build_anticoherent_subspace(GroupFamily::BinaryTetrahedral, SpinQuantum::integer(6), RANK_TOL).unwrap();
        assert_eq!(r.dim, 2);
        assert!(r.certified_order >= 2);
        assert!(!r.is_deficient());
        assert_eq!(r.summary_line(), "family=binary_tetrahedral s=6 candidates=2 dim=2 order=2");
    }

    #[test]
    fn scan_is_ordered() {
        let reps = scan_dimensions(GroupFamily::BinaryDihedral(2), SpinQuantum::integer(1), SpinQuantum::integer(3)).unwrap();
        let doubled: Vec<u32> = reps.iter().map(|r| r.spin.doubled()).collect();
        assert_eq!(doubled, vec![2, 3, 4, 5, 6]);
        let dims: Vec<usize> = reps.iter().map(|r| r.dim).collect();
        assert_eq!(dims, vec![0, 0, 2, 0, 1]);
    }
}
