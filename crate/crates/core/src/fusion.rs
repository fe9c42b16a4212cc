//! Twisted fusion coefficients `N_{iα}^β` and the NIM-rep matrices they form.
//!
//! For `i ∈ P_k^+` and `α ∈ B_k^+` the weights of `V(i)` are projected onto
//! the symmetric subspace, shifted by `α + ρ_ω`, folded into the twisted
//! alcove at shifted level `k + g^∨` with signs, and the interior images are
//! shifted back by `ρ_ω` and accumulated. With the trivial automorphism this
//! is the Kac-Walton algorithm for ordinary fusion.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::folding::{self, enumerate_b, enumerate_p, in_b, in_p, project, Automorphism};
use crate::rootdata::Algebra;
use crate::weight::Weight;
use crate::weightsys::dominant_representative;

/// Non-zero coefficients of a fusion product, keyed by target label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FusionCoeffs {
    terms: BTreeMap<Weight, u64>,
}

impl FusionCoeffs {
    pub fn get(&self, beta: &Weight) -> u64 {
        self.terms.get(beta).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<Weight, u64> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }
}

fn not_in(weight: &Weight, domain: &'static str, level: u32) -> Error {
    Error::NotInDomain {
        weight: weight.to_string(),
        domain,
        level,
    }
}

/// Signed accumulation of `P_ω M_i + α + ρ_ω` folded at level `k + g^∨`;
/// entries may be negative.
fn signed_fusion(
    i: &Weight,
    alpha: &Weight,
    k: u32,
    aut: &Automorphism,
    alg: &Algebra,
) -> Result<BTreeMap<Weight, i64>> {
    let ws = alg.cached_weight_system(i)?;
    let h = k + alg.dual_coxeter();
    let shift = alpha + aut.rho_omega();

    let mut projected: BTreeMap<Weight, i64> = BTreeMap::new();
    for (weight, mult) in ws.iter() {
        let p = if aut.is_trivial() {
            weight.clone()
        } else {
            project(weight, aut)
        };
        *projected.entry(p).or_default() += mult as i64;
    }

    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (p, mult) in projected {
        let fold = folding::fold_trusted(&(&p + &shift), h, aut)?;
        if fold.boundary {
            continue;
        }
        let beta = &fold.rep - aut.rho_omega();
        *acc.entry(beta).or_default() += i64::from(fold.sign) * mult;
    }
    Ok(acc)
}

/// `N_{iα}^β` for all `β ∈ B_k^+`.
pub fn twisted_fusion(
    i: &Weight,
    alpha: &Weight,
    k: u32,
    aut: &Automorphism,
    alg: &Algebra,
) -> Result<FusionCoeffs> {
    folding::validate_twisted_data(alg, aut)?;
    i.check_rank(alg.rank())?;
    alpha.check_rank(alg.rank())?;
    if !in_p(alg, i, k) {
        return Err(not_in(i, "P_k^+", k));
    }
    if !in_b(alg, aut, alpha, k) {
        return Err(not_in(alpha, "B_k^+", k));
    }
    let mut terms = BTreeMap::new();
    for (beta, value) in signed_fusion(i, alpha, k, aut, alg)? {
        match value {
            0 => {}
            v if v < 0 => {
                return Err(Error::NegativeCoefficient {
                    target: beta.to_string(),
                    value: v,
                })
            }
            v => {
                if !in_b(alg, aut, &beta, k) {
                    return Err(Error::InvariantViolation(format!(
                        "fusion target {beta} lies outside B_k^+"
                    )));
                }
                terms.insert(beta, v as u64);
            }
        }
    }
    Ok(FusionCoeffs { terms })
}

/// Ordinary fusion `i ⋆ j` by the Kac-Walton algorithm.
pub fn ordinary_fusion(i: &Weight, j: &Weight, k: u32, alg: &Algebra) -> Result<FusionCoeffs> {
    j.check_rank(alg.rank())?;
    if !in_p(alg, j, k) {
        return Err(not_in(j, "P_k^+", k));
    }
    twisted_fusion(i, j, k, &Automorphism::trivial(alg), alg)
}

/// The conjugate representation `i* = -w_0(i)`.
pub fn conjugate(i: &Weight, alg: &Algebra) -> Weight {
    dominant_representative(&-i, alg).0
}

/// Matrix of `N_{iα}^β` with rows `β` and columns `α`, both indexed by
/// `index_order` (the lexicographic enumeration of `B_k^+`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NimRepMatrix {
    label: Weight,
    index_order: Vec<Weight>,
    entries: Vec<Vec<u64>>,
}

impl NimRepMatrix {
    pub fn label(&self) -> &Weight {
        &self.label
    }

    pub fn index_order(&self) -> &[Weight] {
        &self.index_order
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.index_order.len()
    }

    /// `N_{iα}^β`.
    pub fn entry(&self, beta: usize, alpha: usize) -> u64 {
        self.entries[beta][alpha]
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(r, row)| row.iter().enumerate().all(|(c, &v)| v == u64::from(r == c)))
    }

    pub fn transpose(&self) -> Vec<Vec<u64>> {
        let n = self.dim();
        (0..n)
            .map(|r| (0..n).map(|c| self.entries[c][r]).collect())
            .collect()
    }

    pub fn product(&self, other: &NimRepMatrix) -> Vec<Vec<u64>> {
        let n = self.dim();
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        (0..n)
                            .map(|m| self.entries[r][m] * other.entries[m][c])
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }
}

/// The NIM-rep matrix of `i` on `B_k^+`.
pub fn nimrep(i: &Weight, k: u32, aut: &Automorphism, alg: &Algebra) -> Result<NimRepMatrix> {
    let index_order = enumerate_b(alg, aut, k);
    let position: BTreeMap<&Weight, usize> = index_order
        .iter()
        .enumerate()
        .map(|(n, w)| (w, n))
        .collect();
    let dim = index_order.len();
    let mut entries = vec![vec![0u64; dim]; dim];
    for (col, alpha) in index_order.iter().enumerate() {
        for (beta, c) in twisted_fusion(i, alpha, k, aut, alg)?.iter() {
            let row = position[beta];
            entries[row][col] = c;
        }
    }
    Ok(NimRepMatrix {
        label: i.clone(),
        index_order,
        entries,
    })
}

/// NIM-rep matrices for every `i ∈ P_k^+`, in `P_k^+` order.
pub fn nimrep_all(k: u32, aut: &Automorphism, alg: &Algebra) -> Result<Vec<NimRepMatrix>> {
    enumerate_p(alg, k)
        .iter()
        .map(|i| nimrep(i, k, aut, alg))
        .collect()
}

/// First pair `(i, j)` violating `N_i N_j = Σ_l N_{ij}^l N_l`, if any.
pub fn homomorphism_defect(
    k: u32,
    aut: &Automorphism,
    alg: &Algebra,
) -> Result<Option<(Weight, Weight)>> {
    let reps = enumerate_p(alg, k);
    let mats = nimrep_all(k, aut, alg)?;
    let position: BTreeMap<&Weight, usize> = reps.iter().enumerate().map(|(n, w)| (w, n)).collect();
    let dim = mats.first().map_or(0, NimRepMatrix::dim);
    for (a, i) in reps.iter().enumerate() {
        for (b, j) in reps.iter().enumerate().skip(a) {
            let lhs = mats[a].product(&mats[b]);
            let mut rhs = vec![vec![0u64; dim]; dim];
            for (l, n) in ordinary_fusion(i, j, k, alg)?.iter() {
                let m = &mats[position[l]];
                for r in 0..dim {
                    for c in 0..dim {
                        rhs[r][c] += n * m.entry(r, c);
                    }
                }
            }
            if lhs != rhs {
                return Ok(Some((i.clone(), j.clone())));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folding::AutomorphismKind;
    use crate::rootdata::{build_algebra, Series};

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn vacuum_fuses_trivially() {
        let alg = build_algebra(Series::A, 3).unwrap();
        let aut = Automorphism::named(&alg, AutomorphismKind::Flip).unwrap();
        for k in 0..4 {
            for alpha in enumerate_b(&alg, &aut, k) {
                let c = twisted_fusion(&Weight::zero(3), &alpha, k, &aut, &alg).unwrap();
                assert_eq!(c.terms(), &BTreeMap::from([(alpha, 1)]));
            }
            assert!(nimrep(&Weight::zero(3), k, &aut, &alg)
                .unwrap()
                .is_identity());
        }
    }

    #[test]
    fn su2_truncation() {
        let a1 = build_algebra(Series::A, 1).unwrap();
        let f2 = ordinary_fusion(&w("1"), &w("1"), 2, &a1).unwrap();
        assert_eq!(f2.terms(), &BTreeMap::from([(w("0"), 1), (w("2"), 1)]));
        let f1 = ordinary_fusion(&w("1"), &w("1"), 1, &a1).unwrap();
        assert_eq!(f1.terms(), &BTreeMap::from([(w("0"), 1)]));
        let f = ordinary_fusion(&w("0"), &w("3"), 3, &a1).unwrap();
        assert_eq!(f.terms(), &BTreeMap::from([(w("3"), 1)]));
    }

    #[test]
    fn a2_flip_level_two() {
        let a2 = build_algebra(Series::A, 2).unwrap();
        let aut = Automorphism::named(&a2, AutomorphismKind::Flip).unwrap();
        let m = nimrep(&w("1,1"), 2, &aut, &a2).unwrap();
        assert_eq!(m.index_order(), &[w("0,0"), w("1/2,1/2")]);
        assert_eq!(homomorphism_defect(2, &aut, &a2).unwrap(), None);
    }

    #[test]
    fn rejects_out_of_domain_inputs() {
        let a2 = build_algebra(Series::A, 2).unwrap();
        let aut = Automorphism::named(&a2, AutomorphismKind::Flip).unwrap();
        let zero = Weight::zero(2);
        assert!(matches!(
            twisted_fusion(&w("2,1"), &zero, 2, &aut, &a2),
            Err(Error::NotInDomain {
                domain: "P_k^+",
                ..
            })
        ));
        assert!(matches!(
            twisted_fusion(&zero, &w("1,1"), 2, &aut, &a2),
            Err(Error::NotInDomain {
                domain: "B_k^+",
                ..
            })
        ));
        assert!(matches!(
            twisted_fusion(&zero, &w("1,0"), 2, &aut, &a2),
            Err(Error::NotInDomain {
                domain: "B_k^+",
                ..
            })
        ));
        assert!(matches!(
            ordinary_fusion(&zero, &w("3,0"), 2, &a2),
            Err(Error::NotInDomain { .. })
        ));
    }

    #[test]
    fn corrupted_twisted_root_is_refused() {
        let a2 = build_algebra(Series::A, 2).unwrap();
        let aut = Automorphism::named(&a2, AutomorphismKind::Flip).unwrap();
        let bad = aut.with_theta_omega_unchecked(&a2, w("1,1"));
        assert!(matches!(
            twisted_fusion(&Weight::zero(2), &Weight::zero(2), 1, &bad, &a2),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn conjugation() {
        let a3 = build_algebra(Series::A, 3).unwrap();
        assert_eq!(conjugate(&w("1,0,2"), &a3), w("2,0,1"));
        let d4 = build_algebra(Series::D, 4).unwrap();
        assert_eq!(conjugate(&w("1,0,2,0"), &d4), w("1,0,2,0"));
        let e6 = build_algebra(Series::E, 6).unwrap();
        assert_eq!(conjugate(&w("1,0,0,0,0,0"), &e6), w("0,0,0,0,1,0"));
    }
}
