use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::hpoly::HPoly;
use super::matrix::{HbarMatrix, MatrixFile};
use super::snf::snf;
use crate::error::{DqError, Result};

/// A bounded cochain complex of finite free Q[h]-modules on a contiguous
/// degree range. `differentials[i]` maps degree `min_degree + i` to
/// `min_degree + i + 1`; `d . d = 0` is verified at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeComplex {
    min_degree: i64,
    ranks: Vec<usize>,
    differentials: Vec<HbarMatrix>,
}

impl FreeComplex {
    pub fn new(min_degree: i64, ranks: Vec<usize>, differentials: Vec<HbarMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(DqError::Precondition("complex needs at least one degree".into()));
        }
        if differentials.len() + 1 != ranks.len() {
            return Err(DqError::Precondition(format!(
                "expected {} differentials for {} degrees, got {}",
                ranks.len() - 1,
                ranks.len(),
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.cols() != ranks[i] || d.rows() != ranks[i + 1] {
                return Err(DqError::Precondition(format!(
                    "differential at degree {} has shape {}x{}, expected {}x{}",
                    min_degree + i as i64,
                    d.rows(),
                    d.cols(),
                    ranks[i + 1],
                    ranks[i]
                )));
            }
        }
        for i in 0..differentials.len().saturating_sub(1) {
            let sq = differentials[i + 1].mul(&differentials[i])?;
            if !sq.is_zero() {
                return Err(DqError::Precondition(format!(
                    "d.d != 0 at degree {}",
                    min_degree + i as i64
                )));
            }
        }
        Ok(FreeComplex { min_degree, ranks, differentials })
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.min_degree..=self.max_degree()
    }

    pub fn rank(&self, degree: i64) -> usize {
        let i = degree - self.min_degree;
        if i < 0 || i as usize >= self.ranks.len() {
            0
        } else {
            self.ranks[i as usize]
        }
    }

    /// The differential out of `degree`; `None` when it is the zero map
    /// off the carried range.
    pub fn differential(&self, degree: i64) -> Option<&HbarMatrix> {
        let i = degree - self.min_degree;
        if i < 0 || i as usize >= self.differentials.len() {
            None
        } else {
            Some(&self.differentials[i as usize])
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|a| {
                let sign = if a.rem_euclid(2) == 0 { 1 } else { -1 };
                sign * self.rank(a) as i64
            })
            .sum()
    }

    /// Per-degree homology as invariant-factor summaries.
    pub fn homology(&self) -> BTreeMap<i64, ModuleSummary> {
        let mut out = BTreeMap::new();
        for a in self.degrees() {
            out.insert(a, self.homology_at(a));
        }
        out
    }

    /// Homology at one degree: `ker(d_out) / im(d_in)` through two Smith
    /// normal forms. The incoming factors sit inside the kernel because the
    /// kernel of a map of free modules is saturated.
    pub fn homology_at(&self, degree: i64) -> ModuleSummary {
        let n = self.rank(degree);
        if n == 0 {
            return ModuleSummary::zero();
        }
        let d_in = self.differential(degree - 1);
        let d_out = self.differential(degree);

        let (r1, factors, basis_change) = match d_in {
            None => (0, Vec::new(), None),
            Some(m) => {
                let s = snf(m);
                (s.rank, s.invariant_factors(), Some(s.u_inv))
            }
        };

        let r2 = match d_out {
            None => 0,
            Some(m) => {
                // restrict d_out to the complement of the image-adapted block
                let restricted = match &basis_change {
                    None => m.clone(),
                    Some(u_inv) => m.mul(&u_inv.columns_from(r1)).expect("shape"),
                };
                snf(&restricted).rank
            }
        };

        let free_rank = n - r1 - r2;
        ModuleSummary::new(free_rank, factors)
    }
}

/// Invariant-factor decomposition of a finitely generated Q[h]-module:
/// free rank plus a divisibility chain of monic nonunit torsion factors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModuleSummary {
    pub free_rank: usize,
    pub invariant_factors: Vec<HPoly>,
}

impl ModuleSummary {
    pub fn zero() -> Self {
        ModuleSummary::default()
    }

    pub fn new(free_rank: usize, invariant_factors: Vec<HPoly>) -> Self {
        debug_assert!(invariant_factors.iter().all(|f| !f.is_one() && !f.is_zero()));
        debug_assert!(invariant_factors
            .windows(2)
            .all(|w| w[0].divides(&w[1])));
        ModuleSummary { free_rank, invariant_factors }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// dim over Q of `M / h M`: the free rank plus one for every invariant
    /// factor vanishing at h = 0.
    pub fn dim_mod_h(&self) -> usize {
        self.free_rank + self.count_factors_divisible_by_h()
    }

    /// dim over Q of `ker(h : M -> M)`: one per factor divisible by h.
    pub fn dim_h_kernel(&self) -> usize {
        self.count_factors_divisible_by_h()
    }

    fn count_factors_divisible_by_h(&self) -> usize {
        use num::Zero;
        self.invariant_factors.iter().filter(|f| f.eval_zero().is_zero()).count()
    }

    /// Summary after inverting h: the free part survives; a torsion factor
    /// survives exactly when it has a nontrivial prime-to-h part.
    pub fn localized(&self) -> ModuleSummary {
        let factors = self
            .invariant_factors
            .iter()
            .filter_map(|f| {
                let (_, unit_part) = f.strip_h_power();
                if unit_part.is_constant() {
                    None
                } else {
                    Some(unit_part.monic().1)
                }
            })
            .collect();
        ModuleSummary { free_rank: self.free_rank, invariant_factors: factors }
    }

    /// Number of nonzero cyclic summands after inverting h.
    pub fn localized_summand_count(&self) -> usize {
        let l = self.localized();
        l.free_rank + l.invariant_factors.len()
    }
}

/// JSON row of a homology table.
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HomologyRow {
    pub degree: i64,
    pub free_rank: usize,
    pub invariant_factors: Vec<String>,
}

pub fn homology_table(h: &BTreeMap<i64, ModuleSummary>) -> Vec<HomologyRow> {
    h.iter()
        .map(|(&degree, s)| HomologyRow {
            degree,
            free_rank: s.free_rank,
            invariant_factors: s.invariant_factors.iter().map(HPoly::render).collect(),
        })
        .collect()
}

/// JSON shape for complex files.
#[derive(Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub min_degree: i64,
    pub ranks: Vec<usize>,
    pub differentials: Vec<MatrixFile>,
}

impl FreeComplex {
    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            min_degree: self.min_degree,
            ranks: self.ranks.clone(),
            differentials: self.differentials.iter().map(HbarMatrix::to_file).collect(),
        }
    }

    pub fn from_file(file: &ComplexFile) -> Result<Self> {
        let diffs = file
            .differentials
            .iter()
            .map(HbarMatrix::from_file)
            .collect::<Result<Vec<_>>>()?;
        FreeComplex::new(file.min_degree, file.ranks.clone(), diffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(s: &str) -> HPoly {
        HPoly::parse(s).unwrap()
    }

    fn single_map(entries: Vec<Vec<&str>>, src_rank: usize, dst_rank: usize) -> FreeComplex {
        let m = HbarMatrix::from_rows(
            entries.into_iter().map(|r| r.into_iter().map(hp).collect()).collect(),
        )
        .unwrap();
        FreeComplex::new(0, vec![src_rank, dst_rank], vec![m]).unwrap()
    }

    #[test]
    fn rejects_non_complex() {
        let d0 = HbarMatrix::from_rows(vec![vec![hp("1")]]).unwrap();
        let d1 = HbarMatrix::from_rows(vec![vec![hp("1")]]).unwrap();
        assert!(FreeComplex::new(0, vec![1, 1, 1], vec![d0, d1]).is_err());
    }

    #[test]
    fn nakayama_scale_example() {
        // 0 -> Q[h] --h--> Q[h] -> 0
        let c = single_map(vec![vec!["h"]], 1, 1);
        let h = c.homology();
        assert!(h[&0].is_trivial());
        assert_eq!(h[&1].free_rank, 0);
        assert_eq!(h[&1].invariant_factors, vec![hp("h")]);
    }

    #[test]
    fn zero_differentials_give_free_homology() {
        let c = FreeComplex::new(0, vec![2, 3], vec![HbarMatrix::zero(3, 2)]).unwrap();
        let h = c.homology();
        assert_eq!(h[&0], ModuleSummary::new(2, vec![]));
        assert_eq!(h[&1], ModuleSummary::new(3, vec![]));
    }

    #[test]
    fn column_embedding_example() {
        // 0 -> Q[h] --(h,1)^T--> Q[h]^2 -> 0: H^0 = 0, H^1 free of rank 1
        let c = single_map(vec![vec!["h"], vec!["1"]], 1, 2);
        let h = c.homology();
        assert!(h[&0].is_trivial());
        assert_eq!(h[&1], ModuleSummary::new(1, vec![]));
    }

    #[test]
    fn euler_characteristic_matches_homology() {
        let c = single_map(vec![vec!["h", "0"], vec!["0", "h-1"]], 2, 2);
        let h = c.homology();
        let chi_ranks = c.euler_characteristic();
        let chi_hom: i64 = h
            .iter()
            .map(|(&a, s)| {
                let sign = if (a % 2 + 2) % 2 == 0 { 1 } else { -1 };
                sign * s.free_rank as i64
            })
            .sum();
        assert_eq!(chi_ranks, chi_hom);
        assert_eq!(h[&1].invariant_factors, vec![hp("h^2 - h")]);
    }

    #[test]
    fn localized_summary() {
        let s = ModuleSummary::new(2, vec![hp("h"), hp("h^2 - h")]);
        let l = s.localized();
        assert_eq!(l.free_rank, 2);
        assert_eq!(l.invariant_factors, vec![hp("h - 1")]);
        assert_eq!(s.localized_summand_count(), 3);
        assert_eq!(s.dim_mod_h(), 4);
        assert_eq!(s.dim_h_kernel(), 2);
    }
}
