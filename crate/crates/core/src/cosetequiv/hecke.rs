//! Double cosets Λ x Γ and their Hecke operators Z[Γ\Ω] → Z[Λ\Ω].

use serde::Serialize;

use super::CosetError;
use crate::exactla::{Int, IntMatrix};
use crate::permgrp::{CosetSpace, PermGroup, Permutation};

/// Default bound on the indices of both subgroups.
pub const DEFAULT_HECKE_INDEX_BOUND: usize = 2000;

/// The double cosets Λ x Γ, realized as orbits of Γ on the right cosets of
/// Λ. `labels[i][j]` is the double coset of y_i ω_j⁻¹ for Λ-coset
/// representatives y_i and Γ-coset representatives ω_j; the Hecke operator
/// A_D is the 0/1 matrix of the entries labelled D, of size [Ω:Λ] x [Ω:Γ].
#[derive(Clone, Debug)]
pub struct DoubleCosets {
    pub representatives: Vec<Permutation>,
    /// Number of Λ-cosets in each Γ-orbit.
    pub orbit_lengths: Vec<usize>,
    /// |Λ x Γ| for each double coset.
    pub sizes: Vec<Int>,
    pub labels: Vec<Vec<u32>>,
    pub gamma_space: CosetSpace,
    pub lambda_space: CosetSpace,
}

#[derive(Clone, Debug, Serialize)]
pub struct DoubleCosetSummary {
    pub count: usize,
    pub sizes: Vec<Int>,
    pub representatives: Vec<String>,
}

impl DoubleCosets {
    pub fn new(
        omega: &PermGroup,
        gamma: &PermGroup,
        lambda: &PermGroup,
        bound: usize,
    ) -> Result<Self, CosetError> {
        if !gamma.is_subgroup_of(omega) || !lambda.is_subgroup_of(omega) {
            return Err(CosetError::NotASubgroup);
        }
        let gamma_space = CosetSpace::new(omega, gamma, bound).map_err(CosetError::Perm)?;
        let lambda_space = CosetSpace::new(omega, lambda, bound).map_err(CosetError::Perm)?;
        let nl = lambda_space.index();
        // orbits of Γ on Λ-cosets
        let mut orbit_of = vec![u32::MAX; nl];
        let mut representatives = Vec::new();
        let mut orbit_lengths = Vec::new();
        for start in 0..nl {
            if orbit_of[start] != u32::MAX {
                continue;
            }
            let label = representatives.len() as u32;
            representatives.push(lambda_space.reps[start].clone());
            orbit_of[start] = label;
            let mut queue = vec![start];
            let mut head = 0;
            while head < queue.len() {
                let k = queue[head];
                head += 1;
                for g in gamma.generators() {
                    let t = lambda_space.coset_of(lambda, &lambda_space.reps[k].mul(g));
                    if orbit_of[t] == u32::MAX {
                        orbit_of[t] = label;
                        queue.push(t);
                    }
                }
            }
            orbit_lengths.push(queue.len());
        }
        let inv_omega: Vec<Permutation> = gamma_space.reps.iter().map(|w| w.inverse()).collect();
        let labels = lambda_space
            .reps
            .iter()
            .map(|y| {
                inv_omega
                    .iter()
                    .map(|wi| orbit_of[lambda_space.coset_of(lambda, &y.mul(wi))])
                    .collect()
            })
            .collect();
        let sizes = orbit_lengths
            .iter()
            .map(|&l| lambda.order() * &Int::from(l as u64))
            .collect();
        Ok(DoubleCosets {
            representatives,
            orbit_lengths,
            sizes,
            labels,
            gamma_space,
            lambda_space,
        })
    }

    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    /// The Hecke operator of double coset `d`.
    pub fn hecke_matrix(&self, d: usize) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .labels
            .iter()
            .map(|r| r.iter().map(|&l| i64::from(l as usize == d)).collect())
            .collect();
        IntMatrix::from_rows(self.gamma_space.index(), &rows)
    }

    /// Σ c_D A_D.
    pub fn combination(&self, c: &[Int]) -> IntMatrix {
        let rows: Vec<Vec<Int>> = self
            .labels
            .iter()
            .map(|r| r.iter().map(|&l| c[l as usize].clone()).collect())
            .collect();
        IntMatrix::from_rows(self.gamma_space.index(), &rows)
    }

    /// Σ c_D A_D modulo p, row-major, for coefficients already reduced.
    pub fn combination_mod_p(&self, c: &[u64]) -> Vec<u64> {
        self.labels
            .iter()
            .flat_map(|r| r.iter().map(|&l| c[l as usize]))
            .collect()
    }

    /// Each A_D commutes with the action of the generators of Ω.
    pub fn verify_intertwining(&self) -> bool {
        let ga = &self.gamma_space.action;
        let la = &self.lambda_space.action;
        (0..ga.len()).all(|s| {
            self.labels.iter().enumerate().all(|(i, row)| {
                let ri = la[s][i] as usize;
                row.iter()
                    .enumerate()
                    .all(|(j, &l)| self.labels[ri][ga[s][j] as usize] == l)
            })
        })
    }

    pub fn summary(&self) -> DoubleCosetSummary {
        DoubleCosetSummary {
            count: self.count(),
            sizes: self.sizes.clone(),
            representatives: self.representatives.iter().map(|p| p.to_string()).collect(),
        }
    }
}

/// The double cosets Λ x Γ in Ω with their Hecke operators.
pub fn double_cosets(
    omega: &PermGroup,
    gamma: &PermGroup,
    lambda: &PermGroup,
) -> Result<DoubleCosets, CosetError> {
    DoubleCosets::new(omega, gamma, lambda, DEFAULT_HECKE_INDEX_BOUND)
}
