//! Rank-one perturbation profiles of invertible square matrices.
//!
//! The profile of an invertible `A` records, for each rank-one `xyᵗ`,
//! whether `A − xyᵗ` is still invertible. Over any field this happens
//! exactly when `yᵗA⁻¹x ≠ 1`, and the set where the bilinear form
//! `yᵗA⁻¹x` equals one determines the form, so distinct invertible matrices
//! have distinct profiles.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matspace::{enumerate_matrices, Matrix, SpaceSpec};

/// For each rank-one matrix of the space in index order, whether
/// `A − xyᵗ` is invertible.
pub fn rank_one_profile(a: &Matrix, rank_ones: &[Matrix]) -> Vec<bool> {
    rank_ones.iter().map(|p| (a - p).is_invertible()).collect()
}

/// All pairs of distinct invertible matrices of a square space sharing a
/// rank-one perturbation profile. Empty when profiles separate invertibles.
pub fn invertible_profile_collisions(
    space: &SpaceSpec,
    budget: u64,
) -> Result<Vec<(Matrix, Matrix)>> {
    if space.m != space.n {
        return Err(Error::Precondition(format!(
            "square shape required, got {}x{}",
            space.m, space.n
        )));
    }
    let all: Vec<Matrix> = enumerate_matrices(space, budget)?.collect();
    let rank_ones: Vec<Matrix> = all.iter().filter(|a| a.rank() == 1).cloned().collect();
    let mut by_profile: HashMap<Vec<bool>, Vec<Matrix>> = HashMap::new();
    for a in all.into_iter().filter(|a| a.is_invertible()) {
        by_profile
            .entry(rank_one_profile(&a, &rank_ones))
            .or_default()
            .push(a);
    }
    let mut collisions = Vec::new();
    for group in by_profile.into_values() {
        for (i, a) in group.iter().enumerate() {
            for b in &group[i + 1..] {
                collisions.push((a.clone(), b.clone()));
            }
        }
    }
    collisions.sort_by_key(|(a, b)| (a.index(), b.index()));
    Ok(collisions)
}
