//! Dense matrices over GF(q) and the two relations the toolkit is built on:
//! adjacency (`rank(A − B) = 1`) and the full-rank-difference relation
//! (`rank(A − B) = n`, written `A dis B` throughout).

mod matrix;
mod normal_form;
mod tables;

pub use matrix::Matrix;
pub use normal_form::{
    diag_identity, normalize_pair, rank_normal_form, rank_one_factor, PairNormalization,
    RankNormalForm,
};
pub use tables::{DisGraph, SpaceTables, DEFAULT_GRAPH_BUDGET};

use crate::error::{Error, Result};
use crate::gf::FieldSpec;

/// Default cap on the number of matrices any enumeration may produce.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// The matrix space `M_{m,n}(GF(q))`. No relation between `m` and `n` is
/// enforced here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceSpec {
    pub field: FieldSpec,
    pub m: usize,
    pub n: usize,
}

impl SpaceSpec {
    pub fn new(field: &FieldSpec, m: usize, n: usize) -> Self {
        Self {
            field: field.clone(),
            m,
            n,
        }
    }

    pub fn entries(&self) -> usize {
        self.m * self.n
    }

    /// `q^(mn)`, saturating at `u128::MAX`.
    pub fn size(&self) -> u128 {
        (self.field.q() as u128)
            .checked_pow(self.entries() as u32)
            .unwrap_or(u128::MAX)
    }

    pub fn check_budget(&self, budget: u64) -> Result<u64> {
        check_budget(self.size(), budget)
    }

    pub fn zero(&self) -> Matrix {
        Matrix::zeros(&self.field, self.m, self.n)
    }

    pub fn unit(&self, row: usize, col: usize) -> Matrix {
        Matrix::unit(&self.field, self.m, self.n, row, col)
    }

    pub fn contains(&self, a: &Matrix) -> bool {
        a.field() == &self.field && a.rows() == self.m && a.cols() == self.n
    }

    pub(crate) fn check_contains(&self, a: &Matrix) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: format!("{}x{} over GF({})", self.m, self.n, self.field.q()),
                found: format!("{}x{} over GF({})", a.rows(), a.cols(), a.field().q()),
            })
        }
    }

    /// Rejects the shapes and fields excluded by the preserver hypotheses:
    /// `|F| ≥ 3` and `m ≥ n ≥ 2`.
    pub fn check_hypotheses(&self) -> Result<()> {
        if self.field.q() < 3 {
            return Err(Error::FieldTooSmall(self.field.q()));
        }
        if self.n < 2 || self.m < self.n {
            return Err(Error::ShapeHypothesis {
                m: self.m,
                n: self.n,
            });
        }
        Ok(())
    }
}

pub(crate) fn check_budget(count: u128, budget: u64) -> Result<u64> {
    if count > budget as u128 {
        Err(Error::BudgetExceeded { count, budget })
    } else {
        Ok(count as u64)
    }
}

pub fn rank(a: &Matrix) -> usize {
    a.rank()
}

/// `A dis B`: `A − B` has full column rank.
pub fn is_dis(a: &Matrix, b: &Matrix) -> Result<bool> {
    Ok(a.try_sub(b)?.rank() == a.cols())
}

/// `rank(A − B) = 1`.
pub fn is_adjacent(a: &Matrix, b: &Matrix) -> Result<bool> {
    Ok(a.try_sub(b)?.rank() == 1)
}

/// Every matrix of `space` in index order.
pub fn enumerate_matrices(
    space: &SpaceSpec,
    budget: u64,
) -> Result<impl Iterator<Item = Matrix> + '_> {
    let count = space.check_budget(budget)?;
    Ok((0..count).map(move |i| Matrix::from_index(space, i).expect("index in range")))
}

/// Every `len × 1` column vector over `field` in index order.
pub fn enumerate_vectors(field: &FieldSpec, len: usize) -> impl Iterator<Item = Matrix> + '_ {
    let space = SpaceSpec::new(field, len, 1);
    let count = (field.q() as u64).pow(len as u32);
    (0..count).map(move |i| Matrix::from_index(&space, i).expect("index in range"))
}

/// Number of matrices of rank exactly `r`, by the product formula
/// `Π_{i<r} (q^m − q^i)(q^n − q^i) / (q^r − q^i)`.
pub fn count_by_rank(space: &SpaceSpec, r: usize) -> Result<u128> {
    let max = space.m.min(space.n);
    if r > max {
        return Err(Error::RankOutOfRange { rank: r, max });
    }
    let q = space.field.q() as u128;
    let pow = |e: usize| q.pow(e as u32);
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..r {
        num *= (pow(space.m) - pow(i)) * (pow(space.n) - pow(i));
        den *= pow(r) - pow(i);
    }
    Ok(num / den)
}
