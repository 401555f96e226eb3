use crate::error::{Error, Result};

use super::{Matrix, SpaceSpec};

/// `P·A·Q = diag(I_r, 0)` with `P`, `Q` invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankNormalForm {
    pub p: Matrix,
    pub q: Matrix,
    pub rank: usize,
}

/// The change of coordinates `X ↦ P·X·Q − C` sending a pair `(A, B)` to
/// `(0, diag(I_r, 0))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairNormalization {
    pub p: Matrix,
    pub q: Matrix,
    pub c: Matrix,
    pub rank: usize,
    p_inv: Matrix,
    q_inv: Matrix,
}

impl PairNormalization {
    pub fn forward(&self, x: &Matrix) -> Matrix {
        &(&(&self.p * x) * &self.q) - &self.c
    }

    pub fn backward(&self, x: &Matrix) -> Matrix {
        &(&self.p_inv * &(x + &self.c)) * &self.q_inv
    }
}

/// `diag(I_r, 0)` of shape `m × n`.
pub fn diag_identity(space: &SpaceSpec, r: usize) -> Matrix {
    let mut out = space.zero();
    for i in 0..r {
        out.set(i, i, 1);
    }
    out
}

/// Row-reduces `A` to RREF while recording the row operations in `P`, then
/// moves pivot columns to the front and clears the free columns with `Q`.
pub fn rank_normal_form(a: &Matrix) -> RankNormalForm {
    let (m, n) = (a.rows(), a.cols());
    let field = a.field();
    let (aug, pivots) = a.hstack(&Matrix::identity(field, m)).rref_limited(n);
    let reduced = aug.block(0, 0, m, n);
    let p = aug.block(0, n, m, m);

    // columns of Q: e_{pivot_i} for each pivot, then a null vector per free column
    let mut columns = Vec::with_capacity(n);
    for &c in &pivots {
        columns.push(Matrix::unit(field, n, 1, c, 0));
    }
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = Matrix::unit(field, n, 1, free, 0);
        for (row, &pc) in pivots.iter().enumerate() {
            v.set(pc, 0, field.neg(reduced.get(row, free)));
        }
        columns.push(v);
    }
    let q = Matrix::from_columns(field, n, &columns);
    RankNormalForm {
        p,
        q,
        rank: pivots.len(),
    }
}

/// Normalizes `(A, B)` using the rank normal form of `B − A` and `C = P·A·Q`.
pub fn normalize_pair(a: &Matrix, b: &Matrix) -> Result<PairNormalization> {
    let diff = b.try_sub(a)?;
    let RankNormalForm { p, q, rank } = rank_normal_form(&diff);
    let c = &(&p * a) * &q;
    let p_inv = p.inverse().expect("P invertible");
    let q_inv = q.inverse().expect("Q invertible");
    Ok(PairNormalization {
        p,
        q,
        c,
        rank,
        p_inv,
        q_inv,
    })
}

/// Factors a rank-one `A` as `x·yᵗ` with the first nonzero coordinate of `x`
/// equal to one.
pub fn rank_one_factor(a: &Matrix) -> Result<(Matrix, Matrix)> {
    let rank = a.rank();
    if rank != 1 {
        return Err(Error::NotRankOne(rank));
    }
    let pos = a
        .entries()
        .iter()
        .position(|&e| e != 0)
        .expect("nonzero entry");
    let (i0, j0) = (pos / a.cols(), pos % a.cols());
    let field = a.field();
    let pivot_inv = field.inv(a.get(i0, j0)).expect("nonzero");
    let x_entries: Vec<u8> = (0..a.rows())
        .map(|i| field.mul(a.get(i, j0), pivot_inv))
        .collect();
    let x = Matrix::column_vector(field, &x_entries);
    let y = a.row_vector(i0);
    Ok((x, y))
}
