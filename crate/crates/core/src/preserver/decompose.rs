//! Recovery of `(T, S, R, σ, transposed)` from a tabulated preserver.
//!
//! With `R = φ(0)` and `ψ = φ − R`, a standard preserver sends the matrix
//! unit `E_ij` to `t_i·s_jᵗ` (columns of `T`, rows of `S`) and `λ·E₁₁` to
//! `σ(λ)·t₁·s₁ᵗ`. In the transposed form `E_ij` goes to `t_j·s_iᵗ`
//! instead, so `ψ(E₁₁)` and `ψ(E₁₂)` share a column space in the first case
//! and a row space in the second.

use crate::error::{DecomposeError, Error, Result};
use crate::gf::automorphism_group;
use crate::matspace::{rank_one_factor, Matrix};

use super::{MapTable, StandardPreserver};

/// Recovers the standard form of a `dis`-preserving table. The result's
/// table is checked against the input on every matrix.
pub fn decompose(table: &MapTable) -> Result<StandardPreserver> {
    let space = table.space().clone();
    space.check_hypotheses()?;
    let field = space.field.clone();
    let (m, n) = (space.m, space.n);

    let r = Matrix::from_index(&space, table.apply_index(0))?;
    let centred = |a: &Matrix| -> Matrix {
        let img = Matrix::from_index(&space, table.apply_index(a.index())).expect("in range");
        &img - &r
    };
    let rank_one = |a: &Matrix, row: usize, col: usize| -> Result<Matrix> {
        let img = centred(a);
        if img.rank() != 1 {
            return Err(DecomposeError::NonRankOneImage {
                row: row + 1,
                col: col + 1,
            }
            .into());
        }
        Ok(img)
    };

    let e11 = rank_one(&space.unit(0, 0), 0, 0)?;
    let e12 = rank_one(&space.unit(0, 1), 0, 1)?;
    let same_columns = e11.hstack(&e12).rank() == 1;
    let same_rows = e11.vstack(&e12).rank() == 1;
    let transposed = match (same_columns, same_rows) {
        (true, _) => false,
        (false, true) if m == n => true,
        _ => return Err(DecomposeError::NoOrientation.into()),
    };

    // ψ in standard orientation: A ↦ ψ(Aᵗ) when transposed.
    let standard = |row: usize, col: usize, scalar: u8| -> Result<Matrix> {
        let unit = space.unit(row, col).scale(scalar);
        let arg = if transposed { unit.transpose() } else { unit };
        let (r_, c_) = if transposed { (col, row) } else { (row, col) };
        rank_one(&arg, r_, c_)
    };

    let base = standard(0, 0, 1)?;
    let (t1, s1) = rank_one_factor(&base)?;
    let lead = base
        .entries()
        .iter()
        .position(|&e| e != 0)
        .expect("rank one");

    let mut scalar_map = vec![0u8; field.q() as usize];
    for lambda in 1..field.q() as u8 {
        let img = standard(0, 0, lambda)?;
        let mu = field.mul(
            img.entries()[lead],
            field.inv(base.entries()[lead]).expect("nonzero"),
        );
        if img != base.scale(mu) {
            return Err(DecomposeError::InconsistentImage { row: 1, col: 1 }.into());
        }
        scalar_map[lambda as usize] = mu;
    }
    let sigma = automorphism_group(&field)
        .into_iter()
        .find(|sigma| (0..field.q() as u8).all(|a| sigma.apply_index(a) == scalar_map[a as usize]))
        .ok_or(DecomposeError::NotAnAutomorphism)?;

    let j0 = s1.entries().iter().position(|&e| e != 0).expect("nonzero");
    let s1_inv = field.inv(s1.entries()[j0]).expect("nonzero");
    let mut t_cols = Vec::with_capacity(m);
    for i in 0..m {
        let img = standard(i, 0, 1)?;
        let t_i = img.column(j0).scale(s1_inv);
        if &t_i * &s1.transpose() != img {
            return Err(DecomposeError::InconsistentImage { row: i + 1, col: 1 }.into());
        }
        t_cols.push(t_i);
    }

    let i0 = t1.entries().iter().position(|&e| e != 0).expect("nonzero");
    let mut s_rows = Vec::with_capacity(n);
    for j in 0..n {
        let img = standard(0, j, 1)?;
        let s_j = img.row_vector(i0);
        if &t1 * &s_j.transpose() != img {
            return Err(DecomposeError::InconsistentImage { row: 1, col: j + 1 }.into());
        }
        s_rows.push(s_j);
    }

    let t = Matrix::from_columns(&field, m, &t_cols);
    let s = Matrix::from_columns(&field, n, &s_rows).transpose();
    let candidate = match StandardPreserver::new(t, s, r, sigma, transposed) {
        Err(Error::Singular) => return Err(DecomposeError::SingularFactor.into()),
        other => other?,
    };

    let rebuilt = candidate.to_table(table.len() as u64)?;
    if let Some(index) = rebuilt
        .image()
        .iter()
        .zip(table.image())
        .position(|(a, b)| a != b)
    {
        return Err(DecomposeError::TableMismatch {
            index: index as u64,
        }
        .into());
    }
    Ok(candidate)
}
