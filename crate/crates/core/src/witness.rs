//! Adjacency characterized through `dis` alone.
//!
//! For distinct `A, B ∈ M_{m,n}` (`m ≥ n ≥ 2`, `|F| ≥ 3`) the following are
//! equivalent:
//!
//! 1. `A` and `B` are adjacent;
//! 2. some `R ∉ {A, B}` has the property that every `X` with `X dis R`
//!    satisfies `X dis A` or `X dis B`.
//!
//! [`adjacency_witness`] builds such an `R` for adjacent pairs and
//! [`separating_matrix`] refutes every candidate `R` for the others.
//! [`adjacent_via_dis`] evaluates condition 2 by brute force.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matspace::{
    enumerate_vectors, normalize_pair, DisGraph, Matrix, SpaceSpec, SpaceTables,
};

/// A candidate witness `R` for a pair `(A, B)` and the outcome of checking it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub r: Matrix,
    /// True iff a full scan over `X` found no counterexample.
    pub verified: bool,
    /// Whether the scan was run at all; spaces over budget are not scanned.
    pub exhaustive: bool,
    /// Some `X` with `X dis R` but neither `X dis A` nor `X dis B`.
    pub counterexample: Option<Matrix>,
}

fn check_pair(a: &Matrix, b: &Matrix) -> Result<SpaceSpec> {
    let space = a.space();
    space.check_contains(b)?;
    space.check_hypotheses()?;
    Ok(space)
}

fn independent(u: &Matrix, v: &Matrix) -> bool {
    u.hstack(v).rank() == 2
}

/// Extends an independent family of `len × 1` vectors by standard basis
/// vectors, first index first, until it has `target` members.
fn extend_with_standard_basis(family: &mut Vec<Matrix>, len: usize, target: usize) {
    let field = family[0].field().clone();
    let mut stacked = family
        .iter()
        .skip(1)
        .fold(family[0].clone(), |acc, v| acc.hstack(v));
    for j in 0..len {
        if family.len() == target {
            break;
        }
        let e = Matrix::unit(&field, len, 1, j, 0);
        let candidate = stacked.hstack(&e);
        if candidate.rank() == family.len() + 1 {
            family.push(e);
            stacked = candidate;
        }
    }
    assert_eq!(family.len(), target, "basis extension failed");
}

/// Given operators `T, S: F^n → F^m` with `T` of rank at least two and `S ≠ 0`,
/// returns linearly independent `x, y` with `T·x` and `S·y` independent.
///
/// `y` is the first vector (index order) with `S·y ≠ 0`; `x` is the first
/// vector independent of `y` whose image under `T` is independent of `S·y`.
pub fn independent_image_vectors(t: &Matrix, s: &Matrix) -> Result<(Matrix, Matrix)> {
    t.space().check_contains(s)?;
    let field = t.field();
    if field.q() < 3 {
        return Err(Error::FieldTooSmall(field.q()));
    }
    let n = t.cols();
    if n < 2 {
        return Err(Error::Precondition(format!("domain dimension {n} < 2")));
    }
    if s.is_zero() {
        return Err(Error::Precondition("S must be nonzero".into()));
    }
    let rank = t.rank();
    if rank < 2 {
        return Err(Error::Precondition(format!(
            "T must have rank at least 2, got {rank}"
        )));
    }

    let y = enumerate_vectors(field, n)
        .find(|y| !(s * y).is_zero())
        .expect("S nonzero");
    let sy = s * &y;
    let x = enumerate_vectors(field, n)
        .find(|x| independent(x, &y) && independent(&(t * x), &sy))
        .expect("image of T is not inside span(S·y)");
    Ok((x, y))
}

/// Constructs the witness `R` for an adjacent pair: with `(A, B)` normalized
/// to `(0, E₁₁)`, `R` corresponds to `λ·E₁₁` where `λ` is element index 2,
/// the smallest index outside `{0, 1}`.
pub fn witness_matrix(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let space = check_pair(a, b)?;
    let norm = normalize_pair(a, b)?;
    if norm.rank != 1 {
        return Err(Error::Precondition(format!(
            "pair is not adjacent (rank distance {})",
            norm.rank
        )));
    }
    Ok(norm.backward(&space.unit(0, 0).scale(2)))
}

/// [`witness_matrix`] checked against every `X` of the space when
/// `q^(mn) ≤ budget`.
pub fn adjacency_witness(a: &Matrix, b: &Matrix, budget: u64) -> Result<WitnessReport> {
    let r = witness_matrix(a, b)?;
    let space = a.space();
    let Ok(size) = space.check_budget(budget) else {
        return Ok(WitnessReport {
            r,
            verified: false,
            exhaustive: false,
            counterexample: None,
        });
    };
    let n = space.n;
    let counterexample = (0..size).into_par_iter().find_first(|&i| {
        let x = Matrix::from_index(&space, i).expect("in range");
        (&x - &r).rank() == n && (&x - a).rank() != n && (&x - b).rank() != n
    });
    let counterexample = counterexample.map(|i| Matrix::from_index(&space, i).expect("in range"));
    Ok(WitnessReport {
        r,
        verified: counterexample.is_none(),
        exhaustive: true,
        counterexample,
    })
}

/// [`adjacency_witness`] for index-addressed pairs, verified with a prebuilt graph.
pub fn adjacency_witness_in(graph: &DisGraph, a: usize, b: usize) -> Result<WitnessReport> {
    let tables = graph.tables();
    let r = witness_matrix(&tables.matrix(a), &tables.matrix(b))?;
    let bad = graph.counterexample(r.index() as usize, a, b);
    Ok(WitnessReport {
        r,
        verified: bad.is_none(),
        exhaustive: true,
        counterexample: bad.map(|x| tables.matrix(x)),
    })
}

/// For `rank(B − A) ≥ 2` and `R ∉ {A, B}`, builds `X` with `X dis R` while
/// neither `X dis A` nor `X dis B`.
///
/// After normalizing to `A = 0`, `X` is fixed on a pair of independent
/// vectors `x, y` by `X·x = B·x` and `X·y = 0`, chosen so that
/// `(B − R)·x` and `R·y` are independent, and then extended so that `X − R`
/// is injective.
pub fn separating_matrix(a: &Matrix, b: &Matrix, r: &Matrix) -> Result<Matrix> {
    let space = check_pair(a, b)?;
    space.check_contains(r)?;
    if r == a || r == b {
        return Err(Error::Precondition("R must differ from A and B".into()));
    }
    let norm = normalize_pair(a, b)?;
    if norm.rank < 2 {
        return Err(Error::Precondition(format!(
            "rank(B - A) must be at least 2, got {}",
            norm.rank
        )));
    }
    let field = &space.field;
    let (m, n) = (space.m, space.n);
    let bn = norm.forward(b);
    let rn = norm.forward(r);
    let diff = &bn - &rn;

    let (x, y) = if diff.rank() >= 2 {
        independent_image_vectors(&diff, &rn)?
    } else if rn.rank() >= 2 {
        let (u, v) = independent_image_vectors(&rn, &diff)?;
        (v, u)
    } else {
        // Both rank one, so their images meet only in 0.
        enumerate_vectors(field, n)
            .filter(|x| !(&diff * x).is_zero())
            .find_map(|x| {
                enumerate_vectors(field, n)
                    .find(|y| !(&rn * y).is_zero() && independent(&x, y))
                    .map(|y| (x, y))
            })
            .expect("independent pair exists when |F| >= 3")
    };
    let fx = &diff * &x;
    let fy = -&(&rn * &y);
    assert!(independent(&fx, &fy), "images must be independent");

    let mut domain = vec![x.clone(), y.clone()];
    extend_with_standard_basis(&mut domain, n, n);
    let mut images = vec![fx, fy];
    extend_with_standard_basis(&mut images, m, n);

    let mut columns = vec![&bn * &x, Matrix::zeros(field, m, 1)];
    for (b_i, c_i) in domain.iter().zip(&images).skip(2) {
        columns.push(c_i + &(&rn * b_i));
    }
    let basis = Matrix::from_columns(field, n, &domain);
    let image = Matrix::from_columns(field, m, &columns);
    let xn = &image * &basis.inverse().expect("basis is invertible");
    Ok(norm.backward(&xn))
}

/// Evaluates "∃R ∉ {A, B} ∀X: X dis R ⇒ X dis A ∨ X dis B" literally over
/// the whole space, scanning `R` in index order and stopping at the first
/// witness.
pub fn adjacent_via_dis(a: &Matrix, b: &Matrix, budget: u64) -> Result<bool> {
    let space = check_pair(a, b)?;
    if a == b {
        return Err(Error::Precondition("A and B must differ".into()));
    }
    let tables = SpaceTables::new(&space, budget)?;
    Ok(adjacent_via_dis_in(
        &tables,
        a.index() as usize,
        b.index() as usize,
    ))
}

/// [`adjacent_via_dis`] with precomputed rank tables.
pub fn adjacent_via_dis_in(tables: &SpaceTables, a: usize, b: usize) -> bool {
    (0..tables.size()).filter(|&r| r != a && r != b).any(|r| {
        (0..tables.size())
            .all(|x| !tables.is_dis(x, r) || tables.is_dis(x, a) || tables.is_dis(x, b))
    })
}
