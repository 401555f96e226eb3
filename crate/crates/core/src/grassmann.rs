//! The Grassmann space of `m`-dimensional subspaces of `F^(m+n)`.
//!
//! A point is stored as the reduced row-echelon form of any basis matrix,
//! written in blocks `[X Y]` with `X` of shape `m × n` and `Y` the right
//! `m × m` block. Points with `Y` invertible are finite and correspond to
//! the matrix `Y⁻¹X ∈ M_{m,n}`; the others lie at infinity.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::matspace::{check_budget, enumerate_matrices, Matrix, SpaceSpec};

/// An `m`-dimensional subspace of `F^(m+n)`. `space` carries `(F, m, n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrassmannPoint {
    space: SpaceSpec,
    basis: Matrix,
}

impl GrassmannPoint {
    /// The row space of `basis`, which must be `m × (m+n)` of rank `m`.
    pub fn from_basis(space: &SpaceSpec, basis: &Matrix) -> Result<Self> {
        check_space(space)?;
        let (m, width) = (space.m, space.m + space.n);
        if basis.field() != &space.field || basis.rows() != m || basis.cols() != width {
            return Err(Error::DimensionMismatch {
                expected: format!("{m}x{width} over GF({})", space.field.q()),
                found: format!(
                    "{}x{} over GF({})",
                    basis.rows(),
                    basis.cols(),
                    basis.field().q()
                ),
            });
        }
        let (canonical, pivots) = basis.rref();
        if pivots.len() != m {
            return Err(Error::Precondition(format!(
                "basis has rank {}, expected {m}",
                pivots.len()
            )));
        }
        Ok(Self {
            space: space.clone(),
            basis: canonical,
        })
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    /// Canonical (RREF) basis matrix.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// `X` block of the canonical basis.
    pub fn left_block(&self) -> Matrix {
        self.basis.block(0, 0, self.space.m, self.space.n)
    }

    /// `Y` block of the canonical basis.
    pub fn right_block(&self) -> Matrix {
        self.basis
            .block(0, self.space.n, self.space.m, self.space.m)
    }

    /// Text form `q m n | e…` with the canonical basis row-major.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {} |",
            self.space.field.q(),
            self.space.m,
            self.space.n
        );
        for e in self.basis.entries() {
            out.push(' ');
            out.push_str(&e.to_string());
        }
        out
    }

    pub fn parse_text(line: &str) -> Result<Self> {
        let (header, body) = line
            .split_once('|')
            .ok_or_else(|| Error::Parse("missing `|` separator".into()))?;
        let parse = |t: &str| {
            t.parse::<u64>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        };
        let head = header
            .split_whitespace()
            .map(parse)
            .collect::<Result<Vec<_>>>()?;
        let [q, m, n] = head[..] else {
            return Err(Error::Parse("expected `q m n` before `|`".into()));
        };
        let field = crate::gf::FieldSpec::new(q as u32)?;
        let space = SpaceSpec::new(&field, m as usize, n as usize);
        let entries = body
            .split_whitespace()
            .map(|t| {
                parse(t)
                    .and_then(|v| u8::try_from(v).map_err(|_| Error::Parse(format!("entry {v}"))))
            })
            .collect::<Result<Vec<_>>>()?;
        let basis = Matrix::from_entries(&field, space.m, space.m + space.n, entries)?;
        let point = Self::from_basis(&space, &basis)?;
        if point.basis != basis {
            return Err(Error::Parse(
                "basis is not in reduced row-echelon form".into(),
            ));
        }
        Ok(point)
    }
}

impl fmt::Debug for GrassmannPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrassmannPoint({:?})", self.basis)
    }
}

fn check_space(space: &SpaceSpec) -> Result<()> {
    if space.m == 0 {
        return Err(Error::Precondition(
            "subspace dimension m must be at least 1".into(),
        ));
    }
    Ok(())
}

fn check_same(u: &GrassmannPoint, v: &GrassmannPoint) -> Result<()> {
    if u.space != v.space {
        return Err(Error::DimensionMismatch {
            expected: format!("{:?}", u.space),
            found: format!("{:?}", v.space),
        });
    }
    Ok(())
}

/// Number of `k`-dimensional subspaces of `GF(q)^n`.
pub fn gaussian_binomial(q: u32, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Every point, each once, ordered by the index of its canonical basis.
///
/// Generated directly from RREF profiles: for each choice of `m` pivot
/// columns, every filling of the free entries right of each pivot.
pub fn enumerate_points(space: &SpaceSpec, budget: u64) -> Result<Vec<GrassmannPoint>> {
    check_space(space)?;
    let width = space.m + space.n;
    check_budget(gaussian_binomial(space.field.q(), width, space.m), budget)?;
    let q = space.field.q() as u64;
    let mut points = Vec::new();
    for pivots in combinations(width, space.m) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| {
                let pivots = &pivots;
                (c + 1..width)
                    .filter(move |j| !pivots.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        for fill in 0..q.pow(free.len() as u32) {
            let mut basis = Matrix::zeros(&space.field, space.m, width);
            for (i, &c) in pivots.iter().enumerate() {
                basis.set(i, c, 1);
            }
            let mut rest = fill;
            for &(i, j) in &free {
                basis.set(i, j, (rest % q) as u8);
                rest /= q;
            }
            points.push(GrassmannPoint {
                space: space.clone(),
                basis,
            });
        }
    }
    points.sort_by_key(|p| p.basis.index());
    Ok(points)
}

/// Reference enumeration: row-reduce every full-rank `m × (m+n)` matrix and
/// deduplicate. `budget` bounds the number of matrices scanned.
pub fn enumerate_points_brute_force(space: &SpaceSpec, budget: u64) -> Result<Vec<GrassmannPoint>> {
    check_space(space)?;
    let frame = SpaceSpec::new(&space.field, space.m, space.m + space.n);
    let mut seen = BTreeSet::new();
    let mut points = Vec::new();
    for basis in enumerate_matrices(&frame, budget)? {
        let (canonical, pivots) = basis.rref();
        if pivots.len() == space.m && seen.insert(canonical.index()) {
            points.push(GrassmannPoint {
                space: space.clone(),
                basis: canonical,
            });
        }
    }
    points.sort_by_key(|p| p.basis.index());
    Ok(points)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for c in start..n {
            current.push(c);
            go(c + 1, n, k, current, out);
            current.pop();
        }
    }
    go(0, n, k, &mut current, &mut out);
    out
}

fn sum_dimension(u: &GrassmannPoint, v: &GrassmannPoint) -> usize {
    u.basis.vstack(&v.basis).rank()
}

/// `dim(U + V) = m + 1`.
pub fn is_adjacent_points(u: &GrassmannPoint, v: &GrassmannPoint) -> Result<bool> {
    check_same(u, v)?;
    Ok(sum_dimension(u, v) == u.space.m + 1)
}

/// Whether the `Y` block is singular. Any basis of the same subspace gives
/// the same answer, since bases differ by an invertible left factor.
pub fn is_at_infinity(u: &GrassmannPoint) -> bool {
    !u.right_block().is_invertible()
}

/// `Y⁻¹X` for a finite point.
pub fn to_matrix(u: &GrassmannPoint) -> Result<Matrix> {
    let y_inv = u
        .right_block()
        .inverse()
        .map_err(|_| Error::PointAtInfinity)?;
    Ok(&y_inv * &u.left_block())
}

/// The row space of `[A I]`.
pub fn from_matrix(a: &Matrix) -> GrassmannPoint {
    let space = a.space();
    let basis = a.hstack(&Matrix::identity(a.field(), space.m));
    GrassmannPoint::from_basis(&space, &basis).expect("[A I] has full row rank")
}

/// `U ∩ V = 0`, equivalently `dim(U + V) = 2n`; requires `m = n`.
pub fn is_complementary(u: &GrassmannPoint, v: &GrassmannPoint) -> Result<bool> {
    check_same(u, v)?;
    if u.space.m != u.space.n {
        return Err(Error::Precondition(format!(
            "complementarity needs m = n, got m = {}, n = {}",
            u.space.m, u.space.n
        )));
    }
    Ok(sum_dimension(u, v) == 2 * u.space.n)
}
