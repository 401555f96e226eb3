use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gf::{FieldAutomorphism, FieldSpec};

use super::SpaceSpec;

/// A dense `rows × cols` matrix over a small Galois field, row-major.
///
/// Entries are element indices of [`Matrix::field`]. Column vectors are
/// `len × 1` matrices. The arithmetic operators on `&Matrix` panic on shape
/// or field mismatch; the `try_*` methods report it instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut out = Self::zeros(field, n, n);
        for i in 0..n {
            out.data[i * n + i] = 1;
        }
        out
    }

    /// The matrix unit with a single one at `(row, col)`, zero-based.
    pub fn unit(field: &FieldSpec, rows: usize, cols: usize, row: usize, col: usize) -> Self {
        let mut out = Self::zeros(field, rows, cols);
        out.data[row * cols + col] = 1;
        out
    }

    /// Builds a matrix from row-major element indices.
    pub fn from_entries(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        data: Vec<u8>,
    ) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", data.len()),
            });
        }
        if let Some(&bad) = data.iter().find(|&&e| e as u32 >= field.q()) {
            return Err(Error::ElementOutOfRange {
                index: bad as u32,
                q: field.q(),
            });
        }
        Ok(Self {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Convenience constructor from nested rows; panics on ragged or out-of-range input.
    pub fn from_rows(field: &FieldSpec, rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::from_entries(field, rows.len(), cols, data).expect("valid entries")
    }

    pub fn column_vector(field: &FieldSpec, entries: &[u8]) -> Self {
        Self::from_entries(field, entries.len(), 1, entries.to_vec()).expect("valid entries")
    }

    /// Decodes a matrix index: entry `(r, c)` is digit `r·cols + c` in base `q`.
    pub fn from_index(space: &SpaceSpec, index: u64) -> Result<Self> {
        let q = space.field.q() as u64;
        let mut rest = index;
        let mut data = Vec::with_capacity(space.entries());
        for _ in 0..space.entries() {
            data.push((rest % q) as u8);
            rest /= q;
        }
        if rest != 0 {
            return Err(Error::Precondition(format!(
                "matrix index {index} out of range for {}x{} over GF({q})",
                space.m, space.n
            )));
        }
        Ok(Self {
            field: space.field.clone(),
            rows: space.m,
            cols: space.n,
            data,
        })
    }

    pub fn index(&self) -> u64 {
        let q = self.field.q() as u64;
        self.data
            .iter()
            .rev()
            .fold(0u64, |acc, &e| acc * q + e as u64)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn space(&self) -> SpaceSpec {
        SpaceSpec {
            field: self.field.clone(),
            m: self.rows,
            n: self.cols,
        }
    }

    pub fn entries(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: u8) {
        debug_assert!((value as u32) < self.field.q());
        self.data[row * self.cols + col] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    pub fn column(&self, col: usize) -> Matrix {
        let data = (0..self.rows).map(|r| self.get(r, col)).collect();
        Self {
            field: self.field.clone(),
            rows: self.rows,
            cols: 1,
            data,
        }
    }

    /// Row `row` as a column vector.
    pub fn row_vector(&self, row: usize) -> Matrix {
        let data = self.data[row * self.cols..(row + 1) * self.cols].to_vec();
        Self {
            field: self.field.clone(),
            rows: self.cols,
            cols: 1,
            data,
        }
    }

    /// The `rows × cols` block whose top-left corner is `(row, col)`.
    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Matrix {
        assert!(
            row + rows <= self.rows && col + cols <= self.cols,
            "block out of range"
        );
        let mut out = Self::zeros(&self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.data[r * cols + c] = self.get(row + r, col + c);
            }
        }
        out
    }

    /// `[self other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        assert_eq!(self.field, other.field, "hstack field mismatch");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            data.extend_from_slice(&other.data[r * other.cols..(r + 1) * other.cols]);
        }
        Self {
            field: self.field.clone(),
            rows: self.rows,
            cols,
            data,
        }
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        assert_eq!(self.field, other.field, "vstack field mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix whose columns are the given column vectors.
    pub fn from_columns(field: &FieldSpec, rows: usize, columns: &[Matrix]) -> Matrix {
        let mut out = Self::zeros(field, rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            assert_eq!((v.rows, v.cols), (rows, 1), "column shape");
            for r in 0..rows {
                out.data[r * columns.len() + c] = v.data[r];
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    pub fn scale(&self, c: u8) -> Matrix {
        let data = self.data.iter().map(|&e| self.field.mul(c, e)).collect();
        Self {
            data,
            ..self.clone()
        }
    }

    /// `A_σ`: the automorphism applied entrywise.
    pub fn apply_automorphism(&self, sigma: &FieldAutomorphism) -> Matrix {
        assert_eq!(sigma.spec(), &self.field, "automorphism field mismatch");
        let data = self.data.iter().map(|&e| sigma.apply_index(e)).collect();
        Self {
            data,
            ..self.clone()
        }
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        self.field.check_same(&other.field)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(Self {
            data,
            ..self.clone()
        })
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        Ok(Self {
            data,
            ..self.clone()
        })
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.field.check_same(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", other.rows),
            });
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, c)));
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        eliminate(
            &self.field,
            &mut work,
            self.rows,
            self.cols,
            self.cols,
            false,
        )
        .len()
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        self.rref_limited(self.cols)
    }

    /// RREF where pivots are only sought in the first `pivot_limit` columns;
    /// the remaining columns ride along (augmented-matrix style).
    pub(crate) fn rref_limited(&self, pivot_limit: usize) -> (Matrix, Vec<usize>) {
        let mut work = self.data.clone();
        let pivots = eliminate(
            &self.field,
            &mut work,
            self.rows,
            self.cols,
            pivot_limit,
            true,
        );
        (
            Self {
                data: work,
                ..self.clone()
            },
            pivots,
        )
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: "square matrix".into(),
                found: format!("{}x{}", self.rows, self.cols),
            });
        }
        let n = self.rows;
        let (reduced, pivots) = self.hstack(&Self::identity(&self.field, n)).rref_limited(n);
        if pivots.len() < n {
            return Err(Error::Singular);
        }
        Ok(reduced.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// One-line text form `q m n e₀₀ e₀₁ …`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}", self.field.q(), self.rows, self.cols);
        for e in &self.data {
            out.push(' ');
            out.push_str(&e.to_string());
        }
        out
    }

    pub fn parse_text(line: &str) -> Result<Matrix> {
        let nums = line
            .split_whitespace()
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if nums.len() < 3 {
            return Err(Error::Parse("expected `q m n` header".into()));
        }
        let field = FieldSpec::new(nums[0] as u32)?;
        let (rows, cols) = (nums[1] as usize, nums[2] as usize);
        let entries = nums[3..]
            .iter()
            .map(|&e| u8::try_from(e).map_err(|_| Error::Parse(format!("entry {e} too large"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(&field, rows, cols, entries)
    }
}

/// Gaussian elimination in place with first-nonzero pivoting. Returns the
/// pivot columns. With `reduce` the result is in RREF; otherwise only the
/// entries below each pivot are cleared.
fn eliminate(
    f: &FieldSpec,
    data: &mut [u8],
    rows: usize,
    cols: usize,
    pivot_limit: usize,
    reduce: bool,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_limit {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(data[r * cols + c]).expect("nonzero pivot");
        if reduce {
            for j in c..cols {
                data[r * cols + j] = f.mul(inv, data[r * cols + j]);
            }
        }
        let start = if reduce { 0 } else { r + 1 };
        for i in start..rows {
            if i == r {
                continue;
            }
            let lead = data[i * cols + c];
            if lead == 0 {
                continue;
            }
            let factor = if reduce { lead } else { f.mul(lead, inv) };
            for j in c..cols {
                let v = f.mul(factor, data[r * cols + j]);
                data[i * cols + j] = f.sub(data[i * cols + j], v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix addition")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).expect("matrix subtraction")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        let data = self.data.iter().map(|&e| self.field.neg(e)).collect();
        Matrix {
            data,
            ..self.clone()
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})[", self.field.q())?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
