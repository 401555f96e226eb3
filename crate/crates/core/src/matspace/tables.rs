//! Index-level lookup structures for exhaustive work over a whole space.

use rayon::prelude::*;

use crate::error::Result;

use super::{Matrix, SpaceSpec};

/// Largest space a [`DisGraph`] is built for by default; the graph stores
/// `size²` bits.
pub const DEFAULT_GRAPH_BUDGET: u64 = 10_000;

/// Digits and ranks of every matrix in a space, addressed by matrix index.
pub struct SpaceTables {
    space: SpaceSpec,
    size: usize,
    digits: Vec<u8>,
    ranks: Vec<u8>,
    powers: Vec<usize>,
}

impl SpaceTables {
    pub fn new(space: &SpaceSpec, budget: u64) -> Result<Self> {
        let size = space.check_budget(budget)? as usize;
        let entries = space.entries();
        let q = space.field.q() as usize;
        let powers: Vec<usize> = (0..entries).map(|e| q.pow(e as u32)).collect();
        let mut digits = vec![0u8; size * entries];
        for (i, chunk) in digits.chunks_mut(entries.max(1)).enumerate().take(size) {
            let mut rest = i;
            for d in chunk.iter_mut().take(entries) {
                *d = (rest % q) as u8;
                rest /= q;
            }
        }
        let ranks = (0..size)
            .into_par_iter()
            .map(|i| {
                let data = digits[i * entries..(i + 1) * entries].to_vec();
                Matrix::from_entries(&space.field, space.m, space.n, data)
                    .unwrap()
                    .rank() as u8
            })
            .collect();
        Ok(Self {
            space: space.clone(),
            size,
            digits,
            ranks,
            powers,
        })
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn matrix(&self, index: usize) -> Matrix {
        let e = self.space.entries();
        let data = self.digits[index * e..(index + 1) * e].to_vec();
        Matrix::from_entries(&self.space.field, self.space.m, self.space.n, data).unwrap()
    }

    #[inline]
    pub fn rank_of(&self, index: usize) -> usize {
        self.ranks[index] as usize
    }

    /// Index of `matrix(a) − matrix(b)`.
    #[inline]
    pub fn diff(&self, a: usize, b: usize) -> usize {
        let e = self.space.entries();
        let f = &self.space.field;
        let da = &self.digits[a * e..(a + 1) * e];
        let db = &self.digits[b * e..(b + 1) * e];
        da.iter()
            .zip(db)
            .zip(&self.powers)
            .map(|((&x, &y), &pw)| f.sub(x, y) as usize * pw)
            .sum()
    }

    #[inline]
    pub fn is_dis(&self, a: usize, b: usize) -> bool {
        self.rank_of(self.diff(a, b)) == self.space.n
    }

    #[inline]
    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.rank_of(self.diff(a, b)) == 1
    }
}

/// The `dis` relation of a whole space as one bitset row per matrix.
///
/// `dis` is symmetric, so row `R` lists every `X` with `X dis R`.
pub struct DisGraph {
    tables: SpaceTables,
    words: usize,
    rows: Vec<u64>,
}

impl DisGraph {
    pub fn new(space: &SpaceSpec, budget: u64) -> Result<Self> {
        let tables = SpaceTables::new(space, budget)?;
        let size = tables.size();
        let words = size.div_ceil(64);
        let mut rows = vec![0u64; size * words];
        rows.par_chunks_mut(words).enumerate().for_each(|(a, row)| {
            for b in 0..size {
                if tables.is_dis(a, b) {
                    row[b / 64] |= 1 << (b % 64);
                }
            }
        });
        Ok(Self {
            tables,
            words,
            rows,
        })
    }

    pub fn tables(&self) -> &SpaceTables {
        &self.tables
    }

    pub fn size(&self) -> usize {
        self.tables.size()
    }

    fn row(&self, a: usize) -> &[u64] {
        &self.rows[a * self.words..(a + 1) * self.words]
    }

    #[inline]
    pub fn is_dis(&self, a: usize, b: usize) -> bool {
        self.row(a)[b / 64] >> (b % 64) & 1 == 1
    }

    /// First `X` (in index order) with `X dis R` but neither `X dis A` nor `X dis B`.
    pub fn counterexample(&self, r: usize, a: usize, b: usize) -> Option<usize> {
        let (rr, ra, rb) = (self.row(r), self.row(a), self.row(b));
        (0..self.words).find_map(|w| {
            let bad = rr[w] & !ra[w] & !rb[w];
            (bad != 0).then(|| w * 64 + bad.trailing_zeros() as usize)
        })
    }

    /// First `R ∉ {A, B}` admitting no counterexample, if any.
    pub fn first_witness(&self, a: usize, b: usize) -> Option<usize> {
        (0..self.size()).find(|&r| r != a && r != b && self.counterexample(r, a, b).is_none())
    }
}
