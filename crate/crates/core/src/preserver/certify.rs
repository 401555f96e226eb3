use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::matspace::{Matrix, SpaceTables};

use super::MapTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertifyMode {
    /// Every ordered pair `A ≠ B`.
    Exhaustive,
    /// `samples` uniformly drawn ordered pairs `A ≠ B`. Only a negative
    /// outcome is conclusive.
    Sampled { samples: u64, seed: u64 },
}

/// Outcome of checking `A dis B ⟺ φ(A) dis φ(B)` over a set of pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub preserving: bool,
    /// First offending pair `(A, B)` in check order.
    pub counterexample: Option<(Matrix, Matrix)>,
    /// Pairs examined up to and including the counterexample, if any.
    pub pairs_checked: u64,
    pub mode: CertifyMode,
}

impl Certificate {
    /// Whether the counterexample, if any, genuinely violates preservation
    /// when recomputed from the matrices themselves.
    pub fn recheck(&self, table: &MapTable) -> bool {
        let Some((a, b)) = &self.counterexample else {
            return self.preserving;
        };
        let (Ok(fa), Ok(fb)) = (table.apply(a), table.apply(b)) else {
            return false;
        };
        let before = crate::matspace::is_dis(a, b).unwrap_or(false);
        let after = crate::matspace::is_dis(&fa, &fb).unwrap_or(false);
        !self.preserving && before != after
    }
}

/// Checks that `table` preserves `dis` in both directions.
///
/// The exhaustive scan walks ordered pairs in lexicographic index order and
/// reports the first violation in that order.
pub fn certify_dis(table: &MapTable, mode: CertifyMode) -> Certificate {
    let space = table.space();
    let tables = SpaceTables::new(space, table.len() as u64).expect("table already materialized");
    let size = tables.size();
    let image = table.image();
    let violates = |a: usize, b: usize| {
        tables.is_dis(a, b) != tables.is_dis(image[a] as usize, image[b] as usize)
    };

    let found = match mode {
        CertifyMode::Exhaustive => (0..size).into_par_iter().find_map_first(|a| {
            (0..size)
                .filter(|&b| b != a)
                .enumerate()
                .find(|&(_, b)| violates(a, b))
                .map(|(k, b)| (a, b, (a * (size - 1) + k + 1) as u64))
        }),
        CertifyMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut hit = None;
            if size > 1 {
                for k in 0..samples {
                    let a = rng.gen_range(0..size);
                    let b = loop {
                        let b = rng.gen_range(0..size);
                        if b != a {
                            break b;
                        }
                    };
                    if violates(a, b) {
                        hit = Some((a, b, k + 1));
                        break;
                    }
                }
            }
            hit
        }
    };

    match found {
        Some((a, b, checked)) => Certificate {
            preserving: false,
            counterexample: Some((tables.matrix(a), tables.matrix(b))),
            pairs_checked: checked,
            mode,
        },
        None => Certificate {
            preserving: true,
            counterexample: None,
            pairs_checked: match mode {
                CertifyMode::Exhaustive => (size * size.saturating_sub(1)) as u64,
                CertifyMode::Sampled { samples, .. } if size > 1 => samples,
                CertifyMode::Sampled { .. } => 0,
            },
            mode,
        },
    }
}
