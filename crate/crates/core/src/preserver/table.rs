use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::matspace::{Matrix, SpaceSpec};

/// A bijection on `M_{m,n}(GF(q))` stored as the image index of every
/// matrix index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapTable {
    space: SpaceSpec,
    image: Vec<u64>,
}

impl MapTable {
    pub fn new(space: &SpaceSpec, image: Vec<u64>) -> Result<Self> {
        let size = space.size();
        if image.len() as u128 != size {
            return Err(Error::NotAPermutation(format!(
                "expected {size} entries, got {}",
                image.len()
            )));
        }
        let mut seen = vec![false; image.len()];
        for (i, &v) in image.iter().enumerate() {
            let slot = seen.get_mut(v as usize).ok_or_else(|| {
                Error::NotAPermutation(format!("entry {i} maps to out-of-range index {v}"))
            })?;
            if *slot {
                return Err(Error::NotAPermutation(format!("index {v} appears twice")));
            }
            *slot = true;
        }
        Ok(Self {
            space: space.clone(),
            image,
        })
    }

    pub fn identity(space: &SpaceSpec, budget: u64) -> Result<Self> {
        let size = space.check_budget(budget)?;
        Ok(Self {
            space: space.clone(),
            image: (0..size).collect(),
        })
    }

    /// Tabulates `f`; fails unless `f` is a bijection.
    pub fn from_fn<F>(space: &SpaceSpec, budget: u64, f: F) -> Result<Self>
    where
        F: Fn(&Matrix) -> Matrix + Sync,
    {
        let size = space.check_budget(budget)?;
        let image = (0..size)
            .into_par_iter()
            .map(|i| f(&Matrix::from_index(space, i).expect("in range")).index())
            .collect();
        Self::new(space, image)
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn image(&self) -> &[u64] {
        &self.image
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply_index(&self, index: u64) -> u64 {
        self.image[index as usize]
    }

    pub fn apply(&self, a: &Matrix) -> Result<Matrix> {
        self.space.check_contains(a)?;
        Matrix::from_index(&self.space, self.apply_index(a.index()))
    }

    /// Exchanges the images of two matrix indices.
    pub fn swap(&mut self, i: u64, j: u64) {
        self.image.swap(i as usize, j as usize);
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &MapTable) -> Result<MapTable> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch {
                expected: format!("{:?}", self.space),
                found: format!("{:?}", other.space),
            });
        }
        let image = self
            .image
            .iter()
            .map(|&i| other.image[i as usize])
            .collect();
        Ok(Self {
            space: self.space.clone(),
            image,
        })
    }

    /// Table file text: a `q m n` header line followed by one image index per line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {}\n",
            self.space.field.q(),
            self.space.m,
            self.space.n
        );
        for v in &self.image {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty table file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [q, m, n] = fields[..] else {
            return Err(Error::Parse(format!(
                "bad header {header:?}; expected `q m n`"
            )));
        };
        let parse = |t: &str| {
            t.parse::<u64>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        };
        let field = FieldSpec::new(parse(q)? as u32)?;
        let space = SpaceSpec::new(&field, parse(m)? as usize, parse(n)? as usize);
        let image = lines
            .enumerate()
            .map(|(i, l)| {
                l.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("line {}: {l:?}: {e}", i + 2)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&space, image)
    }
}
