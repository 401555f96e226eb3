//! Standard preservers `A ↦ T·A_σ·S + R` (and, for square shapes,
//! `A ↦ T·A_σᵗ·S + R`), their tabulated form, `dis`-preservation
//! certificates, and recovery of the parameters from a table.

mod certify;
mod decompose;
mod perturbation;
mod table;

pub use certify::{certify_dis, Certificate, CertifyMode};
pub use decompose::decompose;
pub use perturbation::{invertible_profile_collisions, rank_one_profile};
pub use table::MapTable;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{FieldAutomorphism, FieldSpec};
use crate::matspace::{Matrix, SpaceSpec};

/// `A ↦ T·A_σ·S + R`, or `A ↦ T·(A_σ)ᵗ·S + R` when `transposed`.
///
/// Always stored in canonical gauge: the first nonzero entry of `T` in
/// row-major order is one. `(cT, c⁻¹S)` and `(T, S)` define the same map,
/// so constructing from either yields equal values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardPreserver {
    t: Matrix,
    s: Matrix,
    r: Matrix,
    sigma: FieldAutomorphism,
    transposed: bool,
}

impl StandardPreserver {
    pub fn new(
        t: Matrix,
        s: Matrix,
        r: Matrix,
        sigma: FieldAutomorphism,
        transposed: bool,
    ) -> Result<Self> {
        let field = r.field().clone();
        let (m, n) = (r.rows(), r.cols());
        SpaceSpec::new(&field, m, m).check_contains(&t)?;
        SpaceSpec::new(&field, n, n).check_contains(&s)?;
        field.check_same(sigma.spec())?;
        if transposed && m != n {
            return Err(Error::Precondition(format!(
                "transposed form requires a square shape, got {m}x{n}"
            )));
        }
        if !t.is_invertible() || !s.is_invertible() {
            return Err(Error::Singular);
        }
        let lead = *t.entries().iter().find(|&&e| e != 0).expect("T invertible");
        let inv = field.inv(lead).expect("nonzero");
        Ok(Self {
            t: t.scale(inv),
            s: s.scale(lead),
            r,
            sigma,
            transposed,
        })
    }

    pub fn identity(space: &SpaceSpec) -> Result<Self> {
        let field = &space.field;
        Self::new(
            Matrix::identity(field, space.m),
            Matrix::identity(field, space.n),
            space.zero(),
            field.identity_automorphism(),
            false,
        )
    }

    pub fn t(&self) -> &Matrix {
        &self.t
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    pub fn r(&self) -> &Matrix {
        &self.r
    }

    pub fn sigma(&self) -> &FieldAutomorphism {
        &self.sigma
    }

    pub fn transposed(&self) -> bool {
        self.transposed
    }

    pub fn space(&self) -> SpaceSpec {
        self.r.space()
    }

    pub fn field(&self) -> &FieldSpec {
        self.r.field()
    }

    pub fn apply(&self, a: &Matrix) -> Result<Matrix> {
        self.space().check_contains(a)?;
        Ok(self.apply_unchecked(a))
    }

    pub(crate) fn apply_unchecked(&self, a: &Matrix) -> Matrix {
        let mut twisted = a.apply_automorphism(&self.sigma);
        if self.transposed {
            twisted = twisted.transpose();
        }
        &(&(&self.t * &twisted) * &self.s) + &self.r
    }

    /// Tabulates the map over the whole space.
    pub fn to_table(&self, budget: u64) -> Result<MapTable> {
        MapTable::from_fn(&self.space(), budget, |a| self.apply_unchecked(a))
    }

    /// `self ∘ other`, i.e. `A ↦ self(other(A))`.
    pub fn compose(&self, other: &StandardPreserver) -> Result<StandardPreserver> {
        if self.space() != other.space() {
            return Err(Error::DimensionMismatch {
                expected: format!("{:?}", self.space()),
                found: format!("{:?}", other.space()),
            });
        }
        let sigma = &self.sigma;
        let tg = other.t.apply_automorphism(sigma);
        let sg = other.s.apply_automorphism(sigma);
        let rg = other.r.apply_automorphism(sigma);
        let composite_sigma = sigma.compose(&other.sigma)?;
        let transposed = self.transposed ^ other.transposed;
        // self(Y) with Y = Tg·M·Sg + Rg, M = A_{σf σg} (transposed if other is)
        let (t, s, r_inner) = if self.transposed {
            (
                &self.t * &sg.transpose(),
                &tg.transpose() * &self.s,
                rg.transpose(),
            )
        } else {
            (&self.t * &tg, &sg * &self.s, rg)
        };
        let r = &(&(&self.t * &r_inner) * &self.s) + &self.r;
        Self::new(t, s, r, composite_sigma, transposed)
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, field: &FieldSpec, rows: usize, cols: usize) -> Matrix {
    let q = field.q() as u8;
    let data = (0..rows * cols).map(|_| rng.gen_range(0..q)).collect();
    Matrix::from_entries(field, rows, cols, data).expect("entries in range")
}

fn random_invertible(rng: &mut ChaCha8Rng, field: &FieldSpec, n: usize) -> Matrix {
    loop {
        let candidate = random_matrix(rng, field, n, n);
        if candidate.is_invertible() {
            return candidate;
        }
    }
}

/// Draws `T`, `S` uniformly among invertible matrices, `R` uniformly, `σ`
/// uniformly among the Frobenius powers and, when allowed on a square
/// shape, the transpose flag uniformly.
pub fn random_preserver(
    space: &SpaceSpec,
    seed: u64,
    allow_transpose: bool,
) -> Result<StandardPreserver> {
    space.check_hypotheses()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = &space.field;
    let t = random_invertible(&mut rng, field, space.m);
    let s = random_invertible(&mut rng, field, space.n);
    let r = random_matrix(&mut rng, field, space.m, space.n);
    let sigma = field.automorphism(rng.gen_range(0..field.k()))?;
    let transposed = allow_transpose && space.m == space.n && rng.gen_bool(0.5);
    StandardPreserver::new(t, s, r, sigma, transposed)
}
