//! Matrix geometry over small Galois fields.
//!
//! The crate is organised bottom-up:
//!
//! - [`gf`]: GF(q) arithmetic for `q ∈ {2, 3, 4, 5, 7, 8, 9}` and its Frobenius automorphisms.
//! - [`matspace`]: dense matrices, rank, the adjacency and `dis` relations,
//!   rank normal form and exhaustive enumeration.
//! - [`witness`]: the constructive characterization of adjacency through `dis`:
//!   witness matrices for adjacent pairs and separating matrices for the rest.
//! - [`preserver`]: maps `A ↦ T·A_σ·S + R` (optionally transposed), tabulated
//!   bijections, `dis`-preservation certificates and recovery of the standard form.
//! - [`grassmann`]: `m`-dimensional subspaces of `F^(m+n)` and their finite-point
//!   dictionary with `M_{m,n}`.

pub mod error;
pub mod gf;
pub mod grassmann;
pub mod matspace;
pub mod preserver;
pub mod witness;

pub use error::{DecomposeError, Error, Result};
pub use gf::{FieldAutomorphism, FieldElem, FieldSpec};
pub use matspace::{Matrix, SpaceSpec};
