//! Recursive constant-dimension subspace codes for random linear network coding.
//!
//! The crate is `no_std` (with `alloc`) and covers the pure algebra:
//!
//! - [`field`]: prime fields and extension fields `F_{q^m}` in a polynomial basis.
//! - [`subspace`]: subspaces of `F_q^n` in reduced row echelon form, with sum,
//!   intersection, the subspace distance and projection onto the last coordinates.
//! - [`linearized`]: linearized (q-)polynomials over `F_{q^m}`.
//! - [`kk`]: the lifted rank-metric (Kötter–Kschischang) code with an
//!   interpolation decoder and a brute-force reference decoder.
//! - [`recursive`]: the recursive code `C[l+m, l, k] = K ∪ B`, its cardinality,
//!   the `h` optimizer, enumeration, indexing and the recursive decoder.
//! - [`channel`]: the operator channel (erasures and insertions of dimensions).
//! - [`bounds`]: Gaussian binomials and the Singleton, Wang and Johnson bounds.
//!
//! IO, file formats and the command line live in the `subcodec` crate.
#![no_std]

extern crate alloc;

pub mod bounds;
pub mod channel;
mod error;
pub mod field;
pub mod kk;
pub mod linearized;
pub mod prime;
pub mod recursive;
pub mod subspace;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec, GaloisField, ModulusTable};
pub use kk::{KkCode, KkOutcome};
pub use linearized::LinearizedPoly;
pub use recursive::{Branch, BranchWord, CodeParams, DecodeOutcome, HSchedule, RecursiveCode};
pub use subspace::Subspace;
