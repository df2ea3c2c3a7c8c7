//! Permutative nonnegative matrices with a prescribed spectrum.
//!
//! A permutative matrix is one in which every row is a permutation of the
//! first row. This crate constructs permutative (and circulant, and
//! block-permutative) nonnegative matrices realizing a prescribed real or
//! complex spectrum, decides which sufficient condition applies, and
//! certifies every output against the target characteristic polynomial
//! with an independent verifier — no external eigensolver involved.
//!
//! The pieces:
//!
//! * [`spectrum`] — spectrum parsing, classification (Suleimanova-type
//!   real/complex lists), conjugate-pair ordering, and partition search.
//! * [`perturb`] — the rank-one and rank-r spectral updates (Brauer,
//!   Rado, and the symmetric variant) the constructions are built on.
//! * [`construct`] — closed-form realizers: the Suleimanova construction,
//!   the constant-diagonal mean pattern, symmetric 3×3 patterns, block
//!   compositions, and direct sums.
//! * [`circulant`] — circulant realizations via the inverse DFT and the
//!   closed-form first-row coefficients.
//! * [`decide`] — realizability checks, the diagonal-constrained 3×3
//!   feasibility conditions with an independent search oracle, the
//!   36-pattern brute force, and the strategy dispatcher.
//! * [`verify`] — certification: nonnegativity, permutativity, row sums,
//!   symmetry, circulant structure, and characteristic-polynomial
//!   matching (exact on rational inputs).
//! * [`report`] — deterministic JSON input/output.
//!
//! Golden constructions from the source material are reproduced bit-exactly
//! in rational arithmetic; see the acceptance test suite.

pub mod circulant;
pub mod construct;
pub mod decide;
pub mod error;
pub mod matrix;
pub mod perturb;
pub mod report;
pub mod scalar;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{AnyMatrix, Matrix};
pub use scalar::{Cx, Rat, Scalar};
pub use spectrum::{AnySpectrum, Spectrum};
