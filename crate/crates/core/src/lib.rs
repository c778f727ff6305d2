//! Exact-arithmetic engine for finite-dimensional nonassociative algebras
//! given by structure constants.
//!
//! The crate computes δ-derivation spaces, centroids, local and 2-local
//! δ-derivation decisions, biderivation spaces and conservativity witnesses,
//! and builds Kantor's algebra `W(n)` of all multiplications on an
//! `n`-dimensional space together with its commutative and trace-zero parts.
//! All arithmetic is over ℚ with no rounding.

pub mod algebra;
pub mod biderivations;
pub mod bilinear;
pub mod claims;
pub mod derivations;
pub mod exactnum;
pub mod kantor;
pub mod random;
pub mod reference;

pub use algebra::{builtin, Algebra, AlgebraError, BUILTIN_NAMES};
pub use bilinear::BilinearMap;
pub use exactnum::{RatMatrix, Rational};
