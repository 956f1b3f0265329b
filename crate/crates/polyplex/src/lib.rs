//! Exact-arithmetic analysis of multidimensional (0,1)-matrices.
//!
//! A d-dimensional matrix of order n is a 0/1 array indexed by {0,..,n-1}^d.
//! Everything here revolves around two exactly-solved linear programs over such
//! a matrix: the heaviest fractional system of entries whose hyperplane sums
//! stay at most 1 (the optimal polyplex), and the lightest nonnegative weighting
//! of hyperplanes covering every unit entry (the optimal hyperplane cover).
//! On top of the pair sit thresholdness tests, extremality tests, enumeration
//! up to equivalence, and the special theory of order-2 matrices viewed as
//! selfdual Boolean functions.
//!
//! All arithmetic is in arbitrary-precision rationals; no floats anywhere.

pub mod cli;
pub mod diversity;
pub mod duality;
pub mod equivalence;
pub mod error;
pub mod io;
pub mod lp;
pub mod matrix;
pub mod planar;
pub mod rat;
pub mod selfdual2;
pub mod threshold;

pub use error::Error;
pub use rat::Rat;

/// Default cap on enumeration and equivalence-search work, counted in
/// candidates examined. Commands refuse to run past it unless raised.
pub const DEFAULT_BUDGET: u64 = 1 << 24;
