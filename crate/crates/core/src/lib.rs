//! Numerical sewing maps on dyadic grids and geometric rough-path lifts.
//!
//! The crate is organised around a small chain of ideas:
//!
//! * [`dyadic_grid`] — dyadic grids on `[0, T]`, grid-sampled functions of one
//!   and two time variables, the coboundary operators `delta1`/`delta2` and
//!   the Hölder-type norms measuring them.
//! * [`sewing`] — given a two-parameter germ `A` whose coherence `delta2(A)`
//!   is small, produce a one-parameter function `I` whose increments track
//!   `A`.  For exponents above 1 this is the classical Riemann-sum
//!   construction with a unique answer; at and below 1 it is a recursive
//!   midpoint construction on dyadics, linear in `A` and continuous with
//!   explicit constants.
//! * [`shuffle`] — the truncated shuffle Hopf algebra over `{1..d}`: shuffle
//!   products, deconcatenation coproducts, Lyndon words and the decomposition
//!   of arbitrary words into shuffle polynomials in Lyndon words, all in
//!   exact rational arithmetic.
//! * [`rough_path`] — grid-sampled truncated characters on word algebras:
//!   Chen-defect evaluation, the lift of a family of Hölder components to a
//!   full rough path, the inverse projection, unique extension above the
//!   natural truncation level, and the induced group action.
//! * [`paths`] — deterministic synthetic inputs (Hölder path generators and
//!   named germs) so every experiment is self-contained and reproducible.

pub mod dyadic_grid;
pub mod error;
pub mod paths;
pub mod rough_path;
pub mod sewing;
pub mod shuffle;

pub use error::{Error, Result};
