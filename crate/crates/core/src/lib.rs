//! Exact counting of rational curves on split del Pezzo surfaces over finite
//! fields, together with the Euler-product predictions they are compared to.
//!
//! The surface is always presented as a blow-up of `P^1 x P^1` at `r` rational
//! points. Curves of a fixed numerical class are counted through the section
//! model: pairs of nowhere-vanishing coordinate pairs of binary forms with
//! prescribed contact at the blow-up centers.
//!
//! Modules, bottom-up:
//!
//! - [`gf`]: finite fields, univariate polynomials, closed points of `P^1`.
//! - [`lattice`]: the Picard lattice, curve classes, cones and the stability
//!   function `ell`.
//! - [`forms`]: binary forms, surface models, multiplicity profiles.
//! - [`enumerate`]: exact counters (naive and accelerated).
//! - [`sieve`]: truncated Euler products, virtual counts and the Tamagawa
//!   number.
//! - [`exact`]: the exact rational type shared by all of the above.

pub mod enumerate;
pub mod error;
pub mod exact;
pub mod forms;
pub mod gf;
pub mod lattice;
pub mod sieve;

pub use error::{Error, Result};
pub use exact::Frac;
