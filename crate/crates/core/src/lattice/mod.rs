//! The Picard lattice of `P^1 x P^1` blown up at `r` points.
//!
//! Classes are written in the basis `F, F', E_1 .. E_r` where `F` and `F'`
//! are the pullbacks of the two rulings and `E_i` the exceptional curves.

mod admissible;
mod blowdown;
mod class;
mod cone;
mod search;

pub use admissible::{admissibility, Admissibility, C1, C2, C3};
pub use blowdown::{blow_down_data, ell, BlowDownDatum};
pub use class::{DivisorClass, Invariants};
pub use cone::{alpha_estimate, enumerate_in_cone, AlphaEstimate, ConeSpec};
pub use search::{classes_with, conic_classes, is_nef, minus_one_classes};
