//! Finite fields `F_q` with `q = p^n`, univariate polynomials over them, and
//! the closed-point census of the projective line.

mod census;
mod field;
mod poly;

pub use census::{closed_points_count, is_prime, mobius, prime_power, zeta_p1_check};
pub use field::{Elem, Field, MAX_Q};
pub use poly::{factor, monic_irreducibles, Poly};
