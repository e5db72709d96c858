//! Exact counters for the section model.
//!
//! A class with invariants `(a, a', k)` corresponds to pairs of
//! basepoint-free sections `s = (u, v)` of degree `a` and `t = (w, z)` of
//! degree `a'` whose multiplicity profile is `k`. Two counters are provided:
//! a naive one that tabulates every pair, and an accelerated one that only
//! enumerates `s` and counts the matching `t` by inclusion-exclusion over
//! divisors and linear algebra over `F_q`. They are tested against each
//! other.

mod accelerated;
mod config_cover;
mod counting;
mod divisor;
mod linalg;
mod naive;
mod raw;

pub use config_cover::{count_config_cover, subdivisor_count};
pub use counting::{
    count_morphisms, count_n_exact, count_sections, dropping_rank, profile_census, section_data, CountRequest, CountResult,
    Mode, ProfileCensus, DEFAULT_BUDGET,
};
