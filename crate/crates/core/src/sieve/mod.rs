//! The predicted side: truncated Euler products for the virtual height zeta
//! function, virtual counts, the Tamagawa number, and the limit constant.
//!
//! Every coefficient is an exact rational whose denominator is a power of
//! the characteristic. Points of degree above the largest cap only scale the
//! whole series, so they are folded into a single scalar.

mod euler;
mod series;

pub use euler::{
    c_constant, limit_check, local_factor, relative_tail_bound, s_of_k, tamagawa, virtual_count, virtual_zeta,
    Convention, LimitReport, TamagawaResult, VirtualCount, VirtualZeta, MAX_PRODUCT_BITS,
};
pub use series::{TruncSeries, MAX_TERMS};
