use malachite::base::num::arithmetic::traits::Pow;
use malachite::Natural;

use crate::error::{Error, Result};
use crate::exact::Frac;

use super::blowdown::{blow_down_data, ell};
use super::class::DivisorClass;

fn c1() -> Natural {
    Natural::from(C1)
}

/// `C = C_1 = 2^48`.
pub const C1: u64 = 1 << 48;
pub const C2: u64 = 240;
/// `C_3 = 240^4`.
pub const C3: u64 = 240 * 240 * 240 * 240;

/// Comparison of `q` and `alpha` against the constants of the asymptotic
/// theorems.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Admissibility {
    pub q: Natural,
    pub h: i64,
    pub ell: Frac,
    /// `ell / h`
    pub ell_ratio: Frac,
    /// `max_phi I_phi(alpha) / (32 h)`
    pub eps: Frac,
    /// `min(2a - sum k, 2a' - sum k) / 8 - 1/2`
    pub diag_i: Frac,
    /// `q^(ell / h) > C`
    pub ell_flag: bool,
    /// `q^eps > C`
    pub eps_flag: bool,
    /// `q > C_3`
    pub c3_flag: bool,
    pub note: String,
}

// q^(x) > c for rational x, compared as q^num > c^den
fn pow_exceeds(q: &Natural, x: &Frac, c: &Natural) -> Result<bool> {
    if x.signum() <= 0 {
        return Ok(*c < 1u32);
    }
    let num = u64::try_from(x.numer()).map_err(|_| Error::Overflow("admissibility exponent"))?;
    let den = u64::try_from(x.denom()).map_err(|_| Error::Overflow("admissibility exponent"))?;
    if num > 1 << 24 || den > 1 << 24 {
        return Err(Error::Overflow("admissibility exponent"));
    }
    Ok(q.pow(num) > c.pow(den))
}

pub fn admissibility(q: &Natural, alpha: &DivisorClass) -> Result<Admissibility> {
    if alpha.is_zero() {
        return Err(Error::invalid("admissibility of the zero class"));
    }
    let l = ell(alpha)?;
    let h = alpha.height();
    let best_i = blow_down_data(alpha.r())?
        .iter()
        .map(|phi| phi.frak_i(alpha))
        .max()
        .expect("identity datum");
    let eps = Frac::from_ratio(best_i, 32 * h);
    let inv = alpha.invariants();
    let s: i64 = inv.k.iter().sum();
    let m = (2 * inv.a - s).min(2 * inv.a_prime - s);
    let diag_i = Frac::from_ratio(m, 8) - Frac::from_ratio(1, 2);
    let ell_ratio = &l / Frac::from_int(h);
    let c = c1();
    let ell_flag = pow_exceeds(q, &ell_ratio, &c)?;
    let eps_flag = pow_exceeds(q, &eps, &c)?;
    let c3_flag = *q > C3;
    let note = if ell_flag && eps_flag && c3_flag {
        "q is inside the range covered by the asymptotic theorems".to_string()
    } else {
        let mut missing = Vec::new();
        if !ell_flag {
            missing.push("q^(ell/h) <= 2^48");
        }
        if !eps_flag {
            missing.push("q^eps <= 2^48");
        }
        if !c3_flag {
            missing.push("q <= 240^4");
        }
        format!("outside the proven range: {}", missing.join(", "))
    };
    Ok(Admissibility { q: q.clone(), h, ell: l, ell_ratio, eps, diag_i, ell_flag, eps_flag, c3_flag, note })
}
