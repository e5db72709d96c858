use malachite::base::num::arithmetic::traits::Pow;
use malachite::Integer;
use rayon::prelude::*;

use crate::exact::{Frac, PRat};
use crate::gf::closed_points_count;
use crate::{Error, Result};

use super::series::{characteristic, TruncSeries};

/// Cap on the estimated size, in bits, of an Euler product numerator.
pub const MAX_PRODUCT_BITS: f64 = (1u64 << 26) as f64;

fn check_r(r: usize) -> Result<()> {
    if !(1..=8).contains(&r) {
        return Err(Error::invalid(format!("r = {r} outside 1..=8")));
    }
    Ok(())
}

fn qpow(q: u64, e: u64) -> Integer {
    Integer::from(q).pow(e)
}

// q^(-k) as a p-power denominator
fn inv_qpow(q: u64, k: u64) -> Result<PRat> {
    let (p, n) = characteristic(q)?;
    Ok(PRat::new(Integer::from(1), p, k * n as u64))
}

fn check_size(q: u64, d: u64, per_point: u64) -> Result<()> {
    let mut bits = 0f64;
    for m in 1..=d {
        let pi = closed_points_count(q, m).map_err(|_| Error::Overflow("closed point count"))? as f64;
        bits += pi * (per_point * m) as f64 * (q as f64).log2();
        if bits > MAX_PRODUCT_BITS {
            return Err(Error::BudgetExceeded { work: bits as u128, budget: MAX_PRODUCT_BITS as u128 });
        }
    }
    Ok(())
}

// constant part 1 - (r+2) x^2 + 2r x^3 - (r-1) x^4 at x = q^-m
fn local_constant(r: usize, q: u64, m: u64) -> Result<PRat> {
    let (p, n) = characteristic(q)?;
    let r = r as i64;
    let num = qpow(q, 4 * m) - Integer::from(r + 2) * qpow(q, 2 * m) + Integer::from(2 * r) * qpow(q, m)
        - Integer::from(r - 1);
    Ok(PRat::new(num, p, 4 * m * n as u64))
}

/// Local factor of the virtual height zeta function at a closed point of
/// degree `m`, truncated at `caps`.
pub fn local_factor(m: u64, r: usize, q: u64, caps: &[u32]) -> Result<TruncSeries> {
    check_r(r)?;
    if m == 0 {
        return Err(Error::invalid("point degree must be positive"));
    }
    if caps.len() != r {
        return Err(Error::DegreeMismatch(r, caps.len()));
    }
    let (p, n) = characteristic(q)?;
    let mut s = TruncSeries::constant(q, caps, local_constant(r, q, m)?)?;
    // (q t)^(md) x^(2d) (1 - 2x + 2x^3 - x^4) = t^(md) q^(-md) (1 - 2x + 2x^3 - x^4)
    let tail = qpow(q, 4 * m) - Integer::from(2) * qpow(q, 3 * m) + Integer::from(2) * qpow(q, m) - Integer::from(1);
    let tail = PRat::new(tail, p, 4 * m * n as u64);
    for i in 0..r {
        let mut d = 1u64;
        while m * d <= caps[i] as u64 {
            let mut k = vec![0u32; r];
            k[i] = (m * d) as u32;
            *s.raw_mut(&k).expect("within caps") = tail.mul(&inv_qpow(q, m * d)?);
            d += 1;
        }
    }
    Ok(s)
}

/// Upper bound on the relative error from dropping every point of degree
/// greater than `d` in a product of factors lying in `[1 - c x^2, 1]`.
pub fn relative_tail_bound(c: u64, q: u64, d: u64) -> Frac {
    let q = q as i64;
    let c = Frac::from(c);
    if d == 0 {
        return c * (Frac::from_ratio(q + 1, q * q) + Frac::from_ratio(1, 2 * q * (q - 1)));
    }
    let qd = Frac::from_ratio(1, q).pow(d);
    c * qd * Frac::from_ratio(1, (d as i64 + 1) * (q - 1))
}

pub(crate) fn product_tree(mut xs: Vec<PRat>, p: u64) -> PRat {
    if xs.is_empty() {
        return PRat::one(p);
    }
    while xs.len() > 1 {
        xs = xs
            .par_chunks(2)
            .map(|c| if c.len() == 2 { c[0].mul(&c[1]) } else { c[0].clone() })
            .collect();
    }
    xs.pop().expect("nonempty")
}

/// Truncated Euler product together with its certified relative error.
#[derive(Clone, Debug)]
pub struct VirtualZeta {
    pub series: TruncSeries,
    pub d: u64,
    /// Every coefficient `v` of the full product lies between `v` and
    /// `v (1 - relative_bound)`.
    pub relative_bound: Frac,
}

/// The virtual height zeta function, multiplied over closed points of
/// degree at most `d`.
pub fn virtual_zeta(r: usize, q: u64, caps: &[u32], d: u64) -> Result<VirtualZeta> {
    check_r(r)?;
    if caps.len() != r {
        return Err(Error::DegreeMismatch(r, caps.len()));
    }
    let kmax = caps.iter().copied().max().unwrap_or(0) as u64;
    if d < kmax {
        return Err(Error::invalid(format!("cutoff {d} below the largest cap {kmax}")));
    }
    check_size(q, d, 4)?;
    let (p, _) = characteristic(q)?;
    let mut series = TruncSeries::one(q, caps)?;
    for m in 1..=kmax {
        let pi = closed_points_count(q, m)?;
        series = series.mul(&local_factor(m, r, q, caps)?.pow(pi))?;
    }
    let scalars: Vec<PRat> = (kmax + 1..=d)
        .into_par_iter()
        .map(|m| -> Result<PRat> { Ok(local_constant(r, q, m)?.pow(closed_points_count(q, m)?)) })
        .collect::<Result<_>>()?;
    let series = series.scale(&product_tree(scalars, p));
    Ok(VirtualZeta { series, d, relative_bound: relative_tail_bound(r as u64 + 2, q, d) })
}

/// `q^(-|k|) [t^k] Z`.
pub fn s_of_k(z: &TruncSeries, k: &[u32]) -> Result<Frac> {
    let c = z.coeff(k)?;
    let total: u64 = k.iter().map(|&x| x as u64).sum();
    Ok(c * Frac::from_ratio(1, z.q() as i64).pow(total))
}

/// Which side of the torsor the Euler-product prediction counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// The prediction counts section pairs; morphisms divide by `(q-1)^2`.
    Torsor,
    /// The prediction counts morphisms directly.
    Direct,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Torsor => "torsor",
            Convention::Direct => "direct",
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "torsor" => Ok(Convention::Torsor),
            "direct" => Ok(Convention::Direct),
            _ => Err(Error::invalid(format!("unknown convention {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualCount {
    pub sections: Frac,
    pub morphisms: Frac,
}

/// Predicted counts `q^(2a + 2a' + 4) S(k)` for the class `(a, a', k)`.
pub fn virtual_count(a: u64, a_prime: u64, k: &[u32], z: &TruncSeries, conv: Convention) -> Result<VirtualCount> {
    let main = s_of_k(z, k)? * Frac::from(z.q()).pow(2 * a + 2 * a_prime + 4);
    let unit = Frac::from(z.q() - 1).pow(2);
    Ok(match conv {
        Convention::Torsor => VirtualCount { morphisms: &main / &unit, sections: main },
        Convention::Direct => VirtualCount { sections: &main * &unit, morphisms: main },
    })
}

// numerator of (1 - x)^n (1 + n x + x^2) at x = q^-m, over q^(m (n + 2))
fn tau_factor(r: usize, q: u64, m: u64) -> Result<PRat> {
    let (p, e) = characteristic(q)?;
    let n = r as u64 + 2;
    let qm = qpow(q, m);
    let num = (&qm - Integer::from(1)).pow(n) * (qpow(q, 2 * m) + Integer::from(n) * &qm + Integer::from(1));
    Ok(PRat::new(num, p, m * (n + 2) * e as u64))
}

#[derive(Clone, Debug)]
pub struct TamagawaResult {
    pub value: Frac,
    pub d: u64,
    /// The full product lies between `value (1 - relative_bound)` and `value`.
    pub relative_bound: Frac,
    /// Bound on `|log(full / value)|`; absent when `relative_bound >= 1`.
    pub log_bound: Option<Frac>,
}

/// The Tamagawa number of the anticanonical height, with the Euler product
/// cut at points of degree `d`.
pub fn tamagawa(r: usize, q: u64, d: u64) -> Result<TamagawaResult> {
    check_r(r)?;
    check_size(q, d, r as u64 + 4)?;
    let (p, _) = characteristic(q)?;
    let factors: Vec<PRat> = (1..=d)
        .into_par_iter()
        .map(|m| -> Result<PRat> { Ok(tau_factor(r, q, m)?.pow(closed_points_count(q, m)?)) })
        .collect::<Result<_>>()?;
    let prod = product_tree(factors, p).to_frac();
    let n = r as u64 + 2;
    let q_i = q as i64;
    let value = prod * Frac::from(q).pow(2) * Frac::from_ratio(q_i, q_i - 1).pow(n);
    let n2 = n * n;
    let relative_bound = relative_tail_bound(n2, q, d);
    let log_bound = (relative_bound < Frac::one())
        .then(|| &relative_bound / &(Frac::one() - &relative_bound));
    Ok(TamagawaResult { value, d, relative_bound, log_bound })
}

/// `(1 - 1/q)^(-r)` times the same truncated product as [`tamagawa`].
pub fn c_constant(r: usize, q: u64, d: u64) -> Result<Frac> {
    check_r(r)?;
    check_size(q, d, r as u64 + 4)?;
    let (p, _) = characteristic(q)?;
    let mut acc = PRat::one(p);
    for m in 1..=d {
        acc = acc.mul(&tau_factor(r, q, m)?.pow(closed_points_count(q, m)?));
    }
    let q_i = q as i64;
    Ok(acc.to_frac() * Frac::from_ratio(q_i, q_i - 1).pow(r as u64))
}

#[derive(Clone, Debug)]
pub struct LimitReport {
    pub r: usize,
    pub q: u64,
    pub n_max: u32,
    pub d: u64,
    pub c: Frac,
    /// `[t^(n,...,n)] Z` for `n = 1..=n_max`.
    pub coefficients: Vec<Frac>,
    /// `|coefficient - c|`
    pub gaps: Vec<Frac>,
    pub relative_bound: Frac,
    pub pass: bool,
}

/// Compares the diagonal coefficients of the virtual zeta function with
/// their predicted limit.
pub fn limit_check(r: usize, q: u64, n_max: u32, d: u64) -> Result<LimitReport> {
    if n_max < 2 {
        return Err(Error::invalid("n_max must be at least 2"));
    }
    let caps = vec![n_max; r];
    let z = virtual_zeta(r, q, &caps, d)?;
    let c = c_constant(r, q, d)?;
    let coefficients: Vec<Frac> =
        (1..=n_max).map(|n| z.series.coeff(&vec![n; r])).collect::<Result<_>>()?;
    let gaps: Vec<Frac> = coefficients.iter().map(|v| (v - &c).abs()).collect();
    let pass = gaps.windows(2).all(|w| w[1] < w[0]);
    Ok(LimitReport { r, q, n_max, d, c, coefficients, gaps, relative_bound: z.relative_bound, pass })
}
