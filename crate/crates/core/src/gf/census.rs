use malachite::base::num::basic::traits::{One, Zero};
use malachite::Integer;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, n)` with `q = p^n`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = q;
    let mut d = 2u64;
    while d.saturating_mul(d) <= q {
        if q.is_multiple_of(d) {
            p = d;
            break;
        }
        d += 1;
    }
    let mut rest = q;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

pub fn mobius(mut n: u64) -> i64 {
    assert!(n > 0);
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of closed points of degree `m` on `P^1` over `F_q`.
pub fn closed_points_count(q: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::invalid("point degree must be positive"));
    }
    if prime_power(q).is_none() {
        return Err(Error::invalid(format!("{q} is not a prime power")));
    }
    if m == 1 {
        return q.checked_add(1).ok_or(Error::Overflow("closed_points_count"));
    }
    let mut total: i128 = 0;
    for e in (1..=m).filter(|e| m.is_multiple_of(*e)) {
        let mu = mobius(e);
        if mu == 0 {
            continue;
        }
        let pw = u32::try_from(m / e)
            .ok()
            .and_then(|k| (q as i128).checked_pow(k))
            .ok_or(Error::Overflow("closed_points_count"))?;
        total += mu as i128 * pw;
    }
    u64::try_from(total / m as i128).map_err(|_| Error::Overflow("closed_points_count"))
}

fn binom_int(n: u64, k: u64) -> Integer {
    let mut r = Integer::ONE;
    for j in 0..k {
        r *= Integer::from(n - j);
        r /= Integer::from(j + 1);
    }
    r
}

/// Checks the Euler product of the zeta function of `P^1` against
/// `1 / ((1 - u)(1 - q u))` through degree `d`.
pub fn zeta_p1_check(q: u64, d: u64) -> Result<bool> {
    if d == 0 {
        return Err(Error::invalid("truncation degree must be positive"));
    }
    let d = d as usize;
    let mut series = vec![Integer::ZERO; d + 1];
    series[0] = Integer::ONE;
    for m in 1..=d {
        let pi = closed_points_count(q, m as u64)?;
        // (1 - u^m)^(-pi) = sum_j binom(pi + j - 1, j) u^(m j)
        let factor: Vec<(usize, Integer)> = (0..=d / m)
            .map(|j| (m * j, binom_int(pi + j as u64 - 1, j as u64)))
            .collect();
        let mut next = vec![Integer::ZERO; d + 1];
        for (i, a) in series.iter().enumerate() {
            if *a == 0u32 {
                continue;
            }
            for (shift, c) in &factor {
                if i + shift > d {
                    break;
                }
                next[i + shift] += a * c;
            }
        }
        series = next;
    }
    let qi = Integer::from(q);
    let mut expect = Integer::ONE;
    let mut pw = Integer::ONE;
    for (k, c) in series.iter().enumerate() {
        if k > 0 {
            pw *= &qi;
            expect += &pw;
        }
        if *c != expect {
            return Ok(false);
        }
    }
    Ok(true)
}
