use rayon::prelude::*;

use crate::forms::{BinaryForm, PointP1};
use crate::gf::Field;
use crate::{Error, Result};

use super::divisor::{divisor_of, subdivisors};
use super::naive::basepoint_free;
use super::raw;

/// Number of effective divisors of degree `k` contained in the zero divisor
/// of `f`. The zero form contains every divisor of degree `k` only when
/// `k = 0`; for `k > 0` it is rejected.
pub fn subdivisor_count(f: &BinaryForm, k: usize) -> Result<u64> {
    if f.is_zero() {
        return if k == 0 { Ok(1) } else { Err(Error::invalid("zero form has no finite divisor")) };
    }
    Ok(subdivisors(&divisor_of(f)).iter().filter(|d| super::divisor::degree(d) == k).count() as u64)
}

/// Number of pairs `(C, (T_i))` with `C` a basepoint-free pair of degree-`a`
/// forms up to scalar and `T_i` a degree-`k_i` divisor inside the pullback
/// of the `i`-th point.
pub fn count_config_cover(field: &Field, points: &[PointP1], a: usize, k: &[u32]) -> Result<u128> {
    if points.len() != k.len() {
        return Err(Error::DegreeMismatch(points.len(), k.len()));
    }
    for i in 0..points.len() {
        for j in 0..i {
            if points[i] == points[j] {
                return Err(Error::invalid(format!("repeated point {}", points[i])));
            }
        }
    }
    if let Some(&bad) = k.iter().find(|&&x| x as usize > a) {
        return Err(Error::invalid(format!("k_i = {bad} exceeds a = {a}")));
    }
    if a + 1 > raw::MAXC || BinaryForm::count(field, a).is_none_or(|n| n > 1 << 24) {
        return Err(Error::BudgetExceeded {
            work: (field.q() as u128).saturating_pow(2 * a as u32 + 2),
            budget: 1 << 48,
        });
    }
    let sections = basepoint_free(field, a);
    let total: Result<u128> = sections
        .par_iter()
        .map(|&(u, v)| {
            let uf = BinaryForm::from_index(field, a, u);
            let vf = BinaryForm::from_index(field, a, v);
            let mut prod = 1u128;
            for (p, &ki) in points.iter().zip(k) {
                let f = crate::forms::apply_functional(p, &uf, &vf)?;
                prod *= subdivisor_count(&f, ki as usize)? as u128;
            }
            Ok(prod)
        })
        .try_reduce(|| 0, |x, y| Ok(x + y));
    Ok(total? / (field.q() as u128 - 1))
}
