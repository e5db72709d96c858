// Counting section pairs by iterating over s only.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::forms::{BinaryForm, SurfaceModel};
use crate::gf::{Elem, Field};
use crate::{Error, Result};

use super::divisor::{closed_points_upto, divisor_of, subdivisors, ClosedPoint, Divisor};
use super::linalg::System;
use super::naive::basepoint_free;
use super::raw;

/// `s`-side data that determines the number of matching `t`: the functional
/// images up to scalars, `None` for a vanishing image.
type Key = Vec<Option<u64>>;

fn normalize(field: &Field, c: &[Elem]) -> Option<Vec<Elem>> {
    let lead = *c.iter().rev().find(|e| !e.is_zero())?;
    let inv = field.inv(lead).expect("nonzero");
    Some(c.iter().map(|&e| field.mul(e, inv)).collect())
}

/// Weight of `D` in the Moebius expansion of `[deg gcd = k]`.
fn weight(d: &Divisor, k: usize) -> i64 {
    let n = d.len();
    let total = super::divisor::degree(d);
    let mut w = 0i64;
    for mask in 0u32..(1 << n) {
        let removed: usize = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| d[i].0.degree()).sum();
        if total - removed == k {
            w += if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        }
    }
    w
}

struct Ctx<'a> {
    field: &'a Field,
    s_deg: usize,
    deg: usize,
    cols: usize,
    // (alpha, beta) with mu_i(t) = alpha w + beta z
    funcs: Vec<(Elem, Elem)>,
    points: Vec<ClosedPoint>,
    // rows of `P | w` and `P | z`
    point_rows: Vec<Vec<Vec<Elem>>>,
}

impl Ctx<'_> {
    fn qpow(&self, e: usize) -> Result<i128> {
        (self.field.q() as i128).checked_pow(e as u32).ok_or(Error::Overflow("q power"))
    }

    /// Number of basepoint-free `t` with `D_i | mu_i(t)` for every listed
    /// slot and `mu_i(t) = 0` for the slots in `zeros`.
    fn count_t(&self, ds: &[(usize, &Divisor)], zeros: &[usize]) -> Result<i128> {
        let mut base = System::new(self.field, self.cols);
        for &(i, d) in ds {
            let (al, be) = self.funcs[i];
            base.divisible(self.deg, al, be, d);
        }
        for &i in zeros {
            let (al, be) = self.funcs[i];
            base.vanishes(self.deg, al, be);
        }
        if base.dim() == 0 {
            return Ok(0);
        }
        self.squarefree_sum(&base, 0, self.deg, 1)
    }

    // sum over reduced e supported on points[start..] with deg e <= left
    fn squarefree_sum(&self, sys: &System, start: usize, left: usize, sign: i128) -> Result<i128> {
        let mut n = sign * (self.qpow(sys.dim())? - 1);
        for (i, p) in self.points.iter().enumerate().skip(start) {
            if p.degree() > left {
                continue;
            }
            let mut next = sys.clone();
            for row in &self.point_rows[i] {
                next.push(row.clone());
                if next.dim() == 0 {
                    break;
                }
            }
            if next.dim() > 0 {
                n += self.squarefree_sum(&next, i + 1, left - p.degree(), -sign)?;
            }
        }
        Ok(n)
    }
}

fn support(d: &Divisor) -> impl Iterator<Item = &ClosedPoint> {
    d.iter().map(|(p, _)| p)
}

fn count_key(ctx: &Ctx, key: &Key, k: &[u32]) -> Result<i128> {
    let field = ctx.field;
    let mut zero_slots = Vec::new();
    // per nonzero slot: candidates (D, weight)
    let mut slots: Vec<(usize, Vec<(Divisor, i64)>)> = Vec::new();
    for (i, f) in key.iter().enumerate() {
        match f {
            None => {
                if k[i] as usize != ctx.deg {
                    return Ok(0);
                }
                zero_slots.push(i);
            }
            Some(code) => {
                let form = BinaryForm::from_index(field, ctx.s_deg, *code);
                let cands: Vec<(Divisor, i64)> = subdivisors(&divisor_of(&form))
                    .into_iter()
                    .filter_map(|d| {
                        let w = weight(&d, k[i] as usize);
                        (w != 0).then_some((d, w))
                    })
                    .collect();
                if cands.is_empty() {
                    return Ok(0);
                }
                slots.push((i, cands));
            }
        }
    }
    let mut total = 0i128;
    let mut idx = vec![0usize; slots.len()];
    loop {
        let mut used: BTreeSet<&ClosedPoint> = BTreeSet::new();
        let mut disjoint = true;
        let mut weight = 1i64;
        for (s, &j) in slots.iter().zip(&idx) {
            let (d, w) = &s.1[j];
            weight *= w;
            for p in support(d) {
                if !used.insert(p) {
                    disjoint = false;
                }
            }
        }
        if disjoint {
            let ds: Vec<(usize, &Divisor)> = slots.iter().zip(&idx).map(|(s, &j)| (s.0, &s.1[j].0)).collect();
            let mut inner = 0i128;
            for zmask in 0u32..(1 << zero_slots.len()) {
                let zs: Vec<usize> =
                    (0..zero_slots.len()).filter(|b| zmask >> b & 1 == 1).map(|b| zero_slots[b]).collect();
                let n = ctx.count_t(&ds, &zs)?;
                inner += if zs.len().is_multiple_of(2) { n } else { -n };
            }
            total += weight as i128 * inner;
        }
        // advance
        let mut pos = 0;
        loop {
            if pos == slots.len() {
                return Ok(total);
            }
            idx[pos] += 1;
            if idx[pos] < slots[pos].1.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Exact number of basepoint-free pairs with profile `k`.
pub(crate) fn count(model: &SurfaceModel, a: usize, a_prime: usize, k: &[u32]) -> Result<u128> {
    if a > a_prime {
        return count(&model.swapped(), a_prime, a, k);
    }
    let field = model.field();
    let q = field.q() as i128;
    if q.checked_pow((2 * a + 2 * a_prime + 4) as u32).is_none_or(|x| x > i128::MAX / 4) {
        return Err(Error::Overflow("section count"));
    }
    if a + 1 > raw::MAXC {
        return Err(Error::invalid(format!("degree {a} too large")));
    }
    let pts = model.points();
    let mut groups: HashMap<Key, u64> = HashMap::new();
    for (u, v) in basepoint_free(field, a) {
        let uc = raw::decode(field, u, a + 1);
        let vc = raw::decode(field, v, a + 1);
        let key: Key = pts
            .iter()
            .map(|(p, _)| {
                let img = raw::functional(field, p.x(), p.y(), &uc, &vc, a + 1);
                normalize(field, &img[..=a]).map(|c| raw::encode(field, &c))
            })
            .collect();
        *groups.entry(key).or_insert(0) += 1;
    }
    let points = closed_points_upto(field, a_prime);
    let scratch = System::new(field, 2 * a_prime + 2);
    let point_rows = points
        .iter()
        .map(|p| {
            let e = vec![(p.clone(), 1)];
            let mut rows = scratch.divisible_rows(a_prime, Elem::ONE, Elem::ZERO, &e);
            rows.extend(scratch.divisible_rows(a_prime, Elem::ZERO, Elem::ONE, &e));
            rows
        })
        .collect();
    let ctx = Ctx {
        field,
        s_deg: a,
        deg: a_prime,
        cols: 2 * a_prime + 2,
        funcs: pts.iter().map(|(_, pp)| (pp.y(), field.neg(pp.x()))).collect(),
        points,
        point_rows,
    };
    let mut keys: Vec<(Key, u64)> = groups.into_iter().collect();
    keys.sort();
    let parts: Vec<Result<i128>> = keys
        .par_iter()
        .map(|(key, mult)| Ok(count_key(&ctx, key, k)? * *mult as i128))
        .collect();
    let mut total = 0i128;
    for p in parts {
        total += p?;
    }
    u128::try_from(total).map_err(|_| Error::Overflow("negative count"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights() {
        let f = Field::new(2, 1).unwrap();
        // D = 2[0] + [inf]
        let g = BinaryForm::from_codes(&f, &[0, 0, 1, 0]).unwrap();
        let d = divisor_of(&g);
        assert_eq!(crate::enumerate::divisor::degree(&d), 3);
        // gcd divisors G <= D with deg G = 2: sum of weights over D' <= G is [deg G = 2]
        for g in subdivisors(&d) {
            let s: i64 = subdivisors(&g).iter().map(|x| weight(x, 2)).sum();
            let expect = (crate::enumerate::divisor::degree(&g) == 2) as i64;
            assert_eq!(s, expect);
        }
    }
}
