use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::forms::{self, BinaryForm, Profile, SurfaceModel};
use crate::gf::Field;

use super::raw;

pub(crate) const BOTTOM: u8 = u8::MAX;

/// Basepoint-free sections of one degree, with the codes of their images
/// under the functionals of the model.
pub(crate) struct Side {
    /// `(u code, v code)`
    pub sections: Vec<(u64, u64)>,
    /// `images[j * r + i]` is the code of the `i`-th functional of section `j`
    pub images: Vec<u32>,
}

/// All basepoint-free `(u, v)` of degree `d`, in code order of `(v, u)`.
pub(crate) fn basepoint_free(field: &Field, d: usize) -> Vec<(u64, u64)> {
    let n = BinaryForm::count(field, d).expect("degree within budget");
    (0..n)
        .into_par_iter()
        .flat_map_iter(|v| {
            let vc = raw::decode(field, v, d + 1);
            (0..n).filter_map(move |u| {
                let uc = raw::decode(field, u, d + 1);
                (raw::hgcd_degree(field, &uc, d, &vc, d) == Some(0)).then_some((u, v))
            })
        })
        .collect()
}

/// `first` selects the factor: `p_i` for the `s` side, `p'_i` for `t`.
pub(crate) fn side(model: &SurfaceModel, d: usize, first: bool) -> Side {
    let field = model.field();
    let sections = basepoint_free(field, d);
    let r = model.r();
    let mut images = Vec::with_capacity(sections.len() * r);
    for &(u, v) in &sections {
        let uc = raw::decode(field, u, d + 1);
        let vc = raw::decode(field, v, d + 1);
        for (p, pp) in model.points() {
            let pt = if first { p } else { pp };
            let img = raw::functional(field, pt.x(), pt.y(), &uc, &vc, d + 1);
            images.push(raw::encode(field, &img[..=d]) as u32);
        }
    }
    Side { sections, images }
}

/// `table[i * n2 + j]` = homogeneous gcd degree of forms with codes `i`
/// (degree `d1`) and `j` (degree `d2`), or [`BOTTOM`] when both vanish.
pub(crate) fn gcd_table(field: &Field, d1: usize, d2: usize) -> Vec<u8> {
    let n1 = BinaryForm::count(field, d1).expect("bounded");
    let n2 = BinaryForm::count(field, d2).expect("bounded");
    (0..n1)
        .into_par_iter()
        .flat_map_iter(|i| {
            let f1 = BinaryForm::from_index(field, d1, i);
            (0..n2).map(move |j| {
                let f2 = BinaryForm::from_index(field, d2, j);
                match forms::hgcd_degree(&f1, &f2).expect("same field") {
                    None => BOTTOM,
                    Some(g) => g as u8,
                }
            })
        })
        .collect()
}

const CHUNK: usize = 64;

/// Number of pairs with profile exactly `k`.
pub(crate) fn count_profile(model: &SurfaceModel, a: usize, a_prime: usize, k: &[u32]) -> u128 {
    let field = model.field();
    let r = model.r();
    let s_side = side(model, a, true);
    let t_side = side(model, a_prime, false);
    let table = gcd_table(field, a, a_prime);
    let n2 = BinaryForm::count(field, a_prime).expect("bounded") as usize;
    let target: Vec<u8> = k.iter().map(|&x| x.min(254) as u8).collect();
    if k.iter().any(|&x| x > 254) {
        return 0;
    }
    let ns = s_side.sections.len();
    let nt = t_side.sections.len();
    (0..ns)
        .collect::<Vec<_>>()
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut local: u128 = 0;
            for &j in chunk {
                let lam = &s_side.images[j * r..(j + 1) * r];
                'pairs: for l in 0..nt {
                    let mu = &t_side.images[l * r..(l + 1) * r];
                    for i in 0..r {
                        if table[lam[i] as usize * n2 + mu[i] as usize] != target[i] {
                            continue 'pairs;
                        }
                    }
                    local += 1;
                }
            }
            local
        })
        .sum()
}

/// Full histogram of profiles over all basepoint-free pairs.
pub(crate) fn census(model: &SurfaceModel, a: usize, a_prime: usize) -> (BTreeMap<Profile, u128>, u128, u128) {
    let field = model.field();
    let r = model.r();
    let s_side = side(model, a, true);
    let t_side = side(model, a_prime, false);
    let table = gcd_table(field, a, a_prime);
    let n2 = BinaryForm::count(field, a_prime).expect("bounded") as usize;
    let ns = s_side.sections.len();
    let nt = t_side.sections.len();
    let hist = (0..ns)
        .collect::<Vec<_>>()
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut local: BTreeMap<Vec<u8>, u128> = BTreeMap::new();
            let mut key = vec![0u8; r];
            for &j in chunk {
                let lam = &s_side.images[j * r..(j + 1) * r];
                for l in 0..nt {
                    let mu = &t_side.images[l * r..(l + 1) * r];
                    for i in 0..r {
                        key[i] = table[lam[i] as usize * n2 + mu[i] as usize];
                    }
                    if key.contains(&BOTTOM) {
                        *local.entry(vec![BOTTOM]).or_insert(0) += 1;
                    } else {
                        *local.entry(key.clone()).or_insert(0) += 1;
                    }
                }
            }
            local
        })
        .reduce(BTreeMap::new, |mut x, y| {
            for (k, v) in y {
                *x.entry(k).or_insert(0) += v;
            }
            x
        });
    let out = hist
        .into_iter()
        .map(|(k, v)| {
            let p = if k == [BOTTOM] {
                Profile::Bottom
            } else {
                Profile::Finite(k.iter().map(|&x| x as u32).collect())
            };
            (p, v)
        })
        .collect();
    (out, ns as u128, nt as u128)
}
