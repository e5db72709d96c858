// Allocation-free polynomial kernels on small coefficient arrays, for the
// inner loops of the naive counter.

use crate::gf::{Elem, Field};

pub(crate) const MAXC: usize = 24;

pub(crate) type Coeffs = [Elem; MAXC];

pub(crate) fn decode(field: &Field, code: u64, len: usize) -> Coeffs {
    let q = field.q();
    let mut out = [Elem::ZERO; MAXC];
    let mut c = code;
    for slot in out.iter_mut().take(len) {
        *slot = Elem((c % q) as u16);
        c /= q;
    }
    out
}

pub(crate) fn encode(field: &Field, c: &[Elem]) -> u64 {
    let q = field.q();
    c.iter().rev().fold(0, |acc, e| acc * q + e.0 as u64)
}

fn deg(c: &[Elem]) -> Option<usize> {
    c.iter().rposition(|e| !e.is_zero())
}

// a <- a mod b, both given with explicit degrees; returns new degree of a
fn rem_in_place(field: &Field, a: &mut [Elem], mut da: Option<usize>, b: &[Elem], db: usize) -> Option<usize> {
    let inv = field.inv(b[db]).expect("nonzero lead");
    while let Some(d) = da {
        if d < db {
            break;
        }
        let c = field.mul(a[d], inv);
        let shift = d - db;
        for j in 0..=db {
            a[shift + j] = field.sub(a[shift + j], field.mul(c, b[j]));
        }
        da = deg(&a[..d]);
    }
    da
}

/// Degree of the homogeneous gcd of two forms of formal degrees `d1`, `d2`.
/// `None` when both are zero.
pub(crate) fn hgcd_degree(field: &Field, f1: &[Elem], d1: usize, f2: &[Elem], d2: usize) -> Option<usize> {
    let mut a: Coeffs = [Elem::ZERO; MAXC];
    let mut b: Coeffs = [Elem::ZERO; MAXC];
    a[..=d1].copy_from_slice(&f1[..=d1]);
    b[..=d2].copy_from_slice(&f2[..=d2]);
    let (mut da, mut db) = (deg(&a[..=d1]), deg(&b[..=d2]));
    match (da, db) {
        (None, None) => return None,
        (None, Some(_)) => return Some(d2),
        (Some(_), None) => return Some(d1),
        _ => {}
    }
    let inf = (d1 - da.unwrap()).min(d2 - db.unwrap());
    // Euclid on the dehomogenizations
    loop {
        match db {
            None => return Some(da.unwrap() + inf),
            Some(dbv) => {
                let r = rem_in_place(field, &mut a, da, &b, dbv);
                std::mem::swap(&mut a, &mut b);
                da = db;
                db = r;
            }
        }
    }
}

/// `y0 u - x0 v` coefficientwise.
pub(crate) fn functional(field: &Field, x0: Elem, y0: Elem, u: &[Elem], v: &[Elem], len: usize) -> Coeffs {
    let mut out = [Elem::ZERO; MAXC];
    for j in 0..len {
        out[j] = field.sub(field.mul(y0, u[j]), field.mul(x0, v[j]));
    }
    out
}
