// Effective divisors on P^1 over F_q, as multisets of closed points.

use crate::forms::BinaryForm;
use crate::gf::{factor, monic_irreducibles, Field, Poly};

/// A closed point: a monic irreducible polynomial in `x`, or the point at
/// infinity `y = 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub(crate) enum ClosedPoint {
    Finite(Vec<u16>),
    Infinity,
}

impl ClosedPoint {
    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Finite(c) => c.len() - 1,
            ClosedPoint::Infinity => 1,
        }
    }

    pub fn poly(&self, field: &Field) -> Option<Poly> {
        match self {
            ClosedPoint::Finite(c) => {
                Some(Poly::from_codes(field, &c.iter().map(|&x| x as u64).collect::<Vec<_>>()).expect("codes"))
            }
            ClosedPoint::Infinity => None,
        }
    }

    fn from_poly(p: &Poly) -> Self {
        ClosedPoint::Finite(p.coeffs().iter().map(|e| e.0).collect())
    }
}

/// Sorted `(point, multiplicity)` with positive multiplicities.
pub(crate) type Divisor = Vec<(ClosedPoint, u32)>;

pub(crate) fn degree(d: &Divisor) -> usize {
    d.iter().map(|(p, m)| p.degree() * *m as usize).sum()
}

/// Divisor of zeros of a nonzero binary form.
pub(crate) fn divisor_of(f: &BinaryForm) -> Divisor {
    let poly = f.dehomogenize();
    let (_, parts) = factor(&poly).expect("nonzero form");
    let mut out: Divisor = parts.iter().map(|(g, m)| (ClosedPoint::from_poly(g), *m)).collect();
    let inf = f.degree() - poly.degree().expect("nonzero");
    if inf > 0 {
        out.push((ClosedPoint::Infinity, inf as u32));
    }
    out.sort();
    out
}

/// All effective sub-divisors of `d`.
pub(crate) fn subdivisors(d: &Divisor) -> Vec<Divisor> {
    let mut out = vec![Vec::new()];
    for (p, m) in d {
        let mut next = Vec::with_capacity(out.len() * (*m as usize + 1));
        for base in &out {
            for j in 0..=*m {
                let mut x: Divisor = base.clone();
                if j > 0 {
                    x.push((p.clone(), j));
                }
                next.push(x);
            }
        }
        out = next;
    }
    out
}

/// All closed points of degree at most `max_deg`, infinity first.
pub(crate) fn closed_points_upto(field: &Field, max_deg: usize) -> Vec<ClosedPoint> {
    let mut out = Vec::new();
    if max_deg >= 1 {
        out.push(ClosedPoint::Infinity);
    }
    for m in 1..=max_deg {
        out.extend(monic_irreducibles(field, m).iter().map(ClosedPoint::from_poly));
    }
    out
}

#[cfg(test)]
/// Reduced divisors of degree at most `max_deg`, each with its Moebius sign.
pub(crate) fn squarefree_upto(field: &Field, max_deg: usize) -> Vec<(Divisor, i32)> {
    let pts = closed_points_upto(field, max_deg);
    let mut out = Vec::new();
    fn go(pts: &[ClosedPoint], start: usize, left: usize, cur: &mut Divisor, out: &mut Vec<(Divisor, i32)>) {
        let sign = if cur.len().is_multiple_of(2) { 1 } else { -1 };
        let mut d = cur.clone();
        d.sort();
        out.push((d, sign));
        for i in start..pts.len() {
            let deg = pts[i].degree();
            if deg <= left {
                cur.push((pts[i].clone(), 1));
                go(pts, i + 1, left - deg, cur, out);
                cur.pop();
            }
        }
    }
    go(&pts, 0, max_deg, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_of_forms() {
        let f = Field::new(2, 1).unwrap();
        // x y^2 (x + y) has zeros [0:1], [1:0] twice, [1:1]
        let g = BinaryForm::from_codes(&f, &[0, 1, 1, 0]).unwrap();
        let d = divisor_of(&g);
        assert_eq!(degree(&d), 3);
        assert!(d.contains(&(ClosedPoint::Infinity, 1)));
        assert_eq!(subdivisors(&d).len(), 8);
        let g = BinaryForm::from_codes(&f, &[0, 0, 0, 0]).unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn squarefree_census() {
        // generating function prod (1 + u^deg P) over closed points of P^1(F_2)
        let f = Field::new(2, 1).unwrap();
        let all = squarefree_upto(&f, 2);
        // degree 0: 1; degree 1: 3; degree 2: C(3,2) + 1 = 4
        assert_eq!(all.len(), 8);
        assert_eq!(all.iter().map(|(_, s)| s).sum::<i32>(), 1 - 3 + 3 - 1);
    }
}
