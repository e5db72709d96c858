use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field, Poly};

use super::point::PointP1;

/// A binary form of formal degree `d`: `sum_j c_j x^j y^(d-j)`. The zero form
/// keeps its formal degree.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm {
    field: Field,
    degree: usize,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<u16> = self.coeffs.iter().map(|e| e.0).collect();
        write!(f, "BinaryForm(d={}, {:?})", self.degree, c)
    }
}

impl BinaryForm {
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("a binary form needs at least one coefficient"));
        }
        Ok(BinaryForm { field: field.clone(), degree: coeffs.len() - 1, coeffs })
    }

    pub fn from_codes(field: &Field, codes: &[u64]) -> Result<Self> {
        let c = codes.iter().map(|&c| field.elem(c)).collect::<Result<Vec<_>>>()?;
        Self::new(field, c)
    }

    pub fn zero(field: &Field, degree: usize) -> Self {
        BinaryForm { field: field.clone(), degree, coeffs: vec![Elem::ZERO; degree + 1] }
    }

    /// The form whose coefficients are the base-`q` digits of `code`, lowest
    /// first.
    pub fn from_index(field: &Field, degree: usize, mut code: u64) -> Self {
        let q = field.q();
        let coeffs = (0..=degree)
            .map(|_| {
                let c = Elem((code % q) as u16);
                code /= q;
                c
            })
            .collect();
        BinaryForm { field: field.clone(), degree, coeffs }
    }

    pub fn index(&self) -> u64 {
        let q = self.field.q();
        self.coeffs.iter().rev().fold(0, |acc, c| acc * q + c.0 as u64)
    }

    /// Number of forms of degree `d`, `q^(d+1)`.
    pub fn count(field: &Field, degree: usize) -> Option<u64> {
        field.q().checked_pow(degree as u32 + 1)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The dehomogenization at `y = 1`.
    pub fn dehomogenize(&self) -> Poly {
        Poly::new(&self.field, self.coeffs.clone())
    }

    pub fn scale(&self, c: Elem) -> Self {
        let f = &self.field;
        BinaryForm {
            field: f.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Value at representative coordinates `(x, y)`.
    pub fn eval(&self, x: Elem, y: Elem) -> Elem {
        let f = &self.field;
        let mut acc = Elem::ZERO;
        let mut xp = Elem::ONE;
        for (j, &c) in self.coeffs.iter().enumerate() {
            let yp = f.pow(y, (self.degree - j) as u64);
            acc = f.add(acc, f.mul(c, f.mul(xp, yp)));
            xp = f.mul(xp, x);
        }
        acc
    }

    pub fn vanishes_at(&self, p: &PointP1) -> bool {
        self.eval(p.x(), p.y()).is_zero()
    }
}

/// Degree of the homogeneous gcd of two binary forms, counting the root at
/// infinity. `gcd(0, g) = g` keeps the formal degree of `g`; `None` when
/// both forms are zero.
pub fn hgcd_degree(f1: &BinaryForm, f2: &BinaryForm) -> Result<Option<usize>> {
    if f1.field != f2.field {
        return Err(Error::FieldMismatch);
    }
    match (f1.is_zero(), f2.is_zero()) {
        (true, true) => Ok(None),
        (true, false) => Ok(Some(f2.degree)),
        (false, true) => Ok(Some(f1.degree)),
        (false, false) => {
            let p1 = f1.dehomogenize();
            let p2 = f2.dehomogenize();
            let g = p1.gcd(&p2)?.degree().expect("nonzero");
            let inf1 = f1.degree - p1.degree().expect("nonzero");
            let inf2 = f2.degree - p2.degree().expect("nonzero");
            Ok(Some(g + inf1.min(inf2)))
        }
    }
}

/// No common projective zero over the algebraic closure.
pub fn is_basepoint_free(u: &BinaryForm, v: &BinaryForm) -> Result<bool> {
    if u.degree != v.degree {
        return Err(Error::DegreeMismatch(u.degree, v.degree));
    }
    Ok(hgcd_degree(u, v)? == Some(0))
}

/// `y0 u - x0 v` for `p = [x0 : y0]`: vanishes exactly where `[u : v] = p`.
pub fn apply_functional(p: &PointP1, u: &BinaryForm, v: &BinaryForm) -> Result<BinaryForm> {
    if u.degree != v.degree {
        return Err(Error::DegreeMismatch(u.degree, v.degree));
    }
    if u.field != v.field {
        return Err(Error::FieldMismatch);
    }
    let f = &u.field;
    let coeffs = u
        .coeffs
        .iter()
        .zip(&v.coeffs)
        .map(|(&a, &b)| f.sub(f.mul(p.y(), a), f.mul(p.x(), b)))
        .collect();
    Ok(BinaryForm { field: f.clone(), degree: u.degree, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    fn form(f: &Field, c: &[u64]) -> BinaryForm {
        BinaryForm::from_codes(f, c).unwrap()
    }

    #[test]
    fn basepoint_examples() {
        let f = f2();
        assert!(is_basepoint_free(&form(&f, &[1]), &form(&f, &[0])).unwrap());
        assert!(!is_basepoint_free(&form(&f, &[0]), &form(&f, &[0])).unwrap());
        // x = coefficient of x^1 y^0 at index 1
        let x = form(&f, &[0, 1]);
        let y = form(&f, &[1, 0]);
        assert!(is_basepoint_free(&x, &y).unwrap());
        assert!(!is_basepoint_free(&x, &x).unwrap());
        // (x^2, xy) share [0:1]
        assert!(!is_basepoint_free(&form(&f, &[0, 0, 1]), &form(&f, &[0, 1, 0])).unwrap());
        // (y^2, xy) share [1:0]
        assert!(!is_basepoint_free(&form(&f, &[1, 0, 0]), &form(&f, &[0, 1, 0])).unwrap());
        // x^2 + xy + y^2 has no rational root but is not coprime to itself
        let irr = form(&f, &[1, 1, 1]);
        assert!(!is_basepoint_free(&irr, &irr).unwrap());
        assert!(is_basepoint_free(&x, &form(&f, &[0])).is_err());
    }

    #[test]
    fn functional_examples() {
        let f = f2();
        let x = form(&f, &[0, 1]);
        let y = form(&f, &[1, 0]);
        let p0 = PointP1::affine(Elem(0));
        let p1 = PointP1::affine(Elem(1));
        let inf = PointP1::infinity();
        assert_eq!(apply_functional(&p0, &x, &y).unwrap(), x);
        assert_eq!(apply_functional(&p1, &x, &y).unwrap(), form(&f, &[1, 1]));
        assert_eq!(apply_functional(&inf, &x, &y).unwrap(), y);
    }

    #[test]
    fn hgcd_conventions() {
        let f = f2();
        let x = form(&f, &[0, 1]);
        let z1 = BinaryForm::zero(&f, 1);
        assert_eq!(hgcd_degree(&x, &z1).unwrap(), Some(1));
        assert_eq!(hgcd_degree(&z1, &z1).unwrap(), None);
        // y^2 and xy^2... (deg 2 and 3) share y^2
        let y2 = form(&f, &[1, 0, 0]);
        let xy2 = form(&f, &[0, 1, 0, 0]);
        assert_eq!(hgcd_degree(&y2, &xy2).unwrap(), Some(2));
        assert_eq!(hgcd_degree(&BinaryForm::zero(&f, 3), &form(&f, &[1])).unwrap(), Some(0));
    }

    #[test]
    fn index_roundtrip() {
        let f = Field::new(3, 1).unwrap();
        for code in 0..BinaryForm::count(&f, 2).unwrap() {
            assert_eq!(BinaryForm::from_index(&f, 2, code).index(), code);
        }
    }
}
