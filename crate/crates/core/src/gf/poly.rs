use std::fmt;

use crate::error::{Error, Result};

use super::field::{Elem, Field};

/// A univariate polynomial over `F_q`, lowest coefficient first, trimmed so
/// the leading coefficient is nonzero. The zero polynomial has no
/// coefficients and no degree.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (j, c.0) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "x")?,
                (_, 1) => write!(f, "x^{j}")?,
                (1, v) => write!(f, "{v}*x")?,
                (_, v) => write!(f, "{v}*x^{j}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn trim(v: &mut Vec<Elem>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        trim(&mut coeffs);
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_codes(field: &Field, codes: &[u64]) -> Result<Poly> {
        let coeffs = codes.iter().map(|&c| field.elem(c)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The monomial `x^k`.
    pub fn x_pow(field: &Field, k: usize) -> Poly {
        let mut c = vec![Elem::ZERO; k + 1];
        c[k] = Elem::ONE;
        Poly { field: field.clone(), coeffs: c }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Elem {
        self.coeffs.get(j).copied().unwrap_or(Elem::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Elem::ONE)
    }

    pub fn lead(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(self.field.inv(l).expect("nonzero lead")),
        }
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Poly::new(f, (0..n).map(|j| f.add(self.coeff(j), other.coeff(j))).collect()))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Poly::new(f, (0..n).map(|j| f.sub(self.coeff(j), other.coeff(j))).collect()))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(f, out))
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor)?;
        let f = &self.field;
        let Some(db) = divisor.degree() else {
            return Err(Error::invalid("division by the zero polynomial"));
        };
        let lead_inv = f.inv(divisor.coeffs[db]).expect("nonzero lead");
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; r.len() - db];
        for k in (0..r.len() - db).rev() {
            let c = f.mul(r[k + db], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                r[k + j] = f.sub(r[k + j], f.mul(c, b));
            }
        }
        Ok((Poly::new(f, quot), Poly::new(f, r)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic gcd, with `gcd(0, g) = monic(g)` and `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one(&self.field);
        for _ in 0..e {
            r = r.mul(self).expect("same field");
        }
        r
    }

    /// Iterates over all monic polynomials of degree `d` in code order.
    pub fn monics(field: &Field, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = field.q();
        let count = q.pow(d as u32);
        (0..count).map(move |mut code| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(Elem((code % q) as u16));
                code /= q;
            }
            c.push(Elem::ONE);
            Poly { field: field.clone(), coeffs: c }
        })
    }
}

fn is_irreducible_by(f: &Poly, smaller: &[Vec<Poly>]) -> bool {
    let d = f.degree().expect("nonzero");
    for (k, list) in smaller.iter().enumerate() {
        if 2 * k > d {
            break;
        }
        if list.iter().any(|g| g.divides(f).expect("same field")) {
            return false;
        }
    }
    true
}

/// All monic irreducible polynomials of degree `m` over `field`, in code
/// order.
pub fn monic_irreducibles(field: &Field, m: usize) -> Vec<Poly> {
    if m == 0 {
        return Vec::new();
    }
    let mut by_deg: Vec<Vec<Poly>> = vec![Vec::new()];
    for d in 1..=m / 2 {
        let list = Poly::monics(field, d).filter(|f| is_irreducible_by(f, &by_deg)).collect();
        by_deg.push(list);
    }
    Poly::monics(field, m).filter(|f| is_irreducible_by(f, &by_deg)).collect()
}

/// Factorization of a nonzero polynomial into monic irreducibles with
/// multiplicities, sorted by degree and then code. The leading coefficient is
/// returned separately.
pub fn factor(f: &Poly) -> Result<(Elem, Vec<(Poly, u32)>)> {
    let Some(lead) = f.lead() else {
        return Err(Error::invalid("cannot factor the zero polynomial"));
    };
    let field = f.field().clone();
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        for g in monic_irreducibles(&field, d) {
            let mut mult = 0;
            loop {
                let (qt, r) = rest.div_rem(&g)?;
                if !r.is_zero() {
                    break;
                }
                rest = qt;
                mult += 1;
            }
            if mult > 0 {
                out.push((g, mult));
            }
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push((rest, 1));
    }
    out.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs.iter().rev().collect::<Vec<_>>())
            .cmp(&(b.0.degree(), b.0.coeffs.iter().rev().collect::<Vec<_>>()))
    });
    Ok((lead, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(f: &Field, c: &[u64]) -> Poly {
        Poly::from_codes(f, c).unwrap()
    }

    #[test]
    fn gcd_examples() {
        let f2 = Field::new(2, 1).unwrap();
        let x2x = p(&f2, &[0, 1, 1]);
        let x = p(&f2, &[0, 1]);
        assert_eq!(x2x.gcd(&x).unwrap(), x);
        assert_eq!(x2x.gcd(&Poly::zero(&f2)).unwrap(), x2x);
        assert!(Poly::zero(&f2).gcd(&Poly::zero(&f2)).unwrap().is_zero());

        let f3 = Field::new(3, 1).unwrap();
        // x^3 + 2x = x (x^2 + 1) + x, and x^2 + 1 is irreducible over F_3
        let a = p(&f3, &[0, 2, 0, 1]);
        let b = p(&f3, &[1, 0, 1]);
        assert_eq!(a.gcd(&b).unwrap(), Poly::one(&f3));
        assert_eq!(p(&f3, &[0, 1, 0, 1]).gcd(&b).unwrap(), b);
        assert_eq!(p(&f3, &[0, 2]).gcd(&Poly::zero(&f3)).unwrap(), x_of(&f3));

        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(a.gcd(&p(&f4, &[1])), Err(Error::FieldMismatch));
    }

    fn x_of(f: &Field) -> Poly {
        Poly::x_pow(f, 1)
    }

    #[test]
    fn division_identity() {
        let f = Field::new(3, 1).unwrap();
        for a in Poly::monics(&f, 4) {
            for b in Poly::monics(&f, 2) {
                let b = b.scale(Elem(2));
                let (qt, r) = a.div_rem(&b).unwrap();
                assert!(r.degree().is_none_or(|d| d < 2));
                assert_eq!(qt.mul(&b).unwrap().add(&r).unwrap(), a);
            }
        }
        assert!(x_of(&f).div_rem(&Poly::zero(&f)).is_err());
    }

    #[test]
    fn irreducible_counts() {
        let f2 = Field::new(2, 1).unwrap();
        let counts: Vec<usize> = (1..=6).map(|m| monic_irreducibles(&f2, m).len()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9]);
        assert_eq!(monic_irreducibles(&f2, 2), vec![p(&f2, &[1, 1, 1])]);
    }

    #[test]
    fn factor_roundtrip() {
        let f = Field::new(3, 1).unwrap();
        for g in Poly::monics(&f, 5) {
            let g = g.scale(Elem(2));
            let (lead, parts) = factor(&g).unwrap();
            let mut prod = Poly::constant(&f, lead);
            for (h, m) in &parts {
                assert!(h.is_monic());
                assert!(monic_irreducibles(&f, h.degree().unwrap()).contains(h));
                prod = prod.mul(&h.pow(*m)).unwrap();
            }
            assert_eq!(prod, g);
        }
    }
}
