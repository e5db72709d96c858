use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::census::is_prime;

/// Largest field order supported. Arithmetic is table driven, so the tables
/// grow as `q^2`.
pub const MAX_Q: u64 = 1024;

/// An element of `F_q`, stored by its canonical code `sum c_j p^j` where
/// `c_0 .. c_{n-1}` are the coordinates in the power basis of the modulus.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Elem(pub u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn code(self) -> u16 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Inner {
    p: u32,
    n: u32,
    q: u32,
    // c_0 .. c_n, monic
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// A finite field together with its arithmetic tables. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.n == other.0.n)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.n)
    }
}

// Dense polynomials over F_p, lowest coefficient first, used only while
// building the tables.
fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = fp_inv(b[db], p);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1] * lead_inv % p;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * bj % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn digits(mut code: u32, p: u32, n: u32) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn fp_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    for deg in 1..=n / 2 {
        let count = p.pow(deg as u32);
        for code in 0..count {
            let mut g = digits(code, p, deg as u32);
            g.push(1);
            if fp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn smallest_modulus(p: u32, n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![0, 1];
    }
    for code in 0..p.pow(n) {
        let mut f = digits(code, p, n);
        f.push(1);
        if fp_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// `F_{p^n}` with the smallest irreducible monic modulus, ordering
    /// candidates lexicographically by `(c_{n-1}, ..., c_0)`.
    pub fn new(p: u64, n: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::invalid("extension degree must be positive"));
        }
        let q = (p as u128).checked_pow(n).filter(|&q| q <= MAX_Q as u128);
        let Some(q) = q else {
            return Err(Error::invalid(format!("field order {p}^{n} exceeds {MAX_Q}")));
        };
        let (p, q) = (p as u32, q as u32);
        let modulus = smallest_modulus(p, n);
        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        let mut neg = vec![0u16; qs];
        let mut inv = vec![0u16; qs];
        let dig: Vec<Vec<u32>> = (0..q).map(|c| digits(c, p, n)).collect();
        for a in 0..qs {
            let na: Vec<u32> = dig[a].iter().map(|&x| (p - x) % p).collect();
            neg[a] = undigits(&na, p) as u16;
            for b in 0..qs {
                let s: Vec<u32> = dig[a].iter().zip(&dig[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = undigits(&s, p) as u16;
                let mut prod = vec![0u32; 2 * n as usize];
                for (i, x) in dig[a].iter().enumerate() {
                    for (j, y) in dig[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = fp_rem(&prod, &modulus, p);
                r.resize(n as usize, 0);
                mul[a * qs + b] = undigits(&r, p) as u16;
            }
        }
        for a in 1..qs {
            inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).expect("field") as u16;
        }
        Ok(Field(Arc::new(Inner { p, n, q, modulus, add, mul, neg, inv })))
    }

    /// The field of order `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<Field> {
        let (p, n) = super::census::prime_power(q)
            .ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        Field::new(p, n)
    }

    pub fn p(&self) -> u64 {
        self.0.p as u64
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    pub fn q(&self) -> u64 {
        self.0.q as u64
    }

    pub fn size(&self) -> usize {
        self.0.q as usize
    }

    /// Coefficients `c_0 .. c_n` of the modulus over `F_p`.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn elem(&self, code: u64) -> Result<Elem> {
        if code < self.q() {
            Ok(Elem(code as u16))
        } else {
            Err(Error::invalid(format!("element code {code} out of range for q = {}", self.q())))
        }
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.0.p as i64) as u16)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.0.q as u16).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.0.q as u16).map(Elem)
    }

    /// Coordinates of `a` over `F_p`.
    pub fn coords(&self, a: Elem) -> Vec<u32> {
        digits(a.0 as u32, self.0.p, self.0.n)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.add[a.0 as usize * self.0.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.mul[a.0 as usize * self.0.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (!a.is_zero()).then(|| Elem(self.0.inv[a.0 as usize]))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut r = Elem::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.q(), 2);
        assert_eq!(f2.modulus(), &[0, 1]);
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert!(matches!(Field::new(4, 1), Err(Error::NotPrime(4))));
        assert!(Field::new(2, 0).is_err());
        assert!(Field::new(2, 11).is_err());
    }

    #[test]
    fn field_axioms() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 1)] {
            let f = Field::new(p, n).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                if let Some(i) = f.inv(a) {
                    assert_eq!(f.mul(a, i), Elem::ONE);
                }
                assert_eq!(f.pow(a, f.q()), a);
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn f4_generator() {
        let f = Field::new(2, 2).unwrap();
        // x is a root of x^2 + x + 1
        let x = Elem(2);
        assert_eq!(f.add(f.add(f.mul(x, x), x), Elem::ONE), Elem::ZERO);
    }
}
