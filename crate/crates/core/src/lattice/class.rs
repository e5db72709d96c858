use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest number of blown-up points the lattice code accepts.
pub const MAX_R: usize = 8;

/// An integral class `f F + f' F' + sum e_i E_i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DivisorClass {
    coeffs: Vec<i64>,
}

/// Intersection numbers `h = -K.alpha`, `a = F.alpha`, `a' = F'.alpha`,
/// `k_i = E_i.alpha`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Invariants {
    pub h: i64,
    pub a: i64,
    pub a_prime: i64,
    pub k: Vec<i64>,
}

impl Invariants {
    /// `2a - sum k >= 0` and `2a' - sum k >= 0`.
    pub fn in_regime(&self) -> bool {
        let s: i64 = self.k.iter().sum();
        2 * self.a >= s && 2 * self.a_prime >= s
    }
}

impl DivisorClass {
    pub fn new(f: i64, f_prime: i64, e: &[i64]) -> Result<Self> {
        let mut coeffs = vec![f, f_prime];
        coeffs.extend_from_slice(e);
        Self::from_coeffs(coeffs)
    }

    /// `(f, f', e_1 .. e_r)`.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() < 2 || coeffs.len() > MAX_R + 2 {
            return Err(Error::invalid(format!(
                "a class needs between 2 and {} coefficients, got {}",
                MAX_R + 2,
                coeffs.len()
            )));
        }
        Ok(DivisorClass { coeffs })
    }

    /// The class with the given intersection numbers against `F, F', E_i`.
    pub fn from_invariants(a: i64, a_prime: i64, k: &[i64]) -> Result<Self> {
        let e: Vec<i64> = k.iter().map(|&x| -x).collect();
        Self::new(a_prime, a, &e)
    }

    pub fn zero(r: usize) -> Self {
        DivisorClass { coeffs: vec![0; r + 2] }
    }

    pub fn f(r: usize) -> Self {
        let mut c = vec![0; r + 2];
        c[0] = 1;
        DivisorClass { coeffs: c }
    }

    pub fn f_prime(r: usize) -> Self {
        let mut c = vec![0; r + 2];
        c[1] = 1;
        DivisorClass { coeffs: c }
    }

    /// `E_i`, with `i` counted from 1.
    pub fn e(r: usize, i: usize) -> Self {
        assert!((1..=r).contains(&i));
        let mut c = vec![0; r + 2];
        c[i + 1] = 1;
        DivisorClass { coeffs: c }
    }

    /// `-K = 2F + 2F' - sum E_i`.
    pub fn anticanonical(r: usize) -> Self {
        let mut c = vec![-1; r + 2];
        c[0] = 2;
        c[1] = 2;
        DivisorClass { coeffs: c }
    }

    pub fn r(&self) -> usize {
        self.coeffs.len() - 2
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.r() == other.r() {
            Ok(())
        } else {
            Err(Error::invalid(format!("classes on different surfaces: r = {} vs {}", self.r(), other.r())))
        }
    }

    pub fn intersect(&self, other: &Self) -> Result<i64> {
        self.check(other)?;
        Ok(self.dot(other))
    }

    pub(crate) fn dot(&self, other: &Self) -> i64 {
        let (a, b) = (&self.coeffs, &other.coeffs);
        let mut s = a[0] * b[1] + a[1] * b[0];
        for i in 2..a.len() {
            s -= a[i] * b[i];
        }
        s
    }

    pub fn self_intersection(&self) -> i64 {
        self.dot(self)
    }

    /// `-K.alpha`.
    pub fn height(&self) -> i64 {
        let c = &self.coeffs;
        2 * c[0] + 2 * c[1] + c[2..].iter().sum::<i64>()
    }

    pub fn invariants(&self) -> Invariants {
        let c = &self.coeffs;
        Invariants {
            h: self.height(),
            a: c[1],
            a_prime: c[0],
            k: c[2..].iter().map(|&e| -e).collect(),
        }
    }

    pub fn scale(&self, m: i64) -> Self {
        DivisorClass { coeffs: self.coeffs.iter().map(|&c| c * m).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(DivisorClass { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    /// Parses `r; f f' e1 .. er`, or `-K` (optionally `r; -K`) when the
    /// number of points is known from context.
    pub fn parse_in(s: &str, r: Option<usize>) -> Result<Self> {
        let bad = |msg: String| Error::parse(1, msg);
        let s = s.trim();
        let (r_given, body) = match s.split_once(';') {
            Some((head, body)) => {
                let r: usize = head.trim().parse().map_err(|_| bad(format!("bad point count {head:?}")))?;
                (Some(r), body.trim())
            }
            None => (None, s),
        };
        let r = match (r_given, r) {
            (Some(a), Some(b)) if a != b => {
                return Err(bad(format!("class is for r = {a}, expected r = {b}")));
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(bad("missing point count `r;`".into())),
        };
        if r > MAX_R {
            return Err(bad(format!("r = {r} exceeds {MAX_R}")));
        }
        if body == "-K" {
            return Ok(Self::anticanonical(r));
        }
        let coeffs = body
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| bad(format!("bad coefficient {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != r + 2 {
            return Err(bad(format!("expected {} coefficients, got {}", r + 2, coeffs.len())));
        }
        if coeffs.iter().any(|c| c.unsigned_abs() > 1 << 40) {
            return Err(bad("coefficient out of range".into()));
        }
        Self::from_coeffs(coeffs)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.r())?;
        for c in &self.coeffs {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

impl FromStr for DivisorClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_in(s, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_table() {
        let r = 3;
        let f = DivisorClass::f(r);
        let fp = DivisorClass::f_prime(r);
        let e1 = DivisorClass::e(r, 1);
        assert_eq!(f.intersect(&fp).unwrap(), 1);
        assert_eq!(f.self_intersection(), 0);
        assert_eq!(e1.self_intersection(), -1);
        assert_eq!(e1.intersect(&DivisorClass::e(r, 2)).unwrap(), 0);
        assert!(f.intersect(&DivisorClass::f(2)).is_err());
        for r in 1..=7 {
            let k = DivisorClass::anticanonical(r);
            assert_eq!(k.self_intersection(), 8 - r as i64);
        }
    }

    #[test]
    fn invariants_examples() {
        let k = DivisorClass::anticanonical(3);
        assert_eq!(k.invariants(), Invariants { h: 5, a: 2, a_prime: 2, k: vec![1, 1, 1] });
        assert_eq!(DivisorClass::f(3).invariants(), Invariants { h: 2, a: 0, a_prime: 1, k: vec![0; 3] });
        assert_eq!(DivisorClass::zero(3).invariants(), Invariants { h: 0, a: 0, a_prime: 0, k: vec![0; 3] });
        let c = DivisorClass::from_invariants(2, 1, &[1, 0, 1]).unwrap();
        let inv = c.invariants();
        assert_eq!((inv.a, inv.a_prime, inv.k.clone()), (2, 1, vec![1, 0, 1]));
        assert_eq!(inv.h, 2 * 2 + 2 * 1 - 2);
    }

    #[test]
    fn text_format() {
        let k: DivisorClass = "3; 2 2 -1 -1 -1".parse().unwrap();
        assert_eq!(k, DivisorClass::anticanonical(3));
        assert_eq!(k.to_string(), "3; 2 2 -1 -1 -1");
        assert_eq!(DivisorClass::parse_in("-K", Some(3)).unwrap(), k);
        assert_eq!(DivisorClass::parse_in("3; -K", None).unwrap(), k);
        assert!(DivisorClass::parse_in("-K", None).is_err());
        assert!(DivisorClass::parse_in("2; -K", Some(3)).is_err());
        assert!("3; 1 2".parse::<DivisorClass>().is_err());
        assert!("x; 1 2".parse::<DivisorClass>().is_err());
        assert!("9; 0 0 0 0 0 0 0 0 0 0 0".parse::<DivisorClass>().is_err());
    }
}
