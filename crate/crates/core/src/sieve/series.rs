use std::fmt;

use crate::exact::{Frac, PRat};
use crate::gf::prime_power;
use crate::{Error, Result};

/// Largest number of stored coefficients.
pub const MAX_TERMS: usize = 1 << 16;

/// Power series in `t_1..t_r` truncated at per-variable caps, with
/// coefficients in `Z[1/q]`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    q: u64,
    p: u64,
    caps: Vec<u32>,
    coeffs: Vec<PRat>,
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncSeries").field("q", &self.q).field("caps", &self.caps).finish_non_exhaustive()
    }
}

pub(crate) fn characteristic(q: u64) -> Result<(u64, u32)> {
    prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))
}

impl TruncSeries {
    /// The constant series `c`.
    pub(crate) fn constant(q: u64, caps: &[u32], c: PRat) -> Result<Self> {
        let (p, _) = characteristic(q)?;
        let len = caps.iter().try_fold(1usize, |acc, &k| acc.checked_mul(k as usize + 1)).filter(|&n| n <= MAX_TERMS);
        let len = len.ok_or(Error::BudgetExceeded { work: u128::MAX, budget: MAX_TERMS as u128 })?;
        let mut coeffs = vec![PRat::zero(p); len];
        coeffs[0] = c;
        Ok(TruncSeries { q, p, caps: caps.to_vec(), coeffs })
    }

    pub fn one(q: u64, caps: &[u32]) -> Result<Self> {
        let (p, _) = characteristic(q)?;
        Self::constant(q, caps, PRat::one(p))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn r(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn index(&self, k: &[u32]) -> Option<usize> {
        if k.len() != self.caps.len() {
            return None;
        }
        let mut idx = 0;
        for (&kj, &cj) in k.iter().zip(&self.caps).rev() {
            if kj > cj {
                return None;
            }
            idx = idx * (cj as usize + 1) + kj as usize;
        }
        Some(idx)
    }

    fn multi_index(&self, mut idx: usize) -> Vec<u32> {
        self.caps
            .iter()
            .map(|&c| {
                let b = c as usize + 1;
                let k = (idx % b) as u32;
                idx /= b;
                k
            })
            .collect()
    }

    pub(crate) fn raw(&self, k: &[u32]) -> Option<&PRat> {
        self.index(k).map(|i| &self.coeffs[i])
    }

    pub(crate) fn raw_mut(&mut self, k: &[u32]) -> Option<&mut PRat> {
        self.index(k).map(|i| &mut self.coeffs[i])
    }

    /// Coefficient of `t^k`; `k` must lie within the caps.
    pub fn coeff(&self, k: &[u32]) -> Result<Frac> {
        self.raw(k).map(PRat::to_frac).ok_or_else(|| {
            Error::invalid(format!("index {k:?} outside caps {:?}", self.caps))
        })
    }

    /// All `(k, coefficient)` pairs in index order, zeros included.
    pub fn terms(&self) -> Vec<(Vec<u32>, Frac)> {
        (0..self.coeffs.len()).map(|i| (self.multi_index(i), self.coeffs[i].to_frac())).collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(Error::FieldMismatch);
        }
        if self.caps != other.caps {
            return Err(Error::invalid(format!("caps {:?} and {:?} differ", self.caps, other.caps)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        Ok(TruncSeries { coeffs, ..self.clone_shape() })
    }

    fn clone_shape(&self) -> Self {
        TruncSeries { q: self.q, p: self.p, caps: self.caps.clone(), coeffs: Vec::new() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.coeffs.len();
        let mut out = vec![PRat::zero(self.p); n];
        let keys: Vec<Vec<u32>> = (0..n).map(|i| self.multi_index(i)).collect();
        let mut sum = vec![0u32; self.caps.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            'inner: for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for v in 0..sum.len() {
                    sum[v] = keys[i][v] + keys[j][v];
                    if sum[v] > self.caps[v] {
                        continue 'inner;
                    }
                }
                let idx = self.index(&sum).expect("within caps");
                out[idx] = out[idx].add(&a.mul(b));
            }
        }
        Ok(TruncSeries { coeffs: out, ..self.clone_shape() })
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = TruncSeries::constant(self.q, &self.caps, PRat::one(self.p)).expect("same shape");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same shape");
            }
        }
        acc
    }

    pub(crate) fn scale(&self, c: &PRat) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(), ..self.clone_shape() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(q: u64, caps: &[u32], k: &[u32], num: i64, e: u64) -> TruncSeries {
        let mut s = TruncSeries::one(q, caps).unwrap();
        *s.raw_mut(&vec![0; caps.len()]).unwrap() = PRat::zero(2);
        *s.raw_mut(k).unwrap() = PRat::new(num.into(), 2, e);
        s
    }

    #[test]
    fn truncated_product() {
        // (1 + t1)(1 + t2) with caps (1, 0) drops t2
        let one = TruncSeries::one(2, &[1, 0]).unwrap();
        let a = one.add(&t(2, &[1, 0], &[1, 0], 1, 0)).unwrap();
        let p = a.mul(&a).unwrap();
        assert_eq!(p.coeff(&[0, 0]).unwrap(), Frac::from(1));
        assert_eq!(p.coeff(&[1, 0]).unwrap(), Frac::from(2));
        assert!(p.coeff(&[2, 0]).is_err());
        assert!(p.coeff(&[0, 1]).is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let caps = [2, 1];
        let one = TruncSeries::one(2, &caps).unwrap();
        let a = one.add(&t(2, &caps, &[1, 0], 3, 2)).unwrap().add(&t(2, &caps, &[0, 1], -1, 1)).unwrap();
        let mut b = one.clone();
        for _ in 0..5 {
            b = b.mul(&a).unwrap();
        }
        assert_eq!(a.pow(5), b);
        assert_eq!(a.pow(0), one);
    }
}
