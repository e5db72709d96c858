//! Exact rationals.
//!
//! [`Frac`] is a reduced fraction over arbitrary-precision integers. The
//! arithmetic avoids full-size gcds whenever one operand is small, which is
//! the common case when huge Euler products meet small correction factors.
//!
//! [`PRat`] is the internal representation `num / p^e` used while building
//! Euler products: every denominator there is a power of the characteristic,
//! so reduction is a matter of stripping factors of `p`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use malachite::base::num::arithmetic::traits::{
    DivExact, DivRound, DivisibleBy, Gcd, Pow, UnsignedAbs,
};
use malachite::base::num::basic::traits::{One, Zero};
use malachite::base::num::logic::traits::SignificantBits;
use malachite::base::rounding_modes::RoundingMode;
use malachite::{Integer, Natural};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frac {
    num: Integer,
    den: Natural,
}

// Operands at least this many times larger (in bits) get reduced modulo the
// smaller one before the gcd.
const UNBALANCED: u64 = 4;

fn gcd_nat(a: &Natural, b: &Natural) -> Natural {
    let (big, small) = if a.significant_bits() >= b.significant_bits() {
        (a, b)
    } else {
        (b, a)
    };
    if *small == 0u32 {
        return big.clone();
    }
    if *small == 1u32 {
        return Natural::ONE;
    }
    if big.significant_bits() > UNBALANCED * small.significant_bits() {
        let rem = big % small;
        rem.gcd(small)
    } else {
        big.gcd(small)
    }
}

fn gcd_int_nat(a: &Integer, b: &Natural) -> Natural {
    gcd_nat(a.unsigned_abs_ref(), b)
}

impl Frac {
    pub fn zero() -> Self {
        Frac { num: Integer::ZERO, den: Natural::ONE }
    }

    pub fn one() -> Self {
        Frac { num: Integer::ONE, den: Natural::ONE }
    }

    pub fn from_int(n: impl Into<Integer>) -> Self {
        Frac { num: n.into(), den: Natural::ONE }
    }

    /// `num / den`, reduced. Fails on a zero denominator.
    pub fn new(num: impl Into<Integer>, den: impl Into<Integer>) -> Result<Self> {
        let num = num.into();
        let den = den.into();
        if den == 0u32 {
            return Err(Error::invalid("zero denominator"));
        }
        let neg = den < 0u32;
        let den = den.unsigned_abs();
        let num = if neg { -num } else { num };
        Ok(Self::reduce(num, den))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("nonzero denominator")
    }

    fn reduce(num: Integer, den: Natural) -> Self {
        if num == 0u32 {
            return Self::zero();
        }
        let g = gcd_int_nat(&num, &den);
        if g == 1u32 {
            Frac { num, den }
        } else {
            let gi = Integer::from(&g);
            Frac { num: num.div_exact(gi), den: den.div_exact(g) }
        }
    }

    /// Builds `num / p^e` where `p` is prime. Only factors of `p` are
    /// cancelled, so no general gcd is computed.
    pub fn from_p_power(num: Integer, p: u64, e: u64) -> Self {
        let pr = PRat::new(num, p, e);
        pr.to_frac()
    }

    pub fn numer(&self) -> &Integer {
        &self.num
    }

    pub fn denom(&self) -> &Natural {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0u32
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1u32
    }

    pub fn signum(&self) -> i32 {
        match self.num.partial_cmp(&0u32) {
            Some(Ordering::Less) => -1,
            Some(Ordering::Greater) => 1,
            _ => 0,
        }
    }

    pub fn abs(&self) -> Frac {
        Frac { num: Integer::from(self.num.unsigned_abs_ref().clone()), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Frac> {
        if self.is_zero() {
            return Err(Error::invalid("reciprocal of zero"));
        }
        let neg = self.num < 0u32;
        let den = self.num.unsigned_abs_ref().clone();
        let num = Integer::from(self.den.clone());
        Ok(Frac { num: if neg { -num } else { num }, den })
    }

    pub fn pow(&self, e: u64) -> Frac {
        Frac { num: (&self.num).pow(e), den: (&self.den).pow(e) }
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn powi(&self, e: i64) -> Result<Frac> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.recip()?.pow(e.unsigned_abs()))
        }
    }

    /// Exact integer value, if the fraction is integral.
    pub fn to_integer(&self) -> Option<Integer> {
        self.is_integer().then(|| self.num.clone())
    }

    /// Decimal rendering with `sig` significant digits (half-up rounding).
    pub fn to_decimal(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.num < 0u32;
        let a = self.num.unsigned_abs_ref().clone();
        let b = &self.den;
        // first guess at floor(log10(a/b))
        let bits = a.significant_bits() as i64 - b.significant_bits() as i64;
        let mut e10 = ((bits as f64) * std::f64::consts::LOG10_2).floor() as i64;
        // adjust so that 10^e10 <= a/b < 10^(e10+1)
        loop {
            if cmp_scaled(&a, b, e10) == Ordering::Less {
                e10 -= 1;
            } else if cmp_scaled(&a, b, e10 + 1) != Ordering::Less {
                e10 += 1;
            } else {
                break;
            }
        }
        // digits = round(a/b * 10^(sig-1-e10))
        let shift = sig as i64 - 1 - e10;
        let (n, d) = scale10(&a, b, shift);
        let (mut digits, _) = n.div_round(d, RoundingMode::Nearest);
        let limit = Natural::from(10u32).pow(sig as u64);
        if digits >= limit {
            digits = digits.div_exact(Natural::from(10u32));
            e10 += 1;
        }
        let s = digits.to_string();
        let body = if (-4..12).contains(&e10) {
            fixed_notation(&s, e10)
        } else {
            let (head, tail) = s.split_at(1);
            let tail = tail.trim_end_matches('0');
            if tail.is_empty() {
                format!("{head}e{e10}")
            } else {
                format!("{head}.{tail}e{e10}")
            }
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

fn scale10(a: &Natural, b: &Natural, shift: i64) -> (Natural, Natural) {
    let ten = Natural::from(10u32);
    if shift >= 0 {
        (a * (&ten).pow(shift as u64), b.clone())
    } else {
        (a.clone(), b * (&ten).pow(shift.unsigned_abs()))
    }
}

// compares a/b with 10^e
fn cmp_scaled(a: &Natural, b: &Natural, e: i64) -> Ordering {
    let ten = Natural::from(10u32);
    if e >= 0 {
        a.cmp(&(b * (&ten).pow(e as u64)))
    } else {
        (a * (&ten).pow(e.unsigned_abs())).cmp(b)
    }
}

fn fixed_notation(digits: &str, e10: i64) -> String {
    let out = if e10 < 0 {
        let zeros = "0".repeat((-e10 - 1) as usize);
        format!("0.{zeros}{digits}")
    } else {
        let int_len = e10 as usize + 1;
        if digits.len() <= int_len {
            format!("{digits}{}", "0".repeat(int_len - digits.len()))
        } else {
            format!("{}.{}", &digits[..int_len], &digits[int_len..])
        }
    };
    if out.contains('.') {
        out.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        out
    }
}

impl Default for Frac {
    fn default() -> Self {
        Frac::zero()
    }
}

impl From<i64> for Frac {
    fn from(n: i64) -> Self {
        Frac::from_int(n)
    }
}

impl From<u64> for Frac {
    fn from(n: u64) -> Self {
        Frac::from_int(n)
    }
}

impl From<i32> for Frac {
    fn from(n: i32) -> Self {
        Frac::from_int(n)
    }
}

impl From<Integer> for Frac {
    fn from(n: Integer) -> Self {
        Frac::from_int(n)
    }
}

impl From<Natural> for Frac {
    fn from(n: Natural) -> Self {
        Frac::from_int(Integer::from(n))
    }
}

fn add_impl(x: &Frac, y: &Frac) -> Frac {
    if x.is_zero() {
        return y.clone();
    }
    if y.is_zero() {
        return x.clone();
    }
    if x.den == 1u32 && y.den == 1u32 {
        return Frac::from_int(&x.num + &y.num);
    }
    if x.den == 1u32 {
        return Frac { num: &x.num * Integer::from(&y.den) + &y.num, den: y.den.clone() };
    }
    if y.den == 1u32 {
        return Frac { num: &y.num * Integer::from(&x.den) + &x.num, den: x.den.clone() };
    }
    let g = gcd_nat(&x.den, &y.den);
    if g == 1u32 {
        let num = &x.num * Integer::from(&y.den) + &y.num * Integer::from(&x.den);
        return Frac { num, den: &x.den * &y.den };
    }
    let xd = (&x.den).div_exact(&g);
    let yd = (&y.den).div_exact(&g);
    let t = &x.num * Integer::from(&yd) + &y.num * Integer::from(&xd);
    if t == 0u32 {
        return Frac::zero();
    }
    let g2 = gcd_int_nat(&t, &g);
    if g2 == 1u32 {
        Frac { num: t, den: xd * &y.den }
    } else {
        let num = t.div_exact(Integer::from(&g2));
        Frac { num, den: xd * y.den.clone().div_exact(g2) }
    }
}

fn mul_impl(x: &Frac, y: &Frac) -> Frac {
    if x.is_zero() || y.is_zero() {
        return Frac::zero();
    }
    let g1 = gcd_int_nat(&x.num, &y.den);
    let g2 = gcd_int_nat(&y.num, &x.den);
    let xn = if g1 == 1u32 { x.num.clone() } else { (&x.num).div_exact(Integer::from(&g1)) };
    let yd = if g1 == 1u32 { y.den.clone() } else { (&y.den).div_exact(&g1) };
    let yn = if g2 == 1u32 { y.num.clone() } else { (&y.num).div_exact(Integer::from(&g2)) };
    let xd = if g2 == 1u32 { x.den.clone() } else { (&x.den).div_exact(&g2) };
    Frac { num: xn * yn, den: xd * yd }
}

impl Neg for Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac { num: -self.num, den: self.den }
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Frac> for &Frac {
            type Output = Frac;
            fn $m(self, rhs: &Frac) -> Frac {
                $body(self, rhs)
            }
        }
        impl $tr<Frac> for Frac {
            type Output = Frac;
            fn $m(self, rhs: Frac) -> Frac {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Frac> for Frac {
            type Output = Frac;
            fn $m(self, rhs: &Frac) -> Frac {
                $body(&self, rhs)
            }
        }
        impl $tr<Frac> for &Frac {
            type Output = Frac;
            fn $m(self, rhs: Frac) -> Frac {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, add_impl);
binop!(Sub, sub, |x: &Frac, y: &Frac| add_impl(x, &-y));
binop!(Mul, mul, mul_impl);
binop!(Div, div, |x: &Frac, y: &Frac| mul_impl(
    x,
    &y.recip().expect("division by zero")
));

impl std::iter::Sum for Frac {
    fn sum<I: Iterator<Item = Frac>>(iter: I) -> Frac {
        iter.fold(Frac::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Frac {
    fn product<I: Iterator<Item = Frac>>(iter: I) -> Frac {
        iter.fold(Frac::one(), |a, b| a * b)
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        let s = self.signum().cmp(&other.signum());
        if s != Ordering::Equal {
            return s;
        }
        (&self.num * Integer::from(&other.den)).cmp(&(&other.num * Integer::from(&self.den)))
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.significant_bits() > 256 || self.den.significant_bits() > 256 {
            write!(f, "Frac(~{})", self.to_decimal(12))
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Frac {
    type Err = Error;

    /// Accepts `n` or `n/d` with optional sign on the numerator.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::invalid(format!("not a rational: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        if n.is_empty() || d.is_empty() || d.starts_with(['-', '+']) {
            return Err(bad());
        }
        let n = Integer::from_str(n).map_err(|_| bad())?;
        let d = Natural::from_str(d).map_err(|_| bad())?;
        if d == 0u32 {
            return Err(bad());
        }
        Ok(Frac::reduce(n, d))
    }
}

/// `num / p^e` with `p` prime. Canonical: either `num == 0 && e == 0`, or
/// `p` does not divide `num` when `e > 0`. Negative exponents are not
/// represented; integers carry `e == 0` and may be divisible by `p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct PRat {
    pub num: Integer,
    pub p: u64,
    pub e: u64,
}

fn strip_p(num: &mut Integer, p: u64, e: &mut u64) {
    if *num == 0u32 {
        *e = 0;
        return;
    }
    if p == 2 {
        let tz = num.trailing_zeros().unwrap_or(0).min(*e);
        if tz > 0 {
            *num >>= tz;
            *e -= tz;
        }
        return;
    }
    let pi = Integer::from(p);
    while *e > 0 && (&*num).divisible_by(&pi) {
        *num = (&*num).div_exact(&pi);
        *e -= 1;
    }
}

impl PRat {
    pub fn new(mut num: Integer, p: u64, mut e: u64) -> Self {
        strip_p(&mut num, p, &mut e);
        PRat { num, p, e }
    }

    pub fn one(p: u64) -> Self {
        PRat { num: Integer::ONE, p, e: 0 }
    }

    pub fn zero(p: u64) -> Self {
        PRat { num: Integer::ZERO, p, e: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0u32
    }

    pub fn add(&self, other: &PRat) -> PRat {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let p = Integer::from(self.p);
        let (num, e) = match self.e.cmp(&other.e) {
            Ordering::Equal => (&self.num + &other.num, self.e),
            Ordering::Less => (&self.num * (&p).pow(other.e - self.e) + &other.num, other.e),
            Ordering::Greater => (&other.num * (&p).pow(self.e - other.e) + &self.num, self.e),
        };
        PRat::new(num, self.p, e)
    }

    pub fn mul(&self, other: &PRat) -> PRat {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return PRat::zero(self.p);
        }
        let num = &self.num * &other.num;
        // a product of two numerators coprime to p stays coprime to p
        if self.e > 0 && other.e > 0 {
            PRat { num, p: self.p, e: self.e + other.e }
        } else {
            PRat::new(num, self.p, self.e + other.e)
        }
    }

    pub fn pow(&self, k: u64) -> PRat {
        if k == 0 {
            return PRat::one(self.p);
        }
        if self.e > 0 {
            PRat { num: (&self.num).pow(k), p: self.p, e: self.e * k }
        } else {
            PRat { num: (&self.num).pow(k), p: self.p, e: 0 }
        }
    }

    pub fn to_frac(&self) -> Frac {
        if self.e == 0 {
            return Frac::from_int(self.num.clone());
        }
        Frac { num: self.num.clone(), den: Natural::from(self.p).pow(self.e) }
    }
}
