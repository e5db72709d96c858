use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::Frac;

use super::blowdown::{blow_down_data, ell, BlowDownDatum};
use super::class::DivisorClass;
use super::search::is_nef;

/// A rational polyhedral (or piecewise-linear) cone of nef classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConeSpec {
    FullNef,
    /// `ell(alpha) / (-K.alpha) >= eps`
    Eps(Frac),
    /// `min(I_phi, J_phi) / (-K.alpha) >= eps` for one fixed blow-down
    FixedPhi(Frac, BlowDownDatum),
    /// positive multiples of one class
    Ray(DivisorClass),
}

impl ConeSpec {
    pub fn contains(&self, alpha: &DivisorClass) -> Result<bool> {
        match self {
            ConeSpec::FullNef => is_nef(alpha),
            ConeSpec::Eps(eps) => {
                let h = ratio_height(alpha)?;
                if !is_nef(alpha)? {
                    return Ok(false);
                }
                Ok(ell(alpha)? / Frac::from_int(h) >= *eps)
            }
            ConeSpec::FixedPhi(eps, phi) => {
                if phi.r() != alpha.r() {
                    return Err(Error::invalid("blow-down datum and class disagree on r"));
                }
                let h = ratio_height(alpha)?;
                if !is_nef(alpha)? {
                    return Ok(false);
                }
                let m = phi.frak_i(alpha).min(phi.frak_j(alpha));
                Ok(Frac::from_ratio(m, h) >= *eps)
            }
            ConeSpec::Ray(v) => {
                if v.r() != alpha.r() {
                    return Err(Error::invalid("ray and class disagree on r"));
                }
                if !is_nef(alpha)? {
                    return Ok(false);
                }
                Ok(positive_multiple(alpha, v))
            }
        }
    }

    /// `nef`, `eps:<q>`, `phi:<q>:<index into blow_down_data(r)>`,
    /// `ray:<f f' e1 .. er>` or `ray:-K`.
    pub fn parse(s: &str, r: usize) -> Result<ConeSpec> {
        let bad = |m: String| Error::parse(1, m);
        let s = s.trim();
        if s == "nef" {
            return Ok(ConeSpec::FullNef);
        }
        if let Some(rest) = s.strip_prefix("eps:") {
            let eps: Frac = rest.parse().map_err(|_| bad(format!("bad epsilon {rest:?}")))?;
            return Ok(ConeSpec::Eps(eps));
        }
        if let Some(rest) = s.strip_prefix("phi:") {
            let (e, idx) = rest.split_once(':').ok_or_else(|| bad("expected phi:<eps>:<index>".into()))?;
            let eps: Frac = e.parse().map_err(|_| bad(format!("bad epsilon {e:?}")))?;
            let idx: usize = idx.trim().parse().map_err(|_| bad(format!("bad datum index {idx:?}")))?;
            let data = blow_down_data(r)?;
            let phi = data
                .get(idx)
                .ok_or_else(|| bad(format!("datum index {idx} out of range (have {})", data.len())))?;
            return Ok(ConeSpec::FixedPhi(eps, phi.clone()));
        }
        if let Some(rest) = s.strip_prefix("ray:") {
            let v = DivisorClass::parse_in(rest, Some(r))?;
            if v.is_zero() {
                return Err(bad("ray through the zero class".into()));
            }
            return Ok(ConeSpec::Ray(v));
        }
        Err(bad(format!("unknown cone {s:?}")))
    }

    /// Inverse of [`ConeSpec::parse`] given the same `r`.
    pub fn to_text(&self) -> String {
        match self {
            ConeSpec::FullNef => "nef".into(),
            ConeSpec::Eps(e) => format!("eps:{e}"),
            ConeSpec::FixedPhi(e, phi) => {
                let idx = blow_down_data(phi.r())
                    .ok()
                    .and_then(|d| d.iter().position(|x| x == phi))
                    .unwrap_or(usize::MAX);
                format!("phi:{e}:{idx}")
            }
            ConeSpec::Ray(v) => {
                let body: Vec<String> = v.coeffs().iter().map(|c| c.to_string()).collect();
                format!("ray:{}", body.join(" "))
            }
        }
    }
}

impl fmt::Display for ConeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn ratio_height(alpha: &DivisorClass) -> Result<i64> {
    if alpha.is_zero() {
        return Err(Error::invalid("ratio test on the zero class"));
    }
    Ok(alpha.height())
}

fn positive_multiple(alpha: &DivisorClass, v: &DivisorClass) -> bool {
    let (a, b) = (alpha.coeffs(), v.coeffs());
    let Some(j) = b.iter().position(|&x| x != 0) else {
        return false;
    };
    if a[j] == 0 || a[j].signum() != b[j].signum() || a[j] % b[j] != 0 {
        return false;
    }
    let m = a[j] / b[j];
    a.iter().zip(b).all(|(x, y)| *x == m * y)
}

// lexicographic successor in [0, max]^n
fn next_tuple(k: &mut [i64], max: i64) -> bool {
    for i in (0..k.len()).rev() {
        if k[i] < max {
            k[i] += 1;
            k[i + 1..].iter_mut().for_each(|x| *x = 0);
            return true;
        }
    }
    false
}

// nef classes of height h, sorted by (a, a', k)
fn nef_slice(r: usize, h: i64) -> Vec<DivisorClass> {
    let n = 8 - r as i64;
    let amax = 4 * h / n;
    (0..=amax)
        .into_par_iter()
        .flat_map_iter(move |a| {
            let mut out = Vec::new();
            for ap in 0..=amax {
                let ksum = 2 * a + 2 * ap - h;
                let kmax = a.min(ap);
                if ksum < 0 || ksum > r as i64 * kmax {
                    continue;
                }
                let mut k = vec![0i64; r - 1];
                loop {
                    let last = ksum - k.iter().sum::<i64>();
                    if (0..=kmax).contains(&last) {
                        let mut kk = k.clone();
                        kk.push(last);
                        let c = DivisorClass::from_invariants(a, ap, &kk).expect("valid r");
                        if is_nef(&c).expect("valid r") {
                            out.push(c);
                        }
                    }
                    if !next_tuple(&mut k, kmax) {
                        break;
                    }
                }
            }
            out
        })
        .collect()
}

/// Integral classes of the cone with `0 < -K.alpha <= d`, ordered by height
/// and then by `(a, a', k)`. The zero class is prepended when
/// `include_zero` is set.
///
/// Nef classes satisfy `0 <= k_i <= min(a, a')` (pair with `E_i`, `F - E_i`,
/// `F' - E_i`) and `a, a' <= 4h / (8 - r)` (Hodge index with `alpha^2 >= 0`),
/// which bounds the search.
pub fn enumerate_in_cone(r: usize, cone: &ConeSpec, d: i64, include_zero: bool) -> Result<Vec<DivisorClass>> {
    if !(1..=7).contains(&r) {
        return Err(Error::invalid(format!("r = {r} outside 1..=7")));
    }
    let mut out = Vec::new();
    if include_zero && d >= 0 {
        out.push(DivisorClass::zero(r));
    }
    for h in 1..=d {
        for c in nef_slice(r, h) {
            if cone.contains(&c)? {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// Ehrhart-slope estimate of the cone volume constant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlphaEstimate {
    pub d_max: i64,
    pub slice: u64,
    pub estimate: Frac,
    pub half_d: i64,
    pub half_slice: u64,
    pub half_estimate: Frac,
}

fn slope(r: usize, count: u64, d: i64) -> Frac {
    let rho = r as u64 + 2;
    let fact: u64 = (1..rho).product();
    Frac::from_int(fact * count) / Frac::from_int(d).pow(rho - 1)
}

/// `(rho - 1)! #{alpha in cone : -K.alpha = d} / d^(rho - 1)` at `d_max` and
/// `d_max / 2`, with `rho = r + 2`.
pub fn alpha_estimate(r: usize, cone: &ConeSpec, d_max: i64) -> Result<AlphaEstimate> {
    if !(1..=7).contains(&r) {
        return Err(Error::invalid(format!("r = {r} outside 1..=7")));
    }
    if d_max < 2 {
        return Err(Error::invalid("d_max must be at least 2"));
    }
    let count = |h: i64| -> Result<u64> {
        let mut n = 0u64;
        for c in nef_slice(r, h) {
            if cone.contains(&c)? {
                n += 1;
            }
        }
        Ok(n)
    };
    let slice = count(d_max)?;
    if slice == 0 {
        return Err(Error::invalid(format!("empty slice at height {d_max}")));
    }
    let half_d = d_max / 2;
    let half_slice = count(half_d)?;
    Ok(AlphaEstimate {
        d_max,
        slice,
        estimate: slope(r, slice, d_max),
        half_d,
        half_slice,
        half_estimate: slope(r, half_slice, half_d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        let k = DivisorClass::anticanonical(3);
        assert!(ConeSpec::FullNef.contains(&k).unwrap());
        assert!(ConeSpec::Eps(Frac::from_ratio(1, 160)).contains(&k).unwrap());
        assert!(!ConeSpec::Eps(Frac::from_ratio(1, 100)).contains(&k).unwrap());
        assert!(!ConeSpec::Eps(Frac::from_ratio(1, 32)).contains(&k).unwrap());
        assert!(!ConeSpec::Eps(Frac::from_ratio(1, 1000)).contains(&DivisorClass::f(3)).unwrap());
        assert!(ConeSpec::Eps(Frac::from_ratio(1, 100)).contains(&DivisorClass::zero(3)).is_err());
        let ray = ConeSpec::Ray(k.clone());
        assert!(ray.contains(&k.scale(3)).unwrap());
        assert!(!ray.contains(&DivisorClass::f(3)).unwrap());
    }

    #[test]
    fn cone_text() {
        for s in ["nef", "eps:1/160", "phi:1/5:0", "ray:2 2 -1 -1 -1"] {
            let c = ConeSpec::parse(s, 3).unwrap();
            assert_eq!(ConeSpec::parse(&c.to_text(), 3).unwrap(), c);
        }
        assert_eq!(ConeSpec::parse("ray:-K", 3).unwrap(), ConeSpec::Ray(DivisorClass::anticanonical(3)));
        assert!(ConeSpec::parse("phi:1/5:9999", 3).is_err());
        assert!(ConeSpec::parse("ray:0 0 0 0 0", 3).is_err());
        assert!(ConeSpec::parse("cube", 3).is_err());
    }

    #[test]
    fn small_enumerations() {
        assert!(enumerate_in_cone(3, &ConeSpec::FullNef, 1, false).unwrap().is_empty());
        assert_eq!(enumerate_in_cone(3, &ConeSpec::FullNef, 0, true).unwrap(), vec![DivisorClass::zero(3)]);
        assert!(enumerate_in_cone(3, &ConeSpec::FullNef, 0, false).unwrap().is_empty());
        let up_to_5 = enumerate_in_cone(3, &ConeSpec::FullNef, 5, false).unwrap();
        assert!(up_to_5.contains(&DivisorClass::anticanonical(3)));
        let h2 = enumerate_in_cone(3, &ConeSpec::FullNef, 2, false).unwrap();
        assert_eq!(h2.len(), 5);
        assert!(h2.iter().all(|c| c.self_intersection() == 0));
    }

    #[test]
    fn ray_estimate_vanishes() {
        let ray = ConeSpec::Ray(DivisorClass::anticanonical(3));
        let est = alpha_estimate(3, &ray, 10).unwrap();
        assert_eq!(est.slice, 1);
        assert_eq!(est.estimate, Frac::from_ratio(24, 10_000));
        assert!(alpha_estimate(3, &ray, 11).is_err());
    }
}
