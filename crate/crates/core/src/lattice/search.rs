use std::sync::OnceLock;

use crate::error::{Error, Result};

use super::class::DivisorClass;

fn isqrt(n: i64) -> i64 {
    if n < 0 {
        return -1;
    }
    let mut x = (n as f64).sqrt() as i64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

// Integers x with (n x - c)^2 <= bound.
fn cs_range(n: i64, c: i64, bound: i64) -> Option<(i64, i64)> {
    let s = isqrt(bound);
    if s < 0 {
        return None;
    }
    Some(((c - s).div_euclid(n) + ((c - s).rem_euclid(n) != 0) as i64, (c + s).div_euclid(n)))
}

/// Coefficient ranges `(f, f', e_i)` containing every class with `D^2 = s`
/// and `-K.D = d`. With `n = K^2 > 0`, the orthogonal complement of `K` is
/// negative definite, so for any test class `T` Cauchy-Schwarz gives
/// `(n T.D - d (-K.T))^2 <= ((-K.T)^2 - n T^2)(d^2 - n s)`.
pub(crate) fn search_box(r: usize, s: i64, d: i64) -> Option<[(i64, i64); 3]> {
    let n = 8 - r as i64;
    let disc = d * d - n * s;
    // T = F' pairs with D to give f, T = F gives f'
    let ff = cs_range(n, 2 * d, 4 * disc)?;
    // T = E_i gives -e_i
    let (lo, hi) = cs_range(n, d, (1 + n) * disc)?;
    Some([ff, ff, (-hi, -lo)])
}

/// All classes with `D^2 = s` and `-K.D = d`, sorted.
pub fn classes_with(r: usize, s: i64, d: i64) -> Result<Vec<DivisorClass>> {
    if !(1..=7).contains(&r) {
        return Err(Error::invalid(format!("r = {r} outside 1..=7")));
    }
    let Some([(f0, f1), (g0, g1), (e0, e1)]) = search_box(r, s, d) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    let mut e = vec![e0; r - 1];
    for f in f0..=f1 {
        for fp in g0..=g1 {
            e.iter_mut().for_each(|x| *x = e0);
            loop {
                let last = d - 2 * f - 2 * fp - e.iter().sum::<i64>();
                if (e0..=e1).contains(&last) {
                    let sq = 2 * f * fp - e.iter().map(|x| x * x).sum::<i64>() - last * last;
                    if sq == s {
                        let mut c = vec![f, fp];
                        c.extend_from_slice(&e);
                        c.push(last);
                        out.push(DivisorClass::from_coeffs(c)?);
                    }
                }
                // odometer over e_1 .. e_{r-1}
                let mut i = 0;
                while i < e.len() {
                    if e[i] < e1 {
                        e[i] += 1;
                        break;
                    }
                    e[i] = e0;
                    i += 1;
                }
                if i == e.len() {
                    break;
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

static MINUS_ONE: [OnceLock<Vec<DivisorClass>>; 8] = [const { OnceLock::new() }; 8];
static CONICS: [OnceLock<Vec<DivisorClass>>; 8] = [const { OnceLock::new() }; 8];

fn check_r(r: usize) -> Result<()> {
    if (1..=7).contains(&r) {
        Ok(())
    } else {
        Err(Error::invalid(format!("r = {r} outside 1..=7")))
    }
}

/// Classes with `D^2 = -1`, `-K.D = 1`.
pub fn minus_one_classes(r: usize) -> Result<&'static [DivisorClass]> {
    check_r(r)?;
    if let Some(v) = MINUS_ONE[r].get() {
        return Ok(v);
    }
    let v = classes_with(r, -1, 1)?;
    Ok(MINUS_ONE[r].get_or_init(|| v))
}

/// Classes with `D^2 = 0`, `-K.D = 2`.
pub fn conic_classes(r: usize) -> Result<&'static [DivisorClass]> {
    check_r(r)?;
    if let Some(v) = CONICS[r].get() {
        return Ok(v);
    }
    let v = classes_with(r, 0, 2)?;
    Ok(CONICS[r].get_or_init(|| v))
}

/// Nef test against the generators of the effective cone: the
/// `(-1)`-classes together with `F` and `F'`.
pub fn is_nef(alpha: &DivisorClass) -> Result<bool> {
    let r = alpha.r();
    let c = alpha.coeffs();
    // alpha.F = f', alpha.F' = f
    if c[0] < 0 || c[1] < 0 {
        return Ok(false);
    }
    Ok(minus_one_classes(r)?.iter().all(|d| alpha.dot(d) >= 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_counts() {
        let minus: Vec<usize> = (1..=7).map(|r| minus_one_classes(r).unwrap().len()).collect();
        assert_eq!(minus, vec![3, 6, 10, 16, 27, 56, 240]);
        let conics: Vec<usize> = (1..=7).map(|r| conic_classes(r).unwrap().len()).collect();
        assert_eq!(conics, vec![2, 3, 5, 10, 27, 126, 2160]);
        assert!(minus_one_classes(0).is_err());
        assert!(minus_one_classes(8).is_err());
    }

    #[test]
    fn small_lists() {
        let r1: Vec<String> = minus_one_classes(1).unwrap().iter().map(|c| c.to_string()).collect();
        assert_eq!(r1, vec!["1; 0 0 1", "1; 0 1 -1", "1; 1 0 -1"]);
        let c2 = conic_classes(2).unwrap();
        let expect = [
            DivisorClass::f(2),
            DivisorClass::f_prime(2),
            DivisorClass::new(1, 1, &[-1, -1]).unwrap(),
        ];
        for c in &expect {
            assert!(c2.contains(c));
        }
        assert_eq!(c2.len(), 3);
    }

    #[test]
    fn enlarged_box_finds_nothing_new() {
        for r in 1..=5usize {
            for (s, d) in [(-1i64, 1i64), (0, 2)] {
                let [(f0, f1), _, (e0, e1)] = search_box(r, s, d).unwrap();
                let (f0, f1, e0, e1) = (f0 - 2, f1 + 2, e0 - 2, e1 + 2);
                let mut found = 0;
                let dims = r + 2;
                let ranges: Vec<(i64, i64)> =
                    (0..dims).map(|i| if i < 2 { (f0, f1) } else { (e0, e1) }).collect();
                let mut cur: Vec<i64> = ranges.iter().map(|x| x.0).collect();
                'outer: loop {
                    let c = DivisorClass::from_coeffs(cur.clone()).unwrap();
                    if c.self_intersection() == s && c.height() == d {
                        found += 1;
                    }
                    for i in 0..dims {
                        if cur[i] < ranges[i].1 {
                            cur[i] += 1;
                            continue 'outer;
                        }
                        cur[i] = ranges[i].0;
                    }
                    break;
                }
                assert_eq!(found, classes_with(r, s, d).unwrap().len(), "r={r} s={s}");
            }
        }
    }

    #[test]
    fn nef_examples() {
        for r in 1..=7 {
            assert!(is_nef(&DivisorClass::anticanonical(r)).unwrap());
            assert!(!is_nef(&DivisorClass::e(r, 1)).unwrap());
        }
        assert!(is_nef(&DivisorClass::f(3)).unwrap());
        for d in minus_one_classes(3).unwrap() {
            assert!(DivisorClass::f(3).dot(d) >= 0);
            assert_eq!(DivisorClass::anticanonical(3).dot(d), 1);
        }
    }
}
