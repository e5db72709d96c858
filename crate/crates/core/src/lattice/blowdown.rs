use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exact::Frac;

use super::class::DivisorClass;
use super::search::{conic_classes, is_nef, minus_one_classes};

/// A birational morphism to `P^1 x P^1`, recorded by the images of the basis:
/// the two ruling classes and the exceptional classes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BlowDownDatum {
    pub fc: DivisorClass,
    pub fc_prime: DivisorClass,
    pub ec: Vec<DivisorClass>,
}

impl BlowDownDatum {
    /// The defining blow-down, in canonical (sorted) form.
    pub fn identity(r: usize) -> Self {
        let mut ec: Vec<DivisorClass> = (1..=r).map(|i| DivisorClass::e(r, i)).collect();
        ec.sort();
        BlowDownDatum { fc: DivisorClass::f(r), fc_prime: DivisorClass::f_prime(r), ec }
    }

    pub fn r(&self) -> usize {
        self.ec.len()
    }

    /// Checks the intersection table and the anticanonical relation.
    pub fn is_valid(&self) -> bool {
        let r = self.r();
        let (f, g) = (&self.fc, &self.fc_prime);
        if f.r() != r || g.r() != r || self.ec.iter().any(|e| e.r() != r) {
            return false;
        }
        if f.dot(f) != 0 || g.dot(g) != 0 || f.dot(g) != 1 {
            return false;
        }
        for (i, e) in self.ec.iter().enumerate() {
            if e.dot(e) != -1 || e.dot(f) != 0 || e.dot(g) != 0 {
                return false;
            }
            if self.ec[..i].iter().any(|x| x.dot(e) != 0) {
                return false;
            }
        }
        let mut sum = f.scale(2).add(&g.scale(2)).expect("same r");
        for e in &self.ec {
            sum = sum.sub(e).expect("same r");
        }
        sum == DivisorClass::anticanonical(r)
    }

    /// `min(2 Fc.alpha - sum Ec.alpha, 2 Fc'.alpha - sum Ec.alpha)`.
    pub fn frak_i(&self, alpha: &DivisorClass) -> i64 {
        let s: i64 = self.ec.iter().map(|e| e.dot(alpha)).sum();
        (2 * self.fc.dot(alpha) - s).min(2 * self.fc_prime.dot(alpha) - s)
    }

    /// `min_i Ec_i.alpha`.
    pub fn frak_j(&self, alpha: &DivisorClass) -> i64 {
        self.ec.iter().map(|e| e.dot(alpha)).min().unwrap_or(0)
    }

    /// The invariants `(h, a, a', k)` of `alpha` read in this datum's basis.
    pub fn invariants_of(&self, alpha: &DivisorClass) -> (i64, i64, i64, Vec<i64>) {
        let a = self.fc.dot(alpha);
        let ap = self.fc_prime.dot(alpha);
        let k: Vec<i64> = self.ec.iter().map(|e| e.dot(alpha)).collect();
        (2 * a + 2 * ap - k.iter().sum::<i64>(), a, ap, k)
    }
}

static DATA: [OnceLock<Vec<BlowDownDatum>>; 6] = [const { OnceLock::new() }; 6];

fn search(r: usize) -> Result<Vec<BlowDownDatum>> {
    let conics = conic_classes(r)?;
    let minus = minus_one_classes(r)?;
    let target = DivisorClass::anticanonical(r);
    let mut out = Vec::new();
    for fc in conics {
        for gc in conics {
            // one representative per unordered pair
            if fc <= gc || fc.dot(gc) != 1 {
                continue;
            }
            let cands: Vec<&DivisorClass> =
                minus.iter().filter(|e| e.dot(fc) == 0 && e.dot(gc) == 0).collect();
            let mut need = fc.scale(2).add(&gc.scale(2))?.sub(&target)?;
            let mut chosen: Vec<&DivisorClass> = Vec::new();
            extend(&cands, 0, r, &mut chosen, &mut need, &mut |ec| {
                out.push(BlowDownDatum {
                    fc: fc.clone(),
                    fc_prime: gc.clone(),
                    ec: ec.iter().map(|&e| e.clone()).collect(),
                });
            });
        }
    }
    out.sort_by(|a, b| (&a.fc, &a.fc_prime, &a.ec).cmp(&(&b.fc, &b.fc_prime, &b.ec)));
    Ok(out)
}

// chooses increasing, pairwise orthogonal candidates summing to `need`
fn extend<'a>(
    cands: &[&'a DivisorClass],
    start: usize,
    left: usize,
    chosen: &mut Vec<&'a DivisorClass>,
    need: &mut DivisorClass,
    emit: &mut impl FnMut(&[&'a DivisorClass]),
) {
    if left == 0 {
        if need.is_zero() {
            emit(chosen);
        }
        return;
    }
    for i in start..cands.len() {
        let e = cands[i];
        if chosen.iter().any(|c| c.dot(e) != 0) {
            continue;
        }
        chosen.push(e);
        *need = need.sub(e).expect("same r");
        extend(cands, i + 1, left - 1, chosen, need, emit);
        *need = need.add(e).expect("same r");
        chosen.pop();
    }
}

/// Every blow-down to `P^1 x P^1`, with the exceptional classes sorted and
/// the two rulings ordered so that `Fc > Fc'`.
pub fn blow_down_data(r: usize) -> Result<&'static [BlowDownDatum]> {
    if !(1..=5).contains(&r) {
        return Err(Error::invalid(format!("r = {r} outside 1..=5")));
    }
    if let Some(v) = DATA[r].get() {
        return Ok(v);
    }
    let v = search(r)?;
    Ok(DATA[r].get_or_init(|| v))
}

/// `max_phi min(I_phi(alpha) / 32, J_phi(alpha))`.
pub fn ell(alpha: &DivisorClass) -> Result<Frac> {
    if !is_nef(alpha)? {
        return Err(Error::NotNef(alpha.to_string()));
    }
    let data = blow_down_data(alpha.r())?;
    Ok(data
        .iter()
        .map(|phi| {
            let i = Frac::from_ratio(phi.frak_i(alpha), 32);
            let j = Frac::from_int(phi.frak_j(alpha));
            i.min(j)
        })
        .max()
        .expect("the identity datum is always present"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn data_valid_and_contain_identity() {
        for r in 1..=5 {
            let data = blow_down_data(r).unwrap();
            assert!(data.contains(&BlowDownDatum::identity(r)));
            assert!(data.iter().all(|d| d.is_valid()));
        }
        assert_eq!(blow_down_data(1).unwrap().len(), 1);
        assert!(blow_down_data(6).is_err());
    }

    #[test]
    fn ell_examples() {
        let k = DivisorClass::anticanonical(3);
        assert_eq!(ell(&k).unwrap(), Frac::from_ratio(1, 32));
        assert_eq!(ell(&k.scale(2)).unwrap(), Frac::from_ratio(1, 16));
        assert_eq!(ell(&DivisorClass::f(3)).unwrap(), Frac::zero());
        assert!(matches!(ell(&DivisorClass::e(3, 1)), Err(Error::NotNef(_))));
        for phi in blow_down_data(3).unwrap() {
            assert_eq!((phi.frak_i(&k), phi.frak_j(&k)), (1, 1));
        }
    }
}
