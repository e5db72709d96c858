use std::collections::BTreeMap;

use crate::forms::{Profile, SurfaceModel};
use crate::lattice::{enumerate_in_cone, ConeSpec, DivisorClass};
use crate::{Error, Result};

use super::{accelerated, naive};

/// Default cap on the work of a single count.
pub const DEFAULT_BUDGET: u128 = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Tabulate every pair `(s, t)`.
    Naive,
    /// Enumerate `s` only and count `t` by linear algebra.
    Accelerated,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Naive => "naive",
            Mode::Accelerated => "accelerated",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Mode::Naive),
            "accelerated" => Ok(Mode::Accelerated),
            _ => Err(Error::invalid(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CountRequest {
    pub model: SurfaceModel,
    pub a: usize,
    pub a_prime: usize,
    pub k: Vec<u32>,
    pub mode: Mode,
    pub budget: u128,
}

impl CountRequest {
    pub fn new(model: &SurfaceModel, a: usize, a_prime: usize, k: &[u32]) -> Self {
        CountRequest {
            model: model.clone(),
            a,
            a_prime,
            k: k.to_vec(),
            mode: Mode::Accelerated,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    /// Estimated work: pairs for the naive counter, outer sections for the
    /// accelerated one.
    pub fn work(&self) -> u128 {
        let q = self.model.q() as u128;
        let e = match self.mode {
            Mode::Naive => 2 * self.a + 2 * self.a_prime + 4,
            Mode::Accelerated => 2 * self.a.min(self.a_prime) + 2,
        };
        q.checked_pow(e as u32).unwrap_or(u128::MAX)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    /// Number of section pairs.
    pub raw: u128,
    /// `raw / (q - 1)^2`.
    pub morphisms: u128,
    /// `2a >= sum k`
    pub regime_a: bool,
    /// `2a' >= sum k`
    pub regime_a_prime: bool,
    pub work: u128,
    pub mode: Mode,
}

impl CountResult {
    pub fn in_regime(&self) -> bool {
        self.regime_a && self.regime_a_prime
    }
}

fn check_shape(model: &SurfaceModel, k: &[u32]) -> Result<()> {
    if k.len() != model.r() {
        return Err(Error::DegreeMismatch(model.r(), k.len()));
    }
    Ok(())
}

/// Exact number of basepoint-free pairs `(s, t)` of degrees `(a, a')` with
/// multiplicity profile `k`.
pub fn count_sections(req: &CountRequest) -> Result<CountResult> {
    check_shape(&req.model, &req.k)?;
    let work = req.work();
    if work > req.budget {
        return Err(Error::BudgetExceeded { work, budget: req.budget });
    }
    let raw = match req.mode {
        Mode::Naive => naive::count_profile(&req.model, req.a, req.a_prime, &req.k),
        Mode::Accelerated => accelerated::count(&req.model, req.a, req.a_prime, &req.k)?,
    };
    let unit = (req.model.q() as u128 - 1).pow(2);
    assert_eq!(raw % unit, 0, "torsor scaling must act freely");
    let sum_k: u64 = req.k.iter().map(|&x| x as u64).sum();
    Ok(CountResult {
        raw,
        morphisms: raw / unit,
        regime_a: 2 * req.a as u64 >= sum_k,
        regime_a_prime: 2 * req.a_prime as u64 >= sum_k,
        work,
        mode: req.mode,
    })
}

/// `(a, a', k)` of a class, rejected when any entry is negative.
pub fn section_data(alpha: &DivisorClass) -> Result<(usize, usize, Vec<u32>)> {
    let inv = alpha.invariants();
    let conv = |x: i64| -> Result<usize> {
        usize::try_from(x).map_err(|_| Error::invalid(format!("class {alpha} has a negative invariant")))
    };
    let k = inv.k.iter().map(|&x| conv(x).map(|v| v as u32)).collect::<Result<Vec<_>>>()?;
    Ok((conv(inv.a)?, conv(inv.a_prime)?, k))
}

/// Section and morphism counts for the class `alpha`.
pub fn count_morphisms(model: &SurfaceModel, alpha: &DivisorClass, mode: Mode, budget: u128) -> Result<CountResult> {
    if alpha.r() != model.r() {
        return Err(Error::DegreeMismatch(model.r(), alpha.r()));
    }
    let (a, ap, k) = section_data(alpha)?;
    count_sections(&CountRequest::new(model, a, ap, &k).mode(mode).budget(budget))
}

/// Sum of morphism counts over the classes of `cone` with height at most
/// `d`. The zero class contributes the model count of constants only when
/// `include_zero` is set.
pub fn count_n_exact(
    model: &SurfaceModel,
    cone: &ConeSpec,
    d: i64,
    include_zero: bool,
    mode: Mode,
    budget: u128,
) -> Result<u128> {
    let classes = enumerate_in_cone(model.r(), cone, d, include_zero)?;
    let mut total = 0u128;
    for alpha in &classes {
        total += count_morphisms(model, alpha, mode, budget)?.morphisms;
    }
    Ok(total)
}

/// Histogram of multiplicity profiles over all basepoint-free pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileCensus {
    pub counts: BTreeMap<Vec<u32>, u128>,
    /// Pairs where some pair of functionals vanishes simultaneously.
    pub bottom: u128,
    pub sections_s: u128,
    pub sections_t: u128,
}

impl ProfileCensus {
    pub fn total(&self) -> u128 {
        self.counts.values().sum::<u128>() + self.bottom
    }
}

/// Naive census of every profile at `(a, a')`.
pub fn profile_census(model: &SurfaceModel, a: usize, a_prime: usize, budget: u128) -> Result<ProfileCensus> {
    let work = CountRequest::new(model, a, a_prime, &vec![0; model.r()]).mode(Mode::Naive).work();
    if work > budget {
        return Err(Error::BudgetExceeded { work, budget });
    }
    let (hist, ns, nt) = naive::census(model, a, a_prime);
    let mut counts = BTreeMap::new();
    let mut bottom = 0;
    for (p, n) in hist {
        match p {
            Profile::Finite(k) => {
                counts.insert(k, n);
            }
            Profile::Bottom => bottom += n,
        }
    }
    Ok(ProfileCensus { counts, bottom, sections_s: ns, sections_t: nt })
}

/// `sum_j min(2 m_j, n_j) - sum_j m_j`.
pub fn dropping_rank(n: &[u32], m: &[u32]) -> Result<u64> {
    if n.len() != m.len() {
        return Err(Error::DegreeMismatch(n.len(), m.len()));
    }
    if let Some(j) = (0..n.len()).find(|&j| m[j] == 0 || m[j] > n[j]) {
        return Err(Error::invalid(format!("need 0 < m_j <= n_j, got m = {}, n = {}", m[j], n[j])));
    }
    Ok(n.iter().zip(m).map(|(&nj, &mj)| (2 * mj as u64).min(nj as u64) - mj as u64).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn model(q: u64) -> SurfaceModel {
        SurfaceModel::canonical(&Field::with_order(q).unwrap(), 3).unwrap()
    }

    #[test]
    fn constants() {
        let m = model(2);
        for mode in [Mode::Naive, Mode::Accelerated] {
            let c = |a, ap| count_sections(&CountRequest::new(&m, a, ap, &[0, 0, 0]).mode(mode)).unwrap().raw;
            assert_eq!(c(0, 0), 6);
            assert_eq!(c(1, 0), 0);
            assert_eq!(c(0, 1), 0);
        }
    }

    #[test]
    fn dropping_rank_examples() {
        assert_eq!(dropping_rank(&[1], &[1]).unwrap(), 0);
        assert_eq!(dropping_rank(&[2], &[1]).unwrap(), 1);
        assert_eq!(dropping_rank(&[3], &[2]).unwrap(), 1);
        assert!(dropping_rank(&[1], &[2]).is_err());
        assert!(dropping_rank(&[1], &[0]).is_err());
    }

    #[test]
    fn budget_rejects() {
        let m = model(2);
        let req = CountRequest::new(&m, 4, 4, &[2, 2, 2]).mode(Mode::Naive).budget(1000);
        assert!(matches!(count_sections(&req), Err(Error::BudgetExceeded { .. })));
    }
}
