use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::DivisorClass;

use super::form::{apply_functional, hgcd_degree, is_basepoint_free, BinaryForm};
use super::model::SurfaceModel;

/// Sections `s = (u, v)` of degree `a` and `t = (w, z)` of degree `a'`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SectionPair {
    pub s: (BinaryForm, BinaryForm),
    pub t: (BinaryForm, BinaryForm),
}

impl SectionPair {
    pub fn new(u: BinaryForm, v: BinaryForm, w: BinaryForm, z: BinaryForm) -> Result<Self> {
        if u.degree() != v.degree() {
            return Err(Error::DegreeMismatch(u.degree(), v.degree()));
        }
        if w.degree() != z.degree() {
            return Err(Error::DegreeMismatch(w.degree(), z.degree()));
        }
        Ok(SectionPair { s: (u, v), t: (w, z) })
    }

    pub fn a(&self) -> usize {
        self.s.0.degree()
    }

    pub fn a_prime(&self) -> usize {
        self.t.0.degree()
    }

    pub fn is_basepoint_free(&self) -> Result<bool> {
        Ok(is_basepoint_free(&self.s.0, &self.s.1)? && is_basepoint_free(&self.t.0, &self.t.1)?)
    }
}

/// Contact orders with the blow-up centers, or `Bottom` when the pair maps
/// constantly onto one of the centers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Profile {
    Finite(Vec<u32>),
    Bottom,
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::Bottom => f.write_str("bottom"),
            Profile::Finite(d) => {
                let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// `d_i = deg gcd(lambda_i(s), mu_i(t))`.
pub fn multiplicity_profile(sp: &SectionPair, model: &SurfaceModel) -> Result<Profile> {
    if sp.s.0.field() != model.field() || sp.t.0.field() != model.field() {
        return Err(Error::FieldMismatch);
    }
    if !sp.is_basepoint_free()? {
        return Err(Error::invalid("section pair has a base point"));
    }
    let mut d = Vec::with_capacity(model.r());
    for (p, pp) in model.points() {
        let l = apply_functional(p, &sp.s.0, &sp.s.1)?;
        let m = apply_functional(pp, &sp.t.0, &sp.t.1)?;
        match hgcd_degree(&l, &m)? {
            None => return Ok(Profile::Bottom),
            Some(g) => d.push(g as u32),
        }
    }
    Ok(Profile::Finite(d))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SectionClass {
    pub a: i64,
    pub a_prime: i64,
    pub k: Vec<i64>,
    pub h: i64,
    pub class: DivisorClass,
}

pub fn class_of(sp: &SectionPair, model: &SurfaceModel) -> Result<SectionClass> {
    match multiplicity_profile(sp, model)? {
        Profile::Bottom => Err(Error::invalid("constant pair through a blow-up center has no class")),
        Profile::Finite(d) => {
            let a = sp.a() as i64;
            let ap = sp.a_prime() as i64;
            let k: Vec<i64> = d.iter().map(|&x| x as i64).collect();
            let h = 2 * a + 2 * ap - k.iter().sum::<i64>();
            let class = DivisorClass::from_invariants(a, ap, &k)?;
            Ok(SectionClass { a, a_prime: ap, k, h, class })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn setup() -> (Field, SurfaceModel) {
        let f = Field::new(2, 1).unwrap();
        let m = SurfaceModel::canonical(&f, 3).unwrap();
        (f, m)
    }

    fn form(f: &Field, c: &[u64]) -> BinaryForm {
        BinaryForm::from_codes(f, c).unwrap()
    }

    #[test]
    fn profile_examples() {
        let (f, m) = setup();
        let sp = SectionPair::new(form(&f, &[0, 1]), form(&f, &[1, 0]), form(&f, &[1]), form(&f, &[1])).unwrap();
        assert_eq!(multiplicity_profile(&sp, &m).unwrap(), Profile::Finite(vec![0, 1, 0]));
        let c = class_of(&sp, &m).unwrap();
        assert_eq!((c.a, c.a_prime, c.k.clone(), c.h), (1, 0, vec![0, 1, 0], 1));

        let sp = SectionPair::new(form(&f, &[1]), form(&f, &[0]), form(&f, &[0]), form(&f, &[1])).unwrap();
        assert_eq!(multiplicity_profile(&sp, &m).unwrap(), Profile::Finite(vec![0, 0, 0]));
        assert_eq!(class_of(&sp, &m).unwrap().h, 0);

        let sp = SectionPair::new(form(&f, &[0]), form(&f, &[1]), form(&f, &[0]), form(&f, &[1])).unwrap();
        assert_eq!(multiplicity_profile(&sp, &m).unwrap(), Profile::Bottom);
        assert!(class_of(&sp, &m).is_err());
    }

    #[test]
    fn base_point_rejected() {
        let (f, m) = setup();
        let sp = SectionPair::new(form(&f, &[0, 0, 1]), form(&f, &[0, 1, 0]), form(&f, &[1]), form(&f, &[1]))
            .unwrap();
        assert!(multiplicity_profile(&sp, &m).is_err());
        assert!(SectionPair::new(form(&f, &[0, 1]), form(&f, &[1]), form(&f, &[1]), form(&f, &[1])).is_err());
    }
}
