use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// A rational point `[x : y]` of `P^1`, scaled so the last nonzero coordinate
/// is 1.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PointP1 {
    x: Elem,
    y: Elem,
}

impl PointP1 {
    pub fn new(field: &Field, x: Elem, y: Elem) -> Result<Self> {
        if !y.is_zero() {
            let inv = field.inv(y).expect("nonzero");
            Ok(PointP1 { x: field.mul(x, inv), y: Elem::ONE })
        } else if !x.is_zero() {
            Ok(PointP1 { x: Elem::ONE, y: Elem::ZERO })
        } else {
            Err(Error::invalid("[0 : 0] is not a point"))
        }
    }

    /// `[x : 1]`.
    pub fn affine(x: Elem) -> Self {
        PointP1 { x, y: Elem::ONE }
    }

    /// `[1 : 0]`.
    pub fn infinity() -> Self {
        PointP1 { x: Elem::ONE, y: Elem::ZERO }
    }

    pub fn x(&self) -> Elem {
        self.x
    }

    pub fn y(&self) -> Elem {
        self.y
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// All `q + 1` rational points: `[c : 1]` by code, then `[1 : 0]`.
    pub fn all(field: &Field) -> Vec<PointP1> {
        let mut v: Vec<PointP1> = field.elements().map(PointP1::affine).collect();
        v.push(PointP1::infinity());
        v
    }
}

impl fmt::Display for PointP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.x.0, self.y.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let f = Field::new(3, 1).unwrap();
        let p = PointP1::new(&f, Elem(2), Elem(2)).unwrap();
        assert_eq!(p, PointP1::affine(Elem(1)));
        assert_eq!(PointP1::new(&f, p.x(), p.y()).unwrap(), p);
        assert_eq!(PointP1::new(&f, Elem(2), Elem(0)).unwrap(), PointP1::infinity());
        assert!(PointP1::new(&f, Elem(0), Elem(0)).is_err());
        assert_eq!(PointP1::all(&f).len(), 4);
    }
}
