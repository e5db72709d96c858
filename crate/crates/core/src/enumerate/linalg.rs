// Linear conditions on the coefficients of t = (w, z) over F_q.

use crate::gf::{Elem, Field, Poly};

use super::divisor::{ClosedPoint, Divisor};

/// Row-reduced set of linear forms in `2 (a' + 1)` unknowns.
#[derive(Clone)]
pub(crate) struct System {
    field: Field,
    cols: usize,
    // rows in echelon form, each with its pivot column
    rows: Vec<(usize, Vec<Elem>)>,
}

impl System {
    pub fn new(field: &Field, cols: usize) -> Self {
        System { field: field.clone(), cols, rows: Vec::new() }
    }

    /// Dimension of the solution space.
    pub fn dim(&self) -> usize {
        self.cols - self.rows.len()
    }

    pub fn push(&mut self, mut row: Vec<Elem>) {
        let f = &self.field;
        for (piv, r) in &self.rows {
            let c = row[*piv];
            if !c.is_zero() {
                for j in *piv..self.cols {
                    row[j] = f.sub(row[j], f.mul(c, r[j]));
                }
            }
        }
        if let Some(piv) = row.iter().position(|e| !e.is_zero()) {
            let inv = f.inv(row[piv]).expect("nonzero");
            for x in row.iter_mut() {
                *x = f.mul(*x, inv);
            }
            // keep other rows reduced at this pivot
            for (_, r) in self.rows.iter_mut() {
                let c = r[piv];
                if !c.is_zero() {
                    for j in 0..self.cols {
                        r[j] = f.sub(r[j], f.mul(c, row[j]));
                    }
                }
            }
            self.rows.push((piv, row));
        }
    }

    fn coeff_row(&self, deg: usize, alpha: Elem, beta: Elem, weights: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut row = vec![Elem::ZERO; self.cols];
        for j in 0..=deg {
            row[j] = f.mul(alpha, weights[j]);
            row[deg + 1 + j] = f.mul(beta, weights[j]);
        }
        row
    }

    /// Imposes `D | alpha w + beta z` for forms of degree `deg`.
    pub fn divisible(&mut self, deg: usize, alpha: Elem, beta: Elem, d: &Divisor) {
        for row in self.divisible_rows(deg, alpha, beta, d) {
            self.push(row);
        }
    }

    pub fn divisible_rows(&self, deg: usize, alpha: Elem, beta: Elem, d: &Divisor) -> Vec<Vec<Elem>> {
        let mut out = Vec::new();
        let f = self.field.clone();
        let mut g0 = Poly::one(&f);
        let mut inf = 0usize;
        for (p, m) in d {
            match p {
                ClosedPoint::Infinity => inf = *m as usize,
                ClosedPoint::Finite(_) => {
                    g0 = g0.mul(&p.poly(&f).expect("finite").pow(*m)).expect("same field");
                }
            }
        }
        // y^inf | g: the coefficients of x^j y^(deg-j) with deg - j < inf vanish
        for j in (0..=deg).rev().take(inf) {
            let mut w = vec![Elem::ZERO; deg + 1];
            w[j] = Elem::ONE;
            out.push(self.coeff_row(deg, alpha, beta, &w));
        }
        let d0 = g0.degree().expect("nonzero");
        if d0 == 0 {
            return out;
        }
        let rems: Vec<Poly> =
            (0..=deg).map(|j| Poly::x_pow(&f, j).rem(&g0).expect("nonzero modulus")).collect();
        for l in 0..d0 {
            let w: Vec<Elem> = rems.iter().map(|r| r.coeff(l)).collect();
            out.push(self.coeff_row(deg, alpha, beta, &w));
        }
        out
    }

    /// Imposes `alpha w + beta z = 0`.
    pub fn vanishes(&mut self, deg: usize, alpha: Elem, beta: Elem) {
        for j in 0..=deg {
            let mut w = vec![Elem::ZERO; deg + 1];
            w[j] = Elem::ONE;
            let row = self.coeff_row(deg, alpha, beta, &w);
            self.push(row);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::divisor::divisor_of;
    use crate::forms::BinaryForm;

    #[test]
    fn divisibility_matches_enumeration() {
        // count (w, z) of degree 2 over F_3 with D | w for several D
        let f = Field::new(3, 1).unwrap();
        let deg = 2;
        for dcode in 1..BinaryForm::count(&f, 2).unwrap() {
            let dform = BinaryForm::from_index(&f, 2, dcode);
            let d = divisor_of(&dform);
            let mut sys = System::new(&f, 2 * deg + 2);
            sys.divisible(deg, Elem::ONE, Elem::ZERO, &d);
            let expect = (0..BinaryForm::count(&f, deg).unwrap())
                .filter(|&c| {
                    let w = BinaryForm::from_index(&f, deg, c);
                    w.is_zero() || crate::forms::hgcd_degree(&w, &dform).unwrap() == Some(2)
                })
                .count() as u64
                * BinaryForm::count(&f, deg).unwrap();
            assert_eq!(3u64.pow(sys.dim() as u32), expect, "{dform:?}");
        }
    }
}
