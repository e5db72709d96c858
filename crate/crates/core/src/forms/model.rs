use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf::{prime_power, Elem, Field};

use super::point::PointP1;

/// `P^1 x P^1` blown up at `r` rational points `(p_i, p'_i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SurfaceModel {
    field: Field,
    points: Vec<(PointP1, PointP1)>,
    certificate: Vec<String>,
}

// rank of a small matrix over F_q
fn rank(field: &Field, mut m: Vec<Vec<Elem>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rk = 0;
    for c in 0..cols {
        let Some(pivot) = (rk..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rk, pivot);
        let inv = field.inv(m[rk][c]).expect("nonzero pivot");
        for i in 0..rows {
            if i != rk && !m[i][c].is_zero() {
                let factor = field.mul(m[i][c], inv);
                for j in c..cols {
                    let t = field.mul(factor, m[rk][j]);
                    m[i][j] = field.sub(m[i][j], t);
                }
            }
        }
        rk += 1;
    }
    rk
}

// monomials x^i y^(d-i) x'^j y'^(e-j) evaluated at (p, p')
fn bidegree_row(field: &Field, p: &PointP1, pp: &PointP1, d: u64, e: u64) -> Vec<Elem> {
    let mut row = Vec::new();
    for i in 0..=d {
        let a = field.mul(field.pow(p.x(), i), field.pow(p.y(), d - i));
        for j in 0..=e {
            let b = field.mul(field.pow(pp.x(), j), field.pow(pp.y(), e - j));
            row.push(field.mul(a, b));
        }
    }
    row
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

impl SurfaceModel {
    /// Validates the configuration: distinct first coordinates, distinct
    /// second coordinates, and for `r >= 4` no four points on a curve of
    /// bidegree `(1,1)`. For `r >= 6` the six-point conditions for bidegrees
    /// `(1,2)` and `(2,1)` are also checked.
    pub fn new(field: &Field, points: Vec<(PointP1, PointP1)>) -> Result<Self> {
        let r = points.len();
        if !(1..=7).contains(&r) {
            return Err(Error::InvalidModel(format!("r = {r} outside 1..=7")));
        }
        let mut certificate = Vec::new();
        for i in 0..r {
            for j in 0..i {
                if points[i].0 == points[j].0 {
                    return Err(Error::InvalidModel(format!("p_{} = p_{}", j + 1, i + 1)));
                }
                if points[i].1 == points[j].1 {
                    return Err(Error::InvalidModel(format!("p'_{} = p'_{}", j + 1, i + 1)));
                }
            }
        }
        certificate.push("distinct p_i; distinct p'_i".to_string());
        let checks: &[(usize, u64, u64)] = &[(4, 1, 1), (6, 1, 2), (6, 2, 1)];
        for &(k, d, e) in checks {
            if r < k {
                continue;
            }
            for sub in subsets(r, k) {
                let m: Vec<Vec<Elem>> =
                    sub.iter().map(|&i| bidegree_row(field, &points[i].0, &points[i].1, d, e)).collect();
                if rank(field, m) < k {
                    let idx: Vec<String> = sub.iter().map(|i| (i + 1).to_string()).collect();
                    return Err(Error::InvalidModel(format!(
                        "points {} lie on a curve of bidegree ({d},{e})",
                        idx.join(",")
                    )));
                }
            }
            certificate.push(format!("no {k} points on a ({d},{e}) curve"));
        }
        Ok(SurfaceModel { field: field.clone(), points, certificate })
    }

    /// The default model: points `([0:1],[0:1]), ([1:1],[1:1]), ([1:0],[1:0])`
    /// truncated to `r <= 3`; larger `r` takes `p_i` in enumeration order and
    /// the first valid choice of `p'_i` in lexicographic order.
    pub fn canonical(field: &Field, r: usize) -> Result<Self> {
        let pts = PointP1::all(field);
        if r <= 3 && pts.len() >= 3 {
            let diag = [pts[0], PointP1::affine(Elem::ONE), PointP1::infinity()];
            return SurfaceModel::new(field, diag[..r].iter().map(|&p| (p, p)).collect());
        }
        if r > pts.len() {
            return Err(Error::InvalidModel(format!("r = {r} exceeds the {} rational points of P^1", pts.len())));
        }
        let first: Vec<PointP1> = pts[..r].to_vec();
        let mut chosen: Vec<usize> = Vec::new();
        fn go(
            field: &Field,
            pts: &[PointP1],
            first: &[PointP1],
            chosen: &mut Vec<usize>,
        ) -> Option<SurfaceModel> {
            if chosen.len() == first.len() {
                let points = first.iter().zip(chosen.iter()).map(|(&p, &j)| (p, pts[j])).collect();
                return SurfaceModel::new(field, points).ok();
            }
            for j in 0..pts.len() {
                if chosen.contains(&j) {
                    continue;
                }
                chosen.push(j);
                // prune on prefixes that already fail
                let prefix: Vec<(PointP1, PointP1)> =
                    first.iter().zip(chosen.iter()).map(|(&p, &j)| (p, pts[j])).collect();
                if SurfaceModel::new(field, prefix).is_ok() {
                    if let Some(m) = go(field, pts, first, chosen) {
                        return Some(m);
                    }
                }
                chosen.pop();
            }
            None
        }
        go(field, &pts, &first, &mut chosen)
            .ok_or_else(|| Error::InvalidModel(format!("no valid configuration of {r} points over F_{}", field.q())))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn r(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[(PointP1, PointP1)] {
        &self.points
    }

    pub fn certificate(&self) -> &[String] {
        &self.certificate
    }

    /// The same surface with the two factors of `P^1 x P^1` exchanged.
    pub fn swapped(&self) -> Self {
        SurfaceModel {
            field: self.field.clone(),
            points: self.points.iter().map(|&(p, pp)| (pp, p)).collect(),
            certificate: self.certificate.clone(),
        }
    }

    /// Plain-text form: `q p n`, then `r`, then `x y x' y'` per point.
    pub fn to_text(&self) -> String {
        let f = &self.field;
        let mut s = format!("{} {} {}\n{}\n", f.q(), f.p(), f.n(), self.r());
        for (p, pp) in &self.points {
            let _ = writeln!(s, "{} {} {} {}", p.x().0, p.y().0, pp.x().0, pp.y().0);
        }
        s
    }

    /// Inverse of [`SurfaceModel::to_text`]. Blank lines and `#` comments
    /// are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let nums = |(ln, l): (usize, &str), want: usize| -> Result<Vec<u64>> {
            let v = l
                .split_whitespace()
                .map(|t| t.parse::<u64>().map_err(|_| Error::parse(ln, format!("bad integer {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if v.len() != want {
                return Err(Error::parse(ln, format!("expected {want} integers, got {}", v.len())));
            }
            Ok(v)
        };
        let head = lines.next().ok_or_else(|| Error::parse(1, "empty model"))?;
        let ln = head.0;
        let qpn = nums(head, 3)?;
        let (q, p, n) = (qpn[0], qpn[1], qpn[2]);
        if q > crate::gf::MAX_Q {
            return Err(Error::parse(ln, format!("field order {q} exceeds {}", crate::gf::MAX_Q)));
        }
        let Ok(n32) = u32::try_from(n) else {
            return Err(Error::parse(ln, "extension degree out of range"));
        };
        if prime_power(q) != Some((p, n32)) {
            return Err(Error::parse(ln, format!("{q} is not {p}^{n}")));
        }
        let field = Field::new(p, n32).map_err(|e| Error::parse(ln, e.to_string()))?;
        let rl = lines.next().ok_or_else(|| Error::parse(ln + 1, "missing point count"))?;
        let r = nums(rl, 1)?[0] as usize;
        if !(1..=7).contains(&r) {
            return Err(Error::InvalidModel(format!("r = {r} outside 1..=7")));
        }
        let mut points = Vec::with_capacity(r);
        for _ in 0..r {
            let l = lines.next().ok_or_else(|| Error::parse(0, format!("expected {r} point lines")))?;
            let ln = l.0;
            let c = nums(l, 4)?;
            let e = |v: u64| field.elem(v).map_err(|err| Error::parse(ln, err.to_string()));
            let p = PointP1::new(&field, e(c[0])?, e(c[1])?).map_err(|err| Error::parse(ln, err.to_string()))?;
            let pp = PointP1::new(&field, e(c[2])?, e(c[3])?).map_err(|err| Error::parse(ln, err.to_string()))?;
            points.push((p, pp));
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing content"));
        }
        SurfaceModel::new(&field, points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_q2() {
        let f = Field::new(2, 1).unwrap();
        let m = SurfaceModel::canonical(&f, 3).unwrap();
        assert_eq!(m.to_text(), "2 2 1\n3\n0 1 0 1\n1 1 1 1\n1 0 1 0\n");
        assert_eq!(SurfaceModel::parse(&m.to_text()).unwrap(), m);
        assert!(SurfaceModel::canonical(&f, 4).is_err());
    }

    #[test]
    fn larger_r() {
        let f7 = Field::new(7, 1).unwrap();
        let m = SurfaceModel::canonical(&f7, 5).unwrap();
        assert_eq!(m.r(), 5);
        assert!(m.certificate().len() >= 2);
        let f9 = Field::new(3, 2).unwrap();
        let m = SurfaceModel::canonical(&f9, 6).unwrap();
        assert_eq!(m.certificate().len(), 4);
        // six points in general position need more room than F_7 offers
        assert!(SurfaceModel::canonical(&Field::new(7, 1).unwrap(), 6).is_err());
    }

    #[test]
    fn rejects_bad_configs() {
        let f = Field::new(3, 1).unwrap();
        let p = |c: u16| PointP1::affine(Elem(c));
        assert!(matches!(SurfaceModel::new(&f, vec![(p(0), p(0)), (p(0), p(1))]), Err(Error::InvalidModel(_))));
        assert!(SurfaceModel::new(&f, vec![(p(0), p(0)), (p(1), p(0))]).is_err());
        // four points on the diagonal
        let diag: Vec<_> = PointP1::all(&f).into_iter().map(|x| (x, x)).collect();
        assert!(SurfaceModel::new(&f, diag).is_err());
        assert!(SurfaceModel::new(&f, vec![]).is_err());
    }

    #[test]
    fn text_errors() {
        assert!(SurfaceModel::parse("").is_err());
        assert!(SurfaceModel::parse("4 2 1\n1\n0 1 0 1\n").is_err());
        assert!(SurfaceModel::parse("2 2 1\n1\n0 1 0\n").is_err());
        assert!(SurfaceModel::parse("2 2 1\n1\n0 0 0 1\n").is_err());
        assert!(SurfaceModel::parse("2 2 1\n1\n0 1 0 1\n0 1 0 1\n").is_err());
        let m = SurfaceModel::parse("# q p n\n2 2 1\n\n1 # one point\n0 1 1 0\n").unwrap();
        assert_eq!(m.r(), 1);
    }
}
