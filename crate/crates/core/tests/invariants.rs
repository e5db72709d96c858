use std::collections::BTreeMap;

use proptest::prelude::*;

use rcurves::enumerate::{count_morphisms, count_sections, CountRequest, Mode, DEFAULT_BUDGET};
use rcurves::forms::{hgcd_degree, BinaryForm, PointP1, SurfaceModel};
use rcurves::gf::{closed_points_count, monic_irreducibles, Field, Poly};
use rcurves::lattice::{ell, enumerate_in_cone, ConeSpec, DivisorClass};
use rcurves::sieve::{c_constant, limit_check, tamagawa, virtual_zeta};
use rcurves::Frac;

const ORDERS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn field(q: u64) -> Field {
    Field::with_order(q).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(qi in 0usize..ORDERS.len(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let q = ORDERS[qi];
        let f = field(q);
        let (a, b, c) = (f.elem(a % q).unwrap(), f.elem(b % q).unwrap(), f.elem(c % q).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.elem(0).unwrap());
        prop_assert_eq!(f.pow(a, q), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.elem(1).unwrap());
        }
    }
}

// multiplicity of the monic irreducible `p` in the nonzero polynomial `g`
fn valuation(g: &Poly, p: &Poly) -> usize {
    let mut g = g.clone();
    let mut v = 0;
    while p.divides(&g).unwrap() {
        g = g.div_rem(p).unwrap().0;
        v += 1;
    }
    v
}

fn gcd_by_valuations(f1: &BinaryForm, f2: &BinaryForm) -> usize {
    let (p1, p2) = (f1.dehomogenize(), f2.dehomogenize());
    let d1 = p1.degree().unwrap();
    let d2 = p2.degree().unwrap();
    let mut total = (f1.degree() - d1).min(f2.degree() - d2);
    for m in 1..=d1.min(d2) {
        for p in monic_irreducibles(f1.field(), m) {
            total += m * valuation(&p1, &p).min(valuation(&p2, &p));
        }
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hgcd_matches_valuations(q in prop::sample::select(vec![2u64, 3, 4]), deg in 0usize..6, x in any::<u64>(), y in any::<u64>()) {
        let f = field(q);
        let n = BinaryForm::count(&f, deg).unwrap();
        let f1 = BinaryForm::from_index(&f, deg, x % n);
        let f2 = BinaryForm::from_index(&f, deg, y % n);
        let got = hgcd_degree(&f1, &f2).unwrap();
        match (f1.is_zero(), f2.is_zero()) {
            (true, true) => prop_assert_eq!(got, None),
            (true, false) | (false, true) => prop_assert_eq!(got, Some(deg)),
            _ => prop_assert_eq!(got, Some(gcd_by_valuations(&f1, &f2))),
        }
    }
}

#[test]
fn census_matches_irreducible_lists() {
    for q in [2u64, 3, 4, 5] {
        let f = field(q);
        for m in 2..=4u64 {
            assert_eq!(closed_points_count(q, m).unwrap(), monic_irreducibles(&f, m as usize).len() as u64);
        }
    }
}

fn class_strategy(r: usize) -> impl Strategy<Value = DivisorClass> {
    prop::collection::vec(-6i64..=6, r + 2).prop_map(|c| DivisorClass::from_coeffs(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn intersection_form((r, a, b) in (1usize..=7).prop_flat_map(|r| (Just(r), class_strategy(r), class_strategy(r)))) {
        let k = DivisorClass::anticanonical(r);
        prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
        prop_assert_eq!(a.height(), k.intersect(&a).unwrap());
        let s = a.add(&b).unwrap();
        prop_assert_eq!(s.self_intersection(), a.self_intersection() + 2 * a.intersect(&b).unwrap() + b.self_intersection());
        let inv = a.invariants();
        prop_assert_eq!(DivisorClass::from_invariants(inv.a, inv.a_prime, &inv.k).unwrap(), a.clone());
        prop_assert_eq!(DivisorClass::parse_in(&a.to_string(), None).unwrap(), a);
    }
}

#[test]
fn ell_is_homogeneous_and_cones_are_scale_invariant() {
    let cones = [
        ConeSpec::FullNef,
        ConeSpec::Eps(Frac::from_ratio(1, 20)),
        ConeSpec::parse("phi:1/40:0", 3).unwrap(),
    ];
    for alpha in enumerate_in_cone(3, &ConeSpec::FullNef, 7, false).unwrap() {
        let l = ell(&alpha).unwrap();
        for m in 2..=4 {
            let beta = alpha.scale(m);
            assert_eq!(ell(&beta).unwrap(), &l * &Frac::from(m));
            for c in &cones {
                assert_eq!(c.contains(&beta).unwrap(), c.contains(&alpha).unwrap(), "{alpha} x{m}");
            }
        }
    }
}

fn small_class() -> impl Strategy<Value = (usize, usize, Vec<u32>)> {
    (0usize..=2, 0usize..=2, prop::collection::vec(0u32..=2, 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn swapping_the_factors((a, ap, k) in small_class(), q in prop::sample::select(vec![2u64, 3])) {
        let m = SurfaceModel::canonical(&field(q), 3).unwrap();
        let x = count_sections(&CountRequest::new(&m, a, ap, &k)).unwrap();
        let y = count_sections(&CountRequest::new(&m.swapped(), ap, a, &k)).unwrap();
        prop_assert_eq!(x.raw, y.raw);
        prop_assert_eq!(x.raw % (q as u128 - 1).pow(2), 0);
    }

    #[test]
    fn model_independence((a, ap, k) in small_class(), perm in prop::sample::select(vec![[0usize, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1]])) {
        let f = field(3);
        let pts = PointP1::all(&f);
        let canon = SurfaceModel::canonical(&f, 3).unwrap();
        let other = SurfaceModel::new(&f, (0..3).map(|i| (pts[i], pts[perm[i] + 1])).collect()).unwrap();
        let x = count_sections(&CountRequest::new(&canon, a, ap, &k)).unwrap();
        let y = count_sections(&CountRequest::new(&other, a, ap, &k)).unwrap();
        prop_assert_eq!(x.raw, y.raw);
    }
}

#[test]
fn upper_bound_over_regime_classes() {
    for q in [2u64, 3] {
        let m = SurfaceModel::canonical(&field(q), 3).unwrap();
        let qf = Frac::from(q);
        let ratio = Frac::from_ratio(q as i64, q as i64 - 1);
        for alpha in enumerate_in_cone(3, &ConeSpec::FullNef, 5, false).unwrap() {
            if !alpha.invariants().in_regime() {
                continue;
            }
            let n = count_morphisms(&m, &alpha, Mode::Accelerated, DEFAULT_BUDGET).unwrap().morphisms;
            let bound = qf.pow(alpha.height() as u64 + 2) * ratio.pow(5);
            assert!(Frac::from(n as u64) <= bound, "q={q} {alpha}");
        }
    }
}

type Dense = BTreeMap<Vec<u32>, Frac>;

fn dense_mul(x: &Dense, y: &Dense, caps: &[u32]) -> Dense {
    let mut out = Dense::new();
    for (i, a) in x {
        for (j, b) in y {
            let k: Vec<u32> = i.iter().zip(j).map(|(p, q)| p + q).collect();
            if k.iter().zip(caps).all(|(p, c)| p <= c) {
                let e = out.entry(k).or_insert_with(Frac::zero);
                *e = &*e + &(a * b);
            }
        }
    }
    out
}

// local factor from its closed form
fn dense_local(m: u32, r: usize, q: u64, caps: &[u32]) -> Dense {
    let qf = Frac::from(q);
    let qm = qf.pow(m as u64);
    let q4 = qm.pow(4);
    let one = Frac::one();
    let c0 = &(&(&q4 - &(Frac::from(r as u64 + 2) * qm.pow(2))) + &(Frac::from(2 * r as u64) * qm.clone()))
        - &Frac::from(r as u64 - 1);
    let c1 = &(&(&q4 - &(Frac::from(2u64) * qm.pow(3))) + &(Frac::from(2u64) * qm.clone())) - &one;
    let mut out = Dense::new();
    out.insert(vec![0; r], &c0 / &q4);
    for i in 0..r {
        let mut d = 1u32;
        while m * d <= caps[i] {
            let mut k = vec![0; r];
            k[i] = m * d;
            out.insert(k, &(&c1 / &q4) / &qm.pow(d as u64));
            d += 1;
        }
    }
    out
}

fn dense_zeta(r: usize, q: u64, caps: &[u32], d: u64) -> Dense {
    let mut z = Dense::new();
    z.insert(vec![0; r], Frac::one());
    for m in 1..=d {
        let l = dense_local(m as u32, r, q, caps);
        for _ in 0..closed_points_count(q, m).unwrap() {
            z = dense_mul(&z, &l, caps);
        }
    }
    z
}

#[test]
fn virtual_zeta_matches_direct_product() {
    for (r, q, caps, d) in [(2usize, 2u64, vec![2u32, 1], 3u64), (3, 2, vec![1, 1, 1], 2), (1, 3, vec![3], 3)] {
        let fast = virtual_zeta(r, q, &caps, d).unwrap().series;
        let slow = dense_zeta(r, q, &caps, d);
        for (k, v) in fast.terms() {
            assert_eq!(&v, slow.get(&k).unwrap_or(&Frac::zero()), "r={r} q={q} k={k:?}");
        }
    }
}

#[test]
fn truncation_commutes_with_caps() {
    let small = virtual_zeta(3, 2, &[1, 1, 1], 6).unwrap().series;
    let big = virtual_zeta(3, 2, &[2, 3, 1], 6).unwrap().series;
    for (k, v) in small.terms() {
        assert_eq!(big.coeff(&k).unwrap(), v);
    }
}

#[test]
fn tail_bounds_contain_later_cutoffs() {
    for q in [2u64, 3] {
        for d in 1..=5u64 {
            let now = tamagawa(3, q, d).unwrap();
            let later = tamagawa(3, q, d + 3).unwrap();
            let low = &now.value * &(Frac::one() - &now.relative_bound);
            assert!(later.value <= now.value && later.value >= low, "tau q={q} d={d}");
            let z = virtual_zeta(3, q, &[2, 2, 2], d.max(2)).unwrap();
            let z2 = virtual_zeta(3, q, &[2, 2, 2], d.max(2) + 3).unwrap();
            for (k, v) in z.series.terms() {
                let w = z2.series.coeff(&k).unwrap();
                let low = &v * &(Frac::one() - &z.relative_bound);
                assert!(w <= v && w >= low, "Z q={q} d={d} k={k:?}");
            }
        }
    }
}

#[test]
fn tau_is_a_rescaled_limit_constant() {
    for q in [2u64, 3, 4] {
        let factor = Frac::from(q).pow(2) * Frac::from_ratio(q as i64, q as i64 - 1).pow(2);
        for d in 0..=6 {
            assert_eq!(tamagawa(3, q, d).unwrap().value, &factor * &c_constant(3, q, d).unwrap());
        }
    }
}

#[test]
fn limit_gaps_shrink_at_q3() {
    let rep = limit_check(3, 3, 2, 8).unwrap();
    assert!(rep.pass, "{:?}", rep.gaps);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn parsers_never_panic(s in "\\PC{0,80}", r in 0usize..10) {
        let _ = SurfaceModel::parse(&s);
        let _ = DivisorClass::parse_in(&s, Some(r));
        let _ = DivisorClass::parse_in(&s, None);
        if (1..=7).contains(&r) {
            let _ = ConeSpec::parse(&s, r);
        }
        let _ = s.parse::<Frac>();
    }

    #[test]
    fn model_parser_on_numeric_noise(lines in prop::collection::vec(prop::collection::vec(0u32..12, 0..6), 0..6)) {
        let text: String = lines
            .iter()
            .map(|l| l.iter().map(u32::to_string).collect::<Vec<_>>().join(" ") + "\n")
            .collect();
        let _ = SurfaceModel::parse(&text);
    }
}
