use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::divpoly::{division_polynomial, exact_order_factor, multiplication_x_map};
use super::rational::integer_cubic_roots;
use super::roots::{quadratic_roots, rational_roots};
use super::*;
use crate::curve::{Curve, Point};
use crate::numeric::rat::{rat, rint};
use crate::numeric::{PolyQ, QuadFieldElement, Rat};

fn curve(a: [i64; 5]) -> Curve {
    Curve::from_ints(a).unwrap()
}

const EXAMPLE: [i64; 5] = [1, 0, 1, 354, 4684];

/// (label, coefficients, #E(Q)_tors as listed in standard tables)
const KNOWN: &[(&str, [i64; 5], u64)] = &[
    ("11a1", [0, -1, 1, -10, -20], 5),
    ("11a3", [0, -1, 1, 0, 0], 5),
    ("14a1", [1, 0, 1, 4, -6], 6),
    ("15a1", [1, 1, 1, -10, -10], 8),
    ("21a1", [1, 0, 0, -4, -1], 8),
    ("26b1", [1, -1, 1, -3, 3], 7),
    ("37a1", [0, 0, 1, -1, 0], 1),
    ("54b3", [1, -1, 1, -14, 29], 9),
    ("66c1", [1, 0, 0, -45, 81], 10),
];

/// Every rational point with x = n / k^2, |n| <= span, k in {1, 2}, whose
/// order is at most 12. Torsion points of integral models have such x.
fn brute_force_torsion(e: &Curve, span: i64) -> HashSet<Point> {
    let mut out = HashSet::from([Point::Infinity]);
    for k in [1i64, 2] {
        for n in -span..=span {
            let x = QuadFieldElement::from_rat(-3, rat(n, k * k));
            for p in e.lift_x(&x) {
                if p.is_rational() && e.exact_order(&p, 12).is_some() {
                    out.insert(p);
                }
            }
        }
    }
    out
}

#[test]
fn torsion_poly_degrees() {
    let e = curve(EXAMPLE);
    for n in 1..=12usize {
        let dp = division_polynomial(&e, n).unwrap();
        let expected = if n % 2 == 1 { (n * n - 1) / 2 } else { (n * n + 2) / 2 };
        assert_eq!(dp.torsion_x_poly().degree(), Some(expected), "n = {n}");
    }
    assert!(matches!(
        division_polynomial(&e, 0),
        Err(TorsionError::DivisionIndexOutOfRange(0))
    ));
    assert!(division_polynomial(&e, 49).is_err());
    // psi_3 of the example factors as (x - 2)(3x^3 + 7x^2 + 2141x + 60493)
    let psi3 = division_polynomial(&e, 3).unwrap().psi;
    let expected = &PolyQ::from_ints(&[-2, 1]) * &PolyQ::from_ints(&[60493, 2141, 7, 3]);
    assert_eq!(psi3, expected);
}

#[test]
fn multiplication_map_matches_group_law() {
    let e = curve([0, 0, 1, -1, 0]);
    let p = e.rational_point(-3, rint(0), rint(0)).unwrap();
    for k in 1..=8usize {
        let (num, den) = multiplication_x_map(&e, k);
        let kp = e.scalar_mul(k as i64, &p);
        let x = kp.x().unwrap().a().clone();
        assert_eq!(num.eval(&rint(0)) / den.eval(&rint(0)), x, "k = {k}");
    }
}

#[test]
fn cubic_integer_roots_match_search() {
    for a in -40i64..=40 {
        for c in -60i64..=60 {
            let expected: Vec<BigInt> = (-100i64..=100)
                .filter(|x| x * x * x + a * x + c == 0)
                .map(BigInt::from)
                .collect();
            let got = integer_cubic_roots(&a.into(), &c.into());
            assert_eq!(got, expected, "a = {a}, c = {c}");
        }
    }
}

#[test]
fn rational_torsion_matches_brute_force() {
    for (label, a, order) in KNOWN {
        let e = curve(*a);
        let g = rational_torsion(&e).unwrap();
        let expected = brute_force_torsion(&e, 3000);
        let got: HashSet<Point> = g.all_points.iter().cloned().collect();
        assert_eq!(got, expected, "{label}");
        assert_eq!(g.order(), *order, "{label}");
        assert!(g.is_mazur());
    }
    let g = rational_torsion(&curve([1, 1, 1, -10, -10])).unwrap();
    assert_eq!(g.structure, (4, 2));
    assert_eq!(g.generators.len(), 2);
}

#[test]
fn rational_torsion_of_example_is_z6() {
    let e = curve(EXAMPLE);
    let g = rational_torsion(&e).unwrap();
    assert_eq!(g.structure, (6, 1));
    let t = e.rational_point(-3, rint(2), rint(72)).unwrap();
    assert!(g.contains(&t));
    assert_eq!(e.exact_order(&t, 100), Some(3));
}

#[test]
fn torsion_x_coordinates_are_roots() {
    for (_, a, _) in KNOWN {
        let e = curve(*a);
        for p in rational_torsion(&e).unwrap().all_points {
            let Point::Affine { x, .. } = &p else { continue };
            let n = e.exact_order(&p, 12).unwrap() as usize;
            let x = x.a().clone();
            assert!(division_polynomial(&e, n).unwrap().torsion_x_poly().eval(&x).is_zero());
            assert!(exact_order_factor(&e, n).unwrap().eval(&x).is_zero());
            for m in 1..n {
                if m > 1 && n % m == 0 {
                    assert!(!division_polynomial(&e, m).unwrap().torsion_x_poly().eval(&x).is_zero());
                }
            }
        }
    }
}

#[test]
fn rational_and_quadratic_roots() {
    let f = &PolyQ::from_ints(&[-2, 1]) * &PolyQ::from_ints(&[60493, 2141, 7, 3]);
    assert_eq!(rational_roots(&f).unwrap(), vec![rint(2)]);
    let g = &(&PolyQ::from_ints(&[-1, 2]) * &PolyQ::from_ints(&[3, 1])) * &PolyQ::from_ints(&[1, 0, 1]);
    assert_eq!(rational_roots(&g).unwrap(), vec![rint(-3), rat(1, 2)]);
    assert_eq!(rational_roots(&PolyQ::from_ints(&[1, 2, 1])).unwrap_err(), TorsionError::NoSuitablePrime(5_000));
    assert_eq!(rational_roots(&PolyQ::from_ints(&[0, 1, 1])).unwrap(), vec![rint(-1), rint(0)]);

    let h = &PolyQ::from_ints(&[1, 1, 1]) * &PolyQ::from_ints(&[-5, 1]);
    let roots = quadratic_roots(&h, -3, &BigInt::zero()).unwrap();
    let w = QuadFieldElement::new(-3, rat(-1, 2), rat(1, 2)).unwrap();
    assert_eq!(roots.len(), 3);
    assert!(roots.contains(&w) && roots.contains(&w.conjugate()));
    assert!(roots.contains(&QuadFieldElement::from_rat(-3, rint(5))));
    assert!(quadratic_roots(&PolyQ::from_ints(&[-2, 0, 1]), -3, &BigInt::zero())
        .unwrap()
        .is_empty());
    // a root with large height is still found
    let big = QuadFieldElement::new(-3, rat(123456789, 1000), rat(-987654321, 7)).unwrap();
    let quad = PolyQ::new(vec![big.norm(), -big.trace(), Rat::one()]);
    let roots = quadratic_roots(&quad, -3, &BigInt::zero()).unwrap();
    assert!(roots.contains(&big) && roots.contains(&big.conjugate()));
}

#[test]
fn mazur_list() {
    let g = mazur_groups();
    assert_eq!(g.len(), 15);
    assert!(g.contains(&(12, 1)) && !g.contains(&(11, 1)) && g.contains(&(8, 2)));
}

#[test]
fn primary_decomposition_of_order_six() {
    let e = curve([1, 0, 1, 4, -6]);
    let g = rational_torsion(&e).unwrap();
    let p = g.generators[0].clone();
    assert_eq!(e.exact_order(&p, 100), Some(6));
    let parts = primary_decomposition(&e, &p).unwrap();
    assert_eq!(parts, vec![(2, e.scalar_mul(3, &p)), (3, e.scalar_mul(4, &p))]);
    let sum = parts.iter().fold(Point::Infinity, |acc, (_, q)| e.add(&acc, q));
    assert_eq!(sum, p);
}

/// Short model of the quadratic twist by `d`.
fn twist(e: &Curve, d: i64) -> Curve {
    let m = e.minimal();
    let d = BigInt::from(d);
    let a4 = BigInt::from(-27) * &m.c4 * &d * &d;
    let a6 = BigInt::from(-54) * &m.c6 * &d * &d * &d;
    Curve::from_bigints(&[BigInt::zero(), BigInt::zero(), BigInt::zero(), a4, a6]).unwrap()
}

fn odd_part(n: u64) -> u64 {
    let mut n = n;
    while n % 2 == 0 {
        n /= 2;
    }
    n
}

/// Number of 2-torsion points over Q(sqrt d), from the 2-division cubic.
fn two_torsion_count(e: &Curve, d: i64) -> u64 {
    let f = super::divpoly::two_division_cubic(e);
    let roots = rational_roots(&f).unwrap();
    match roots.len() {
        3 => 4,
        0 => 1,
        _ => {
            let q = f.exact_div(&PolyQ::linear_root(&roots[0])).unwrap();
            let c = q.coeffs();
            let disc = &c[1] * &c[1] - rint(4) * &c[0] * &c[2];
            let ratio = disc / rint(d);
            let square = crate::numeric::rat::rat_sqrt(&ratio).is_some();
            if square && !ratio.is_negative() {
                4
            } else {
                2
            }
        }
    }
}

#[test]
fn quadratic_torsion_consistent_with_twist() {
    for d in [-3i64, -1, 5] {
        for (label, a, _) in KNOWN {
            let e = curve(*a);
            let g = quadratic_torsion(&e, d).unwrap();
            let rat_t = rational_torsion(&e).unwrap();
            let tw = rational_torsion(&twist(&e, d)).unwrap();
            assert_eq!(
                odd_part(g.order()),
                odd_part(rat_t.order()) * odd_part(tw.order()),
                "{label} over Q(sqrt {d})"
            );
            assert_eq!(g.killed_by(&e, 2).len() as u64, two_torsion_count(&e, d), "{label}, d = {d}");
            for p in &rat_t.all_points {
                let p = match p {
                    Point::Infinity => Point::Infinity,
                    Point::Affine { x, y } => e
                        .point(
                            QuadFieldElement::from_rat(d, x.a().clone()),
                            QuadFieldElement::from_rat(d, y.a().clone()),
                        )
                        .unwrap(),
                };
                assert!(g.contains(&p), "{label}: rational torsion inside");
            }
        }
    }
}

#[test]
fn example_curve_over_eisenstein_field() {
    let e = curve(EXAMPLE);
    let g = quadratic_torsion(&e, -3).unwrap();
    let s = e
        .point(
            QuadFieldElement::new(-3, rint(5), rint(12)).unwrap(),
            QuadFieldElement::new(-3, rint(-3), rint(-6)).unwrap(),
        )
        .unwrap();
    assert!(g.contains(&s));
    assert_eq!(e.exact_order(&s, 100), Some(2));
    assert_eq!(g.killed_by(&e, 2).len(), 4);
    assert_eq!(g.order() % 6, 0);
}
