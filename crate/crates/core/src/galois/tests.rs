use super::*;
use crate::numeric::rat::{rat, rint};
use crate::torsion::{quadratic_torsion, rational_torsion};

fn curve(a: [i64; 5]) -> Curve {
    Curve::from_ints(a).unwrap()
}

fn k(a: i64, b: i64) -> QuadFieldElement {
    QuadFieldElement::new(-3, rint(a), rint(b)).unwrap()
}

const EXAMPLE: [i64; 5] = [1, 0, 1, 354, 4684];
const ISOGENOUS: [i64; 5] = [1, 0, 1, -3321, -157604];

#[test]
fn conjugation_of_points() {
    let e = curve(EXAMPLE);
    let s = e.point(k(5, 12), k(-3, -6)).unwrap();
    assert_eq!(conjugate_point(&s), Point::Affine { x: k(5, -12), y: k(-3, 6) });
    assert!(e.contains(&conjugate_point(&s)));
    assert_eq!(conjugate_point(&conjugate_point(&s)), s);
    let t = e.rational_point(-3, rint(2), rint(72)).unwrap();
    assert_eq!(conjugate_point(&t), t);
    assert_eq!(conjugate_point(&Point::Infinity), Point::Infinity);
}

#[test]
fn rational_torsion_is_almost_rational() {
    for a in [EXAMPLE, [1, 0, 1, 4, -6], [1, 1, 1, -10, -10]] {
        let e = curve(a);
        for p in rational_torsion(&e).unwrap().all_points {
            let v = is_almost_rational(&e, &p).unwrap();
            assert!(v.almost_rational && v.witness.is_none() && v.verify(&e, &p));
        }
    }
}

#[test]
fn two_torsion_over_k_fails_with_sigma_sigma() {
    let e = curve(EXAMPLE);
    let s = e.point(k(5, 12), k(-3, -6)).unwrap();
    let v = is_almost_rational(&e, &s).unwrap();
    assert!(!v.almost_rational);
    assert_eq!(v.witness, Some((GaloisElement::Conjugation, GaloisElement::Conjugation)));
    assert!(v.verify(&e, &s));
    assert!(matches!(
        is_almost_rational(&e, &Point::Affine { x: k(0, 1), y: k(0, 1) }),
        Err(GaloisError::NotOnCurve(_))
    ));
}

#[test]
fn mu3_generators() {
    // the 3-torsion of the example is rational, with no mu3 line
    assert_eq!(mu3_generator(&curve(EXAMPLE)), None);
    assert_eq!(mu3_generator(&curve([0, 0, 1, -1, 0])), None);
    let e = curve(ISOGENOUS);
    let q = mu3_generator(&e).unwrap();
    assert_eq!(q.x().unwrap(), &QuadFieldElement::from_rat(-3, rat(-19, 3)));
    assert!(e.kills(3, &q) && q.conjugate() == e.negate(&q));
}

#[test]
fn q_plus_s_on_the_isogenous_curve() {
    let e = curve(ISOGENOUS);
    let q = mu3_generator(&e).unwrap();
    let g = quadratic_torsion(&e, -3).unwrap();
    let s = g
        .all_points
        .iter()
        .find(|p| !p.is_rational() && e.exact_order(p, 10) == Some(2))
        .unwrap()
        .clone();
    assert_eq!(s.x().unwrap().a(), &rint(-37));
    let p = e.add(&q, &s);
    assert!(is_almost_rational(&e, &p).unwrap().almost_rational);
    let three_p = e.scalar_mul(3, &p);
    assert_eq!(three_p, s);
    assert!(!is_almost_rational(&e, &three_p).unwrap().almost_rational);
    let lhs = e.sub(&e.double(&p.conjugate()), &e.double(&p));
    assert_eq!(lhs, e.negate(&q));
}

#[test]
fn isogenies_of_small_degree() {
    let cases: &[([i64; 5], [bool; 4])] = &[
        // (coefficients, [2, 3, 5, 7])
        ([0, 0, 1, -1, 0], [false, false, false, false]),
        ([0, -1, 1, -10, -20], [false, false, true, false]),
        ([0, -1, 1, -7820, -263580], [false, false, true, false]),
        ([1, 0, 1, 4, -6], [true, true, false, false]),
        ([1, -1, 1, -3, 3], [false, false, false, true]),
        ([1, -1, 1, -213, -1257], [false, false, false, true]),
        (EXAMPLE, [true, true, false, false]),
        (ISOGENOUS, [true, true, false, false]),
    ];
    for (a, expected) in cases {
        let e = curve(*a);
        for (i, p) in [2u64, 3, 5, 7].into_iter().enumerate() {
            assert_eq!(has_rational_isogeny(&e, p).unwrap(), expected[i], "{a:?}, p = {p}");
        }
    }
    assert!(matches!(
        has_rational_isogeny(&curve(EXAMPLE), 11),
        Err(GaloisError::UnsupportedPrime(11))
    ));
}

#[test]
fn gm_small_orders() {
    assert_eq!(gm_almost_rational(6), (true, None));
    assert_eq!(gm_almost_rational(5), (false, Some((3, 4))));
    assert_eq!(gm_almost_rational(9), (false, Some((4, 7))));
    for n in 1..=300u64 {
        assert_eq!(gm_almost_rational(n).0, 6 % n == 0, "n = {n}");
    }
}

#[test]
fn gm_crt_witnesses_for_large_orders() {
    for n in [10_007u64, 2u64.pow(20), 3u64.pow(12), 2 * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23, 999_999_937 * 6] {
        let (ok, w) = gm_almost_rational(n);
        assert!(!ok && w.is_some());
    }
    assert_eq!(gm_crt_witness(3u64.pow(12)), Some((4, 3u64.pow(12) - 2)));
    assert_eq!(gm_crt_witness(6), None);
}

#[test]
fn orbit_modules() {
    let e = curve([1, 0, 1, 4, -6]);
    let g = rational_torsion(&e).unwrap();
    let p = g.generators[0].clone();
    let o = orbit_module(&e, &p).unwrap();
    assert_eq!(o.conjugates, vec![p.clone()]);
    assert_eq!(o.generated_module.len(), 6);

    let e = curve(ISOGENOUS);
    let q = mu3_generator(&e).unwrap();
    let o = orbit_module(&e, &q).unwrap();
    assert_eq!(o.conjugates, vec![q.clone(), e.negate(&q)]);
    assert_eq!(o.generated_module.len(), 3);
    let quad = quadratic_torsion(&e, -3).unwrap();
    assert_eq!(quad.order() % o.generated_module.len() as u64, 0);
}
