mod common;

use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;

use artor::curve::{Curve, Point};
use artor::galois::{almost_rational_fast, conjugate_point, is_almost_rational};
use artor::numeric::{rational_reconstruct, PolyQ, QuadFieldElement, Rat};

fn pools() -> &'static [common::Pool] {
    static P: OnceLock<Vec<common::Pool>> = OnceLock::new();
    P.get_or_init(common::pools)
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn quad(d: i64) -> impl Strategy<Value = QuadFieldElement> {
    (small_rat(), small_rat()).prop_map(move |(a, b)| QuadFieldElement::new(d, a, b).unwrap())
}

fn field() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![-3i64, -1, 2, 5, -7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn quadratic_field_axioms((x, y, z) in field().prop_flat_map(|d| (quad(d), quad(d), quad(d)))) {
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        if !x.is_zero() {
            prop_assert!((&x * &x.inverse().unwrap()) == QuadFieldElement::one(x.d()));
        }
        let sq = &x * &x;
        let r = sq.sqrt().unwrap();
        prop_assert_eq!(&r * &r, sq);
    }

    #[test]
    fn reconstruction_round_trip(n in -10_000i64..=10_000, m in 1i64..=10_000, k in 6u32..12) {
        let modulus = BigInt::from(11).pow(k);
        let bound = BigInt::from(10_000);
        prop_assume!(BigInt::from(2) * &bound * &bound <= modulus);
        let x = Rat::new(n.into(), m.into());
        let inv = artor::numeric::arith::mod_inverse(x.denom(), &modulus);
        prop_assume!(inv.is_some());
        let residue = artor::numeric::arith::modulo(&(x.numer() * inv.unwrap()), &modulus);
        prop_assert_eq!(rational_reconstruct(&residue, &modulus, &bound), Some(x));
    }

    #[test]
    fn reconstruction_matches_exhaustive_search(residue in 0i64..101, bound in 1i64..=7) {
        let m = BigInt::from(101);
        let mut found = None;
        for den in 1..=bound {
            for num in -bound..=bound {
                let x = Rat::new(num.into(), den.into());
                if x.denom() > &BigInt::from(bound) { continue; }
                if (num - den * residue).rem_euclid(101) == 0 && num_integer::Integer::gcd(&num, &den) == 1 {
                    found = Some(x);
                }
            }
        }
        prop_assert_eq!(rational_reconstruct(&BigInt::from(residue), &m, &BigInt::from(bound)), found);
    }

    #[test]
    fn polynomial_division(a in prop::collection::vec(-30i64..30, 1..9), b in prop::collection::vec(-30i64..30, 1..5)) {
        let f = PolyQ::from_ints(&a);
        let g = PolyQ::from_ints(&b);
        prop_assume!(!g.is_zero());
        let (q, r) = f.div_rem(&g).unwrap();
        prop_assert_eq!(&(&q * &g) + &r, f);
        prop_assert!(r.is_zero() || r.degree() < g.degree());
    }

    #[test]
    fn invariant_identity(a in prop::array::uniform5(small_rat())) {
        if let Ok(e) = Curve::new(a) {
            let lhs = e.c4() * e.c4() * e.c4() - e.c6() * e.c6();
            prop_assert_eq!(lhs, Rat::from_integer(1728.into()) * e.discriminant());
            let m = e.minimal();
            let back = Curve::from_bigints(&m.coeffs).unwrap();
            prop_assert_eq!(back.j_invariant(), e.j_invariant());
        }
    }
}

fn pick(pool: &common::Pool, i: usize) -> Point {
    pool.quadratic[i % pool.quadratic.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn group_axioms(c in 0usize..10, i in any::<usize>(), j in any::<usize>(), k in any::<usize>()) {
        let pool = &pools()[c];
        let e = &pool.curve;
        let (p, q, r) = (pick(pool, i), pick(pool, j), pick(pool, k));
        prop_assert_eq!(e.add(&p, &q), e.add(&q, &p));
        prop_assert_eq!(e.add(&e.add(&p, &q), &r), e.add(&p, &e.add(&q, &r)));
        prop_assert_eq!(e.add(&p, &Point::Infinity), p.clone());
        prop_assert!(e.add(&p, &e.negate(&p)).is_infinity());
        prop_assert_eq!(e.add(&p, &q).conjugate(), e.add(&p.conjugate(), &q.conjugate()));
    }

    #[test]
    fn almost_rational_closure(c in 0usize..10, i in any::<usize>(), j in any::<usize>()) {
        let pool = &pools()[c];
        let e = &pool.curve;
        let p = pick(pool, i);
        let t = pool.rational[j % pool.rational.len()].clone();
        let v = is_almost_rational(e, &p).unwrap();
        prop_assert!(v.verify(e, &p));
        prop_assert_eq!(v.almost_rational, almost_rational_fast(e, &p));
        // rational torsion passes
        prop_assert!(is_almost_rational(e, &t).unwrap().almost_rational);
        // conjugates behave alike
        prop_assert_eq!(is_almost_rational(e, &conjugate_point(&p)).unwrap().almost_rational, v.almost_rational);
        if v.almost_rational {
            // adding rational torsion keeps almost rationality
            prop_assert!(is_almost_rational(e, &e.add(&p, &t)).unwrap().almost_rational);
            // 2P rational forces P rational
            if e.double(&p).is_rational() {
                prop_assert!(p.is_rational());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    // A witness exists exactly when some prime power p^k || n has p^k >= 4,
    // or 3^k || n with k >= 2; otherwise n divides 6.
    #[test]
    fn gm_verdict_and_witness(n in prop_oneof![1u64..=10_000, 10_001u64..=1_000_000_000_000]) {
        let (ok, w) = artor::galois::gm_almost_rational(n);
        prop_assert_eq!(ok, 6 % n == 0);
        if let Some((a, b)) = w {
            let (a, b, n) = (a as u128, b as u128, n as u128);
            prop_assert_eq!(num_integer::Integer::gcd(&a, &n), 1);
            prop_assert_eq!(num_integer::Integer::gcd(&b, &n), 1);
            prop_assert_eq!((a + b) % n, 2 % n);
            prop_assert_ne!(a % n, 1 % n);
        }
    }
}

#[test]
fn reconstruction_of_small_residue() {
    let r = rational_reconstruct(&BigInt::from(50), &BigInt::from(101), &BigInt::from(3));
    assert_eq!(r, Some(Rat::new((-1).into(), 2.into())));
}
