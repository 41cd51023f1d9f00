//! E(Q)_tors through the integral short model `y^2 = x^3 - 27 c4 x - 54 c6`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::group::{FieldSpec, TorsionGroup};
use super::{TorsionError, BOUND_PRIMES, DEFAULT_FIELD_D};
use crate::curve::Curve;
use crate::numeric::arith::{factor, gcd_u64, primes_above};
use crate::numeric::Rat;

/// gcd of `#E(F_q)` over the first few good primes `q >= 5`; a multiple of
/// `#E(Q)_tors`.
pub fn rational_reduction_bound(e: &Curve) -> Result<u64, TorsionError> {
    let disc = e.minimal_discriminant();
    let mut g = 0u64;
    for q in primes_above(5)
        .filter(|&q| !(disc % BigInt::from(q)).is_zero())
        .take(BOUND_PRIMES)
    {
        g = gcd_u64(g, e.count_points_mod(q)?);
    }
    Ok(g)
}

pub fn rational_torsion(e: &Curve) -> Result<TorsionGroup, TorsionError> {
    rational_torsion_in(e, DEFAULT_FIELD_D)
}

/// Rational torsion with points expressed as elements of `Q(sqrt(d))`.
pub fn rational_torsion_in(e: &Curve, d: i64) -> Result<TorsionGroup, TorsionError> {
    crate::numeric::quad::validate_d(d)?;
    let bound = rational_reduction_bound(e)?;
    let mut points = Vec::new();
    if bound > 1 {
        let m = e.minimal_curve();
        for (x, y) in short_model_points(&m) {
            let p = m.rational_point(d, x, y)?;
            // non-torsion candidates have exploding heights: test [bound]P first
            if m.kills(bound, &p) {
                points.push(e.from_minimal_point(&p));
            }
        }
    }
    let g = TorsionGroup::from_points(e, FieldSpec::Rational, points)?;
    if !g.is_mazur() {
        return Err(TorsionError::MazurViolation(g.structure.0, g.structure.1));
    }
    Ok(g)
}

/// Integral points of the short model allowed by Nagell–Lutz, pulled back
/// to the minimal model `m`.
fn short_model_points(m: &Curve) -> Vec<(Rat, Rat)> {
    let mm = m.minimal();
    let a = BigInt::from(-27) * &mm.c4;
    let b = BigInt::from(-54) * &mm.c6;
    // discriminant of the short model is 2^12 3^12 disc; y^2 divides 2^8 3^12 disc
    let mut exps: Vec<(BigInt, u32)> = factor(&mm.disc.abs());
    for (p, extra) in [(2u32, 8u32), (3, 12)] {
        let bp = BigInt::from(p);
        match exps.iter_mut().find(|(q, _)| *q == bp) {
            Some(entry) => entry.1 += extra,
            None => exps.push((bp, extra)),
        }
    }
    let mut ys = vec![BigInt::one()];
    for (p, e) in &exps {
        let mut next = Vec::new();
        for y in &ys {
            let mut pk = BigInt::one();
            for _ in 0..=e / 2 {
                next.push(y * &pk);
                pk *= p;
            }
        }
        ys = next;
    }
    ys.push(BigInt::zero());

    let b2 = m.b2().to_integer();
    let (a1, a3) = (m.a1().clone(), m.a3().clone());
    let mut out = Vec::new();
    for y in ys {
        let c = &b - &y * &y;
        for xs in integer_cubic_roots(&a, &c) {
            let x = Rat::new(&xs - BigInt::from(3) * &b2, BigInt::from(36));
            let signs: &[i32] = if y.is_zero() { &[1] } else { &[1, -1] };
            for &s in signs {
                let ys = Rat::from_integer(&y * s);
                let yy = (ys / Rat::from_integer(108.into()) - &a1 * &x - &a3)
                    / Rat::from_integer(2.into());
                out.push((x.clone(), yy));
            }
        }
    }
    out
}

/// Integer roots of `x^3 + a x + c`, via binary search on monotone pieces.
pub(crate) fn integer_cubic_roots(a: &BigInt, c: &BigInt) -> Vec<BigInt> {
    let g = |x: &BigInt| x * x * x + a * x + c;
    let m = BigInt::one() + a.abs().max(c.abs());
    let mut pieces = Vec::new();
    if !a.is_negative() {
        pieces.push((-&m, m.clone(), true));
    } else {
        let r = (-a / BigInt::from(3)).sqrt();
        pieces.push((-&m, -&r - 1, true));
        pieces.push((-&r, r.clone(), false));
        pieces.push((&r + 1, m.clone(), true));
    }
    let mut roots = Vec::new();
    for (lo, hi, increasing) in pieces {
        if lo > hi {
            continue;
        }
        let sign = |x: &BigInt| {
            let v = g(x);
            if increasing {
                v
            } else {
                -v
            }
        };
        // least x in [lo, hi] with sign(x) >= 0
        let (mut l, mut h) = (lo, hi.clone());
        if sign(&h).is_negative() {
            continue;
        }
        while l < h {
            let mid = (&l + &h).div_floor(&BigInt::from(2));
            if sign(&mid).is_negative() {
                l = mid + 1;
            } else {
                h = mid;
            }
        }
        if g(&l).is_zero() && !roots.contains(&l) {
            roots.push(l);
        }
    }
    roots.sort();
    roots
}
