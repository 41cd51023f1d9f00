//! E(Q(sqrt d))_tors by searching x-coordinates of prime-power order points.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::divpoly::{division_polynomials_upto, two_division_cubic};
use super::group::{FieldSpec, TorsionGroup};
use super::roots::quadratic_roots;
use super::{TorsionError, BOUND_PRIMES};
use crate::curve::{Curve, Point};
use crate::numeric::arith::{factor, gcd_u64, legendre_u64, primes_above};
use crate::numeric::quad::validate_d;
use crate::numeric::PolyQ;

/// Largest point order searched directly.
pub const QUADRATIC_ORDER_CAP: u64 = 24;

/// Prime count used when the default bound would breach the order cap.
const REFINED_BOUND_PRIMES: usize = 40;

fn bound_with(e: &Curve, d: i64, count: usize) -> Result<u64, TorsionError> {
    let disc = e.minimal_discriminant();
    let mut g = 0u64;
    for q in primes_above(5)
        .filter(|&q| !(disc % BigInt::from(q)).is_zero() && d % q as i64 != 0)
        .take(count)
    {
        let n = if legendre_u64(d, q) == 1 {
            e.count_points_mod(q)?
        } else {
            let a = e.trace_of_frobenius(q)? as i128;
            ((q as i128 + 1).pow(2) - a * a) as u64
        };
        g = gcd_u64(g, n);
    }
    Ok(g)
}

/// gcd of `#E(F_q)` (q split in Q(sqrt d)) and `#E(F_{q^2})` (q inert) over
/// several good primes; a multiple of `#E(Q(sqrt d))_tors`.
pub fn quadratic_reduction_bound(e: &Curve, d: i64) -> Result<u64, TorsionError> {
    validate_d(d)?;
    bound_with(e, d, BOUND_PRIMES)
}

/// Division polynomials of one curve, computed once up to a fixed index.
struct Kernels {
    f: PolyQ,
    g: Vec<PolyQ>,
}

impl Kernels {
    fn new(e: &Curve, upto: usize) -> Self {
        Kernels {
            f: two_division_cubic(e),
            g: division_polynomials_upto(e, upto.max(4)),
        }
    }

    fn torsion_x_poly(&self, n: usize) -> PolyQ {
        if n % 2 == 0 {
            &self.f * &self.g[n]
        } else {
            self.g[n].clone()
        }
    }

    /// x-polynomial of points of exact order `p^j`.
    fn prime_power(&self, p: usize, j: u32) -> PolyQ {
        let n = p.pow(j);
        let full = self.torsion_x_poly(n);
        if j == 1 {
            return full;
        }
        full.exact_div(&self.torsion_x_poly(n / p))
            .expect("E[n/p] x-polynomial divides the E[n] one")
    }
}

/// Points of exact order `p^j` over the field, on the curve `m`.
fn points_of_order(
    m: &Curve,
    kernels: &Kernels,
    p: u64,
    j: u32,
    d: i64,
) -> Result<Vec<Point>, TorsionError> {
    let n = p.pow(j);
    let poly = kernels.prime_power(p as usize, j);
    let mut pts = Vec::new();
    for x in quadratic_roots(&poly, d, m.minimal_discriminant())? {
        for pt in m.lift_x(&x) {
            if m.kills(n, &pt) && !m.kills(n / p, &pt) {
                pts.push(pt);
            }
        }
    }
    Ok(pts)
}

pub fn quadratic_torsion(e: &Curve, d: i64) -> Result<TorsionGroup, TorsionError> {
    validate_d(d)?;
    let m = e.minimal_curve();
    let mut bound = bound_with(&m, d, BOUND_PRIMES)?;
    let over_cap = |b: u64| {
        factor(&BigInt::from(b))
            .iter()
            .any(|(p, _)| *p > BigInt::from(QUADRATIC_ORDER_CAP))
    };
    if over_cap(bound) {
        bound = bound_with(&m, d, REFINED_BOUND_PRIMES)?;
    }

    let primes: Vec<(u64, u32)> = factor(&BigInt::from(bound))
        .into_iter()
        .map(|(p, e)| (u64::try_from(p).unwrap(), e))
        .collect();
    if let Some(&(p, _)) = primes.iter().find(|(p, _)| *p > QUADRATIC_ORDER_CAP) {
        return Err(TorsionError::CapExceeded {
            order: 1,
            next: p,
            bound,
            cap: QUADRATIC_ORDER_CAP,
        });
    }
    let top = primes
        .iter()
        .map(|&(p, e)| {
            let mut n = 1;
            for _ in 0..e {
                if n * p > QUADRATIC_ORDER_CAP {
                    break;
                }
                n *= p;
            }
            n
        })
        .max()
        .unwrap_or(1);
    let kernels = Kernels::new(&m, top as usize);

    // primary components, each containing the identity
    let mut components: Vec<Vec<Point>> = Vec::new();
    for &(p, e_max) in &primes {
        let mut comp = vec![Point::Infinity];
        for j in 1..=e_max {
            let n = p.pow(j);
            if n > QUADRATIC_ORDER_CAP {
                let refined = bound_with(&m, d, REFINED_BOUND_PRIMES)?;
                if refined % n == 0 {
                    return Err(TorsionError::CapExceeded {
                        order: n / p,
                        next: n,
                        bound: refined,
                        cap: QUADRATIC_ORDER_CAP,
                    });
                }
                break;
            }
            let pts = points_of_order(&m, &kernels, p, j, d)?;
            if pts.is_empty() {
                break;
            }
            comp.extend(pts);
        }
        components.push(comp);
    }

    let mut all: HashSet<Point> = HashSet::from([Point::Infinity]);
    for comp in &components {
        let current: Vec<Point> = all.iter().cloned().collect();
        for a in &current {
            for b in comp {
                all.insert(m.add(a, b));
            }
        }
    }
    let pts = all.iter().map(|p| e.from_minimal_point(p));
    TorsionGroup::from_points(e, FieldSpec::Quadratic(d), pts)
}

