//! Rational and quadratic roots of squarefree polynomials over Q, found by
//! lifting roots modulo an auxiliary prime and reconstructing rationals.
//!
//! The reconstruction height starts at [`LADDER_START`] and doubles up to
//! [`LADDER_END`]. Roots still unexplained after that are retried once with a
//! coefficient bound valid for every linear or quadratic factor of the input,
//! so the returned list is complete.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::TorsionError;
use crate::numeric::arith::{legendre_u64, mod_inverse, modulo, primes_above};
use crate::numeric::{hensel_roots, rational_reconstruct, PadicContext, PolyQ, QuadFieldElement, Rat};

pub const LADDER_START: u64 = 1_000_000;
pub const LADDER_END: u64 = 1_000_000_000_000;
/// Extra factor on the modulus beyond the `2 B^2` reconstruction needs.
const SLACK_BITS: u32 = 32;
/// Auxiliary primes are searched in `(AUX_START, AUX_END)`.
const AUX_START: u64 = 50;
const AUX_END: u64 = 5_000;
/// Largest final-stage height, in bits, before giving up.
const MAX_FINAL_BITS: u64 = 1 << 18;

fn primitive(f: &PolyQ) -> Vec<BigInt> {
    f.content_primitive().1
}

/// `ceil(||f||_2)` for the primitive integer multiple of `f`.
fn l2_ceiling(coeffs: &[BigInt]) -> BigInt {
    let s: BigInt = coeffs.iter().map(|c| c * c).sum();
    s.sqrt() + BigInt::one()
}

fn modulus_for(bound: &BigInt) -> BigInt {
    BigInt::from(2) * bound * bound << SLACK_BITS
}

/// Lifted roots ordered by their residue mod `q`, so lists computed at
/// different precisions line up.
fn lift(f: &PolyQ, ctx: &PadicContext) -> Result<Vec<BigInt>, TorsionError> {
    let mut r = hensel_roots(f, ctx)?.lifted;
    let q = BigInt::from(ctx.prime());
    r.sort_by_key(|x| modulo(x, &q));
    Ok(r)
}

/// Smallest admissible prime: all roots of `f` mod q simple, `q` coprime to
/// the leading coefficient and to `avoid`, plus `extra(q)`.
fn choose_prime(
    f: &PolyQ,
    avoid: &BigInt,
    extra: impl Fn(u64) -> bool,
) -> Result<u64, TorsionError> {
    let coeffs = primitive(f);
    let lead = coeffs.last().unwrap().clone();
    for q in primes_above(AUX_START).take_while(|&q| q < AUX_END) {
        let bq = BigInt::from(q);
        if (&lead % &bq).is_zero() || (!avoid.is_zero() && (avoid % &bq).is_zero()) || !extra(q) {
            continue;
        }
        let ctx = PadicContext::new(q, 1)?;
        if hensel_roots(f, &ctx)?.unliftable.is_empty() {
            return Ok(q);
        }
    }
    Err(TorsionError::NoSuitablePrime(AUX_END))
}

/// All rational roots of a squarefree `f`, ascending.
pub fn rational_roots(f: &PolyQ) -> Result<Vec<Rat>, TorsionError> {
    assert!(!f.is_zero(), "zero polynomial has no finite root set");
    let low = f.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    let mut out = Vec::new();
    if low > 0 {
        out.push(Rat::zero());
    }
    let g = PolyQ::new(f.coeffs()[low..].to_vec());
    if g.degree() == Some(0) {
        return Ok(out);
    }
    let ints = primitive(&g);
    // any root n/m has n | constant term and m | leading coefficient
    let bound = ints[0].abs().max(ints.last().unwrap().abs());
    let q = choose_prime(&g, &BigInt::zero(), |_| true)?;
    let m = modulus_for(&bound);
    let ctx = PadicContext::new(q, PadicContext::precision_for(q, &m))?;
    for r in lift(&g, &ctx)? {
        if let Some(x) = rational_reconstruct(&r, ctx.modulus(), &bound) {
            if g.eval(&x).is_zero() {
                out.push(x);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// All roots of a squarefree `f` in `Q(sqrt(d))`. The auxiliary prime also
/// avoids the prime factors of `avoid` (pass zero for no restriction).
pub fn quadratic_roots(
    f: &PolyQ,
    d: i64,
    avoid: &BigInt,
) -> Result<Vec<QuadFieldElement>, TorsionError> {
    crate::numeric::quad::validate_d(d)?;
    assert!(!f.is_zero(), "zero polynomial has no finite root set");
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let q = choose_prime(f, avoid, |q| legendre_u64(d, q) == 1)?;
    let ints = primitive(f);
    let n_roots = hensel_roots(f, &PadicContext::new(q, 1)?)?.lifted.len();
    let mut resolved = vec![false; n_roots];
    let mut found: Vec<QuadFieldElement> = Vec::new();

    let attempt = |bound: &BigInt,
                       resolved: &mut Vec<bool>,
                       found: &mut Vec<QuadFieldElement>|
     -> Result<(), TorsionError> {
        let m = modulus_for(bound);
        let ctx = PadicContext::with_sqrt(q, PadicContext::precision_for(q, &m), d)?;
        let modulus = ctx.modulus().clone();
        let s = ctx.sqrt_d().unwrap().clone();
        let inv2 = mod_inverse(&BigInt::from(2), &modulus).unwrap();
        let inv2s = mod_inverse(&(BigInt::from(2) * &s), &modulus).unwrap();
        let roots = lift(f, &ctx)?;
        debug_assert_eq!(roots.len(), resolved.len());
        for i in 0..roots.len() {
            for j in 0..roots.len() {
                if resolved[i] || resolved[j] {
                    continue;
                }
                let a_res = modulo(&((&roots[i] + &roots[j]) * &inv2), &modulus);
                let b_res = modulo(&((&roots[i] - &roots[j]) * &inv2s), &modulus);
                let Some(a) = rational_reconstruct(&a_res, &modulus, bound) else {
                    continue;
                };
                let Some(b) = rational_reconstruct(&b_res, &modulus, bound) else {
                    continue;
                };
                let x = QuadFieldElement::new(d, a, b)?;
                if f.eval_quad(&x).is_zero() {
                    resolved[i] = true;
                    resolved[j] = true;
                    if i != j {
                        found.push(x.conjugate());
                    }
                    found.push(x);
                }
            }
        }
        Ok(())
    };

    // Heights of coefficients of a degree <= 2 factor, hence of a and b.
    let final_bound = BigInt::from(3) * l2_ceiling(&ints);
    let mut bound = BigInt::from(LADDER_START);
    let end = BigInt::from(LADDER_END);
    loop {
        let b = bound.clone().min(final_bound.clone());
        attempt(&b, &mut resolved, &mut found)?;
        if resolved.iter().all(|r| *r) || b == final_bound {
            break;
        }
        if bound >= end {
            if final_bound.bits() > MAX_FINAL_BITS {
                return Err(TorsionError::ReconstructionExhausted {
                    prime: q,
                    bound: end.to_string(),
                    detail: format!(
                        "{} roots unexplained; certified height needs {} bits",
                        resolved.iter().filter(|r| !**r).count(),
                        final_bound.bits()
                    ),
                });
            }
            attempt(&final_bound, &mut resolved, &mut found)?;
            break;
        }
        bound = (bound * BigInt::from(2)).min(end.clone());
    }
    found.sort_by_key(|x| (x.a().clone(), x.b().clone()));
    found.dedup();
    Ok(found)
}

