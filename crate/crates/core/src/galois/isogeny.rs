//! Rational p-isogenies for p <= 7, detected through Galois-stable kernel
//! factors of the p-division polynomial.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::GaloisError;
use crate::curve::{Curve, MAX_COUNT_PRIME};
use crate::numeric::arith::{modulo, primes_above};
use crate::numeric::{hensel_roots, rational_reconstruct, PadicContext, PolyQ, Rat};
use crate::torsion::divpoly::{division_polynomials_upto, multiplication_x_map, two_division_cubic};
use crate::torsion::roots::rational_roots;

pub fn has_rational_isogeny(e: &Curve, p: u64) -> Result<bool, GaloisError> {
    match p {
        2 => Ok(!rational_roots(&two_division_cubic(e)).expect("cubic is squarefree").is_empty()),
        3 => {
            let psi = division_polynomials_upto(e, 3).pop().unwrap();
            Ok(!rational_roots(&psi).expect("psi_3 is squarefree").is_empty())
        }
        5 | 7 => Ok(kernel_factor(e, p as usize).is_some()),
        _ => Err(GaloisError::UnsupportedPrime(p)),
    }
}

fn int_coeffs_mod(f: &PolyQ, q: u64) -> Vec<u64> {
    let bq = BigInt::from(q);
    f.integer_coeffs()
        .expect("integral model")
        .iter()
        .map(|c| modulo(c, &bq).to_u64().unwrap())
        .collect()
}

fn eval_mod(cs: &[u64], x: u64, q: u64) -> u64 {
    cs.iter()
        .rev()
        .fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % q as u128) as u64
}

fn pow_mod(b: u64, mut e: u64, q: u64) -> u64 {
    let (mut r, mut b, q) = (1u128, b as u128 % q as u128, q as u128);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r as u64
}

/// Monic degree-(p-1)/2 factor of psi_p whose roots are closed under the
/// x-coordinate maps of multiplication by 2..=(p-1)/2, if one exists.
pub(crate) fn kernel_factor(e: &Curve, p: usize) -> Option<PolyQ> {
    let m = e.minimal_curve();
    let psi = division_polynomials_upto(&m, p).pop().unwrap();
    let k = (p - 1) / 2;
    let maps: Vec<(PolyQ, PolyQ)> = (2..=k).map(|j| multiplication_x_map(&m, j)).collect();
    let disc = m.minimal_discriminant().clone();
    let lead = psi.content_primitive().1.last().unwrap().clone();

    for q in primes_above(11).take_while(|&q| q <= MAX_COUNT_PRIME) {
        if q == p as u64 || (&disc % q).is_zero() || (&lead % q).is_zero() {
            continue;
        }
        let a = m.trace_of_frobenius(q).expect("good prime in range");
        let pi = p as i64;
        let eig: Vec<i64> = (1..pi)
            .filter(|l| (l * l - a * l + q as i64).rem_euclid(pi) == 0)
            .collect();
        if eig.is_empty() {
            // a kernel character would be an eigenvalue of Frobenius mod p
            return None;
        }
        if eig.iter().any(|&l| l != 1 && l != pi - 1) {
            continue;
        }
        let ctx = PadicContext::new(q, 1).unwrap();
        let low = hensel_roots(&psi, &ctx).unwrap();
        if !low.unliftable.is_empty() {
            continue;
        }
        return search_with_prime(&psi, &maps, k, q, &low.lifted);
    }
    None
}

/// With Frobenius at q acting by +-1 on any kernel, such a kernel's
/// x-coordinates are roots of psi_p mod q; candidates are orbits under the
/// multiplication maps.
fn search_with_prime(
    psi: &PolyQ,
    maps: &[(PolyQ, PolyQ)],
    k: usize,
    q: u64,
    roots_mod_q: &[BigInt],
) -> Option<PolyQ> {
    let roots: Vec<u64> = roots_mod_q.iter().map(|r| r.to_u64().unwrap()).collect();
    let index = |v: u64| roots.iter().position(|&r| r == v);
    let images: Vec<Vec<Option<usize>>> = maps
        .iter()
        .map(|(num, den)| {
            let (n, d) = (int_coeffs_mod(num, q), int_coeffs_mod(den, q));
            roots
                .iter()
                .map(|&r| {
                    let dv = eval_mod(&d, r, q);
                    if dv == 0 {
                        return None;
                    }
                    let v = (eval_mod(&n, r, q) as u128 * pow_mod(dv, q - 2, q) as u128
                        % q as u128) as u64;
                    index(v)
                })
                .collect()
        })
        .collect();

    let mut candidates: BTreeSet<Vec<usize>> = BTreeSet::new();
    'roots: for i in 0..roots.len() {
        let mut orbit = BTreeSet::from([i]);
        for img in &images {
            match img[i] {
                Some(j) => {
                    orbit.insert(j);
                }
                None => continue 'roots,
            }
        }
        if orbit.len() != k {
            continue;
        }
        if orbit.iter().all(|&j| images.iter().all(|img| img[j].is_some_and(|t| orbit.contains(&t)))) {
            candidates.insert(orbit.into_iter().collect());
        }
    }
    if candidates.is_empty() {
        return None;
    }

    // Heights: monic factor = g / g_k with g a primitive integer factor of
    // psi, |g_j| <= C(k, j) ||psi||_2 and g_k | lead(psi).
    let ints = psi.content_primitive().1;
    let norm: BigInt = ints.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let lead = ints.last().unwrap().clone();
    let bound = (norm << k).max(lead);
    let target = (BigInt::from(2) * &bound * &bound) << 32;
    let ctx = PadicContext::new(q, PadicContext::precision_for(q, &target)).unwrap();
    let mut lifted = hensel_roots(psi, &ctx).unwrap().lifted;
    let bq = BigInt::from(q);
    lifted.sort_by_key(|r| modulo(r, &bq));
    let modulus = ctx.modulus();

    for cand in candidates {
        // product of (x - r) mod q^n
        let mut coeffs = vec![BigInt::from(1)];
        for &i in &cand {
            let r = &lifted[i];
            let mut next = vec![BigInt::zero(); coeffs.len() + 1];
            for (d, c) in coeffs.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * r;
            }
            coeffs = next.iter().map(|c| modulo(c, modulus)).collect();
        }
        let recon: Option<Vec<Rat>> = coeffs
            .iter()
            .map(|c| rational_reconstruct(c, modulus, &bound))
            .collect();
        let Some(recon) = recon else { continue };
        let h = PolyQ::new(recon);
        if psi.exact_div(&h).is_none() {
            continue;
        }
        if maps.iter().all(|(num, den)| stable_under(&h, num, den)) {
            return Some(h);
        }
    }
    None
}

/// Whether `h(num/den) * den^deg h` vanishes modulo `h`.
fn stable_under(h: &PolyQ, num: &PolyQ, den: &PolyQ) -> bool {
    let deg = h.degree().unwrap();
    let mut acc = PolyQ::zero();
    for (i, c) in h.coeffs().iter().enumerate() {
        let term = &num.pow(i as u32) * &den.pow((deg - i) as u32);
        acc = &acc + &term.scale(c);
    }
    acc.rem(h).unwrap().is_zero()
}
