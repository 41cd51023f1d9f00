//! Division polynomials in x alone.
//!
//! With `F = 4x^3 + b2 x^2 + 2 b4 x + b6 = psi_2^2` we store
//! `g_n = psi_n` for odd n and `g_n = psi_n / psi_2` for even n; all of them
//! are polynomials in x.

use super::TorsionError;
use crate::curve::Curve;
use crate::numeric::{PolyQ, Rat};

pub const MAX_DIVISION_INDEX: usize = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionPoly {
    pub n: usize,
    /// `g_n`: degree (n^2 - 1)/2 for odd n, (n^2 - 4)/2 for even n.
    pub psi: PolyQ,
    two_torsion: PolyQ,
}

impl DivisionPoly {
    /// Polynomial whose roots are exactly the x-coordinates of the nonzero
    /// points of E[n]: `g_n` for odd n, `F * g_n` for even n. Squarefree.
    pub fn torsion_x_poly(&self) -> PolyQ {
        if self.n % 2 == 0 {
            &self.two_torsion * &self.psi
        } else {
            self.psi.clone()
        }
    }
}

/// `4x^3 + b2 x^2 + 2 b4 x + b6`.
pub fn two_division_cubic(e: &Curve) -> PolyQ {
    let two = Rat::from_integer(2.into());
    PolyQ::new(vec![
        e.b6().clone(),
        &two * e.b4(),
        e.b2().clone(),
        Rat::from_integer(4.into()),
    ])
}

/// `g_0 .. g_n`, all computed by the standard recurrences.
pub fn division_polynomials_upto(e: &Curve, n: usize) -> Vec<PolyQ> {
    let k = |v: i64| Rat::from_integer(v.into());
    let (b2, b4, b6, b8) = (e.b2(), e.b4(), e.b6(), e.b8());
    let f = two_division_cubic(e);
    let f2 = &f * &f;
    let mut g: Vec<PolyQ> = Vec::with_capacity(n.max(4) + 1);
    g.push(PolyQ::zero());
    g.push(PolyQ::one());
    g.push(PolyQ::one());
    g.push(PolyQ::new(vec![
        b8.clone(),
        k(3) * b6,
        k(3) * b4,
        b2.clone(),
        k(3),
    ]));
    g.push(PolyQ::new(vec![
        b4 * b8 - b6 * b6,
        b2 * b8 - b4 * b6,
        k(10) * b8,
        k(10) * b6,
        k(5) * b4,
        b2.clone(),
        k(2),
    ]));
    for i in 5..=n {
        let m = i / 2;
        let next = if i % 2 == 1 {
            let a = &g[m + 2] * &g[m].pow(3);
            let b = &g[m - 1] * &g[m + 1].pow(3);
            if m % 2 == 0 {
                &(&f2 * &a) - &b
            } else {
                &a - &(&f2 * &b)
            }
        } else {
            let a = &g[m + 2] * &g[m - 1].pow(2);
            let b = &g[m - 2] * &g[m + 1].pow(2);
            &g[m] * &(&a - &b)
        };
        g.push(next);
    }
    g.truncate(n + 1);
    g
}

pub fn division_polynomial(e: &Curve, n: usize) -> Result<DivisionPoly, TorsionError> {
    if n == 0 || n > MAX_DIVISION_INDEX {
        return Err(TorsionError::DivisionIndexOutOfRange(n));
    }
    let psi = division_polynomials_upto(e, n).pop().unwrap();
    Ok(DivisionPoly {
        n,
        psi,
        two_torsion: two_division_cubic(e),
    })
}

/// Polynomial whose roots are the x-coordinates of points of exact order n.
pub fn exact_order_factor(e: &Curve, n: usize) -> Result<PolyQ, TorsionError> {
    let full = division_polynomial(e, n)?.torsion_x_poly();
    if n == 1 {
        return Ok(PolyQ::one());
    }
    let primes = prime_divisors(n);
    if primes.len() == 1 {
        let lower = division_polynomial(e, n / primes[0])?.torsion_x_poly();
        return Ok(full
            .exact_div(&lower)
            .expect("E[n/p] x-polynomial divides the E[n] one"));
    }
    // Remove every root of x-polynomials for the maximal proper divisors.
    let mut kernel = full;
    for p in primes {
        let lower = division_polynomial(e, n / p)?.torsion_x_poly();
        if lower.degree() == Some(0) {
            continue;
        }
        let common = kernel.gcd(&lower).expect("nonzero");
        kernel = kernel
            .exact_div(&common)
            .expect("gcd divides the polynomial");
    }
    Ok(kernel)
}

pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// x-coordinate of `[k]P` as a rational function of x(P): `(num, den)`.
pub fn multiplication_x_map(e: &Curve, k: usize) -> (PolyQ, PolyQ) {
    assert!(k >= 1);
    if k == 1 {
        return (PolyQ::x(), PolyQ::one());
    }
    let g = division_polynomials_upto(e, k + 1);
    let f = two_division_cubic(e);
    let x = PolyQ::x();
    let gk2 = g[k].pow(2);
    if k % 2 == 1 {
        let num = &(&x * &gk2) - &(&f * &(&g[k - 1] * &g[k + 1]));
        (num, gk2)
    } else {
        let den = &f * &gk2;
        let num = &(&x * &den) - &(&g[k - 1] * &g[k + 1]);
        (num, den)
    }
}
