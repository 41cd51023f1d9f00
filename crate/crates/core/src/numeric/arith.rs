//! Integer utilities: primality, factorization, modular helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES[..12] {
        let mut x = pow(a % n, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the first 13 prime bases: deterministic below 3.3e24,
/// overwhelmingly reliable above.
pub fn is_prime(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_negative() || n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

/// Primes strictly greater than `start`, ascending.
pub fn primes_above(start: u64) -> impl Iterator<Item = u64> {
    std::iter::successors(Some(next_prime(start)), |&p| Some(next_prime(p)))
}

fn pollard_brent(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    for c in 1u64.. {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r = 1u64;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m = 64u64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
    unreachable!()
}

fn factor_into(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(&n);
    factor_into(&n / &d, out);
    factor_into(d, out);
}

/// Prime factorization of |n| (n nonzero), ascending primes with exponents.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut n = n.abs();
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p < 10_000 {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            n /= &bp;
            primes.push(bp.clone());
        }
        p = next_prime(p);
    }
    factor_into(n, &mut primes);
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn is_squarefree(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    factor(&BigInt::from(n)).iter().all(|(_, e)| *e == 1)
}

/// Representative of `a` in `[0, m)`.
pub fn modulo(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = modulo(a, m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(modulo(&e.x, m))
    } else {
        None
    }
}

/// Legendre symbol (a/p) for an odd prime p: 0, 1 or -1.
pub fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    let a = modulo(a, p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - BigInt::one()) >> 1u32;
    if a.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

pub fn legendre_u64(a: i64, p: u64) -> i32 {
    legendre(&BigInt::from(a), &BigInt::from(p))
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_sieve() {
        let limit = 5000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (n, &p) in sieve.iter().enumerate() {
            assert_eq!(is_prime_u64(n as u64), p, "n = {n}");
        }
        assert!(is_prime(&"170141183460469231731687303715884105727".parse().unwrap()));
        assert!(!is_prime(&"170141183460469231731687303715884105729".parse().unwrap()));
    }

    #[test]
    fn factorization_multiplies_back() {
        for s in ["12210554412", "-64", "1", "600851475143", "1000000016000000063"] {
            let n: BigInt = s.parse().unwrap();
            let f = factor(&n);
            let back = f
                .iter()
                .fold(BigInt::one(), |acc, (p, e)| acc * p.pow(*e));
            assert_eq!(back, n.abs());
            assert!(f.iter().all(|(p, _)| is_prime(p)));
        }
        let f = factor(&BigInt::from(-12210554412i64));
        let as_pairs: Vec<(u64, u32)> = f.iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect();
        assert_eq!(as_pairs, vec![(2, 2), (3, 3), (7, 6), (31, 2)]);
    }

    #[test]
    fn legendre_symbols() {
        assert_eq!(legendre_u64(-3, 7), 1);
        assert_eq!(legendre_u64(-3, 5), -1);
        assert_eq!(legendre_u64(14, 7), 0);
        assert!(is_squarefree(-3));
        assert!(!is_squarefree(12));
    }
}
