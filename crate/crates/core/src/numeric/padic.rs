//! Root finding modulo prime powers and rational reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::arith::{is_prime_u64, legendre_u64, mod_inverse, modulo};
use super::poly::PolyQ;
use super::rat::Rat;
use super::NumericError;

/// Working prime `q`, precision `k` (arithmetic mod `q^k`) and, when a
/// quadratic field is attached, the image of `sqrt(d)` mod `q^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicContext {
    prime: u64,
    precision: u32,
    modulus: BigInt,
    field: Option<(i64, BigInt)>,
}

impl PadicContext {
    pub fn new(prime: u64, precision: u32) -> Result<Self, NumericError> {
        if !is_prime_u64(prime) {
            return Err(NumericError::NotPrime(prime.to_string()));
        }
        if precision == 0 {
            return Err(NumericError::Padic("precision must be at least 1".into()));
        }
        Ok(Self {
            prime,
            precision,
            modulus: BigInt::from(prime).pow(precision),
            field: None,
        })
    }

    /// Context in which `q` splits Q(sqrt(d)); fixes the root of `x^2 - d`
    /// whose residue mod q is the smaller one.
    pub fn with_sqrt(prime: u64, precision: u32, d: i64) -> Result<Self, NumericError> {
        let mut ctx = Self::new(prime, precision)?;
        if prime == 2 || legendre_u64(d, prime) != 1 {
            return Err(NumericError::Padic(format!(
                "{d} is not a nonzero square mod {prime}"
            )));
        }
        let f = PolyQ::from_ints(&[-d, 0, 1]);
        let roots = hensel_roots(&f, &ctx)?;
        let s = roots
            .lifted
            .iter()
            .min_by_key(|r| modulo(r, &BigInt::from(prime)))
            .cloned()
            .ok_or_else(|| NumericError::Padic("no square root lifted".into()))?;
        ctx.field = Some((d, s));
        Ok(ctx)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn sqrt_d(&self) -> Option<&BigInt> {
        self.field.as_ref().map(|(_, s)| s)
    }

    /// Smallest precision whose modulus is at least `target`.
    pub fn precision_for(prime: u64, target: &BigInt) -> u32 {
        let q = BigInt::from(prime);
        let mut k = 1;
        let mut m = q.clone();
        while &m < target {
            m *= &q;
            k += 1;
        }
        k
    }
}

/// Outcome of lifting the roots of `f` mod `q` to `q^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HenselRoots {
    /// Lifted residues in `[0, q^k)`, ascending.
    pub lifted: Vec<BigInt>,
    /// Roots mod `q` where `f'` also vanishes; these are not lifted.
    pub unliftable: Vec<u64>,
}

fn eval_mod(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// Roots of `f` modulo `q^k`, found by exhaustive search mod `q` followed by
/// Newton iteration on the simple ones.
pub fn hensel_roots(f: &PolyQ, ctx: &PadicContext) -> Result<HenselRoots, NumericError> {
    if f.is_zero() {
        return Err(NumericError::Padic("cannot find roots of the zero polynomial".into()));
    }
    let (_, ints) = f.content_primitive();
    let q = ctx.prime;
    let bq = BigInt::from(q);
    let small: Vec<u64> = ints
        .iter()
        .map(|c| modulo(c, &bq).to_u64().unwrap())
        .collect();
    let dsmall: Vec<u64> = small
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ((*c as u128 * i as u128) % q as u128) as u64)
        .collect();
    let eval_small = |cs: &[u64], x: u64| -> u64 {
        cs.iter()
            .rev()
            .fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % q as u128) as u64
    };
    let deriv: Vec<BigInt> = ints
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();

    let mut out = HenselRoots::default();
    for r in 0..q {
        if eval_small(&small, r) != 0 {
            continue;
        }
        if eval_small(&dsmall, r) == 0 {
            out.unliftable.push(r);
            continue;
        }
        let mut root = BigInt::from(r);
        let mut m = bq.clone();
        while m < ctx.modulus {
            m = (&m * &m).min(ctx.modulus.clone());
            let fx = eval_mod(&ints, &root, &m);
            let dfx = eval_mod(&deriv, &root, &m);
            let inv = mod_inverse(&dfx, &m)
                .ok_or_else(|| NumericError::Padic("derivative became non-invertible".into()))?;
            root = (root - fx * inv).mod_floor(&m);
        }
        out.lifted.push(root);
    }
    out.lifted.sort();
    Ok(out)
}

/// The unique `n/m` with `|n|, m <= bound` and `n = m * residue (mod modulus)`,
/// or `None` when no such fraction exists.
///
/// Requires `0 <= residue < modulus` and `2 * bound^2 <= modulus`.
pub fn rational_reconstruct(residue: &BigInt, modulus: &BigInt, bound: &BigInt) -> Option<Rat> {
    assert!(
        !residue.is_negative() && residue < modulus,
        "residue must lie in [0, modulus)"
    );
    assert!(
        BigInt::from(2) * bound * bound <= *modulus,
        "bound too large for modulus"
    );
    let (mut r0, mut r1) = (modulus.clone(), residue.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rat::new(r1, t1))
}
