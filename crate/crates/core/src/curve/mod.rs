//! Weierstrass curves over Q: invariants, minimal models, reduction types,
//! the group law over Q(sqrt d) and naive point counts mod small primes.

mod count;
mod point;
mod serde_point;

pub use count::MAX_COUNT_PRIME;
pub use point::Point;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::arith::{factor, legendre, mod_inverse, modulo};
use crate::numeric::rat::{common_denominator, Rat};
use crate::numeric::{NumericError, QuadFieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("singular curve: discriminant is zero")]
    Singular,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point coordinates live in different fields")]
    FieldMismatch,
    #[error("curve has additive reduction at {0}")]
    AdditiveReduction(BigInt),
    #[error("{0} is a prime of bad reduction")]
    BadReductionPrime(u64),
    #[error("prime {0} outside the supported range [3, 10000]")]
    PrimeOutOfRange(u64),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionKind {
    Good,
    MultiplicativeSplit,
    MultiplicativeNonsplit,
    Additive,
}

impl ReductionKind {
    pub fn is_multiplicative(self) -> bool {
        matches!(self, Self::MultiplicativeSplit | Self::MultiplicativeNonsplit)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadPrime {
    #[serde(with = "crate::json::big")]
    pub prime: BigInt,
    pub kind: ReductionKind,
    /// Valuation of the minimal discriminant.
    pub disc_valuation: u32,
}

/// Admissible change of variables `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub u: Rat,
    pub r: Rat,
    pub s: Rat,
    pub t: Rat,
}

impl Isomorphism {
    pub fn identity() -> Self {
        Self::new(Rat::one(), Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn new(u: Rat, r: Rat, s: Rat, t: Rat) -> Self {
        Self { u, r, s, t }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Isomorphism) -> Isomorphism {
        let u2 = &self.u * &self.u;
        Isomorphism {
            u: &self.u * &next.u,
            r: &self.r + &u2 * &next.r,
            s: &self.s + &self.u * &next.s,
            t: &self.t + &u2 * &self.u * &next.t + &self.s * &u2 * &next.r,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Coefficients of the transformed model.
    pub fn apply(&self, a: &[Rat; 5]) -> [Rat; 5] {
        let [a1, a2, a3, a4, a6] = a;
        let Isomorphism { u, r, s, t } = self;
        let two = Rat::from_integer(2.into());
        let three = Rat::from_integer(3.into());
        let n1 = a1 + &two * s;
        let n2 = a2 - s * a1 + &three * r - s * s;
        let n3 = a3 + r * a1 + &two * t;
        let n4 = a4 - s * a3 + &two * r * a2 - (t + r * s) * a1 + &three * r * r - &two * s * t;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        [n1 / u, n2 / u2, n3 / u3, n4 / u4, n6 / u6]
    }
}

/// Invariants `[b2, b4, b6, b8, c4, c6, disc]` of a long Weierstrass model.
pub fn invariants(a: &[Rat; 5]) -> [Rat; 7] {
    let [a1, a2, a3, a4, a6] = a;
    let k = |n: i64| Rat::from_integer(n.into());
    let b2 = a1 * a1 + k(4) * a2;
    let b4 = k(2) * a4 + a1 * a3;
    let b6 = a3 * a3 + k(4) * a6;
    let b8 = a1 * a1 * a6 + k(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    let c4 = &b2 * &b2 - k(24) * &b4;
    let c6 = -(&b2 * &b2 * &b2) + k(36) * &b2 * &b4 - k(216) * &b6;
    let disc = -(&b2 * &b2 * &b8) - k(8) * &b4 * &b4 * &b4 - k(27) * &b6 * &b6
        + k(9) * &b2 * &b4 * &b6;
    [b2, b4, b6, b8, c4, c6, disc]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalModel {
    pub coeffs: [BigInt; 5],
    pub c4: BigInt,
    pub c6: BigInt,
    pub disc: BigInt,
    /// Change of variables from the input model to this one.
    pub iso: Isomorphism,
    pub bad_primes: Vec<BadPrime>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    coeffs: [Rat; 5],
    b2: Rat,
    b4: Rat,
    b6: Rat,
    b8: Rat,
    c4: Rat,
    c6: Rat,
    disc: Rat,
    minimal: MinimalModel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Semistability {
    pub semistable: bool,
    pub evidence: Vec<BadPrime>,
}

fn all_integral(a: &[Rat; 5]) -> bool {
    a.iter().all(|c| c.is_integer())
}

fn to_ints(a: &[Rat; 5]) -> [BigInt; 5] {
    a.clone().map(|c| c.to_integer())
}

fn rat(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// Try to find `(r, s, t)` such that scaling by `u = p` keeps the model integral.
fn reduce_at(a: &[Rat; 5], p: &BigInt) -> Option<Isomorphism> {
    let up = rat(p.clone());
    let try_it = |r: BigInt, s: BigInt, t: BigInt| {
        let iso = Isomorphism::new(up.clone(), rat(r), rat(s), rat(t));
        all_integral(&iso.apply(a)).then_some(iso)
    };
    let small = p.to_u64().filter(|&q| q <= 3);
    if let Some(q) = small {
        let q = q as i64;
        for s in 0..q {
            for r in 0..q * q {
                for t in 0..q * q * q {
                    if let Some(iso) = try_it(r.into(), s.into(), t.into()) {
                        return Some(iso);
                    }
                }
            }
        }
        return None;
    }
    // p >= 5: 2 and 3 are units, so s, r, t are forced modulo p, p^2, p^3.
    let ai = to_ints(a);
    let [a1, a2, a3, _, _] = &ai;
    let p2 = p * p;
    let p3 = &p2 * p;
    let inv2 = mod_inverse(&BigInt::from(2), &p3)?;
    let inv3 = mod_inverse(&BigInt::from(3), &p2)?;
    let s = modulo(&(-a1 * &inv2), p);
    let r = modulo(&((&s * &s + &s * a1 - a2) * &inv3), &p2);
    let t = modulo(&(-(a3 + &r * a1) * &inv2), &p3);
    try_it(r, s, t)
}

/// Brings an integral model to the reduced form a1, a3 in {0, 1}, a2 in {-1, 0, 1}.
fn normalize(a: &[Rat; 5]) -> Isomorphism {
    let ai = to_ints(a);
    let [a1, a2, a3, _, _] = &ai;
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let s = (a1.mod_floor(&two) - a1) / &two;
    let t2 = a2 - &s * a1 - &s * &s;
    let r = -((&t2 + BigInt::one()).div_floor(&three));
    let w = a3 + &r * a1;
    let t = (w.mod_floor(&two) - &w) / &two;
    Isomorphism::new(Rat::one(), rat(r), rat(s), rat(t))
}

fn minimal_model(a: &[Rat; 5]) -> MinimalModel {
    let den = common_denominator(a.iter());
    let mut iso = Isomorphism::new(
        Rat::new(BigInt::one(), den),
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
    );
    let mut model = iso.apply(a);
    debug_assert!(all_integral(&model));

    let disc = invariants(&model)[6].to_integer();
    for (p, e) in factor(&disc) {
        let mut v = e;
        while v >= 12 {
            let Some(step) = reduce_at(&model, &p) else { break };
            model = step.apply(&model);
            iso = iso.then(&step);
            v -= 12;
        }
    }
    let norm = normalize(&model);
    model = norm.apply(&model);
    iso = iso.then(&norm);

    let inv = invariants(&model);
    let coeffs = to_ints(&model);
    let c4 = inv[4].to_integer();
    let c6 = inv[5].to_integer();
    let disc = inv[6].to_integer();
    let bad_primes = factor(&disc)
        .into_iter()
        .map(|(p, v)| {
            let kind = reduction_kind(&coeffs, &c4, &c6, &p);
            BadPrime {
                prime: p,
                kind,
                disc_valuation: v,
            }
        })
        .collect();
    MinimalModel {
        coeffs,
        c4,
        c6,
        disc,
        iso,
        bad_primes,
    }
}

/// Reduction type at a prime dividing the minimal discriminant.
fn reduction_kind(a: &[BigInt; 5], c4: &BigInt, c6: &BigInt, p: &BigInt) -> ReductionKind {
    if (c4 % p).is_zero() {
        return ReductionKind::Additive;
    }
    let split = if *p == BigInt::from(2) {
        split_at_two(a)
    } else {
        legendre(&-c6, p) == 1
    };
    if split {
        ReductionKind::MultiplicativeSplit
    } else {
        ReductionKind::MultiplicativeNonsplit
    }
}

/// Locate the node mod 2 and test whether its tangent slopes lie in F_2.
fn split_at_two(a: &[BigInt; 5]) -> bool {
    let m = |x: BigInt| x.mod_floor(&BigInt::from(2)).to_u8().unwrap();
    let [a1, a2, a3, a4, a6] = a.clone().map(m);
    for x in 0u8..2 {
        for y in 0u8..2 {
            let f = (y * y + a1 * x * y + a3 * y + x * x * x + a2 * x * x + a4 * x + a6) % 2;
            let fx = (a1 * y + 3 * x * x + 2 * a2 * x + a4) % 2;
            let fy = (2 * y + a1 * x + a3) % 2;
            if f == 0 && fx == 0 && fy == 0 {
                // slopes T solve T^2 + a1 T - (3x + a2) = 0 over F_2
                let c = (3 * x + a2) % 2;
                return (0u8..2).any(|t| (t * t + a1 * t + c) % 2 == 0);
            }
        }
    }
    unreachable!("multiplicative reduction at 2 without a singular point")
}

impl Curve {
    pub fn new(coeffs: [Rat; 5]) -> Result<Self, CurveError> {
        let [b2, b4, b6, b8, c4, c6, disc] = invariants(&coeffs);
        if disc.is_zero() {
            return Err(CurveError::Singular);
        }
        let minimal = minimal_model(&coeffs);
        Ok(Curve {
            coeffs,
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
            minimal,
        })
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self, CurveError> {
        Self::new(a.map(|c| Rat::from_integer(c.into())))
    }

    pub fn from_bigints(a: &[BigInt; 5]) -> Result<Self, CurveError> {
        Self::new(a.clone().map(Rat::from_integer))
    }

    pub fn coeffs(&self) -> &[Rat; 5] {
        &self.coeffs
    }

    pub fn a1(&self) -> &Rat {
        &self.coeffs[0]
    }
    pub fn a2(&self) -> &Rat {
        &self.coeffs[1]
    }
    pub fn a3(&self) -> &Rat {
        &self.coeffs[2]
    }
    pub fn a4(&self) -> &Rat {
        &self.coeffs[3]
    }
    pub fn a6(&self) -> &Rat {
        &self.coeffs[4]
    }
    pub fn b2(&self) -> &Rat {
        &self.b2
    }
    pub fn b4(&self) -> &Rat {
        &self.b4
    }
    pub fn b6(&self) -> &Rat {
        &self.b6
    }
    pub fn b8(&self) -> &Rat {
        &self.b8
    }
    pub fn c4(&self) -> &Rat {
        &self.c4
    }
    pub fn c6(&self) -> &Rat {
        &self.c6
    }
    pub fn discriminant(&self) -> &Rat {
        &self.disc
    }

    pub fn j_invariant(&self) -> Rat {
        &self.c4 * &self.c4 * &self.c4 / &self.disc
    }

    pub fn minimal(&self) -> &MinimalModel {
        &self.minimal
    }

    pub fn minimal_discriminant(&self) -> &BigInt {
        &self.minimal.disc
    }

    pub fn bad_primes(&self) -> &[BadPrime] {
        &self.minimal.bad_primes
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal.iso.is_identity()
    }

    /// The global minimal (reduced) model as a curve of its own.
    pub fn minimal_curve(&self) -> Curve {
        if self.is_minimal() {
            return self.clone();
        }
        Curve::from_bigints(&self.minimal.coeffs).expect("minimal model is nonsingular")
    }

    /// Prime divisors of the minimal discriminant, i.e. the conductor support.
    pub fn conductor_support(&self) -> Vec<BigInt> {
        self.bad_primes().iter().map(|b| b.prime.clone()).collect()
    }

    pub fn reduction_at(&self, p: &BigInt) -> ReductionKind {
        self.bad_primes()
            .iter()
            .find(|b| &b.prime == p)
            .map_or(ReductionKind::Good, |b| b.kind)
    }

    pub fn is_semistable(&self) -> Semistability {
        let evidence = self.bad_primes().to_vec();
        Semistability {
            semistable: evidence.iter().all(|b| b.kind != ReductionKind::Additive),
            evidence,
        }
    }

    /// Whether E[p] is finite at p: automatic at good primes, and at a
    /// multiplicative prime iff `v_p(disc_min)` is divisible by p.
    pub fn peu_ramifie_at(&self, p: &BigInt) -> Result<bool, CurveError> {
        match self.bad_primes().iter().find(|b| &b.prime == p) {
            None => Ok(true),
            Some(b) if b.kind == ReductionKind::Additive => {
                Err(CurveError::AdditiveReduction(p.clone()))
            }
            Some(b) => Ok((BigInt::from(b.disc_valuation) % p).is_zero()),
        }
    }

    /// `4x^3 + b2 x^2 + 2 b4 x + b6`, i.e. `(2y + a1 x + a3)^2` on the curve.
    pub fn two_division_value(&self, x: &QuadFieldElement) -> QuadFieldElement {
        let two = Rat::from_integer(2.into());
        let four = Rat::from_integer(4.into());
        let x2 = x * x;
        let x3 = &x2 * x;
        let v = &x3.mul_rat(&four) + &x2.mul_rat(&self.b2);
        (&v + &x.mul_rat(&(&two * &self.b4))).add_rat(&self.b6)
    }

    /// Points with the given x-coordinate, solving the Weierstrass quadratic in y.
    pub fn lift_x(&self, x: &QuadFieldElement) -> Vec<Point> {
        let Some(root) = self.two_division_value(x).sqrt() else {
            return Vec::new();
        };
        let half = Rat::new(1.into(), 2.into());
        let base = -&x.mul_rat(self.a1()).add_rat(self.a3());
        let y1 = (&base + &root).mul_rat(&half);
        let y2 = (&base - &root).mul_rat(&half);
        let mut pts = vec![Point::affine(x.clone(), y1.clone())];
        if y2 != y1 {
            pts.push(Point::affine(x.clone(), y2));
        }
        debug_assert!(pts.iter().all(|p| self.contains(p)));
        pts
    }

    /// Point on the input model corresponding to one on the minimal model.
    pub fn from_minimal_point(&self, p: &Point) -> Point {
        point::map_point_inverse(&self.minimal.iso, p)
    }

    pub fn to_minimal_point(&self, p: &Point) -> Point {
        point::map_point(&self.minimal.iso, p)
    }
}
