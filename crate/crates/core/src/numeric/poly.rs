use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::quad::QuadFieldElement;
use super::rat::{common_denominator, Rat};
use super::NumericError;

/// Univariate polynomial over Q, coefficients lowest degree first.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    coeffs: Vec<Rat>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }

    /// `x - r`
    pub fn linear_root(r: &Rat) -> Self {
        Self::new(vec![-r.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Quotient and remainder over Q.
    pub fn div_rem(&self, divisor: &PolyQ) -> Result<(PolyQ, PolyQ), NumericError> {
        let dd = divisor.degree().ok_or(NumericError::DivisionByZero)?;
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((PolyQ::zero(), self.clone()));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lead_inv;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let t = &q * c;
                rem[i - dd + j] -= t;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        Ok((PolyQ::new(quot), PolyQ::new(rem)))
    }

    pub fn rem(&self, divisor: &PolyQ) -> Result<PolyQ, NumericError> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Division that must be exact; `None` when a remainder is left.
    pub fn exact_div(&self, divisor: &PolyQ) -> Option<PolyQ> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Pseudo-division: returns (k, q, r) with lc(divisor)^k * self = q * divisor + r.
    pub fn pseudo_div_rem(&self, divisor: &PolyQ) -> Result<(u32, PolyQ, PolyQ), NumericError> {
        let dd = divisor.degree().ok_or(NumericError::DivisionByZero)?;
        let Some(ds) = self.degree() else {
            return Ok((0, PolyQ::zero(), PolyQ::zero()));
        };
        if ds < dd {
            return Ok((0, PolyQ::zero(), self.clone()));
        }
        let k = (ds - dd + 1) as u32;
        let lc = divisor.leading();
        let scaled = self.scale(&num_traits::pow(lc, k as usize));
        let (q, r) = scaled.div_rem(divisor)?;
        Ok((k, q, r))
    }

    /// Monic gcd; errors only when both inputs are zero.
    pub fn gcd(&self, other: &PolyQ) -> Result<PolyQ, NumericError> {
        if self.is_zero() && other.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r.primitive_rational();
        }
        Ok(a.monic())
    }

    /// Same polynomial rescaled so its coefficients are coprime integers
    /// with positive leading coefficient (keeps gcd chains small).
    fn primitive_rational(&self) -> PolyQ {
        if self.is_zero() {
            return PolyQ::zero();
        }
        let (_, prim) = self.content_primitive();
        PolyQ::from_bigints(&prim)
    }

    /// Splits `self` as `content * primitive`, where `primitive` has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn content_primitive(&self) -> (Rat, Vec<BigInt>) {
        if self.is_zero() {
            return (Rat::zero(), Vec::new());
        }
        let den = common_denominator(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Rat::new(g, den), prim)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_quad(&self, x: &QuadFieldElement) -> QuadFieldElement {
        let mut acc = QuadFieldElement::zero(x.d());
        for c in self.coeffs.iter().rev() {
            acc = (&acc * x).add_rat(c);
        }
        acc
    }

    /// Coefficients as integers when they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

fn add_coeffs(a: &[Rat], b: &[Rat], negate_b: bool) -> Vec<Rat> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rat::zero);
            match b.get(i) {
                Some(y) if negate_b => x - y,
                Some(y) => x + y,
                None => x,
            }
        })
        .collect()
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        PolyQ::new(add_coeffs(&self.coeffs, &rhs.coeffs, false))
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        PolyQ::new(add_coeffs(&self.coeffs, &rhs.coeffs, true))
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        // Multiply over Z with a single rescale; much cheaper than Rat products.
        let (ca, ia) = self.content_primitive();
        let (cb, ib) = rhs.content_primitive();
        let mut out = vec![BigInt::zero(); ia.len() + ib.len() - 1];
        for (i, x) in ia.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in ib.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        PolyQ::from_bigints(&out).scale(&(ca * cb))
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolyQ {
            type Output = PolyQ;
            fn $m(self, rhs: PolyQ) -> PolyQ {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}
