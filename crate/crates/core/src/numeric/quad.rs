use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::arith::is_squarefree;
use super::rat::{rat_sqrt, Rat};
use super::NumericError;

/// `a + b*sqrt(d)` in Q(sqrt(d)), with `d` squarefree and not 0 or 1.
///
/// Rational numbers are the `b = 0` elements of whatever field the
/// computation is pinned to. Arithmetic between different `d` is a bug:
/// the operator impls panic on it, the `checked_*` methods report it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadFieldElement {
    d: i64,
    a: Rat,
    b: Rat,
}

pub fn validate_d(d: i64) -> Result<(), NumericError> {
    if d == 0 || d == 1 || !is_squarefree(d) {
        Err(NumericError::InvalidField(d))
    } else {
        Ok(())
    }
}

impl QuadFieldElement {
    pub fn new(d: i64, a: Rat, b: Rat) -> Result<Self, NumericError> {
        validate_d(d)?;
        Ok(Self { d, a, b })
    }

    /// Element of a field whose `d` has already been validated.
    pub(crate) fn raw(d: i64, a: Rat, b: Rat) -> Self {
        Self { d, a, b }
    }

    pub fn from_rat(d: i64, a: Rat) -> Self {
        Self::raw(d, a, Rat::zero())
    }

    pub fn zero(d: i64) -> Self {
        Self::from_rat(d, Rat::zero())
    }

    pub fn one(d: i64) -> Self {
        Self::from_rat(d, Rat::one())
    }

    pub fn sqrt_d(d: i64) -> Result<Self, NumericError> {
        Self::new(d, Rat::zero(), Rat::one())
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self::raw(self.d, self.a.clone(), -&self.b)
    }

    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from_integer(self.d.into()) * &self.b * &self.b
    }

    pub fn trace(&self) -> Rat {
        &self.a + &self.a
    }

    pub fn add_rat(&self, r: &Rat) -> Self {
        Self::raw(self.d, &self.a + r, self.b.clone())
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        Self::raw(self.d, &self.a * r, &self.b * r)
    }

    fn same_field(&self, other: &Self) -> Result<(), NumericError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(NumericError::FieldMismatch {
                left: self.d,
                right: other.d,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, NumericError> {
        self.same_field(other)?;
        Ok(Self::raw(self.d, &self.a + &other.a, &self.b + &other.b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, NumericError> {
        self.same_field(other)?;
        Ok(Self::raw(self.d, &self.a - &other.a, &self.b - &other.b))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, NumericError> {
        self.same_field(other)?;
        let d = Rat::from_integer(self.d.into());
        let a = &self.a * &other.a + d * &self.b * &other.b;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::raw(self.d, a, b))
    }

    pub fn inverse(&self) -> Result<Self, NumericError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(NumericError::InverseOfZero);
        }
        Ok(Self::raw(self.d, &self.a / &n, -(&self.b / &n)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, NumericError> {
        self.same_field(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// A square root inside the same field, when one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.b.is_zero() {
            if let Some(s) = rat_sqrt(&self.a) {
                return Some(Self::from_rat(self.d, s));
            }
            let d = Rat::from_integer(self.d.into());
            return rat_sqrt(&(&self.a / d)).map(|w| Self::raw(self.d, Rat::zero(), w));
        }
        // (s + t sqrt d)^2 = a + b sqrt d  =>  s^2 + d t^2 = a, 2st = b
        let n = rat_sqrt(&self.norm())?;
        let two = Rat::from_integer(2.into());
        for cand in [&self.a + &n, &self.a - &n] {
            if let Some(s) = rat_sqrt(&(cand / &two)) {
                if s.is_zero() {
                    continue;
                }
                let t = &self.b / (&two * &s);
                let r = Self::raw(self.d, s, t);
                if &(&r * &r) == self {
                    return Some(r);
                }
            }
        }
        None
    }
}

impl Add for &QuadFieldElement {
    type Output = QuadFieldElement;
    fn add(self, rhs: &QuadFieldElement) -> QuadFieldElement {
        self.checked_add(rhs).expect("quadratic field mismatch")
    }
}

impl Sub for &QuadFieldElement {
    type Output = QuadFieldElement;
    fn sub(self, rhs: &QuadFieldElement) -> QuadFieldElement {
        self.checked_sub(rhs).expect("quadratic field mismatch")
    }
}

impl Mul for &QuadFieldElement {
    type Output = QuadFieldElement;
    fn mul(self, rhs: &QuadFieldElement) -> QuadFieldElement {
        self.checked_mul(rhs).expect("quadratic field mismatch")
    }
}

impl Neg for &QuadFieldElement {
    type Output = QuadFieldElement;
    fn neg(self) -> QuadFieldElement {
        QuadFieldElement::raw(self.d, -&self.a, -&self.b)
    }
}

impl fmt::Display for QuadFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        let b = self.b.abs();
        let coeff = if b.is_one() { String::new() } else { format!("{b}*") };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{lead}{coeff}sqrt({})", self.d)
        } else {
            write!(f, "{} {sign} {coeff}sqrt({})", self.a, self.d)
        }
    }
}
