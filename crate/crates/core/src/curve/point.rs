use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{Curve, CurveError, Isomorphism};
use crate::numeric::{QuadFieldElement, Rat};

/// A point on some curve: the identity or an affine point with coordinates
/// in a single quadratic field. Which curve is implied by the `Curve` whose
/// methods produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine {
        x: QuadFieldElement,
        y: QuadFieldElement,
    },
}

impl Point {
    pub(crate) fn affine(x: QuadFieldElement, y: QuadFieldElement) -> Self {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&QuadFieldElement> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&QuadFieldElement> {
        match self {
            Point::Infinity => None,
            Point::Affine { y, .. } => Some(y),
        }
    }

    pub fn field_d(&self) -> Option<i64> {
        self.x().map(QuadFieldElement::d)
    }

    pub fn is_rational(&self) -> bool {
        match self {
            Point::Infinity => true,
            Point::Affine { x, y } => x.is_rational() && y.is_rational(),
        }
    }

    /// Coordinatewise action of the nontrivial automorphism of Q(sqrt d).
    pub fn conjugate(&self) -> Point {
        match self {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::affine(x.conjugate(), y.conjugate()),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

pub(super) fn map_point(iso: &Isomorphism, p: &Point) -> Point {
    match p {
        Point::Infinity => Point::Infinity,
        Point::Affine { x, y } => {
            let u2 = &iso.u * &iso.u;
            let u3 = &u2 * &iso.u;
            let xr = x.add_rat(&-&iso.r);
            let nx = xr.mul_rat(&u2.recip());
            let ny = (&y.add_rat(&-&iso.t) - &xr.mul_rat(&iso.s)).mul_rat(&u3.recip());
            Point::affine(nx, ny)
        }
    }
}

pub(super) fn map_point_inverse(iso: &Isomorphism, p: &Point) -> Point {
    match p {
        Point::Infinity => Point::Infinity,
        Point::Affine { x, y } => {
            let u2 = &iso.u * &iso.u;
            let u3 = &u2 * &iso.u;
            let nx = x.mul_rat(&u2).add_rat(&iso.r);
            let ny = (&y.mul_rat(&u3) + &x.mul_rat(&(&iso.s * &u2))).add_rat(&iso.t);
            Point::affine(nx, ny)
        }
    }
}

impl Curve {
    /// Affine point after checking it satisfies the curve equation.
    pub fn point(&self, x: QuadFieldElement, y: QuadFieldElement) -> Result<Point, CurveError> {
        if x.d() != y.d() {
            return Err(CurveError::FieldMismatch);
        }
        let p = Point::affine(x, y);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(CurveError::NotOnCurve)
        }
    }

    pub fn rational_point(&self, d: i64, x: Rat, y: Rat) -> Result<Point, CurveError> {
        self.point(QuadFieldElement::from_rat(d, x), QuadFieldElement::from_rat(d, y))
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => {
                if x.d() != y.d() {
                    return false;
                }
                let lhs = &(y * y) + &(x * y).mul_rat(self.a1());
                let lhs = &lhs + &y.mul_rat(self.a3());
                let x2 = x * x;
                let rhs = &(&x2 * x) + &x2.mul_rat(self.a2());
                let rhs = (&rhs + &x.mul_rat(self.a4())).add_rat(self.a6());
                lhs == rhs
            }
        }
    }

    pub fn negate(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => {
                let ny = -&(y + &x.mul_rat(self.a1())).add_rat(self.a3());
                Point::affine(x.clone(), ny)
            }
        }
    }

    pub fn checked_add(&self, p: &Point, q: &Point) -> Result<Point, CurveError> {
        match (p.field_d(), q.field_d()) {
            (Some(a), Some(b)) if a != b => Err(CurveError::FieldMismatch),
            _ => Ok(self.add(p, q)),
        }
    }

    /// Chord-and-tangent addition. Panics on points from different fields;
    /// use [`Curve::checked_add`] to get an error instead.
    pub fn add(&self, p: &Point, q: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let (lambda, nu) = if x1 == x2 {
            let sum = (&(y1 + y2) + &x2.mul_rat(self.a1())).add_rat(self.a3());
            if sum.is_zero() {
                return Point::Infinity;
            }
            let two = Rat::from_integer(2.into());
            let three = Rat::from_integer(3.into());
            let x1sq = x1 * x1;
            let denom = (&y1.mul_rat(&two) + &x1.mul_rat(self.a1())).add_rat(self.a3());
            let inv = denom.inverse().expect("tangent denominator is nonzero");
            let num_l = &(&x1sq.mul_rat(&three) + &x1.mul_rat(&(&two * self.a2())))
                .add_rat(self.a4())
                - &y1.mul_rat(self.a1());
            let num_n = &(&-&(&x1sq * x1) + &x1.mul_rat(self.a4())).add_rat(&(&two * self.a6()))
                - &y1.mul_rat(self.a3());
            (&num_l * &inv, &num_n * &inv)
        } else {
            let inv = (x2 - x1).inverse().expect("distinct x-coordinates");
            let lambda = &(y2 - y1) * &inv;
            let nu = &(&(y1 * x2) - &(y2 * x1)) * &inv;
            (lambda, nu)
        };
        let x3 = &(&(&lambda * &lambda) + &lambda.mul_rat(self.a1())).add_rat(&-self.a2()) - x1;
        let x3 = &x3 - x2;
        let y3 = &-&(&lambda.add_rat(self.a1()) * &x3) - &nu;
        let y3 = y3.add_rat(&-self.a3());
        Point::affine(x3, y3)
    }

    pub fn sub(&self, p: &Point, q: &Point) -> Point {
        self.add(p, &self.negate(q))
    }

    pub fn double(&self, p: &Point) -> Point {
        self.add(p, p)
    }

    /// `n * P` by double-and-add; negative `n` uses `-P`.
    pub fn scalar_mul(&self, n: i64, p: &Point) -> Point {
        self.scalar_mul_big(&BigInt::from(n), p)
    }

    pub fn scalar_mul_big(&self, n: &BigInt, p: &Point) -> Point {
        let base = if n.is_negative() { self.negate(p) } else { p.clone() };
        let n = n.abs();
        let mut acc = Point::Infinity;
        for i in (0..n.bits()).rev() {
            acc = self.double(&acc);
            if n.bit(i) {
                acc = self.add(&acc, &base);
            }
        }
        acc
    }

    /// Least `n <= cap` with `n * P = O`, or `None` when P is not torsion of
    /// order at most `cap`.
    pub fn exact_order(&self, p: &Point, cap: u64) -> Option<u64> {
        let mut acc = p.clone();
        for n in 1..=cap {
            if acc.is_infinity() {
                return Some(n);
            }
            acc = self.add(&acc, p);
        }
        None
    }

    /// Whether `n * P = O` for an `n` that fits in a machine word.
    pub fn kills(&self, n: u64, p: &Point) -> bool {
        self.scalar_mul_big(&BigInt::from(n), p).is_infinity()
    }
}
