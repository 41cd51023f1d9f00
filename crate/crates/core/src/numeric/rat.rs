use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::NumericError;

/// Exact rational number, always reduced with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// Exponent of `p` in a nonzero integer.
pub fn int_valuation(n: &BigInt, p: &BigInt) -> Result<u32, NumericError> {
    if n.is_zero() {
        return Err(NumericError::ValuationOfZero);
    }
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return Ok(v);
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational; negative when p divides the denominator.
pub fn valuation(x: &Rat, p: &BigInt) -> Result<i64, NumericError> {
    if x.is_zero() {
        return Err(NumericError::ValuationOfZero);
    }
    if !super::arith::is_prime(p) {
        return Err(NumericError::NotPrime(p.to_string()));
    }
    let num = int_valuation(x.numer(), p)? as i64;
    let den = int_valuation(x.denom(), p)? as i64;
    Ok(num - den)
}

pub fn checked_div(x: &Rat, y: &Rat) -> Result<Rat, NumericError> {
    if y.is_zero() {
        Err(NumericError::DivisionByZero)
    } else {
        Ok(x / y)
    }
}

/// Integer square root of a perfect square, `None` otherwise.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Square root in Q when it exists (nonnegative root).
pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    let n = exact_isqrt(x.numer())?;
    let d = exact_isqrt(x.denom())?;
    Some(Rat::new(n, d))
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Smallest positive integer that clears every denominator in `xs`.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        let three = BigInt::from(3);
        let two = BigInt::from(2);
        assert_eq!(valuation(&rat(27, 2), &three).unwrap(), 3);
        assert_eq!(valuation(&rat(5, 8), &two).unwrap(), -3);
        assert_eq!(valuation(&rat(5, 8), &three).unwrap(), 0);
        assert_eq!(
            valuation(&rint(0), &three),
            Err(NumericError::ValuationOfZero)
        );
        assert!(matches!(
            valuation(&rint(12), &BigInt::from(4)),
            Err(NumericError::NotPrime(_))
        ));
    }

    #[test]
    fn basic_ops() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
        assert_eq!(rat(2, -4), rat(-1, 2));
        assert!(rat(-1, 2).denom() > &BigInt::zero());
        assert_eq!(
            checked_div(&rint(1), &rint(0)),
            Err(NumericError::DivisionByZero)
        );
        assert!(rat(1, 3) < rat(1, 2));
    }

    #[test]
    fn square_roots() {
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt(&rat(2, 1)), None);
        assert_eq!(rat_sqrt(&rat(-4, 1)), None);
        assert_eq!(rat_sqrt(&rint(0)), Some(rint(0)));
    }
}
