use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Curve, CurveError};
use crate::numeric::arith::{is_prime_u64, modulo};

pub const MAX_COUNT_PRIME: u64 = 10_000;

impl Curve {
    /// `#E(F_q)` on the minimal model, by summing the quadratic character of
    /// `4x^3 + b2 x^2 + 2 b4 x + b6` over F_q.
    pub fn count_points_mod(&self, q: u64) -> Result<u64, CurveError> {
        if !(3..=MAX_COUNT_PRIME).contains(&q) {
            return Err(CurveError::PrimeOutOfRange(q));
        }
        if !is_prime_u64(q) {
            return Err(CurveError::Numeric(crate::numeric::NumericError::NotPrime(
                q.to_string(),
            )));
        }
        let bq = BigInt::from(q);
        if (self.minimal_discriminant() % &bq) == BigInt::from(0) {
            return Err(CurveError::BadReductionPrime(q));
        }
        let [a1, a2, a3, a4, a6] = self
            .minimal()
            .coeffs
            .clone()
            .map(|c| modulo(&c, &bq).to_u64().unwrap());
        let b2 = (a1 * a1 + 4 * a2) % q;
        let b4 = (2 * a4 + a1 * a3) % q;
        let b6 = (a3 * a3 + 4 * a6) % q;

        let mut is_square = vec![false; q as usize];
        for y in 0..q {
            is_square[(y * y % q) as usize] = true;
        }
        let mut count = 1u64;
        for x in 0..q {
            let v = (((4 * x + b2) % q * x + 2 * b4) % q * x + b6) % q;
            count += if v == 0 {
                1
            } else if is_square[v as usize] {
                2
            } else {
                0
            };
        }
        let dev = count.abs_diff(q + 1);
        assert!(dev * dev <= 4 * q, "Hasse bound violated at q = {q}: #E = {count}");
        Ok(count)
    }

    /// `a_q = q + 1 - #E(F_q)`.
    pub fn trace_of_frobenius(&self, q: u64) -> Result<i64, CurveError> {
        Ok(q as i64 + 1 - self.count_points_mod(q)? as i64)
    }

    /// `#E(F_{q^2}) = (q + 1)^2 - a_q^2`.
    pub fn count_points_mod_sq(&self, q: u64) -> Result<u64, CurveError> {
        let a = self.trace_of_frobenius(q)?;
        Ok(((q as i64 + 1).pow(2) - a * a) as u64)
    }
}
