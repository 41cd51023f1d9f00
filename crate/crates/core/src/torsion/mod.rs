//! Torsion subgroups over Q and over quadratic fields.

pub mod divpoly;
mod group;
mod quadratic;
mod rational;
pub mod roots;

pub use divpoly::{division_polynomial, exact_order_factor, DivisionPoly};
pub use group::{mazur_groups, point_key, primary_decomposition, FieldSpec, TorsionGroup};
pub use quadratic::{quadratic_reduction_bound, quadratic_torsion, QUADRATIC_ORDER_CAP};
pub use rational::{rational_reduction_bound, rational_torsion, rational_torsion_in};

use thiserror::Error;

use crate::curve::{Curve, CurveError, Point};
use crate::numeric::NumericError;

/// Field parameter used for points of rational torsion groups unless the
/// caller asks for another one.
pub const DEFAULT_FIELD_D: i64 = -3;

/// Number of good primes whose point counts bound the torsion order.
pub const BOUND_PRIMES: usize = 8;

/// Orders searched are capped well above anything torsion over Q or a
/// quadratic field can reach.
pub const ORDER_SEARCH_CAP: u64 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsionError {
    #[error("division polynomial index {0} outside 1..=48")]
    DivisionIndexOutOfRange(usize),
    #[error("rational torsion Z/{0} x Z/{1} is not one of Mazur's 15 groups")]
    MazurViolation(u64, u64),
    #[error("points of order {order} exist and the reduction bound {bound} allows order {next} > cap {cap}")]
    CapExceeded {
        order: u64,
        next: u64,
        bound: u64,
        cap: u64,
    },
    #[error("rational reconstruction failed up to height {bound} at prime {prime}: {detail}")]
    ReconstructionExhausted {
        prime: u64,
        bound: String,
        detail: String,
    },
    #[error("no auxiliary prime below {0} satisfies the root-finding conditions")]
    NoSuitablePrime(u64),
    #[error("torsion points do not form a group: {0}")]
    NotAGroup(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Least `n <= cap` with `n * P = O`.
pub fn exact_order(e: &Curve, p: &Point, cap: u64) -> Option<u64> {
    e.exact_order(p, cap)
}

#[cfg(test)]
mod tests;
