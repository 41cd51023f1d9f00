//! Exact arithmetic: rationals, polynomials over Q, quadratic field elements
//! and the modular / p-adic tools used for root finding.

pub mod arith;
pub mod padic;
pub mod poly;
pub mod quad;
pub mod rat;

pub use padic::{hensel_roots, rational_reconstruct, HenselRoots, PadicContext};
pub use poly::PolyQ;
pub use quad::QuadFieldElement;
pub use rat::Rat;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("valuation of zero is undefined")]
    ValuationOfZero,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("quadratic field mismatch: Q(sqrt({left})) vs Q(sqrt({right}))")]
    FieldMismatch { left: i64, right: i64 },
    #[error("invalid quadratic field parameter d = {0} (must be squarefree, not 0 or 1)")]
    InvalidField(i64),
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("p-adic context: {0}")]
    Padic(String),
}
