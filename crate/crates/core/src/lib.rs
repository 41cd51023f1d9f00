//! Almost rational torsion points on elliptic curves over Q.
//!
//! A point `P` is almost rational when `σP + τP = 2P` for Galois elements
//! `σ, τ` forces `σP = τP = P`. On semistable curves such torsion points are
//! either rational or of the form `Q + R + S`, with `Q` generating a `μ3`
//! subgroup, `R` rational of order dividing 9 and `S` a point over
//! Q(sqrt -3) of order dividing 16. This crate computes both sides of that
//! description exactly and compares them.

pub mod classifier;
pub mod cli;
pub mod corpus;
pub mod curve;
pub mod example;
pub mod galois;
pub(crate) mod json;
pub mod numeric;
pub mod torsion;
