// Shared fixtures for the integration tests.
#![allow(dead_code)]

use artor::curve::{Curve, Point};
use artor::torsion::{quadratic_torsion, rational_torsion};

pub const CORPUS: &str = include_str!("../data/corpus.txt");

/// Curves with a varied supply of torsion over Q(sqrt -3).
pub const RICH: &[[i64; 5]] = &[
    [1, 0, 1, 354, 4684],
    [1, 0, 1, -3321, -157604],
    [1, 0, 1, 4, -6],
    [1, 1, 1, -10, -10],
    [1, 0, 0, -4, -1],
    [1, 0, 0, -1070, 7812],
    [1, -1, 1, -3, 3],
    [0, -1, 1, -10, -20],
    [1, 0, 1, -19, 26],
    [0, 1, 1, -9, -15],
    [1, 0, 1, -5, -8],
];

pub struct Pool {
    pub curve: Curve,
    pub rational: Vec<Point>,
    pub quadratic: Vec<Point>,
}

pub fn pools() -> Vec<Pool> {
    RICH.iter()
        .map(|a| {
            let curve = Curve::from_ints(*a).unwrap();
            let rational = rational_torsion(&curve).unwrap().all_points;
            let quadratic = quadratic_torsion(&curve, -3).unwrap().all_points;
            Pool { curve, rational, quadratic }
        })
        .collect()
}
