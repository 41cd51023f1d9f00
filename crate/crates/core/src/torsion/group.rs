use std::collections::HashSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{TorsionError, ORDER_SEARCH_CAP};
use crate::curve::{Curve, Point};
use crate::numeric::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldSpec {
    Rational,
    Quadratic(i64),
}

/// A finite subgroup `Z/m1 + Z/m2` (`m2 | m1`) with every element listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionGroup {
    pub field: FieldSpec,
    pub structure: (u64, u64),
    pub generators: Vec<Point>,
    pub all_points: Vec<Point>,
}

/// Mazur's list of possible E(Q)_tors, as `(m1, m2)`.
pub fn mazur_groups() -> Vec<(u64, u64)> {
    let mut v: Vec<(u64, u64)> = (1..=10).chain([12]).map(|n| (n, 1)).collect();
    v.extend([(2, 2), (4, 2), (6, 2), (8, 2)]);
    v
}

/// Deterministic ordering key: infinity first, then by coordinates.
pub fn point_key(p: &Point) -> (u8, Vec<Rat>) {
    match p {
        Point::Infinity => (0, Vec::new()),
        Point::Affine { x, y } => (
            1,
            vec![x.a().clone(), x.b().clone(), y.a().clone(), y.b().clone()],
        ),
    }
}

impl TorsionGroup {
    /// Builds the group from an exhaustive list of its elements, checking closure.
    pub fn from_points(
        e: &Curve,
        field: FieldSpec,
        points: impl IntoIterator<Item = Point>,
    ) -> Result<Self, TorsionError> {
        let mut set: HashSet<Point> = points.into_iter().collect();
        set.insert(Point::Infinity);
        let mut all: Vec<Point> = set.iter().cloned().collect();
        for p in &all {
            if !e.contains(p) {
                return Err(TorsionError::NotAGroup(format!("{p} is not on the curve")));
            }
            if !set.contains(&e.negate(p)) {
                return Err(TorsionError::NotAGroup(format!("-({p}) missing")));
            }
        }
        for (i, p) in all.iter().enumerate() {
            for q in &all[i..] {
                if !set.contains(&e.add(p, q)) {
                    return Err(TorsionError::NotAGroup(format!("{p} + {q} missing")));
                }
            }
        }
        let n = all.len() as u64;
        let mut orders = Vec::with_capacity(all.len());
        for p in &all {
            let o = e
                .exact_order(p, ORDER_SEARCH_CAP)
                .ok_or_else(|| TorsionError::NotAGroup(format!("{p} is not torsion")))?;
            orders.push(o);
        }
        let m1 = orders.iter().copied().max().unwrap_or(1);
        if n % m1 != 0 || m1 % (n / m1) != 0 {
            return Err(TorsionError::NotAGroup(format!(
                "order {n} with exponent {m1} is not Z/m1 x Z/m2"
            )));
        }
        let m2 = n / m1;

        let mut order_of: Vec<(Point, u64)> = all.iter().cloned().zip(orders).collect();
        order_of.sort_by_key(|(p, _)| point_key(p));
        let mut generators = Vec::new();
        if m1 > 1 {
            let g1 = order_of.iter().find(|(_, o)| *o == m1).unwrap().0.clone();
            let cyclic: HashSet<Point> = (0..m1).map(|k| e.scalar_mul(k as i64, &g1)).collect();
            generators.push(g1);
            if m2 > 1 {
                let g2 = order_of
                    .iter()
                    .filter(|(_, o)| *o == m2)
                    .map(|(p, _)| p)
                    .find(|p| (1..m2).all(|k| !cyclic.contains(&e.scalar_mul(k as i64, p))))
                    .ok_or_else(|| TorsionError::NotAGroup("no complementary generator".into()))?
                    .clone();
                generators.push(g2);
            }
        }
        all.sort_by_key(|p| (e.exact_order(p, ORDER_SEARCH_CAP), point_key(p)));
        Ok(TorsionGroup {
            field,
            structure: (m1, m2),
            generators,
            all_points: all,
        })
    }

    pub fn order(&self) -> u64 {
        self.structure.0 * self.structure.1
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.all_points.contains(p)
    }

    /// Elements killed by `n`.
    pub fn killed_by(&self, e: &Curve, n: u64) -> Vec<Point> {
        self.all_points
            .iter()
            .filter(|p| e.kills(n, p))
            .cloned()
            .collect()
    }

    pub fn is_mazur(&self) -> bool {
        mazur_groups().contains(&self.structure)
    }

    pub fn structure_label(&self) -> String {
        match self.structure {
            (1, 1) => "trivial".to_string(),
            (m, 1) => format!("Z/{m}"),
            (m1, m2) => format!("Z/{m2} x Z/{m1}"),
        }
    }
}

/// Components `(q, P_q)` of prime-power order with `sum P_q = P`; each
/// `P_q` is a multiple of `P` chosen by CRT. `None` when `P` is not torsion
/// of order at most the search cap.
pub fn primary_decomposition(e: &Curve, p: &Point) -> Option<Vec<(u64, Point)>> {
    let n = e.exact_order(p, ORDER_SEARCH_CAP)?;
    let mut out = Vec::new();
    let mut rest = n;
    let mut q = 2;
    while rest > 1 {
        if rest % q == 0 {
            let mut m = 1;
            while rest % q == 0 {
                rest /= q;
                m *= q;
            }
            let cof = n / m;
            // cof * (cof^{-1} mod m) is 1 mod m and 0 mod cof
            let inv = (cof as i64).extended_gcd(&(m as i64)).x.rem_euclid(m as i64);
            let coeff = (cof as i64 * inv) % n as i64;
            out.push((q, e.scalar_mul(coeff, p)));
        }
        q += 1;
    }
    Some(out)
}
