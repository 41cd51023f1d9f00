//! Predicted versus exhaustively tested almost rational torsion points.
//!
//! The predicted set is `E(Q)_tors` together with all `+-Q + R + S` where `Q`
//! generates a mu3 subgroup, `R` is rational with `9R = O` and `S` lies in
//! `E(Q(sqrt -3))[16]`. The actual set runs the almost-rationality test on
//! every point of `E(Q(sqrt -3))_tors`.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{BadPrime, Curve, Point};
use crate::galois::{is_almost_rational, mu3_generator, ARVerdict};
use crate::torsion::{
    point_key, quadratic_torsion, rational_torsion, TorsionError, TorsionGroup, ORDER_SEARCH_CAP,
};

/// The quadratic field searched for almost rational points.
pub const EISENSTEIN_D: i64 = -3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifierError {
    #[error("curve is not semistable (additive reduction at {0})")]
    NotSemistable(BigInt),
    #[error(transparent)]
    Torsion(#[from] TorsionError),
}

/// `sum = Q + R + S`, with `Q` absent only for rational points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub q: Option<Point>,
    pub r: Point,
    pub s: Point,
    pub sum: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedPoint {
    pub point: Point,
    /// Present for the nonrational points `Q + R + S`.
    pub decomposition: Option<Decomposition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArPoint {
    pub point: Point,
    pub order: u64,
    pub verdict: ARVerdict,
    pub decomposition: Option<Decomposition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionSummary {
    pub structure: (u64, u64),
    pub label: String,
    pub order: u64,
}

impl From<&TorsionGroup> for TorsionSummary {
    fn from(g: &TorsionGroup) -> Self {
        TorsionSummary {
            structure: g.structure,
            label: g.structure_label(),
            order: g.order(),
        }
    }
}

/// Points found on only one side of the comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub predicted_only: Vec<Point>,
    pub actual_only: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    /// Input coefficients `a1, a2, a3, a4, a6`, as rationals.
    pub coefficients: Vec<String>,
    #[serde(with = "crate::json::big_vec")]
    pub minimal_model: Vec<BigInt>,
    #[serde(with = "crate::json::big")]
    pub minimal_discriminant: BigInt,
    pub bad_primes: Vec<BadPrime>,
    pub semistable: bool,
    pub rational_torsion: Option<TorsionSummary>,
    pub quadratic_torsion: Option<TorsionSummary>,
    pub quadratic_field_d: i64,
    pub mu3_present: bool,
    pub mu3_generator: Option<Point>,
    pub ar_points: Vec<ArPoint>,
    pub predicted_equals_actual: bool,
    pub mismatch: Option<Mismatch>,
    pub largest_prime_in_orders: u64,
    pub max_ar_order: u64,
    /// Largest order of an `S` used by an almost rational point.
    pub max_s_order: u64,
    pub order16_s: bool,
    pub invariant_violations: Vec<String>,
    pub notes: Vec<String>,
    pub error: Option<String>,
}

impl ClassificationReport {
    /// Agreement of both sides and every structural check.
    pub fn consistent(&self) -> bool {
        self.error.is_none()
            && (!self.semistable || self.predicted_equals_actual)
            && self.invariant_violations.is_empty()
    }

    pub fn nonrational_ar_points(&self) -> usize {
        self.ar_points.iter().filter(|p| !p.point.is_rational()).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn require_semistable(e: &Curve) -> Result<(), ClassifierError> {
    let s = e.is_semistable();
    match s.evidence.iter().find(|b| !b.kind.is_multiplicative()) {
        Some(b) if !s.semistable => Err(ClassifierError::NotSemistable(b.prime.clone())),
        _ => Ok(()),
    }
}

fn predicted_from(
    e: &Curve,
    rat: &TorsionGroup,
    quad: &TorsionGroup,
    mu3: Option<&Point>,
) -> Vec<PredictedPoint> {
    let mut seen: HashSet<Point> = HashSet::new();
    let mut out = Vec::new();
    for r in &rat.all_points {
        if seen.insert(r.clone()) {
            out.push(PredictedPoint {
                point: r.clone(),
                decomposition: None,
            });
        }
    }
    if let Some(q0) = mu3 {
        let rs = rat.killed_by(e, 9);
        let ss = quad.killed_by(e, 16);
        for q in [q0.clone(), e.negate(q0)] {
            for r in &rs {
                for s in &ss {
                    let sum = e.add(&e.add(&q, r), s);
                    if seen.insert(sum.clone()) {
                        out.push(PredictedPoint {
                            point: sum.clone(),
                            decomposition: Some(Decomposition {
                                q: Some(q.clone()),
                                r: r.clone(),
                                s: s.clone(),
                                sum,
                            }),
                        });
                    }
                }
            }
        }
    }
    out.sort_by_key(|p| point_key(&p.point));
    out
}

fn actual_from(e: &Curve, quad: &TorsionGroup) -> Vec<(Point, ARVerdict)> {
    quad.all_points
        .iter()
        .map(|p| {
            let v = is_almost_rational(e, p).expect("torsion points lie on the curve");
            (p.clone(), v)
        })
        .filter(|(_, v)| v.almost_rational)
        .collect()
}

/// Rational torsion plus all `+-Q + R + S`, deduplicated by the sum.
pub fn predicted_ar_set(e: &Curve) -> Result<Vec<PredictedPoint>, ClassifierError> {
    require_semistable(e)?;
    let rat = rational_torsion(e)?;
    let quad = quadratic_torsion(e, EISENSTEIN_D)?;
    Ok(predicted_from(e, &rat, &quad, mu3_generator(e).as_ref()))
}

/// Points of `E(Q(sqrt -3))_tors` passing the almost-rationality test.
pub fn actual_ar_set(e: &Curve) -> Result<Vec<(Point, ARVerdict)>, ClassifierError> {
    require_semistable(e)?;
    let quad = quadratic_torsion(e, EISENSTEIN_D)?;
    Ok(actual_from(e, &quad))
}

fn largest_prime_factor(mut n: u64) -> u64 {
    let mut best = 1;
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            best = p;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        best = n;
    }
    best
}

pub fn classify(e: &Curve) -> ClassificationReport {
    let mm = e.minimal();
    let semi = e.is_semistable();
    let mut report = ClassificationReport {
        coefficients: e.coeffs().iter().map(|c| c.to_string()).collect(),
        minimal_model: mm.coeffs.to_vec(),
        minimal_discriminant: mm.disc.clone(),
        bad_primes: mm.bad_primes.clone(),
        semistable: semi.semistable,
        rational_torsion: None,
        quadratic_torsion: None,
        quadratic_field_d: EISENSTEIN_D,
        mu3_present: false,
        mu3_generator: None,
        ar_points: Vec::new(),
        predicted_equals_actual: false,
        mismatch: None,
        largest_prime_in_orders: 1,
        max_ar_order: 1,
        max_s_order: 1,
        order16_s: false,
        invariant_violations: Vec::new(),
        notes: Vec::new(),
        error: None,
    };
    if !semi.semistable {
        report
            .notes
            .push("additive reduction: no almost rational analysis".into());
        return report;
    }
    report
        .notes
        .push("actual set searched in E(Q(sqrt -3))_tors only".into());

    let groups = rational_torsion(e).and_then(|r| Ok((r, quadratic_torsion(e, EISENSTEIN_D)?)));
    let (rat, quad) = match groups {
        Ok(g) => g,
        Err(err) => {
            report.error = Some(err.to_string());
            return report;
        }
    };
    report.rational_torsion = Some((&rat).into());
    report.quadratic_torsion = Some((&quad).into());
    let mu3 = mu3_generator(e);
    report.mu3_present = mu3.is_some();
    report.mu3_generator = mu3.clone();

    let predicted = predicted_from(e, &rat, &quad, mu3.as_ref());
    let actual = actual_from(e, &quad);
    let pred_set: HashSet<&Point> = predicted.iter().map(|p| &p.point).collect();
    let act_set: HashSet<&Point> = actual.iter().map(|(p, _)| p).collect();
    report.predicted_equals_actual = pred_set == act_set;
    if !report.predicted_equals_actual {
        let mut predicted_only: Vec<Point> =
            pred_set.difference(&act_set).map(|p| (*p).clone()).collect();
        let mut actual_only: Vec<Point> =
            act_set.difference(&pred_set).map(|p| (*p).clone()).collect();
        predicted_only.sort_by_key(point_key);
        actual_only.sort_by_key(point_key);
        report.mismatch = Some(Mismatch {
            predicted_only,
            actual_only,
        });
    }

    let decomps: HashMap<&Point, &Decomposition> = predicted
        .iter()
        .filter_map(|p| p.decomposition.as_ref().map(|d| (&p.point, d)))
        .collect();
    let violations = &mut report.invariant_violations;
    for pp in &predicted {
        if !pred_set.contains(&pp.point.conjugate()) {
            violations.push(format!("predicted set not closed under conjugation at {}", pp.point));
        }
    }
    for (p, v) in &actual {
        let order = e.exact_order(p, ORDER_SEARCH_CAP).expect("torsion");
        if !v.verify(e, p) {
            violations.push(format!("verdict for {p} does not re-verify"));
        }
        if !p.is_rational() && e.double(p).is_rational() {
            violations.push(format!("{p} is not rational but 2P is"));
        }
        let ell = largest_prime_factor(order);
        report.largest_prime_in_orders = report.largest_prime_in_orders.max(ell);
        report.max_ar_order = report.max_ar_order.max(order);
        let decomposition = decomps.get(p).map(|d| (*d).clone());
        if let Some(d) = &decomposition {
            let s_order = e.exact_order(&d.s, 16).expect("16 S = O");
            report.max_s_order = report.max_s_order.max(s_order);
            if s_order == 16 {
                report.order16_s = true;
            }
            if let Some(q) = &d.q {
                let lhs = e.sub(&e.double(&p.conjugate()), &e.double(p));
                if s_order <= 2 && lhs != e.negate(q) {
                    violations.push(format!("2 sigma P - 2 P != -Q at {p}"));
                }
            }
        }
        report.ar_points.push(ArPoint {
            point: p.clone(),
            order,
            verdict: v.clone(),
            decomposition,
        });
    }
    if report.largest_prime_in_orders > 7 {
        violations.push(format!(
            "almost rational order with prime factor {} > 7",
            report.largest_prime_in_orders
        ));
    } else if report.predicted_equals_actual && report.largest_prime_in_orders > 3 {
        // rational torsion of order 5 or 7 is allowed; only Q + R + S is 3-smooth
        let nonrational_ok = report
            .ar_points
            .iter()
            .filter(|a| !a.point.is_rational())
            .all(|a| largest_prime_factor(a.order) <= 3);
        if !nonrational_ok {
            violations.push("nonrational almost rational point of order with prime > 3".into());
        }
    }
    if report.order16_s {
        report
            .notes
            .push("S of order 16 occurs in an almost rational point".into());
    }
    report
}

#[cfg(test)]
mod tests;
