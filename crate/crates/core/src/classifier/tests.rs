use super::*;
use crate::galois::mu3_generator;

fn curve(a: [i64; 5]) -> Curve {
    Curve::from_ints(a).unwrap()
}

const EXAMPLE: [i64; 5] = [1, 0, 1, 354, 4684];
const ISOGENOUS: [i64; 5] = [1, 0, 1, -3321, -157604];

#[test]
fn example_curve_agrees_with_only_rational_points() {
    let e = curve(EXAMPLE);
    let r = classify(&e);
    assert!(r.semistable && r.predicted_equals_actual && r.consistent(), "{r:?}");
    assert!(!r.mu3_present);
    assert_eq!(r.ar_points.len(), 6);
    assert!(r.ar_points.iter().all(|a| a.point.is_rational()));
}

#[test]
fn isogenous_curve_has_q_plus_s() {
    let e = curve(ISOGENOUS);
    let r = classify(&e);
    assert!(r.predicted_equals_actual && r.consistent(), "{:?}", r.invariant_violations);
    assert!(r.mu3_present);
    let q = mu3_generator(&e).unwrap();
    let nonrational: Vec<&ArPoint> = r.ar_points.iter().filter(|a| !a.point.is_rational()).collect();
    assert!(!nonrational.is_empty());
    for a in &nonrational {
        let d = a.decomposition.as_ref().unwrap();
        assert_eq!(d.sum, a.point);
        let q_used = d.q.as_ref().unwrap();
        assert!(*q_used == q || *q_used == e.negate(&q));
        assert!(e.kills(9, &d.r) && d.r.is_rational() && e.kills(16, &d.s));
    }
    assert!(!r.order16_s);
    assert!(r.largest_prime_in_orders <= 3);
}

#[test]
fn non_semistable_is_not_analysed() {
    let e = curve([0, 0, 0, 0, -1]);
    let r = classify(&e);
    assert!(!r.semistable && r.ar_points.is_empty() && r.consistent());
    assert!(matches!(predicted_ar_set(&e), Err(ClassifierError::NotSemistable(_))));
    assert!(matches!(actual_ar_set(&e), Err(ClassifierError::NotSemistable(_))));
}

#[test]
fn trivial_torsion_curve() {
    let e = curve([0, 0, 1, -1, 0]);
    let actual = actual_ar_set(&e).unwrap();
    assert_eq!(actual.len(), 1);
    assert_eq!(actual[0].0, Point::Infinity);
    let predicted = predicted_ar_set(&e).unwrap();
    assert_eq!(predicted.len(), 1);
}

#[test]
fn predicted_without_mu3_is_rational_torsion() {
    let e = curve([0, -1, 1, -10, -20]);
    assert!(mu3_generator(&e).is_none());
    let predicted = predicted_ar_set(&e).unwrap();
    assert_eq!(predicted.len(), 5);
    assert!(predicted.iter().all(|p| p.decomposition.is_none() && p.point.is_rational()));
}

#[test]
fn conductor_14_has_mu3_and_rational_three_torsion() {
    let e = curve([1, 0, 1, 4, -6]);
    let r = classify(&e);
    assert!(r.mu3_present && r.consistent(), "{r:?}");
    assert_eq!(r.rational_torsion.as_ref().unwrap().structure, (6, 1));
    assert!(r.nonrational_ar_points() > 0);
}

#[test]
fn report_json_round_trip() {
    for a in [ISOGENOUS, [0, 0, 0, -1, 0]] {
        let r = classify(&curve(a));
        let text = r.to_json();
        assert_eq!(ClassificationReport::from_json(&text).unwrap(), r);
    }
    let text = classify(&curve(ISOGENOUS)).to_json();
    assert!(text.contains(r#""d": -3"#) && text.contains(r#""infinity""#));
}
