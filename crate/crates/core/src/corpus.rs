//! Curve files and batch classification.
//!
//! One curve per line: an optional label, then `a1 a2 a3 a4 a6`. Blank lines
//! and lines starting with `#` are skipped. Bad lines become per-line errors.

use std::path::Path;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::{classify, ClassificationReport};
use crate::curve::Curve;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub label: Option<String>,
    #[serde(with = "crate::json::big_vec")]
    pub coeffs: Vec<BigInt>,
    pub line: usize,
}

impl CurveRecord {
    pub fn curve(&self) -> Curve {
        let a: [BigInt; 5] = self.coeffs.clone().try_into().expect("five coefficients");
        Curve::from_bigints(&a).expect("records are checked nonsingular when parsed")
    }

    pub fn display_label(&self) -> String {
        self.label.clone().unwrap_or_else(|| format!("line{}", self.line))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for LineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

pub fn parse_curve_line(text: &str, line: usize) -> Option<Result<CurveRecord, LineError>> {
    let t = text.trim();
    if t.is_empty() || t.starts_with('#') {
        return None;
    }
    let err = |message: String| Some(Err(LineError { line, message }));
    let tokens: Vec<&str> = t.split_whitespace().collect();
    let (label, nums) = match tokens.len() {
        5 => (None, &tokens[..]),
        6 => (Some(tokens[0].to_string()), &tokens[1..]),
        n => return err(format!("expected 5 coefficients (optionally after a label), found {n} tokens")),
    };
    let mut coeffs = Vec::with_capacity(5);
    for tok in nums {
        match tok.parse::<BigInt>() {
            Ok(v) => coeffs.push(v),
            Err(_) => return err(format!("not an integer: {tok:?}")),
        }
    }
    let a: [BigInt; 5] = coeffs.clone().try_into().unwrap();
    if let Err(e) = Curve::from_bigints(&a) {
        return err(e.to_string());
    }
    Some(Ok(CurveRecord { label, coeffs, line }))
}

pub fn parse_curve_str(text: &str) -> Vec<Result<CurveRecord, LineError>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| parse_curve_line(l, i + 1))
        .collect()
}

pub fn parse_curve_file(path: &Path) -> std::io::Result<Vec<Result<CurveRecord, LineError>>> {
    Ok(parse_curve_str(&std::fs::read_to_string(path)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchEntry {
    pub record: CurveRecord,
    pub report: ClassificationReport,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub total: usize,
    pub line_errors: usize,
    pub semistable: usize,
    pub with_mu3: usize,
    pub with_nonrational_ar_point: usize,
    pub mismatches: usize,
    pub order16_s: usize,
    pub analysis_errors: usize,
    pub rational_structures: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchResult {
    pub entries: Vec<BatchEntry>,
    pub errors: Vec<LineError>,
    pub summary: BatchSummary,
}

impl BatchResult {
    pub fn success(&self) -> bool {
        self.summary.mismatches == 0 && self.summary.analysis_errors == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("batch serializes")
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from(
            "label\tsemistable\trat_torsion\tquad_torsion\tmu3\tn_ar_points\tmax_ar_order\tconsistent\n",
        );
        for e in &self.entries {
            let r = &e.report;
            let label_of = |t: &Option<crate::classifier::TorsionSummary>| {
                t.as_ref().map_or("-".to_string(), |t| t.label.clone())
            };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                e.record.display_label(),
                r.semistable,
                label_of(&r.rational_torsion),
                label_of(&r.quadratic_torsion),
                r.mu3_present,
                r.ar_points.len(),
                r.max_ar_order,
                r.consistent()
            ));
        }
        out
    }
}

/// Classifies records in parallel; entries keep input order.
pub fn scan(parsed: Vec<Result<CurveRecord, LineError>>) -> BatchResult {
    let mut records = Vec::new();
    let mut errors = Vec::new();
    for p in parsed {
        match p {
            Ok(r) => records.push(r),
            Err(e) => errors.push(e),
        }
    }
    let entries: Vec<BatchEntry> = records
        .into_par_iter()
        .map(|record| {
            let report = classify(&record.curve());
            BatchEntry { record, report }
        })
        .collect();

    let mut s = BatchSummary {
        total: entries.len() + errors.len(),
        line_errors: errors.len(),
        ..Default::default()
    };
    for e in &entries {
        let r = &e.report;
        s.semistable += r.semistable as usize;
        s.with_mu3 += r.mu3_present as usize;
        s.with_nonrational_ar_point += (r.nonrational_ar_points() > 0) as usize;
        s.order16_s += r.order16_s as usize;
        s.analysis_errors += r.error.is_some() as usize;
        if r.semistable && r.error.is_none() && !r.consistent() {
            s.mismatches += 1;
        }
        if let Some(t) = &r.rational_torsion {
            if !s.rational_structures.contains(&t.structure) {
                s.rational_structures.push(t.structure);
            }
        }
    }
    s.rational_structures.sort();
    BatchResult {
        entries,
        errors,
        summary: s,
    }
}
