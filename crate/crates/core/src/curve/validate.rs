use serde::Serialize;

use crate::chebyshev::{all_real_roots, Polynomial, ROOT_TOL};

use super::general::scan;
use super::{CrossingParams, DISTINCT_POINT_TOL};

/// Findings that keep a plane curve from being a regular projection.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    /// Parameters where `x' = y' = 0`.
    pub cusps: Vec<f64>,
    /// Double points whose branches are tangent.
    pub tangential: Vec<CrossingParams>,
    /// Pairs of crossings that share a plane point.
    pub triple_points: Vec<(CrossingParams, CrossingParams)>,
    /// Double points fill a whole curve of parameter pairs (the image is
    /// traced twice, e.g. `(t^2, t^4)`).
    pub non_isolated: bool,
}

impl ValidationReport {
    /// Only transversal simple double points.
    pub fn is_regular(&self) -> bool {
        self.cusps.is_empty() && self.tangential.is_empty() && self.triple_points.is_empty() && !self.non_isolated
    }
}

pub fn validate_regular(x: &Polynomial, y: &Polynomial) -> ValidationReport {
    let mut report = ValidationReport {
        cusps: cusps(x, y),
        ..Default::default()
    };

    let scan = scan(x, y);
    report.non_isolated = scan.non_isolated;
    for f in &scan.found {
        if f.is_tangential() {
            report.tangential.push(f.params);
        }
    }
    let pts: Vec<_> = scan
        .found
        .iter()
        .map(|f| (x.eval(f.params.s), y.eval(f.params.s)))
        .collect();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = (pts[i].0 - pts[j].0).abs().max((pts[i].1 - pts[j].1).abs());
            if d < DISTINCT_POINT_TOL {
                report.triple_points.push((scan.found[i].params, scan.found[j].params));
            }
        }
    }
    report
}

fn cusps(x: &Polynomial, y: &Polynomial) -> Vec<f64> {
    let (dx, dy) = (x.derivative(), y.derivative());
    let small = |p: &Polynomial, t: f64| p.eval(t).abs() <= 1e-9 * p.eval_abs(t).max(1.0);
    let mut out: Vec<f64> = Vec::new();
    for (p, q) in [(&dx, &dy), (&dy, &dx)] {
        if p.is_zero() {
            continue;
        }
        for r in all_real_roots(p, ROOT_TOL) {
            if (q.is_zero() || small(q, r.value)) && !out.iter().any(|&c| (c - r.value).abs() < 1e-8) {
                out.push(r.value);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out
}
