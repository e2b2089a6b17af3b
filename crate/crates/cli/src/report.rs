use std::fmt::Write as _;

use serde::Serialize;

use polyknot::curve::crossing_order_check;
use polyknot::diagram::{build_diagram, gauss_code, is_alternating, recognize_torus_2n};
use polyknot::synth::DegreeStatus;
use polyknot::{Diagram, SpaceCurve};

use crate::format::FORMAT_VERSION;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossingRow {
    pub index: usize,
    pub s: f64,
    pub t: f64,
    pub u: f64,
    /// Strand on top at the first passage (parameter `s`).
    pub first: &'static str,
    pub point: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub format: u32,
    pub label: String,
    pub degrees: [usize; 3],
    pub crossings: Vec<CrossingRow>,
    pub alternating: bool,
    pub ordered: bool,
    /// `n` when the diagram is the standard one of `K_n`.
    pub recognized: Option<usize>,
    pub gauss: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_status: Option<DegreeStatus>,
}

impl VerifyReport {
    pub fn from_diagram(curve: &SpaceCurve, d: &Diagram) -> VerifyReport {
        let (dx, dy, dz) = curve.degrees();
        VerifyReport {
            format: FORMAT_VERSION,
            label: curve.label.clone(),
            degrees: [dx, dy, dz.unwrap_or(0)],
            crossings: d
                .crossings
                .iter()
                .map(|c| CrossingRow {
                    index: c.index,
                    s: c.params.s,
                    t: c.params.t,
                    u: c.params.u,
                    first: if c.first_pass_over { "over" } else { "under" },
                    point: [c.plane_point.0, c.plane_point.1],
                })
                .collect(),
            alternating: is_alternating(d),
            ordered: crossing_order_check(&d.params()),
            recognized: recognize_torus_2n(d),
            gauss: gauss_code(d),
            degree_status: None,
        }
    }

    pub fn summary(&self) -> String {
        let alt = if self.alternating {
            "alternating"
        } else {
            "not alternating"
        };
        let n = self.crossings.len();
        let head = match self.recognized {
            Some(k) => format!("K_{k}"),
            None => "not recognized".to_string(),
        };
        format!("{head}, {n} crossing{}, {alt}", if n == 1 { "" } else { "s" })
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.summary());
        if let Some(status) = self.degree_status {
            let tag = match status {
                DegreeStatus::Minimal => "minimal",
                DegreeStatus::MinimalConditional => "minimal-conditional",
            };
            let [a, b, c] = self.degrees;
            let _ = writeln!(out, "degrees ({a}, {b}, {c}), {tag}");
        }
        let _ = writeln!(out, "{:>3}  {:>14}  {:>14}  {:>14}  first", "#", "s", "t", "u");
        for r in &self.crossings {
            let _ = writeln!(
                out,
                "{:>3}  {:>14.9}  {:>14.9}  {:>14.9}  {}",
                r.index, r.s, r.t, r.u, r.first
            );
        }
        let _ = writeln!(out, "gauss: {}", self.gauss);
        out
    }
}

pub fn verify_curve(curve: &SpaceCurve) -> polyknot::Result<VerifyReport> {
    let d = build_diagram(curve)?;
    Ok(VerifyReport::from_diagram(curve, &d))
}
