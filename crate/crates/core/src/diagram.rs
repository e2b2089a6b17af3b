//! Knot diagrams of polynomial space curves.
//!
//! The projection to the `xy`-plane supplies the crossings; the sign of
//! `z(s) - z(t)` decides which strand passes over, with the viewer at
//! `z = +∞`. Mirror images (`z ↦ -z`) flip every crossing and are treated as
//! equivalent throughout.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::{crossing_order_check, double_points, validate_regular, CrossingParams, SpaceCurve};
use crate::error::{Error, Result};

/// Relative tolerance on `|z(s) - z(t)|` (against `max(1, |z(s)|, |z(t)|)`)
/// below which the strands collide.
pub const Z_COLLISION_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strand {
    Over,
    Under,
}

impl Strand {
    pub fn flip(self) -> Strand {
        match self {
            Strand::Over => Strand::Under,
            Strand::Under => Strand::Over,
        }
    }

    fn letter(self) -> char {
        match self {
            Strand::Over => 'O',
            Strand::Under => 'U',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    /// 1-based, in increasing order of `s`.
    pub index: usize,
    pub params: CrossingParams,
    pub plane_point: (f64, f64),
    /// The earlier visit (at `s`) is the over-strand, i.e. `z(s) > z(t)`.
    pub first_pass_over: bool,
}

/// One passage of the strand through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Visit {
    pub crossing: usize,
    pub strand: Strand,
    pub param: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagram {
    pub crossings: Vec<Crossing>,
    /// All `2n` visits in increasing parameter order.
    pub gauss: Vec<Visit>,
}

impl Diagram {
    /// Assemble a diagram from crossings, renumbering them by `s` and
    /// merging the visits by parameter.
    pub fn from_crossings(mut crossings: Vec<Crossing>) -> Diagram {
        crossings.sort_by(|a, b| a.params.s.total_cmp(&b.params.s));
        let mut gauss = Vec::with_capacity(2 * crossings.len());
        for (i, c) in crossings.iter_mut().enumerate() {
            c.index = i + 1;
            let first = if c.first_pass_over { Strand::Over } else { Strand::Under };
            gauss.push(Visit {
                crossing: c.index,
                strand: first,
                param: c.params.s,
            });
            gauss.push(Visit {
                crossing: c.index,
                strand: first.flip(),
                param: c.params.t,
            });
        }
        gauss.sort_by(|a, b| a.param.total_cmp(&b.param));
        Diagram { crossings, gauss }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn params(&self) -> Vec<CrossingParams> {
        self.crossings.iter().map(|c| c.params).collect()
    }

    /// The mirror diagram: every crossing flipped.
    pub fn mirror(&self) -> Diagram {
        Diagram::from_crossings(
            self.crossings
                .iter()
                .map(|c| Crossing {
                    first_pass_over: !c.first_pass_over,
                    ..*c
                })
                .collect(),
        )
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&gauss_code(self))
    }
}

/// Crossings of the `xy`-projection with over/under information from `z`.
pub fn build_diagram(curve: &SpaceCurve) -> Result<Diagram> {
    let z = curve
        .z
        .as_ref()
        .ok_or_else(|| Error::BadInput(format!("curve `{}` has no z coordinate", curve.label)))?;

    if let Some(c) = first_cusp(curve) {
        return Err(Error::NonRegular(format!("cusp at t = {c}")));
    }

    let params = double_points(&curve.x, &curve.y)?;
    let mut crossings = Vec::with_capacity(params.len());
    for (i, p) in params.into_iter().enumerate() {
        let (zs, zt) = (z.eval(p.s), z.eval(p.t));
        let gap = (zs - zt).abs();
        // the value scale is invariant under reparametrization; the rounding
        // floor catches gaps that are pure evaluation noise
        let scale = zs.abs().max(zt.abs()).max(1.0);
        let deg = z.degree().unwrap_or(0) as f64;
        let noise = 16.0 * (deg + 1.0) * f64::EPSILON * z.eval_abs(p.s).max(z.eval_abs(p.t));
        if gap < (Z_COLLISION_TOL * scale).max(noise) {
            return Err(Error::ZCollision { index: i + 1, gap });
        }
        crossings.push(Crossing {
            index: i + 1,
            params: p,
            plane_point: curve.point(p.s),
            first_pass_over: zs > zt,
        });
    }
    Ok(Diagram::from_crossings(crossings))
}

fn first_cusp(curve: &SpaceCurve) -> Option<f64> {
    // only cusps are checked here; tangencies and triple points surface as
    // errors from the double point solvers
    if curve.x.degree().unwrap_or(0) < 2 {
        return None;
    }
    let dx = curve.x.derivative();
    let dy = curve.y.derivative();
    let critical = crate::chebyshev::all_real_roots(&dx, crate::chebyshev::ROOT_TOL);
    if critical
        .iter()
        .all(|r| dy.eval(r.value).abs() > 1e-9 * dy.eval_abs(r.value).max(1.0))
    {
        return None;
    }
    validate_regular(&curve.x, &curve.y).cusps.first().copied()
}

/// Over and under strictly alternate along the strand.
pub fn is_alternating(d: &Diagram) -> bool {
    d.gauss.windows(2).all(|w| w[0].strand != w[1].strand)
}

/// `Some(n)` when the diagram has the shape of the standard minimal diagram
/// of the `(2, n)` torus knot:
///
/// * `n` crossings with `s_1 < ... < s_n < t_1 < ... < t_n`,
/// * alternating,
/// * both halves of the Gauss sequence visit the crossings in the same
///   cyclic order.
///
/// Only `(2, n)` torus knots are recognised, and only from diagrams of this
/// form; this is sound for the curves handled here, not a general knot
/// classifier. A single crossing is a kink of the unknot and is rejected.
pub fn recognize_torus_2n(d: &Diagram) -> Option<usize> {
    let n = d.crossing_count();
    if n < 3 || d.gauss.len() != 2 * n {
        return None;
    }
    if !crossing_order_check(&d.params()) || !is_alternating(d) {
        return None;
    }
    let first: Vec<usize> = d.gauss[..n].iter().map(|v| v.crossing).collect();
    let second: Vec<usize> = d.gauss[n..].iter().map(|v| v.crossing).collect();
    let start = second.iter().position(|&c| c == first[0])?;
    let same_cycle = (0..n).all(|k| first[k] == second[(start + k) % n]);
    same_cycle.then_some(n)
}

/// `"O1 U2 O3 U1 O2 U3"`: crossing visits in parameter order.
pub fn gauss_code(d: &Diagram) -> String {
    d.gauss
        .iter()
        .map(|v| format!("{}{}", v.strand.letter(), v.crossing))
        .collect::<Vec<_>>()
        .join(" ")
}
