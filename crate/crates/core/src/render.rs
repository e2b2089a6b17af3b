//! SVG drawings of plane projections with broken under-strands.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::curve::SpaceCurve;
use crate::diagram::{Diagram, Strand};
use crate::error::{Error, Result};

/// Chord-to-curve deviation (px) above which a segment is split.
const FLATNESS_PX: f64 = 0.25;
const MAX_DEPTH: u32 = 12;
const MARGIN_PX: f64 = 24.0;
/// Default padding of the parameter range beyond the crossings.
const MAX_PAD: f64 = 0.5;
/// Padding stops growing once the tails stretch the drawing's bounding box
/// beyond this multiple of the crossing span's box in either axis.
const TAIL_EXTENT: f64 = 1.5;
/// Crossing parameters must sit this fraction of the range inside it.
const RANGE_MARGIN: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RenderOptions {
    pub width: u32,
    pub height: u32,
    /// Initial uniform samples before adaptive refinement; at least 256.
    pub samples: usize,
    pub stroke_width: f64,
    /// Half-length of each under-strand break, in stroke widths.
    pub gap: f64,
    /// Parameter interval drawn. Defaults to `[min s - p, max t + p]`, with
    /// `p <= 0.5` shrunk until the tails at most 1.5x the size of the crossing
    /// region, and never below the 5% margin the crossings need.
    pub t_range: Option<(f64, f64)>,
    pub labels: bool,
    /// Region fitted to the canvas.
    pub fit: Fit,
    /// One scale for both axes. Off by default: each axis is fitted to the
    /// canvas separately, since `y` often spans a hundred times the range of
    /// `x = T_3`.
    pub equal_axes: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 600,
            height: 600,
            samples: 2048,
            stroke_width: 2.0,
            gap: 4.0,
            t_range: None,
            labels: true,
            fit: Fit::Curve,
            equal_axes: false,
        }
    }
}

/// What [`render_svg`] scales to the canvas.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fit {
    /// The whole curve over the parameter range.
    #[default]
    Curve,
    /// The crossing points with a 20% border; the rest of the curve is
    /// clipped by the canvas. Useful when the crossings sit in a thin band,
    /// as for the published `K_9`.
    Crossings,
}

/// The removed parameter interval around one under-passage.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Gap {
    pub crossing: usize,
    pub param: f64,
    pub lo: f64,
    pub hi: f64,
}

/// Affine map from the plane to pixels (y pointing down).
struct Frame {
    sx: f64,
    sy: f64,
    ox: f64,
    oy: f64,
    width: f64,
    height: f64,
}

/// `(xmin, xmax, ymin, ymax)` of a point set.
fn bbox(points: impl Iterator<Item = (f64, f64)>) -> (f64, f64, f64, f64) {
    points.fold(
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
        |(a, b, c, d), (x, y)| (a.min(x), b.max(x), c.min(y), d.max(y)),
    )
}

impl Frame {
    fn fit(c: &SpaceCurve, d: &Diagram, lo: f64, hi: f64, o: &RenderOptions) -> Frame {
        let (mut xmin, mut xmax, mut ymin, mut ymax) = match o.fit {
            Fit::Crossings if !d.crossings.is_empty() => {
                let (a, b, c, e) = bbox(d.crossings.iter().map(|cr| cr.plane_point));
                // a degenerate axis borrows the other's extent
                let span = (b - a).max(e - c).max(1e-9);
                let (wx, wy) = ((b - a).max(1e-6 * span), (e - c).max(1e-6 * span));
                (a - 0.2 * wx, b + 0.2 * wx, c - 0.2 * wy, e + 0.2 * wy)
            }
            _ => bbox((0..=o.samples).map(|k| c.point(lo + (hi - lo) * k as f64 / o.samples as f64))),
        };
        if o.equal_axes && o.fit == Fit::Crossings {
            // keep the crossing box centred when one scale must serve both
            let (cx, cy) = (0.5 * (xmin + xmax), 0.5 * (ymin + ymax));
            let r = 0.5 * (xmax - xmin).max(ymax - ymin);
            (xmin, xmax, ymin, ymax) = (cx - r, cx + r, cy - r, cy + r);
        }
        let w = (o.width as f64 - 2.0 * MARGIN_PX).max(1.0);
        let h = (o.height as f64 - 2.0 * MARGIN_PX).max(1.0);
        let (mut sx, mut sy) = (w / (xmax - xmin).max(1e-12), h / (ymax - ymin).max(1e-12));
        if o.equal_axes {
            sx = sx.min(sy);
            sy = sx;
        }
        Frame {
            sx,
            sy,
            ox: 0.5 * o.width as f64 - sx * 0.5 * (xmin + xmax),
            oy: 0.5 * o.height as f64 + sy * 0.5 * (ymin + ymax),
            width: o.width as f64,
            height: o.height as f64,
        }
    }

    /// Whether the three points lie beyond one edge of the canvas, so the
    /// segment through them is invisible.
    fn off_canvas(&self, pts: [(f64, f64); 3]) -> bool {
        let m = MARGIN_PX;
        pts.iter().all(|p| p.0 < -m)
            || pts.iter().all(|p| p.0 > self.width + m)
            || pts.iter().all(|p| p.1 < -m)
            || pts.iter().all(|p| p.1 > self.height + m)
    }

    fn px(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (self.ox + self.sx * x, self.oy - self.sy * y)
    }
}

/// `(width, height)` of the plane bounding box of `c` over `[lo, hi]`.
fn extent(c: &SpaceCurve, lo: f64, hi: f64) -> (f64, f64) {
    const N: usize = 512;
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for k in 0..=N {
        let (x, y) = c.point(lo + (hi - lo) * k as f64 / N as f64);
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    (xmax - xmin, ymax - ymin)
}

/// Largest pad `<= MAX_PAD` keeping the tails within `TAIL_EXTENT` of the
/// crossing region, but at least the margin the crossings need. The box
/// only grows with the pad, so bisection applies.
fn default_pad(c: &SpaceCurve, a: f64, b: f64) -> f64 {
    let min_pad = RANGE_MARGIN * (b - a) / (1.0 - 2.0 * RANGE_MARGIN) * 1.01;
    let (w0, h0) = extent(c, a, b);
    let fits = |p: f64| {
        let (w, h) = extent(c, a - p, b + p);
        w <= TAIL_EXTENT * w0.max(1e-12) && h <= TAIL_EXTENT * h0.max(1e-12)
    };
    if min_pad >= MAX_PAD || fits(MAX_PAD) {
        return MAX_PAD.max(min_pad);
    }
    if !fits(min_pad) {
        return min_pad;
    }
    let (mut ok, mut bad) = (min_pad, MAX_PAD);
    for _ in 0..40 {
        let mid = 0.5 * (ok + bad);
        if fits(mid) {
            ok = mid;
        } else {
            bad = mid;
        }
    }
    ok
}

fn resolve_range(c: &SpaceCurve, d: &Diagram, o: &RenderOptions) -> Result<(f64, f64)> {
    if o.samples < 256 {
        return Err(Error::BadInput(format!("samples = {} < 256", o.samples)));
    }
    if o.width == 0 || o.height == 0 || !(o.gap >= 0.0) || !(o.stroke_width > 0.0) {
        return Err(Error::BadInput(
            "width, height and stroke width must be positive".into(),
        ));
    }
    let params = d.params();
    let (lo, hi) = o.t_range.unwrap_or_else(|| {
        let a = params.iter().map(|p| p.s).fold(-1.0f64, f64::min);
        let b = params.iter().map(|p| p.t).fold(1.0f64, f64::max);
        let pad = default_pad(c, a, b);
        (a - pad, b + pad)
    });
    if !(lo < hi) {
        return Err(Error::BadInput(format!("empty parameter range [{lo}, {hi}]")));
    }
    let margin = RANGE_MARGIN * (hi - lo);
    for p in params.iter().flat_map(|p| [p.s, p.t]) {
        if p < lo + margin || p > hi - margin {
            return Err(Error::BadRange { param: p, lo, hi });
        }
    }
    Ok((lo, hi))
}

/// Parameter offset `τ <= limit` (in direction `dir`) where the curve
/// first leaves the disc of radius `half` px around the crossing point;
/// `limit` when it never does.
fn break_end(c: &SpaceCurve, frame: &Frame, t0: f64, dir: f64, half: f64, limit: f64) -> f64 {
    const STEPS: usize = 64;
    let centre = frame.px(c.point(t0));
    let dist = |tau: f64| {
        let p = frame.px(c.point(t0 + dir * tau));
        (p.0 - centre.0).hypot(p.1 - centre.1)
    };
    let mut inside = 0.0;
    for k in 1..=STEPS {
        let tau = limit * k as f64 / STEPS as f64;
        if dist(tau) >= half {
            let mut a = inside;
            let mut b = tau;
            for _ in 0..50 {
                let m = 0.5 * (a + b);
                if dist(m) >= half {
                    b = m;
                } else {
                    a = m;
                }
            }
            return b;
        }
        inside = tau;
    }
    limit
}

fn compute_gaps(c: &SpaceCurve, d: &Diagram, o: &RenderOptions, frame: &Frame, (lo, hi): (f64, f64)) -> Vec<Gap> {
    let visits: Vec<f64> = d.gauss.iter().map(|v| v.param).collect();
    let half = o.gap * o.stroke_width;
    let mut gaps: Vec<Gap> = d
        .gauss
        .iter()
        .filter(|v| v.strand == Strand::Under)
        .map(|v| {
            // stay clear of the neighbouring visits and the range ends so
            // breaks never merge or leave the drawing
            let prev = visits.iter().copied().filter(|&p| p < v.param).fold(lo, f64::max);
            let next = visits.iter().copied().filter(|&p| p > v.param).fold(hi, f64::min);
            Gap {
                crossing: v.crossing,
                param: v.param,
                lo: v.param - break_end(c, frame, v.param, -1.0, half, 0.45 * (v.param - prev)),
                hi: v.param + break_end(c, frame, v.param, 1.0, half, 0.45 * (next - v.param)),
            }
        })
        .collect();
    gaps.sort_by(|a, b| a.param.total_cmp(&b.param));
    gaps
}

/// The under-strand breaks `render_svg` would draw, in parameter order.
pub fn gaps(c: &SpaceCurve, d: &Diagram, o: &RenderOptions) -> Result<Vec<Gap>> {
    let (lo, hi) = resolve_range(c, d, o)?;
    let frame = Frame::fit(c, d, lo, hi, o);
    Ok(compute_gaps(c, d, o, &frame, (lo, hi)))
}

/// Points of `[a, b]`, refined until every chord is within `FLATNESS_PX` of
/// the curve at its midpoint. The last point is `b`.
fn sample(c: &SpaceCurve, frame: &Frame, a: f64, b: f64, n: usize, out: &mut Vec<(f64, f64)>) {
    let at = |t: f64| frame.px(c.point(t));
    out.push(at(a));
    let n = n.max(1);
    for k in 0..n {
        let t0 = a + (b - a) * k as f64 / n as f64;
        let t1 = if k + 1 == n {
            b
        } else {
            a + (b - a) * (k + 1) as f64 / n as f64
        };
        refine(&at, frame, t0, at(t0), t1, at(t1), 0, out);
    }
}

#[allow(clippy::too_many_arguments)]
fn refine(
    at: &dyn Fn(f64) -> (f64, f64),
    frame: &Frame,
    t0: f64,
    p0: (f64, f64),
    t1: f64,
    p1: (f64, f64),
    depth: u32,
    out: &mut Vec<(f64, f64)>,
) {
    let tm = 0.5 * (t0 + t1);
    let pm = at(tm);
    let chord = ((p0.0 + p1.0) * 0.5 - pm.0).hypot((p0.1 + p1.1) * 0.5 - pm.1);
    if chord > FLATNESS_PX && depth < MAX_DEPTH && !frame.off_canvas([p0, pm, p1]) {
        refine(at, frame, t0, p0, tm, pm, depth + 1, out);
        refine(at, frame, tm, pm, t1, p1, depth + 1, out);
    } else {
        out.push(p1);
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Deterministic SVG 1.1 drawing of the `xy`-projection of `c`, one
/// `<path>` per unbroken piece of strand, with crossing numbers from `d`.
pub fn render_svg(c: &SpaceCurve, d: &Diagram, o: &RenderOptions) -> Result<String> {
    let (lo, hi) = resolve_range(c, d, o)?;
    let frame = Frame::fit(c, d, lo, hi, o);
    let gaps = compute_gaps(c, d, o, &frame, (lo, hi));

    let mut pieces = Vec::with_capacity(gaps.len() + 1);
    let mut start = lo;
    for g in &gaps {
        pieces.push((start, g.lo));
        start = g.hi;
    }
    pieces.push((start, hi));

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = o.width,
        h = o.height
    );
    let _ = writeln!(svg, "<title>{}</title>", escape(&c.label));
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<g fill="none" stroke="black" stroke-width="{}" stroke-linecap="round" stroke-linejoin="round">"#,
        o.stroke_width
    );
    let total = hi - lo;
    for &(a, b) in &pieces {
        let n = ((b - a) / total * o.samples as f64).ceil() as usize;
        let mut pts = Vec::new();
        sample(c, &frame, a, b, n, &mut pts);
        let mut dstr = String::new();
        for (k, (x, y)) in pts.iter().enumerate() {
            let _ = write!(dstr, "{}{:.2} {:.2}", if k == 0 { "M" } else { " L" }, x, y);
        }
        let _ = writeln!(svg, r#"<path class="strand" d="{dstr}"/>"#);
    }
    let _ = writeln!(svg, "</g>");
    if o.labels {
        let _ = writeln!(
            svg,
            r#"<g font-family="sans-serif" font-size="12" fill="crimson" text-anchor="middle">"#
        );
        for cr in &d.crossings {
            let (x, y) = frame.px(cr.plane_point);
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
                x + 10.0,
                y - 8.0,
                cr.index
            );
        }
        let _ = writeln!(svg, "</g>");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
