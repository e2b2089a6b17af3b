//! Construction of `K_n` parametrizations `(T_3, y, z)`.
//!
//! Pick crossing nodes `u_1 < ... < u_n` in `(-2, 2)` and find V-series
//! `R_1`, `R_2` over the admissible basis `{V_j : j ≢ 2 (mod 3)}` with
//!
//! ```text
//! R_1(u_i) = 0,   R_2(u_i) = (-1)^i.
//! ```
//!
//! Lifting them through the ellipse divided difference gives `y` and `z`.
//! The crossings of `(T_3, y)` are then the roots of `R_1` in `(-2, 2)`, and
//! `z(t_i) - z(s_i) = (t_i - s_i) R_2(u_i)` alternates in sign, so the
//! diagram is the standard alternating one as long as `R_1` has no other
//! roots in `(-2, 2)`. Terms in `T_{6i}` lie in the kernel of the divided
//! difference and only reshape the drawing.
//!
//! Nodes are stored as `u = s + t = 2 cos α`; [`SynthSpec::from_cos_alpha`]
//! accepts `cos α` values.

mod builtin;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::chebyshev::{all_real_roots, epsilon, ChebSeries, VSeries, ROOT_TOL};
use crate::curve::SpaceCurve;
use crate::diagram::{build_diagram, recognize_torus_2n, Diagram};
use crate::error::{Error, Result};

pub use builtin::{builtin, builtin_info, Builtin, DegreeStatus, BUILTIN_NAMES};

/// Condition number above which an interpolation system counts as singular.
pub const MAX_CONDITION: f64 = 1e12;

/// `|u_i - (-u_{n+1-i})|` below this makes the node set symmetric.
const SYMMETRY_TOL: f64 = 1e-12;

/// Crossing nodes and optional `T_{6i}` shaping for [`synthesize`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub n: usize,
    /// `u_i = 2 cos α_i`, strictly increasing, `|u_i| < 2`.
    pub nodes: Vec<f64>,
    /// `shaping[i - 1]` multiplies `T_{6i}` in `y`.
    #[serde(default)]
    pub shaping: Vec<f64>,
}

impl SynthSpec {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        let spec = SynthSpec {
            n: nodes.len(),
            nodes,
            shaping: Vec::new(),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Nodes given as `cos α_i` (any order); stored as `2 cos α_i`.
    pub fn from_cos_alpha(cos_alpha: &[f64]) -> Result<Self> {
        let mut nodes: Vec<f64> = cos_alpha.iter().map(|c| 2.0 * c).collect();
        nodes.sort_by(f64::total_cmp);
        SynthSpec::new(nodes)
    }

    pub fn with_shaping(mut self, shaping: Vec<f64>) -> Self {
        self.shaping = shaping;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes.len() != self.n {
            return Err(Error::BadInput(format!(
                "n = {} but {} nodes given",
                self.n,
                self.nodes.len()
            )));
        }
        validate_nodes(&self.nodes)?;
        if self.shaping.iter().any(|b| !b.is_finite()) {
            return Err(Error::BadInput("shaping coefficients must be finite".into()));
        }
        Ok(())
    }

    pub fn is_symmetric(&self) -> bool {
        is_symmetric(&self.nodes)
    }
}

fn validate_nodes(nodes: &[f64]) -> Result<()> {
    if nodes.is_empty() {
        return Err(Error::BadInput("no nodes".into()));
    }
    if let Some(u) = nodes.iter().find(|u| !u.is_finite() || u.abs() >= 2.0) {
        return Err(Error::BadInput(format!("node {u} is not inside (-2, 2)")));
    }
    if let Some(w) = nodes.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::BadInput(format!(
            "nodes must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }
    Ok(())
}

fn is_symmetric(nodes: &[f64]) -> bool {
    nodes
        .iter()
        .zip(nodes.iter().rev())
        .all(|(a, b)| (a + b).abs() <= SYMMETRY_TOL)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SynthResult {
    pub curve: SpaceCurve,
    /// Chebyshev coefficients of `(x, y, z)`, `x = T_3`.
    pub series: (ChebSeries, ChebSeries, ChebSeries),
    pub r1: VSeries,
    pub r2: VSeries,
    pub diagram: Diagram,
    /// Real roots of `R_1` that are not nodes; all outside `[-2, 2]`.
    pub extra_roots: Vec<f64>,
    /// Exactly `n` crossings at the nodes (within `1e-8`), recognized as
    /// `K_n`.
    pub verified: bool,
}

/// `V_0(u), ..., V_d(u)`.
fn v_values(u: f64, d: usize) -> Vec<f64> {
    let mut v = Vec::with_capacity(d + 1);
    v.push(1.0);
    if d >= 1 {
        v.push(u);
    }
    for k in 2..=d {
        v.push(u * v[k - 1] - v[k - 2]);
    }
    v
}

/// Admissible indices `j ≢ 2 (mod 3)`, optionally restricted to one parity,
/// in increasing order.
fn admissible(parity: Option<usize>) -> impl Iterator<Item = usize> {
    (0..)
        .filter(|j| j % 3 != 2)
        .filter(move |j| parity.is_none_or(|p| j % 2 == p))
}

/// Least-squares solve via SVD, refusing ill-conditioned systems.
fn solve(a: DMatrix<f64>, b: DVector<f64>) -> Result<DVector<f64>> {
    let svd = a.svd(true, true);
    let max = svd.singular_values.max();
    let min = svd.singular_values.min();
    let condition = if min > 0.0 { max / min } else { f64::INFINITY };
    if !(condition <= MAX_CONDITION) {
        return Err(Error::SingularSystem { condition });
    }
    svd.solve(&b, 0.0).map_err(|_| Error::SingularSystem { condition })
}

/// Basis restriction and the nodes that still carry a condition. With
/// symmetric nodes `R_1` has the parity of `n` and `R_2` the opposite one,
/// and conditions at `-u` repeat those at `u`.
struct Layout {
    parity: Option<usize>,
    points: Vec<(usize, f64)>,
}

fn layout(nodes: &[f64], parity_of: usize) -> Layout {
    if !is_symmetric(nodes) {
        return Layout {
            parity: None,
            points: nodes.iter().copied().enumerate().collect(),
        };
    }
    let parity = parity_of % 2;
    let points = nodes
        .iter()
        .copied()
        .enumerate()
        // a middle node within rounding of 0 is the zero node: odd series
        // vanish there already
        .filter(|&(_, u)| {
            if parity == 1 {
                u > SYMMETRY_TOL
            } else {
                u > -SYMMETRY_TOL
            }
        })
        .collect();
    Layout {
        parity: Some(parity),
        points,
    }
}

/// Monic `R_1` of leading index `lead`, with unknowns on the first
/// `points.len()` admissible indices and `lambda` on index `free`.
fn fit_r1(lay: &Layout, lead: usize, free: Option<(usize, f64)>) -> Result<VSeries> {
    let unknowns: Vec<usize> = admissible(lay.parity).take(lay.points.len()).collect();
    if unknowns.last().is_some_and(|&j| j >= lead) {
        return Err(Error::BadInput(format!("V_{lead} leaves too few admissible unknowns")));
    }
    let m = lay.points.len();
    let mut a = DMatrix::zeros(m, m);
    let mut b = DVector::zeros(m);
    for (row, &(_, u)) in lay.points.iter().enumerate() {
        let v = v_values(u, lead);
        for (col, &j) in unknowns.iter().enumerate() {
            a[(row, col)] = v[j];
        }
        b[row] = -v[lead] - free.map_or(0.0, |(j, lam)| lam * v[j]);
    }
    let sol = if m == 0 { DVector::zeros(0) } else { solve(a, b)? };
    let mut coeffs = vec![0.0; lead + 1];
    coeffs[lead] = 1.0;
    for (c, &j) in sol.iter().zip(&unknowns) {
        coeffs[j] = *c;
    }
    if let Some((j, lam)) = free {
        coeffs[j] += lam;
    }
    Ok(VSeries::new(coeffs))
}

/// Leading indices to try for `R_1`, smallest first: the first admissible
/// index with enough admissible indices below it, then the next few.
fn r1_degrees(lay: &Layout) -> Vec<usize> {
    admissible(lay.parity).skip(lay.points.len()).take(4).collect()
}

/// Monic `R_1` of minimal admissible degree vanishing at every node.
pub fn interpolate_r1(nodes: &[f64]) -> Result<VSeries> {
    validate_nodes(nodes)?;
    let lay = layout(nodes, nodes.len());
    let mut last = None;
    for lead in r1_degrees(&lay) {
        match fit_r1(&lay, lead, None) {
            Ok(r) => return Ok(r),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or(Error::SingularSystem {
        condition: f64::INFINITY,
    }))
}

/// `R_2` of minimal admissible degree with `R_2(u_i) = (-1)^i` (1-based).
pub fn interpolate_r2(nodes: &[f64]) -> Result<VSeries> {
    validate_nodes(nodes)?;
    let lay = layout(nodes, nodes.len() + 1);
    let unknowns: Vec<usize> = admissible(lay.parity).take(lay.points.len()).collect();
    let m = lay.points.len();
    let lead = *unknowns.last().expect("at least one node");
    let mut a = DMatrix::zeros(m, m);
    let mut b = DVector::zeros(m);
    for (row, &(i, u)) in lay.points.iter().enumerate() {
        let v = v_values(u, lead);
        for (col, &j) in unknowns.iter().enumerate() {
            a[(row, col)] = v[j];
        }
        b[row] = if i % 2 == 0 { -1.0 } else { 1.0 };
    }
    let sol = solve(a, b)?;
    let mut coeffs = vec![0.0; lead + 1];
    for (c, &j) in sol.iter().zip(&unknowns) {
        coeffs[j] = *c;
    }
    Ok(VSeries::new(coeffs))
}

/// Real roots of `r` that do not coincide with a node.
fn non_node_roots(r: &VSeries, nodes: &[f64]) -> Vec<f64> {
    all_real_roots(&r.to_monomial(), ROOT_TOL)
        .into_iter()
        .map(|root| root.value)
        .filter(|u| nodes.iter().all(|n| (n - u).abs() > 1e-6))
        .collect()
}

fn inside(roots: &[f64]) -> Vec<f64> {
    roots.iter().copied().filter(|u| u.abs() <= 2.0).collect()
}

/// `R_1` with no extra roots in `[-2, 2]`: minimal degree first, then higher
/// admissible degrees with a line search on the highest free coefficient.
fn place_extra_roots(nodes: &[f64]) -> Result<VSeries> {
    let lay = layout(nodes, nodes.len());
    let degrees = r1_degrees(&lay);
    let mut fallback: Option<VSeries> = None;
    for (step, &lead) in degrees.iter().enumerate() {
        let free = (step > 0)
            .then(|| admissible(lay.parity).take_while(|&j| j < lead).last())
            .flatten();
        let lambdas: Vec<f64> = match free {
            None => vec![0.0],
            Some(_) => std::iter::once(0.0)
                .chain((1..=40).flat_map(|k| [0.5 * k as f64, -0.5 * k as f64]))
                .collect(),
        };
        for lam in lambdas {
            let Ok(r) = fit_r1(&lay, lead, free.map(|j| (j, lam))) else {
                continue;
            };
            if inside(&non_node_roots(&r, nodes)).is_empty() {
                return Ok(r);
            }
            fallback.get_or_insert(r);
        }
    }
    match fallback {
        Some(r) => Ok(r),
        None => interpolate_r1(nodes),
    }
}

/// `Q` with `Q(t) - Q(s) = (t - s) r(s + t)` on the `T_3` ellipse:
/// `c_{j+1} = r_j / ε(j+1)`.
pub fn lift(r: &VSeries) -> Result<ChebSeries> {
    let scale = r.coeffs().iter().fold(1.0f64, |m, c| m.max(c.abs()));
    let mut q = vec![0.0; r.coeffs().len() + 1];
    for (j, &c) in r.coeffs().iter().enumerate() {
        match epsilon(j + 1) {
            0 if c.abs() > 1e-12 * scale => return Err(Error::Unliftable { index: j, coeff: c }),
            0 => {}
            e => q[j + 1] = c / e as f64,
        }
    }
    Ok(ChebSeries::new(q))
}

/// `q + sum_i b_i T_{6i}`, `b = [b_1, b_2, ...]`.
pub fn add_shaping(q: &ChebSeries, b: &[f64]) -> ChebSeries {
    let terms: Vec<(usize, f64)> = b.iter().enumerate().map(|(i, &c)| (6 * (i + 1), c)).collect();
    q.add(&ChebSeries::from_terms(&terms))
}

/// Build, check and return the curve for `spec`.
pub fn synthesize(spec: &SynthSpec) -> Result<SynthResult> {
    spec.validate()?;
    let r1 = place_extra_roots(&spec.nodes)?;
    let extra_roots = non_node_roots(&r1, &spec.nodes);
    let bad = inside(&extra_roots);
    if !bad.is_empty() {
        return Err(Error::ExtraCrossings {
            count: bad.len(),
            roots: bad,
        });
    }
    let r2 = interpolate_r2(&spec.nodes)?;

    let y = lift(&r1)?;
    let y = add_shaping(&y.scale(1.0 / y.leading_coeff()), &spec.shaping);
    let z = lift(&r2)?;
    let z = z.scale(1.0 / z.leading_coeff().abs());
    let x = ChebSeries::basis_element(3);

    let curve = SpaceCurve::new(
        x.to_monomial(),
        y.to_monomial(),
        Some(z.to_monomial()),
        format!("K{} (synthesized)", spec.n),
    );
    let diagram = build_diagram(&curve)?;
    let us = sorted_by_u(&diagram);
    let at_nodes = us.len() == spec.n && us.iter().zip(&spec.nodes).all(|(a, b)| (a - b).abs() < 1e-8);
    let verified = at_nodes && recognize_torus_2n(&diagram) == Some(spec.n);

    Ok(SynthResult {
        curve,
        series: (x, y, z),
        r1,
        r2,
        diagram,
        extra_roots,
        verified,
    })
}

fn sorted_by_u(d: &Diagram) -> Vec<f64> {
    let mut u: Vec<f64> = d.crossings.iter().map(|c| c.params.u).collect();
    u.sort_by(f64::total_cmp);
    u
}

/// Shaping coefficients `b_i` on `T_{6i}`, `6i <= deg y`, from a grid over
/// `[-5, 5]` (step 0.25) maximizing the smallest distance between crossing
/// points relative to the drawing's bounding box. Crossings and their
/// over/under pattern do not depend on `b`.
pub fn grid_search_shaping(result: &SynthResult) -> Vec<f64> {
    let y0 = &result.series.1;
    let count = y0.degree().unwrap_or(0) / 6;
    if count == 0 || result.diagram.crossing_count() < 2 {
        return Vec::new();
    }
    let params = result.diagram.params();
    let lo = params.iter().map(|p| p.s).fold(f64::INFINITY, f64::min) - 0.5;
    let hi = params.iter().map(|p| p.t).fold(f64::NEG_INFINITY, f64::max) + 0.5;
    let x = &result.curve.x;
    let base: Vec<f64> = (1..=count).map(|i| y0.coeff(6 * i)).collect();

    let score = |b: &[f64]| -> f64 {
        let delta: Vec<f64> = b.iter().zip(&base).map(|(b, b0)| b - b0).collect();
        let y = add_shaping(y0, &delta).to_monomial();
        let samples = 256;
        let (mut xmin, mut xmax, mut ymin, mut ymax) =
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for k in 0..=samples {
            let t = lo + (hi - lo) * k as f64 / samples as f64;
            let (px, py) = (x.eval(t), y.eval(t));
            xmin = xmin.min(px);
            xmax = xmax.max(px);
            ymin = ymin.min(py);
            ymax = ymax.max(py);
        }
        let diag = (xmax - xmin).hypot(ymax - ymin);
        let pts: Vec<(f64, f64)> = params.iter().map(|p| (x.eval(p.s), y.eval(p.s))).collect();
        let mut min = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                min = min.min((pts[i].0 - pts[j].0).hypot(pts[i].1 - pts[j].1));
            }
        }
        min / diag
    };

    let grid: Vec<f64> = (0..=40).map(|k| -5.0 + 0.25 * k as f64).collect();
    let mut best = (f64::NEG_INFINITY, base.clone());
    let mut b = vec![0.0; count];
    let mut idx = vec![0usize; count];
    loop {
        for (slot, &i) in b.iter_mut().zip(&idx) {
            *slot = grid[i];
        }
        let s = score(&b);
        if s > best.0 {
            best = (s, b.clone());
        }
        // odometer over the grid
        let mut k = 0;
        while k < count {
            idx[k] += 1;
            if idx[k] < grid.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == count {
            break;
        }
    }
    best.1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::divided_difference_on_ellipse;
    use crate::curve::double_points_cheb3;

    const K7_COS: [f64; 7] = [-0.5, -0.3, -0.2, 0.0, 0.2, 0.3, 0.5];

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn r1_for_trefoil_nodes_is_v3() {
        let s = 2f64.sqrt();
        let r = interpolate_r1(&[-s, 0.0, s]).unwrap();
        assert_eq!(r.degree(), Some(3));
        assert!(close(r.coeff(3), 1.0, 0.0));
        assert!(close(r.coeff(1), 0.0, 1e-12));
        let q = lift(&r).unwrap();
        assert_eq!(q.coeff(4), -1.0);
        assert!(q.coeffs()[..4].iter().all(|c| c.abs() < 1e-12));
    }

    #[test]
    fn middle_node_at_rounding_level_counts_as_zero() {
        // 2cos(π/2) is 1.2e-16, not 0
        let mid = 2.0 * std::f64::consts::FRAC_PI_2.cos();
        assert!(mid != 0.0);
        let res = synthesize(&SynthSpec::new(vec![-0.6, mid, 0.6]).unwrap()).unwrap();
        assert!(res.verified);
    }

    #[test]
    fn r2_single_node() {
        let r = interpolate_r2(&[0.0]).unwrap();
        assert_eq!(r, VSeries::from_terms(&[(0, -1.0)]));
    }

    #[test]
    fn r2_alternates_on_asymmetric_nodes() {
        let nodes = [-1.3, -0.4, 0.1, 0.9, 1.6];
        let r = interpolate_r2(&nodes).unwrap();
        for (i, &u) in nodes.iter().enumerate() {
            let want = if i % 2 == 0 { -1.0 } else { 1.0 };
            assert!(close(r.eval(u), want, 1e-9), "{i}: {}", r.eval(u));
        }
        let r = interpolate_r1(&nodes).unwrap();
        assert!(nodes.iter().all(|&u| r.eval(u).abs() < 1e-9));
        assert!(r.coeffs().iter().enumerate().all(|(j, c)| j % 3 != 2 || *c == 0.0));
    }

    #[test]
    fn lift_inverts_the_divided_difference() {
        let r = VSeries::from_terms(&[(7, 1.0), (3, -2.189), (1, -2.170), (0, 0.5)]);
        let q = lift(&r).unwrap();
        let back = divided_difference_on_ellipse(&q);
        for j in 0..8 {
            assert!(close(back.coeff(j), r.coeff(j), 1e-14));
        }
        assert!(matches!(
            lift(&VSeries::from_terms(&[(2, 1e-3)])),
            Err(Error::Unliftable { index: 2, .. })
        ));
    }

    #[test]
    fn shaping_leaves_crossings_alone() {
        let q = lift(&interpolate_r1(&SynthSpec::from_cos_alpha(&K7_COS).unwrap().nodes).unwrap()).unwrap();
        let before = double_points_cheb3(&q).unwrap();
        let after = double_points_cheb3(&add_shaping(&q, &[3.0, -1.5])).unwrap();
        assert_eq!(before.len(), after.len());
        for (a, b) in before.iter().zip(&after) {
            assert!(close(a.u, b.u, 1e-10));
        }
        assert_eq!(add_shaping(&q, &[]), q);
        assert_eq!(add_shaping(&q, &[0.0]), q);
    }

    #[test]
    fn k7_nodes_reproduce_published_degrees_and_coefficients() {
        let spec = SynthSpec::from_cos_alpha(&K7_COS).unwrap();
        let res = synthesize(&spec).unwrap();
        assert!(res.verified);
        assert_eq!(res.curve.degrees(), (3, 10, Some(11)));
        let (_, y, z) = &res.series;
        for (k, want) in [(10, 1.0), (8, -2.360), (4, -6.037), (2, 7.397)] {
            assert!(close(y.coeff(k), want, 1e-2), "T{k}: {}", y.coeff(k));
        }
        for (k, want) in [(11, 1.0), (7, 3.580), (5, -3.739), (1, -1.0)] {
            assert!(close(z.coeff(k), want, 1e-2), "T{k}: {}", z.coeff(k));
        }
        assert!(res.extra_roots.iter().all(|u| u.abs() > 2.0));
    }

    #[test]
    fn asymmetric_nodes_synthesize() {
        let spec = SynthSpec::new(vec![-1.2, -0.3, 0.5]).unwrap();
        let res = synthesize(&spec).unwrap();
        assert!(res.verified, "{:?}", res.diagram);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(SynthSpec::new(vec![0.0, 0.0]).is_err());
        assert!(SynthSpec::new(vec![-2.0, 0.0]).is_err());
        assert!(SynthSpec::new(vec![]).is_err());
        let mut s = SynthSpec::new(vec![-1.0, 0.0, 1.0]).unwrap();
        s.n = 5;
        assert!(synthesize(&s).is_err());
    }

    #[test]
    fn clustered_nodes_never_verify_wrongly() {
        let spec = SynthSpec::new(vec![1.9, 1.95, 1.99]).unwrap();
        match synthesize(&spec) {
            Ok(r) => {
                if r.verified {
                    assert_eq!(r.diagram.crossing_count(), 3);
                    assert_eq!(recognize_torus_2n(&r.diagram), Some(3));
                }
            }
            Err(e) => assert!(e.is_degeneracy(), "{e}"),
        }
    }

    #[test]
    fn grid_search_is_deterministic_and_in_range() {
        let res = synthesize(&SynthSpec::from_cos_alpha(&K7_COS).unwrap()).unwrap();
        let b = grid_search_shaping(&res);
        assert_eq!(b.len(), 1);
        assert!(b[0].abs() <= 5.0);
        assert_eq!(b, grid_search_shaping(&res));
    }
}
