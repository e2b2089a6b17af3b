use crate::chebyshev::{all_real_roots, symmetric_divided_difference, Multiplicity, Polynomial, SymPoly, ROOT_TOL};
use crate::error::{Error, Result};

use super::{branch_sine, check_distinct_points, CrossingParams, TRANSVERSAL_TOL};

/// Bézout bound on the number of crossings of a degree `(dx, dy)` curve.
pub fn bezout_cap(dx: usize, dy: usize) -> usize {
    dx.saturating_sub(1) * dy.saturating_sub(1) / 2
}

/// A solution of the symmetric system with its diagnostics.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Found {
    pub params: CrossingParams,
    /// Sine of the angle between the two branches.
    pub sine: f64,
    /// The eliminant had a multiple root here and no second solution shares it.
    pub multiple: bool,
}

/// Below this branch sine a multiple eliminant root confirms a tangency.
/// Newton only settles to about `sqrt(eps)` at a true tangency, so its sine
/// can sit above [`TRANSVERSAL_TOL`]; a multiple root on its own is not
/// evidence, since the eliminant's scaling misflags simple roots.
const NEAR_TANGENT_SINE: f64 = 1e-4;

impl Found {
    pub fn is_tangential(&self) -> bool {
        self.sine < TRANSVERSAL_TOL || (self.multiple && self.sine < NEAR_TANGENT_SINE)
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Scan {
    pub found: Vec<Found>,
    /// A whole curve of parameter pairs maps to double points.
    pub non_isolated: bool,
}

/// Crossings of `(x, y)` for arbitrary `deg x, deg y >= 2`, sorted by `s`.
///
/// Solves `X(e1, e2) = Y(e1, e2) = 0` for the symmetric divided differences
/// `X`, `Y`. `e2` is eliminated first: directly when `X` is linear in `e2`
/// (`deg x` = 3 or 4; for `x = T_3` this is the substitution `e2 = e1^2 - 3`),
/// by fixing `e1` when `X` does not involve `e2` (`deg x = 2`), and through a
/// Sylvester resultant otherwise. Only solutions with `e1^2 - 4 e2 > 0`, i.e.
/// real `s != t`, are crossings.
pub fn double_points_general(x: &Polynomial, y: &Polynomial) -> Result<Vec<CrossingParams>> {
    let scan = scan(x, y);
    if scan.non_isolated {
        return Err(Error::DegenerateCrossing(
            "the curve has a continuum of double points".into(),
        ));
    }
    for f in &scan.found {
        if f.is_tangential() {
            return Err(Error::DegenerateCrossing(format!(
                "crossing at s = {}, t = {} is tangential (branch sine {:e})",
                f.params.s, f.params.t, f.sine
            )));
        }
    }
    let out: Vec<CrossingParams> = scan.found.iter().map(|f| f.params).collect();
    check_distinct_points(x, y, &out)?;
    Ok(out)
}

pub(crate) fn scan(x: &Polynomial, y: &Polynomial) -> Scan {
    let (dx, dy) = (x.degree().unwrap_or(0), y.degree().unwrap_or(0));
    if dx < 2 || dy < 2 {
        return Scan::default();
    }
    let sx = symmetric_divided_difference(x);
    let sy = symmetric_divided_difference(y);
    let Some(cands) = candidates(&sx, &sy) else {
        return Scan {
            found: Vec::new(),
            non_isolated: true,
        };
    };

    let mut found: Vec<Found> = Vec::new();
    for (e1, e2, multiple) in cands {
        let Some((e1, e2)) = polish(&sx, &sy, e1, e2) else {
            continue;
        };
        let disc = e1 * e1 - 4.0 * e2;
        if disc <= 1e-12 * (1.0 + e1 * e1) {
            continue;
        }
        let d = disc.sqrt();
        let params = CrossingParams::new(0.5 * (e1 - d), 0.5 * (e1 + d));
        if let Some(prev) = found.iter_mut().find(|f| same(&f.params, &params)) {
            // a second seed converged onto the same solution
            prev.multiple &= multiple;
            continue;
        }
        found.push(Found {
            params,
            sine: branch_sine(x, y, params.s, params.t),
            multiple,
        });
    }
    found.sort_by(|a, b| a.params.s.total_cmp(&b.params.s));
    Scan {
        found,
        non_isolated: false,
    }
}

fn same(a: &CrossingParams, b: &CrossingParams) -> bool {
    let tol = 1e-9 * (1.0 + a.s.abs().max(a.t.abs()));
    (a.s - b.s).abs() < tol && (a.t - b.t).abs() < tol
}

/// Seeds `(e1, e2, from_multiple_root)`; `None` when the system has a
/// one-dimensional solution set.
fn candidates(sx: &SymPoly, sy: &SymPoly) -> Option<Vec<(f64, f64, bool)>> {
    let kx = sx.degree_e2().unwrap_or(0);
    let ky = sy.degree_e2().unwrap_or(0);
    let mut out = Vec::new();

    if kx == 0 || ky == 0 {
        // one equation pins e1; the other is then univariate in e2
        let (pin, other) = if kx == 0 { (sx, sy) } else { (sy, sx) };
        let pin_poly = &pin.as_poly_in_e2()[0];
        for r1 in all_real_roots(pin_poly, ROOT_TOL) {
            let rest = other.at_e1(r1.value);
            if rest.is_zero() || rest.max_abs_coeff() <= 1e-13 * other.eval_abs(r1.value, 1.0) {
                return None;
            }
            for r2 in all_real_roots(&rest, ROOT_TOL) {
                let multiple = r1.multiplicity == Multiplicity::Multiple || r2.multiplicity == Multiplicity::Multiple;
                out.push((r1.value, r2.value, multiple));
            }
        }
        return Some(out);
    }

    if kx == 1 {
        // X = A(e1) + B(e1) e2, so e2 = -A / B and the eliminant is
        // sum_j Y_j (-A)^j B^(m - j)
        let parts = sx.as_poly_in_e2();
        let (a, b) = (&parts[0], &parts[1]);
        let neg_a = -a;
        let ys = sy.as_poly_in_e2();
        let m = ys.len() - 1;
        let mut r = Polynomial::zero();
        for (j, yj) in ys.iter().enumerate() {
            let mut term = yj.clone();
            for _ in 0..j {
                term = &term * &neg_a;
            }
            for _ in j..m {
                term = &term * b;
            }
            r = &r + &term;
        }
        if r.is_zero() {
            return None;
        }
        for root in all_real_roots(&r, ROOT_TOL) {
            let e1 = root.value;
            let bv = b.eval(e1);
            if bv.abs() > 1e-12 * b.eval_abs(e1).max(f64::MIN_POSITIVE) {
                out.push((e1, -a.eval(e1) / bv, root.multiplicity == Multiplicity::Multiple));
            } else if a.eval(e1).abs() <= 1e-12 * a.eval_abs(e1) {
                // X vanishes on the whole line e1 = const
                let rest = sy.at_e1(e1);
                if rest.is_zero() {
                    return None;
                }
                for r2 in all_real_roots(&rest, ROOT_TOL) {
                    out.push((e1, r2.value, r2.multiplicity == Multiplicity::Multiple));
                }
            }
        }
        return Some(out);
    }

    let r = resultant_e2(sx, sy);
    if r.is_zero() {
        return None;
    }
    for root in all_real_roots(&r, ROOT_TOL) {
        let e1 = root.value;
        let xe = sx.at_e1(e1);
        if xe.is_zero() {
            continue;
        }
        for r2 in all_real_roots(&xe, ROOT_TOL) {
            let v = sy.eval(e1, r2.value).abs();
            if v <= 1e-6 * sy.eval_abs(e1, r2.value).max(1.0) {
                out.push((e1, r2.value, false));
            }
        }
    }
    Some(out)
}

/// Newton's method on `(X, Y)` in `(e1, e2)`. `None` if it does not settle on
/// a solution.
fn polish(sx: &SymPoly, sy: &SymPoly, mut e1: f64, mut e2: f64) -> Option<(f64, f64)> {
    let (x1, x2) = (sx.d_e1(), sx.d_e2());
    let (y1, y2) = (sy.d_e1(), sy.d_e2());
    for _ in 0..60 {
        let (fx, fy) = (sx.eval(e1, e2), sy.eval(e1, e2));
        let (a, b, c, d) = (x1.eval(e1, e2), x2.eval(e1, e2), y1.eval(e1, e2), y2.eval(e1, e2));
        let det = a * d - b * c;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let d1 = (fx * d - b * fy) / det;
        let d2 = (a * fy - fx * c) / det;
        if !(d1.is_finite() && d2.is_finite()) {
            break;
        }
        e1 -= d1;
        e2 -= d2;
        if d1.abs() + d2.abs() <= 4.0 * f64::EPSILON * (1.0 + e1.abs() + e2.abs()) {
            break;
        }
    }
    let ok = |p: &SymPoly| p.eval(e1, e2).abs() <= 1e-9 * p.eval_abs(e1, e2).max(1e-300);
    (ok(sx) && ok(sy)).then_some((e1, e2))
}

/// `Res_{e2}(X, Y)` as a polynomial in `e1`, via a fraction-free (Bareiss)
/// determinant of the Sylvester matrix over `R[e1]`.
fn resultant_e2(sx: &SymPoly, sy: &SymPoly) -> Polynomial {
    let a = sx.as_poly_in_e2();
    let b = sy.as_poly_in_e2();
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut mat = vec![vec![Polynomial::zero(); size]; size];
    for i in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            mat[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            mat[n + i][i + k] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut mat: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = mat.len();
    if n == 0 {
        return Polynomial::constant(1.0);
    }
    let mut sign = 1.0;
    let mut prev = Polynomial::constant(1.0);
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(k, i);
                    sign = -sign;
                }
                None => return Polynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&mat[k][k] * &mat[i][j]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num.div_rem(&prev).0;
            }
        }
        prev = mat[k][k].clone();
    }
    mat[n - 1][n - 1].scale(sign)
}
