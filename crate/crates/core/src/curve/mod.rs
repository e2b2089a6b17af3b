//! Double points of plane polynomial curves.
//!
//! A crossing of `t ↦ (x(t), y(t))` is a pair `s < t` with equal images.
//! Dividing out the trivial solution `s = t` leaves two symmetric equations
//! in `e1 = s + t` and `e2 = s t`. When `x = T_3` (up to an affine change of
//! `x`) the first equation is the ellipse `e2 = e1^2 - 3` and the crossings
//! reduce to roots of a single V-series ([`double_points_cheb3`]); otherwise
//! `e2` is eliminated by a resultant ([`double_points_general`]).

mod cheb3;
mod general;
mod validate;

use serde::{Deserialize, Serialize};

use crate::chebyshev::Polynomial;
use crate::error::{Error, Result};

pub use cheb3::double_points_cheb3;
pub use general::{bezout_cap, double_points_general};
pub use validate::{validate_regular, ValidationReport};

/// Plane points closer than this (max norm) are the same point.
pub const DISTINCT_POINT_TOL: f64 = 1e-7;

/// `|u|` within this of 2 means `s` and `t` (nearly) collide.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Below this sine of the angle between the two branches a crossing is
/// treated as tangential.
pub const TRANSVERSAL_TOL: f64 = 1e-9;

/// A polynomial space curve `t ↦ (x(t), y(t), z(t))`. `z` may be absent
/// for purely planar work.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceCurve {
    pub x: Polynomial,
    pub y: Polynomial,
    pub z: Option<Polynomial>,
    pub label: String,
}

impl SpaceCurve {
    pub fn new(x: Polynomial, y: Polynomial, z: Option<Polynomial>, label: impl Into<String>) -> Self {
        SpaceCurve {
            x,
            y,
            z,
            label: label.into(),
        }
    }

    /// `(deg x, deg y, deg z)`, with zero for the zero polynomial.
    pub fn degrees(&self) -> (usize, usize, Option<usize>) {
        let d = |p: &Polynomial| p.degree().unwrap_or(0);
        (d(&self.x), d(&self.y), self.z.as_ref().map(d))
    }

    pub fn point(&self, t: f64) -> (f64, f64) {
        (self.x.eval(t), self.y.eval(t))
    }

    /// The curve with its parameter shifted, `t ↦ C(t + c)`.
    pub fn reparametrize_shift(&self, c: f64) -> SpaceCurve {
        SpaceCurve {
            x: self.x.shift(c),
            y: self.y.shift(c),
            z: self.z.as_ref().map(|z| z.shift(c)),
            label: self.label.clone(),
        }
    }

    /// Mirror image `z ↦ -z`.
    pub fn mirror(&self) -> SpaceCurve {
        SpaceCurve {
            z: self.z.as_ref().map(|z| z.scale(-1.0)),
            ..self.clone()
        }
    }
}

/// Parameters of one crossing: `s < t`, `u = s + t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingParams {
    pub s: f64,
    pub t: f64,
    pub u: f64,
}

impl CrossingParams {
    pub fn new(s: f64, t: f64) -> Self {
        let (s, t) = if s <= t { (s, t) } else { (t, s) };
        CrossingParams { s, t, u: s + t }
    }

    /// The pair on the ellipse `s^2 + st + t^2 = 3` with `s + t = u`,
    /// `|u| < 2`.
    pub fn on_ellipse(u: f64) -> Self {
        let d = (12.0 - 3.0 * u * u).max(0.0).sqrt();
        CrossingParams {
            s: 0.5 * (u - d),
            t: 0.5 * (u + d),
            u,
        }
    }

    /// `cos α = u / 2` in the ellipse parametrization.
    pub fn cos_alpha(&self) -> f64 {
        0.5 * self.u
    }
}

/// `s = 2cos(α + π/3)`, `t = 2cos(α - π/3)`: every pair with
/// `T_3(s) = T_3(t)`, `s < t` arises this way for exactly one `α ∈ (0, π)`.
pub fn ellipse_parametrize(alpha: f64) -> Result<CrossingParams> {
    use std::f64::consts::{FRAC_PI_3, PI};
    if !(alpha > 0.0 && alpha < PI) {
        return Err(Error::Domain(format!("α = {alpha} is not in (0, π)")));
    }
    Ok(CrossingParams {
        s: 2.0 * (alpha + FRAC_PI_3).cos(),
        t: 2.0 * (alpha - FRAC_PI_3).cos(),
        u: 2.0 * alpha.cos(),
    })
}

/// Whether `x = a T_3 + b` for some `a != 0`; such an `x` has exactly the
/// same equal-value pairs as `T_3`.
pub fn is_affine_t3(x: &Polynomial) -> bool {
    if x.degree() != Some(3) {
        return false;
    }
    let a = x.coeff(3);
    let tol = 1e-12 * a.abs();
    x.coeff(2).abs() <= tol && (x.coeff(1) + 3.0 * a).abs() <= tol
}

/// Crossings of `(x, y)`, via the ellipse path when `x` is an affine image of
/// `T_3` and the resultant path otherwise. Sorted by `s`.
pub fn double_points(x: &Polynomial, y: &Polynomial) -> Result<Vec<CrossingParams>> {
    let mut out = if is_affine_t3(x) {
        double_points_cheb3(&crate::chebyshev::ChebSeries::from_monomial(y))?
    } else {
        double_points_general(x, y)?
    };
    out.sort_by(|a, b| a.s.total_cmp(&b.s));
    check_distinct_points(x, y, &out)?;
    Ok(out)
}

pub(crate) fn check_distinct_points(x: &Polynomial, y: &Polynomial, crossings: &[CrossingParams]) -> Result<()> {
    let pts: Vec<(f64, f64)> = crossings.iter().map(|c| (x.eval(c.s), y.eval(c.s))).collect();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = (pts[i].0 - pts[j].0).abs().max((pts[i].1 - pts[j].1).abs());
            if d < DISTINCT_POINT_TOL {
                return Err(Error::NonRegular(format!(
                    "crossings at u = {} and u = {} share the plane point ({:.9}, {:.9})",
                    crossings[i].u, crossings[j].u, pts[i].0, pts[i].1
                )));
            }
        }
    }
    Ok(())
}

/// `s_1 < ... < s_n < t_1 < ... < t_n` for a list sorted by `s`: the pattern
/// every minimal projection of a `(2, n)` torus knot must have.
pub fn crossing_order_check(crossings: &[CrossingParams]) -> bool {
    let increasing = |v: &mut dyn Iterator<Item = f64>| {
        let v: Vec<f64> = v.collect();
        v.windows(2).all(|w| w[0] < w[1])
    };
    let max_s = crossings.iter().map(|c| c.s).fold(f64::NEG_INFINITY, f64::max);
    let min_t = crossings.iter().map(|c| c.t).fold(f64::INFINITY, f64::min);
    (crossings.is_empty() || max_s < min_t)
        && increasing(&mut crossings.iter().map(|c| c.s))
        && increasing(&mut crossings.iter().map(|c| c.t))
}

/// Sine of the angle between the branches through `C(s)` and `C(t)`.
pub(crate) fn branch_sine(x: &Polynomial, y: &Polynomial, s: f64, t: f64) -> f64 {
    let (dx, dy) = (x.derivative(), y.derivative());
    let a = (dx.eval(s), dy.eval(s));
    let b = (dx.eval(t), dy.eval(t));
    let na = a.0.hypot(a.1);
    let nb = b.0.hypot(b.1);
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    (a.0 * b.1 - a.1 * b.0).abs() / (na * nb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::cheb_t;
    use std::f64::consts::PI;

    #[test]
    fn ellipse_examples() {
        let p = ellipse_parametrize(PI / 2.0).unwrap();
        assert!((p.s + 3f64.sqrt()).abs() < 1e-15);
        assert!((p.t - 3f64.sqrt()).abs() < 1e-15);
        assert!(p.u.abs() < 1e-15);

        let p = ellipse_parametrize(PI / 3.0).unwrap();
        assert!((p.s + 1.0).abs() < 1e-15 && (p.t - 2.0).abs() < 1e-15);
        assert!((p.u - 1.0).abs() < 1e-15);

        let t3 = cheb_t(3);
        for k in 1..100 {
            let p = ellipse_parametrize(k as f64 * PI / 100.0).unwrap();
            assert!((t3.eval(p.s) - t3.eval(p.t)).abs() < 1e-12);
            assert!(p.s < p.t);
            let q = CrossingParams::on_ellipse(p.u);
            assert!((q.s - p.s).abs() < 1e-12 && (q.t - p.t).abs() < 1e-12);
        }
        assert!(matches!(ellipse_parametrize(0.0), Err(Error::Domain(_))));
        assert!(ellipse_parametrize(PI).is_err());
        assert!(ellipse_parametrize(f64::NAN).is_err());
    }

    #[test]
    fn order_check() {
        assert!(crossing_order_check(&[]));
        let ok = [CrossingParams::new(-2.0, 0.5), CrossingParams::new(-1.0, 1.0)];
        assert!(crossing_order_check(&ok));
        let nested = [CrossingParams::new(-2.0, 1.0), CrossingParams::new(-1.0, 0.5)];
        assert!(!crossing_order_check(&nested));
        let overlap = [CrossingParams::new(-2.0, 0.0), CrossingParams::new(0.5, 1.0)];
        assert!(!crossing_order_check(&overlap));
    }

    #[test]
    fn affine_t3_detection() {
        assert!(is_affine_t3(&cheb_t(3)));
        assert!(is_affine_t3(&(&cheb_t(3).scale(-2.5) + &Polynomial::constant(7.0))));
        assert!(!is_affine_t3(&Polynomial::new(vec![0.0, -3.0, 0.1, 1.0])));
        assert!(!is_affine_t3(&cheb_t(5)));
    }
}
