//! Real root isolation by sign-change bisection.
//!
//! The roots of `p'` split `[lo, hi]` into pieces on which `p` is monotone.
//! Each piece holds at most one root, found by bisection when `p` changes
//! sign across it. Roots of `p'` are found the same way, recursively, so the
//! whole procedure only ever evaluates polynomials. A critical point where
//! `|p|` is at rounding level is reported as a (multiple) root.

use serde::{Deserialize, Serialize};

use super::Polynomial;

/// Default absolute tolerance on root location.
pub const ROOT_TOL: f64 = 1e-12;

/// A root within `MULTIPLICITY_THRESHOLD * (1 + |r|)` of a critical point
/// of `p` is flagged multiple: `p` and `p'` (nearly) vanish together. The
/// test is on positions, not on `|p'(r)|`, whose scale depends on the
/// coefficient sizes and misflags clustered or small simple roots.
pub const MULTIPLICITY_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Multiplicity {
    Simple,
    Multiple,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: Multiplicity,
}

impl RealRoot {
    pub fn is_simple(&self) -> bool {
        self.multiplicity == Multiplicity::Simple
    }
}

/// All real roots of `p` in `[lo, hi]`, sorted, to absolute accuracy `tol`.
///
/// A nonzero constant has no roots. `p` must not be the zero polynomial;
/// for it an empty list is returned as well, callers check `is_zero` first.
pub fn real_roots(p: &Polynomial, lo: f64, hi: f64, tol: f64) -> Vec<RealRoot> {
    debug_assert!(!p.is_zero(), "real_roots on the zero polynomial");
    if lo > hi || p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let values = isolate(p, lo, hi, tol);
    let critical = isolate(&p.derivative(), lo, hi, tol);
    values
        .into_iter()
        .map(|value| RealRoot {
            value,
            multiplicity: if critical
                .iter()
                .any(|c| (c - value).abs() <= MULTIPLICITY_THRESHOLD * (1.0 + value.abs()))
            {
                Multiplicity::Multiple
            } else {
                Multiplicity::Simple
            },
        })
        .collect()
}

/// Cauchy bound: every complex root satisfies `|z| <= bound`.
pub fn cauchy_bound(p: &Polynomial) -> f64 {
    let lead = p.leading_coeff().abs();
    let deg = p.degree().unwrap_or(0);
    1.0 + p.coeffs()[..deg].iter().fold(0.0_f64, |m, c| m.max(c.abs() / lead))
}

/// All real roots of `p` on the whole line.
pub fn all_real_roots(p: &Polynomial, tol: f64) -> Vec<RealRoot> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let b = cauchy_bound(p);
    real_roots(p, -b, b, tol)
}

fn is_negligible(p: &Polynomial, x: f64) -> bool {
    let deg = p.degree().unwrap_or(0) as f64;
    p.eval(x).abs() <= 4.0 * (deg + 1.0) * f64::EPSILON * p.eval_abs(x)
}

fn isolate(p: &Polynomial, lo: f64, hi: f64, tol: f64) -> Vec<f64> {
    let deg = p.degree().unwrap_or(0);
    match deg {
        0 => return Vec::new(),
        1 => {
            let r = -p.coeff(0) / p.coeff(1);
            return if (lo..=hi).contains(&r) { vec![r] } else { Vec::new() };
        }
        _ => {}
    }
    let critical = isolate(&p.derivative(), lo, hi, tol);

    let mut knots = Vec::with_capacity(critical.len() + 2);
    knots.push(lo);
    knots.extend(critical.iter().copied().filter(|&c| c > lo && c < hi));
    knots.push(hi);
    knots.dedup();

    let at_zero: Vec<bool> = knots.iter().map(|&x| is_negligible(p, x)).collect();
    let mut roots = Vec::new();
    for (k, &x) in knots.iter().enumerate() {
        if at_zero[k] {
            roots.push(x);
        }
        if k + 1 < knots.len() && !at_zero[k] && !at_zero[k + 1] {
            let (a, b) = (x, knots[k + 1]);
            let (fa, fb) = (p.eval(a), p.eval(b));
            if fa.signum() != fb.signum() {
                roots.push(bisect(p, a, b, fa, tol));
            }
        }
    }
    roots
}

fn bisect(p: &Polynomial, mut a: f64, mut b: f64, mut fa: f64, tol: f64) -> f64 {
    while b - a > tol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = p.eval(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}
