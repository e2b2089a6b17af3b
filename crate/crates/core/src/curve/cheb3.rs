use crate::chebyshev::{divided_difference_on_ellipse, real_roots, ChebSeries, Multiplicity, ROOT_TOL};
use crate::error::{Error, Result};

use super::{CrossingParams, BOUNDARY_TOL};

/// Crossings of `(T_3(t), y(t))`, sorted by `u`.
///
/// Every crossing lies on the ellipse `s^2 + st + t^2 = 3`, and `u = s + t`
/// runs over the roots in `(-2, 2)` of the divided difference of `y` on that
/// ellipse.
pub fn double_points_cheb3(y: &ChebSeries) -> Result<Vec<CrossingParams>> {
    let r = divided_difference_on_ellipse(y);
    if r.is_zero() {
        return Err(Error::DegenerateCrossing(
            "y is a polynomial in T_3; every pair on the ellipse is a double point".into(),
        ));
    }
    let poly = r.to_monomial();
    let margin = 1e-6;
    let mut out = Vec::new();
    for root in real_roots(&poly, -2.0 - margin, 2.0 + margin, ROOT_TOL) {
        let u = root.value;
        if (u.abs() - 2.0).abs() < BOUNDARY_TOL {
            return Err(Error::DegenerateCrossing(format!(
                "root u = {u} is on the boundary |u| = 2 (s = t)"
            )));
        }
        if u.abs() > 2.0 {
            continue;
        }
        if root.multiplicity == Multiplicity::Multiple {
            return Err(Error::DegenerateCrossing(format!(
                "u = {u} is a multiple root (tangential crossing)"
            )));
        }
        out.push(CrossingParams::on_ellipse(u));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn us(y: &ChebSeries) -> Vec<f64> {
        double_points_cheb3(y).unwrap().iter().map(|c| c.u).collect()
    }

    #[test]
    fn t4_has_three_crossings() {
        let got = us(&ChebSeries::basis_element(4));
        let want = [-2f64.sqrt(), 0.0, 2f64.sqrt()];
        assert_eq!(got.len(), 3);
        for (a, b) in got.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn t5_has_four_crossings() {
        let got = us(&ChebSeries::basis_element(5));
        let mut want: Vec<f64> = (1..=4).map(|k| 2.0 * (k as f64 * PI / 5.0).cos()).collect();
        want.reverse();
        assert_eq!(got.len(), 4);
        for (a, b) in got.iter().zip(&want) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn k7_crossings_match_published_angles() {
        let y = ChebSeries::from_terms(&[(10, 1.0), (8, -2.360), (6, 4.108), (4, -6.037), (2, 7.397)]);
        let got: Vec<f64> = double_points_cheb3(&y).unwrap().iter().map(|c| c.cos_alpha()).collect();
        let want = [-0.5, -0.3, -0.2, 0.0, 0.2, 0.3, 0.5];
        assert_eq!(got.len(), 7);
        for (a, b) in got.iter().zip(want) {
            assert!((a - b).abs() < 2e-3, "{a} vs {b}");
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            double_points_cheb3(&ChebSeries::basis_element(6)),
            Err(Error::DegenerateCrossing(_))
        ));
        // R = V_1 - 2 has its root on the boundary u = 2
        let y = ChebSeries::from_terms(&[(2, 1.0), (1, -2.0)]);
        assert!(matches!(double_points_cheb3(&y), Err(Error::DegenerateCrossing(_))));
        // y = T_1: R is a nonzero constant, no crossings
        assert!(double_points_cheb3(&ChebSeries::basis_element(1)).unwrap().is_empty());
    }

    #[test]
    fn tangential_crossing_is_rejected() {
        // R = V_4 - V_0 = u^2 (u^2 - 3): double root at u = 0
        let r_to_y = ChebSeries::from_terms(&[(5, -1.0), (1, -1.0)]);
        let r = divided_difference_on_ellipse(&r_to_y);
        assert_eq!(r.to_monomial().coeffs(), &[0.0, 0.0, -3.0, 0.0, 1.0]);
        assert!(matches!(
            double_points_cheb3(&r_to_y),
            Err(Error::DegenerateCrossing(_))
        ));
    }
}
