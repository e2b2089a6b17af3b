//! Independent oracles and samplers shared by the integration suites. None
//! of this goes through the library's solvers.

#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use polyknot::{ChebSeries, Polynomial};

/// `(p(t) - p(s)) / (t - s)` as `sum_k a_k sum_{i<k} s^i t^{k-1-i}`, well
/// defined on the diagonal.
pub fn divided_difference(p: &[f64], s: f64, t: f64) -> f64 {
    // h_k = sum_{i<k} s^i t^{k-1-i}, h_k = s h_{k-1} + t^{k-1}
    let mut h = 0.0;
    let mut tp = 1.0;
    let mut acc = 0.0;
    for &a in p.iter().skip(1) {
        h = s * h + tp;
        tp *= t;
        acc += a * h;
    }
    acc
}

/// Brute-force crossings of `(x, y)`: a `cells x cells` grid over
/// `[lo, hi]^2` (upper triangle `s < t`), cells where both divided
/// differences change sign, refined by quadrisection to `1e-11`.
pub fn grid_oracle(x: &Polynomial, y: &Polynomial, lo: f64, hi: f64, cells: usize) -> Vec<(f64, f64)> {
    let (xc, yc) = (x.coeffs().to_vec(), y.coeffs().to_vec());
    let step = (hi - lo) / cells as f64;
    let n = cells + 1;
    let mut fx = vec![0.0; n * n];
    let mut fy = vec![0.0; n * n];
    for i in 0..n {
        let s = lo + step * i as f64;
        for j in i..n {
            let t = lo + step * j as f64;
            fx[i * n + j] = divided_difference(&xc, s, t);
            fy[i * n + j] = divided_difference(&yc, s, t);
        }
    }
    let changes = |v: [f64; 4]| {
        let pos = v.iter().any(|&a| a >= 0.0);
        let neg = v.iter().any(|&a| a <= 0.0);
        pos && neg
    };
    let mut found: Vec<(f64, f64)> = Vec::new();
    for i in 0..cells {
        for j in i..cells {
            let c = |a: &[f64]| {
                [
                    a[i * n + j],
                    a[(i + 1) * n + j],
                    a[i * n + j + 1],
                    a[(i + 1) * n + j + 1],
                ]
            };
            if j == i {
                // straddles the diagonal; only the t >= s corners are filled
                continue;
            }
            if changes(c(&fx)) && changes(c(&fy)) {
                let s0 = lo + step * i as f64;
                let t0 = lo + step * j as f64;
                refine(&xc, &yc, s0, t0, step, 0, &mut found);
            }
        }
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for p in found {
        if !out.iter().any(|q| (q.0 - p.0).abs() < 1e-7 && (q.1 - p.1).abs() < 1e-7) {
            out.push(p);
        }
    }
    out
}

fn refine(xc: &[f64], yc: &[f64], s0: f64, t0: f64, h: f64, depth: u32, out: &mut Vec<(f64, f64)>) {
    let corner = |c: &[f64], ds: f64, dt: f64| divided_difference(c, s0 + ds, t0 + dt);
    let sign_change = |c: &[f64]| {
        let v = [
            corner(c, 0.0, 0.0),
            corner(c, h, 0.0),
            corner(c, 0.0, h),
            corner(c, h, h),
        ];
        v.iter().any(|&a| a >= 0.0) && v.iter().any(|&a| a <= 0.0)
    };
    if !(sign_change(xc) && sign_change(yc)) {
        return;
    }
    if h < 1e-11 || depth > 40 {
        out.push((s0 + 0.5 * h, t0 + 0.5 * h));
        return;
    }
    let g = 0.5 * h;
    for (ds, dt) in [(0.0, 0.0), (g, 0.0), (0.0, g), (g, g)] {
        refine(xc, yc, s0 + ds, t0 + dt, g, depth + 1, out);
    }
}

/// Roots of a monic polynomial (ascending coefficients) as eigenvalues of
/// its companion matrix; returns `(re, im)` pairs.
pub fn companion_roots(ascending: &[f64]) -> Vec<(f64, f64)> {
    let n = ascending.len() - 1;
    assert!(n >= 1 && ascending[n] == 1.0);
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -ascending[i];
    }
    m.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect()
}

/// `sum z_i^k` over complex roots, and `sum |z_i|^k` as its scale.
pub fn power_sum(roots: &[(f64, f64)], k: u32) -> (f64, f64) {
    let mut re = 0.0;
    let mut scale = 0.0;
    for &(a, b) in roots {
        let (mut pr, mut pi) = (1.0, 0.0);
        for _ in 0..k {
            (pr, pi) = (pr * a - pi * b, pr * b + pi * a);
        }
        re += pr;
        scale += a.hypot(b).powi(k as i32);
    }
    (re, scale)
}

/// Ordered crossing configuration on the `T_3` ellipse, `n >= 3`:
/// `α_1 > ... > α_n` in `(0, π)` whose pairs have `s_i` and `t_i` both
/// increasing. The inner angles lie in `(π/3, 2π/3)`; the outer two are drawn
/// from the windows `α_1 + α_2 < 4π/3`, `α_{n-1} + α_n > 2π/3`, and the
/// ordering is then confirmed on `s(α)`, `t(α)` directly.
pub fn ordered_configuration(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    assert!(n >= 3);
    loop {
        let mut inner: Vec<f64> = (0..n - 2).map(|_| rng.gen_range(PI / 3.0..2.0 * PI / 3.0)).collect();
        inner.sort_by(|a, b| b.total_cmp(a));
        let (a2, am) = (inner[0], inner[n - 3]);
        let first = rng.gen_range(a2..(4.0 * PI / 3.0 - a2).min(PI));
        let last = rng.gen_range((2.0 * PI / 3.0 - am).max(0.0)..am);
        let mut alphas = vec![first];
        alphas.extend(inner);
        alphas.push(last);
        let pairs: Vec<(f64, f64)> = alphas.iter().map(|&a| ellipse_pair(a)).collect();
        let ordered = pairs.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1);
        if ordered && last > 0.0 {
            return alphas;
        }
    }
}

/// A symmetric ordered configuration, `α_{n+1-i} = π - α_i`, with the
/// nodes `2cos α_i` at least `min_gap` apart. The upper half is drawn like
/// [`ordered_configuration`] and mirrored; odd `n` puts `π/2` in the middle.
pub fn symmetric_configuration(rng: &mut ChaCha8Rng, n: usize, min_gap: f64) -> Vec<f64> {
    assert!(n >= 3);
    let m = n / 2;
    loop {
        let mut upper: Vec<f64> = (1..m).map(|_| rng.gen_range(PI / 2.0..2.0 * PI / 3.0)).collect();
        upper.sort_by(|a, b| b.total_cmp(a));
        let a2 = upper.first().copied().unwrap_or(PI / 2.0);
        let first = rng.gen_range(a2..(4.0 * PI / 3.0 - a2).min(PI));
        let mut alphas = vec![first];
        alphas.extend(&upper);
        if n % 2 == 1 {
            alphas.push(PI / 2.0);
        }
        alphas.extend(upper.iter().rev().chain([&first]).map(|a| PI - a));
        let pairs: Vec<(f64, f64)> = alphas.iter().map(|&a| ellipse_pair(a)).collect();
        let ordered = pairs.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1);
        let spaced = alphas.windows(2).all(|w| 2.0 * (w[1].cos() - w[0].cos()) >= min_gap);
        if ordered && spaced {
            return alphas;
        }
    }
}

/// `s(α) = 2cos(α + π/3)`, `t(α) = 2cos(α - π/3)`.
pub fn ellipse_pair(alpha: f64) -> (f64, f64) {
    (2.0 * (alpha + PI / 3.0).cos(), 2.0 * (alpha - PI / 3.0).cos())
}

/// A random plane curve with `deg x = 3` whose crossings lie in
/// `|s|, |t| < 2.6`: `x = a((t-h)^3 - c(t-h)) + d`, `c in [1, 3]`. Every
/// other curve has `x = T_3` exactly.
pub fn random_cubic_curve(rng: &mut ChaCha8Rng, max_deg_y: usize, index: usize) -> (Polynomial, Polynomial) {
    let x = if index % 2 == 0 {
        polyknot::chebyshev::cheb_t(3)
    } else {
        let a = rng.gen_range(0.5..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let h = rng.gen_range(-0.5..0.5);
        let c = rng.gen_range(1.0..3.0);
        let d = rng.gen_range(-1.0..1.0);
        let base = Polynomial::new(vec![0.0, -c * a, 0.0, a]);
        &base.shift(-h) + &Polynomial::constant(d)
    };
    let dy = rng.gen_range(4..=max_deg_y);
    let y = if index % 2 == 0 {
        // Chebyshev coefficients keep T_3-curves at a sensible scale
        let mut c: Vec<f64> = (0..=dy).map(|_| rng.gen_range(-1.0..1.0)).collect();
        c[dy] = 1.0;
        ChebSeries::new(c).to_monomial()
    } else {
        let mut c: Vec<f64> = (0..=dy).map(|_| rng.gen_range(-1.0..1.0)).collect();
        c[dy] = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        Polynomial::new(c)
    };
    (x, y)
}

/// A random plane curve of degrees `(dx, dy)` with coefficients in
/// `[-1, 1]` and unit leading coefficients.
pub fn random_curve(rng: &mut ChaCha8Rng, dx: usize, dy: usize) -> (Polynomial, Polynomial) {
    let mut gen = |d: usize| {
        let mut c: Vec<f64> = (0..=d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        c[d] = 1.0;
        Polynomial::new(c)
    };
    (gen(dx), gen(dy))
}
