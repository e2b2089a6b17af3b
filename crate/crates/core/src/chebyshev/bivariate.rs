use super::Polynomial;

/// Polynomial in the elementary symmetric coordinates `e1 = s + t`,
/// `e2 = s t`. `coeffs[i][j]` multiplies `e1^i e2^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoly {
    coeffs: Vec<Vec<f64>>,
}

impl SymPoly {
    pub fn new(coeffs: Vec<Vec<f64>>) -> Self {
        let mut p = SymPoly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        for row in &mut self.coeffs {
            while row.last() == Some(&0.0) {
                row.pop();
            }
        }
        while self.coeffs.last().is_some_and(|r| r.is_empty()) {
            self.coeffs.pop();
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.coeffs.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms as `(i, j, c)` for `c e1^i e2^j`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0.0)
                .map(move |(j, &c)| (i, j, c))
        })
    }

    /// Ordinary total degree `max(i + j)`.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms().map(|(i, j, _)| i + j).max()
    }

    /// Degree in `s, t` once expanded, i.e. `max(i + 2j)`.
    pub fn weighted_degree(&self) -> Option<usize> {
        self.terms().map(|(i, j, _)| i + 2 * j).max()
    }

    pub fn degree_e2(&self) -> Option<usize> {
        self.terms().map(|(_, j, _)| j).max()
    }

    pub fn eval(&self, e1: f64, e2: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, row| {
            acc * e1 + row.iter().rev().fold(0.0, |a, &c| a * e2 + c)
        })
    }

    /// `sum |c| |e1|^i |e2|^j`, the rounding scale of [`SymPoly::eval`].
    pub fn eval_abs(&self, e1: f64, e2: f64) -> f64 {
        let (a1, a2) = (e1.abs(), e2.abs());
        self.coeffs.iter().rev().fold(0.0, |acc, row| {
            acc * a1 + row.iter().rev().fold(0.0, |a, &c| a * a2 + c.abs())
        })
    }

    pub fn d_e1(&self) -> SymPoly {
        SymPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, row)| row.iter().map(|&c| c * i as f64).collect())
                .collect(),
        )
    }

    pub fn d_e2(&self) -> SymPoly {
        SymPoly::new(
            self.coeffs
                .iter()
                .map(|row| row.iter().enumerate().skip(1).map(|(j, &c)| c * j as f64).collect())
                .collect(),
        )
    }

    /// Coefficients as a polynomial in `e2` over `R[e1]`: entry `j` is the
    /// polynomial in `e1` multiplying `e2^j`.
    pub fn as_poly_in_e2(&self) -> Vec<Polynomial> {
        let m = self.degree_e2().map_or(0, |d| d + 1);
        (0..m)
            .map(|j| {
                Polynomial::new(
                    self.coeffs
                        .iter()
                        .map(|row| row.get(j).copied().unwrap_or(0.0))
                        .collect(),
                )
            })
            .collect()
    }

    /// Restriction to a fixed `e1`, as a polynomial in `e2`.
    pub fn at_e1(&self, e1: f64) -> Polynomial {
        let parts = self.as_poly_in_e2();
        Polynomial::new(parts.iter().map(|p| p.eval(e1)).collect())
    }

    /// Restriction to a fixed `e2`, as a polynomial in `e1`.
    pub fn at_e2(&self, e2: f64) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .map(|row| row.iter().rev().fold(0.0, |a, &c| a * e2 + c))
                .collect(),
        )
    }

    /// Substitute `e2 = q(e1)`.
    pub fn substitute_e2(&self, q: &Polynomial) -> Polynomial {
        self.as_poly_in_e2()
            .iter()
            .rev()
            .fold(Polynomial::zero(), |acc, c| &(&acc * q) + c)
    }

    /// Value in the original coordinates `(s, t)`.
    pub fn eval_st(&self, s: f64, t: f64) -> f64 {
        self.eval(s + t, s * t)
    }
}

/// `(p(t) - p(s)) / (t - s)` rewritten exactly in `e1 = s + t`, `e2 = s t`.
///
/// The quotient is `sum_k p_k h_{k-1}(s, t)` with `h_j` the complete
/// homogeneous symmetric polynomials, which obey
/// `h_j = e1 h_{j-1} - e2 h_{j-2}`, `h_0 = 1`.
pub fn symmetric_divided_difference(p: &Polynomial) -> SymPoly {
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return SymPoly::new(Vec::new());
    }
    // h[j] as coefficient grid, dims (j+1) x (j/2+1)
    let mut h: Vec<Vec<Vec<f64>>> = Vec::with_capacity(deg);
    h.push(vec![vec![1.0]]);
    for j in 1..deg {
        let mut next = vec![vec![0.0; j / 2 + 1]; j + 1];
        for (i, row) in h[j - 1].iter().enumerate() {
            for (k, &c) in row.iter().enumerate() {
                next[i + 1][k] += c;
            }
        }
        if j >= 2 {
            for (i, row) in h[j - 2].iter().enumerate() {
                for (k, &c) in row.iter().enumerate() {
                    next[i][k + 1] -= c;
                }
            }
        }
        h.push(next);
    }
    let mut out = vec![vec![0.0; deg / 2 + 1]; deg];
    for (k, &c) in p.coeffs().iter().enumerate().skip(1) {
        for (i, row) in h[k - 1].iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                out[i][j] += c * a;
            }
        }
    }
    SymPoly::new(out)
}

/// `sum_k p_k h_{k-1}(s, t)` evaluated directly in `(s, t)`; agrees with the
/// divided difference without forming `p(t) - p(s)`.
pub fn divided_difference_at(p: &Polynomial, s: f64, t: f64) -> f64 {
    let mut h = 1.0;
    let mut s_pow = 1.0;
    let mut acc = 0.0;
    for (k, &c) in p.coeffs().iter().enumerate().skip(1) {
        if k > 1 {
            s_pow *= s;
            h = t * h + s_pow;
        }
        acc += c * h;
    }
    acc
}
