//! Monic Chebyshev bases.
//!
//! Both families obey `P_{k+1} = t P_k - P_{k-1}` with `P_1 = t`; they differ
//! only in the constant term `P_0`:
//!
//! * `T_k(2 cos θ) = 2 cos(kθ)`, `T_0 = 2`;
//! * `V_k(2 cos θ) = sin((k+1)θ) / sin θ`, `V_0 = 1`.
//!
//! Note that this is *not* the classical normalization: with `T̂_n` the
//! textbook Chebyshev polynomial of the first kind, `T_n(t) = 2 T̂_n(t/2)`,
//! and `V_n(t) = Û_n(t/2)` for the second kind. Every `T_k`, `V_k` here is
//! monic of degree `k`, which is what makes descending-degree peeling an
//! exact basis change.

use std::fmt;
use std::marker::PhantomData;

use super::Polynomial;

/// A monic three-term basis `P_0 = c, P_1 = t, P_{k+1} = t P_k - P_{k-1}`.
pub trait MonicBasis: Clone + fmt::Debug + PartialEq {
    /// Constant value of `P_0`.
    const P0: f64;
    /// Symbol used when printing series.
    const SYMBOL: &'static str;
}

/// Monic Chebyshev polynomials of the first kind (`T_0 = 2`).
#[derive(Clone, Debug, PartialEq)]
pub struct TBasis;

/// Monic Chebyshev polynomials of the second kind (`V_0 = 1`).
#[derive(Clone, Debug, PartialEq)]
pub struct VBasis;

impl MonicBasis for TBasis {
    const P0: f64 = 2.0;
    const SYMBOL: &'static str = "T";
}

impl MonicBasis for VBasis {
    const P0: f64 = 1.0;
    const SYMBOL: &'static str = "V";
}

/// Coefficients over a monic basis: `coeffs[k]` multiplies `P_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<B: MonicBasis> {
    coeffs: Vec<f64>,
    _basis: PhantomData<B>,
}

/// Series over `{T_k}`; index 0 multiplies `T_0 = 2`.
pub type ChebSeries = Series<TBasis>;
/// Series over `{V_j}`.
pub type VSeries = Series<VBasis>;

impl<B: MonicBasis> Default for Series<B> {
    fn default() -> Self {
        Series::new(Vec::new())
    }
}

impl<B: MonicBasis> Series<B> {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Series {
            coeffs,
            _basis: PhantomData,
        }
    }

    /// Build from sparse `(index, coefficient)` terms. Repeated indices add up.
    pub fn from_terms(terms: &[(usize, f64)]) -> Self {
        let len = terms.iter().map(|&(k, _)| k + 1).max().unwrap_or(0);
        let mut coeffs = vec![0.0; len];
        for &(k, c) in terms {
            coeffs[k] += c;
        }
        Series::new(coeffs)
    }

    /// The single basis element `P_k`.
    pub fn basis_element(k: usize) -> Self {
        Series::from_terms(&[(k, 1.0)])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn scale(&self, c: f64) -> Self {
        Series::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Series::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    /// Basis-native evaluation by Clenshaw's backward recurrence.
    pub fn eval(&self, x: f64) -> f64 {
        let Some((&c0, rest)) = self.coeffs.split_first() else {
            return 0.0;
        };
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in rest.iter().rev() {
            let b0 = c + x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        c0 * B::P0 + x * b1 - B::P0 * b2
    }

    pub fn to_monomial(&self) -> Polynomial {
        let Some(deg) = self.degree() else {
            return Polynomial::zero();
        };
        let table = basis_table::<B>(deg);
        let mut out = vec![0.0; deg + 1];
        for (c, p) in self.coeffs.iter().zip(&table) {
            for (k, &a) in p.coeffs().iter().enumerate() {
                out[k] += c * a;
            }
        }
        Polynomial::new(out)
    }

    /// Inverse of [`Series::to_monomial`], peeling off the leading monic basis
    /// element one degree at a time.
    pub fn from_monomial(p: &Polynomial) -> Self {
        let Some(deg) = p.degree() else {
            return Series::default();
        };
        let table = basis_table::<B>(deg);
        let mut rem = p.coeffs().to_vec();
        let mut out = vec![0.0; deg + 1];
        for k in (0..=deg).rev() {
            let c = if k == 0 { rem[0] / B::P0 } else { rem[k] };
            out[k] = c;
            for (j, &a) in table[k].coeffs().iter().enumerate() {
                rem[j] -= c * a;
            }
        }
        Series::new(out)
    }
}

impl<B: MonicBasis> fmt::Display for Series<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            if first {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0.0 { "-" } else { "+" })?;
            }
            first = false;
            if c.abs() != 1.0 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "{}{}", B::SYMBOL, k)?;
        }
        Ok(())
    }
}

/// `P_0, ..., P_deg` in the monomial basis.
fn basis_table<B: MonicBasis>(deg: usize) -> Vec<Polynomial> {
    let mut table = Vec::with_capacity(deg + 1);
    table.push(Polynomial::constant(B::P0));
    if deg >= 1 {
        table.push(Polynomial::t());
    }
    let t = Polynomial::t();
    for k in 2..=deg {
        let next = &(&t * &table[k - 1]) - &table[k - 2];
        table.push(next);
    }
    table
}

/// Monic Chebyshev polynomial `T_n` (with `T_0 = 2`).
pub fn cheb_t(n: usize) -> Polynomial {
    basis_table::<TBasis>(n).pop().expect("table is nonempty")
}

/// Monic second-kind polynomial `V_n` (with `V_0 = 1`).
pub fn cheb_v(n: usize) -> Polynomial {
    basis_table::<VBasis>(n).pop().expect("table is nonempty")
}

/// `(2/√3) sin(kπ/3)` as an exact integer: the period-6 sequence
/// `0, 1, 1, 0, -1, -1`. Equals `V_{k-1}(1)`.
pub fn epsilon(k: usize) -> i32 {
    const TABLE: [i32; 6] = [0, 1, 1, 0, -1, -1];
    TABLE[k % 6]
}

/// For `s != t` with `T_3(s) = T_3(t)`, every `T_k` satisfies
/// `(T_k(t) - T_k(s)) / (t - s) = ε(k) V_{k-1}(s + t)`.
///
/// Applied termwise, this maps a Chebyshev series `Q` to the V-series `R`
/// with `R_j = ε(j+1) c_{j+1}`, so the crossings of `(T_3, Q)` are exactly
/// the pairs on the ellipse whose sum `u = s + t` is a root of `R`. The
/// constant term of `Q` cancels and is ignored.
pub fn divided_difference_on_ellipse(q: &ChebSeries) -> VSeries {
    let n = q.coeffs().len();
    VSeries::new(
        (0..n.saturating_sub(1))
            .map(|j| q.coeff(j + 1) * epsilon(j + 1) as f64)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn first_kind_examples() {
        assert_eq!(cheb_t(0).coeffs(), &[2.0]);
        assert_eq!(cheb_t(1).coeffs(), &[0.0, 1.0]);
        assert_eq!(cheb_t(3).coeffs(), &[0.0, -3.0, 0.0, 1.0]);
        // T4 = t T3 - T2 = t^4 - 3t^2 - (t^2 - 2)
        assert_eq!(cheb_t(4).coeffs(), &[2.0, 0.0, -4.0, 0.0, 1.0]);
    }

    #[test]
    fn second_kind_examples() {
        assert_eq!(cheb_v(0).coeffs(), &[1.0]);
        assert_eq!(cheb_v(1).coeffs(), &[0.0, 1.0]);
        assert_eq!(cheb_v(4).coeffs(), &[1.0, 0.0, -3.0, 0.0, 1.0]);
        // V5 = t^5 - 4t^3 + 3t, V6 = t^6 - 5t^4 + 6t^2 - 1, V7 = t V6 - V5
        assert_eq!(cheb_v(7).coeffs(), &[0.0, -4.0, 0.0, 10.0, 0.0, -6.0, 0.0, 1.0]);
    }

    #[test]
    fn epsilon_is_six_periodic() {
        let got: Vec<i32> = (0..9).map(epsilon).collect();
        assert_eq!(got, vec![0, 1, 1, 0, -1, -1, 0, 1, 1]);
        for k in 0..60 {
            let exact = 2.0 / 3f64.sqrt() * (k as f64 * PI / 3.0).sin();
            assert!((exact - epsilon(k) as f64).abs() < 1e-12);
            if k > 0 {
                assert_eq!(epsilon(k) as f64, cheb_v(k - 1).eval(1.0));
            }
        }
    }

    #[test]
    fn basis_conversions() {
        let s = ChebSeries::basis_element(3);
        assert_eq!(s.to_monomial().coeffs(), &[0.0, -3.0, 0.0, 1.0]);
        let r = VSeries::from_terms(&[(4, 1.0), (2, 2.0)]);
        assert_eq!(r.to_monomial().coeffs(), &[-1.0, 0.0, -1.0, 0.0, 1.0]);
        let back = VSeries::from_monomial(&r.to_monomial());
        assert_eq!(back, r);
        let c0 = ChebSeries::from_monomial(&Polynomial::constant(6.0));
        assert_eq!(c0.coeffs(), &[3.0]);
    }

    #[test]
    fn clenshaw_matches_identities() {
        let th = PI / 7.0;
        let x = 2.0 * th.cos();
        let t5 = ChebSeries::basis_element(5).eval(x);
        assert!((t5 - 2.0 * (5.0 * th).cos()).abs() < 1e-14);
        let v4 = VSeries::basis_element(4).eval(2.0 * (PI / 5.0).cos());
        assert!(v4.abs() < 1e-14);
        assert_eq!(ChebSeries::default().eval(0.3), 0.0);
        assert_eq!(ChebSeries::new(vec![1.5]).eval(0.3), 3.0);
    }

    #[test]
    fn ellipse_divided_difference_examples() {
        let r = divided_difference_on_ellipse(&ChebSeries::basis_element(4));
        assert_eq!(r, VSeries::from_terms(&[(3, -1.0)]));
        assert!(divided_difference_on_ellipse(&ChebSeries::basis_element(6)).is_zero());
        let k5y = ChebSeries::from_terms(&[(8, 1.0), (6, -2.0), (4, 2.189), (2, -2.170)]);
        let r = divided_difference_on_ellipse(&k5y);
        assert_eq!(r, VSeries::from_terms(&[(7, 1.0), (3, -2.189), (1, -2.170)]));
    }
}
