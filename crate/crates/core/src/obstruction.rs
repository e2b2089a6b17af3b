//! Why `K_n`, `n > 3` odd, has no polynomial parametrization of degrees
//! `(3, n+1, m)`.
//!
//! Normalize such a projection to `x = T_3`, `y = T_{n+1} + a_n T_n + ... +
//! a_1 T_1`. It would have exactly `n` crossings, in the minimal-diagram
//! order, and their sums `u_i = s_i + t_i` would be the `n` distinct real
//! roots of
//!
//! ```text
//! R(u) = ε(n+1) V_n(u) + sum_k a_k ε(k) V_{k-1}(u).
//! ```
//!
//! Ordered configurations on the `T_3` ellipse obey the power-sum bounds
//! `sum u_i^2 <= n + 4` and `sum u_i^4 <= n + 22`. The certificate shows,
//! in exact rational arithmetic, that `R` cannot meet them:
//!
//! * `n ≡ 2 (mod 3)`: `ε(n+1) = 0`, so `R` has fewer than `n` roots;
//! * `n ≡ 1 (mod 6)`: `S_2 = a_n^2 + 2(n-1) >= 2(n-1) > n + 4` once `n > 6`;
//! * `n ≡ 3 (mod 6)`: `S_4 = 2(a_{n-1} + 2)^2 + 6n - 18 >= 6n - 18 > n + 22`
//!   once `n > 8`.
//!
//! `n = 3` escapes every case, and indeed `(T_3, T_4, T_5)` is a trefoil.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::chebyshev::{epsilon, VSeries};
use crate::error::{Error, Result};

/// Coefficient field for the shared algebra: `f64` for numerics,
/// `BigRational` for certificates.
pub trait Scalar:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Monomial coefficients of `V_0, ..., V_n` (ascending powers), exactly
/// when `T` is exact.
fn v_table<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    let mut table: Vec<Vec<T>> = vec![vec![T::one()]];
    if n >= 1 {
        table.push(vec![T::zero(), T::one()]);
    }
    for k in 2..=n {
        let mut next = vec![T::zero(); k + 1];
        for (j, c) in table[k - 1].iter().enumerate() {
            next[j + 1] = next[j + 1].clone() + c.clone();
        }
        for (j, c) in table[k - 2].iter().enumerate() {
            next[j] = next[j].clone() - c.clone();
        }
        table.push(next);
    }
    table
}

/// `sum_j r_j V_j` in ascending monomial coefficients.
fn v_series_to_monomial<T: Scalar>(r: &[T]) -> Vec<T> {
    if r.is_empty() {
        return Vec::new();
    }
    let table = v_table::<T>(r.len() - 1);
    let mut out = vec![T::zero(); r.len()];
    for (c, p) in r.iter().zip(&table) {
        if c.is_zero() {
            continue;
        }
        for (j, a) in p.iter().enumerate() {
            out[j] = out[j].clone() + c.clone() * a.clone();
        }
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// V-coefficients of `R`: `R_n = ε(n+1)`, `R_{k-1} = a_k ε(k)`.
/// `a[k - 1]` holds `a_k`; missing entries are zero.
fn r_coefficients<T: Scalar>(n: usize, a: &[T]) -> Vec<T> {
    let mut r = vec![T::zero(); n + 1];
    r[n] = T::from_i64(epsilon(n + 1) as i64);
    for k in 1..=n {
        if let Some(ak) = a.get(k - 1) {
            r[k - 1] = ak.clone() * T::from_i64(epsilon(k) as i64);
        }
    }
    r
}

/// The divided difference of `T_{n+1} + sum a_k T_k` on the `T_3` ellipse,
/// as a V-series. `a[k - 1]` holds `a_k`.
pub fn build_r(n: usize, a: &[f64]) -> Result<VSeries> {
    if n < 3 {
        return Err(Error::BadInput(format!("n = {n} < 3")));
    }
    if a.len() > n {
        return Err(Error::BadInput(format!("{} coefficients given for n = {n}", a.len())));
    }
    Ok(VSeries::new(r_coefficients(n, a)))
}

/// Power sums and elementary symmetric functions of the roots of a monic
/// polynomial, from its coefficients alone.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NewtonSums<T = f64> {
    pub s1: T,
    pub s2: T,
    pub s3: T,
    pub s4: T,
    pub sigma1: T,
    pub sigma2: T,
    pub sigma3: T,
    pub sigma4: T,
}

/// Newton's identities for monic `u^n + c_1 u^{n-1} + ... + c_n`, given
/// `c = [c_1, ..., c_n]`:
/// `S_k + c_1 S_{k-1} + ... + c_{k-1} S_1 + k c_k = 0` (with `c_k = 0` past
/// `n`).
fn newton_identities<T: Scalar>(c: &[T]) -> NewtonSums<T> {
    let coef = |k: usize| c.get(k - 1).cloned().unwrap_or_else(T::zero);
    let mut s: Vec<T> = vec![T::zero(); 5];
    for k in 1..=4 {
        let mut acc = T::from_i64(k as i64) * coef(k);
        for j in 1..k {
            acc = acc + coef(j) * s[k - j].clone();
        }
        s[k] = -acc;
    }
    let sigma = |k: usize| if k % 2 == 0 { coef(k) } else { -coef(k) };
    NewtonSums {
        s1: s[1].clone(),
        s2: s[2].clone(),
        s3: s[3].clone(),
        s4: s[4].clone(),
        sigma1: sigma(1),
        sigma2: sigma(2),
        sigma3: sigma(3),
        sigma4: sigma(4),
    }
}

/// Descending coefficients `[c_1, ..., c_n]` of a monic polynomial given by
/// ascending coefficients.
fn monic_tail<T: Scalar>(ascending: &[T]) -> Vec<T> {
    ascending.iter().rev().skip(1).cloned().collect()
}

/// Newton sums of the roots of `r` (which must be monic in `u`).
pub fn newton_sums(r: &VSeries) -> Result<NewtonSums> {
    let p = r.to_monomial();
    let lead = p.leading_coeff();
    if (lead - 1.0).abs() > 1e-12 {
        return Err(Error::NotMonic(lead));
    }
    Ok(newton_identities(&monic_tail(p.coeffs())))
}

/// Exact Newton sums of `sum_j r_j V_j`.
pub fn newton_sums_exact(r: &[BigRational]) -> Result<NewtonSums<BigRational>> {
    let p = v_series_to_monomial(r);
    match p.last() {
        Some(l) if l.is_one() => Ok(newton_identities(&monic_tail(&p))),
        Some(l) => Err(Error::NotMonic(ratio_to_f64(l))),
        None => Err(Error::NotMonic(0.0)),
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// The power-sum bounds `sum u_i^2 <= n + 4`, `sum u_i^4 <= n + 22`
/// (`n = u.len()`) satisfied by every ordered configuration of crossings on
/// the `T_3` ellipse. Returns `(both hold, S_2, S_4)`.
pub fn lemma_b_check(u: &[f64]) -> (bool, f64, f64) {
    let n = u.len() as f64;
    let s2: f64 = u.iter().map(|v| v * v).sum();
    let s4: f64 = u.iter().map(|v| v.powi(4)).sum();
    (s2 <= n + 4.0 && s4 <= n + 22.0, s2, s4)
}

/// Lower bounds `(deg x, deg y)` for a plane projection of `K_n` with
/// `deg x <= deg y`: `deg x >= 3`, and `deg y >= n + 1` when `deg x = 3`.
pub fn minimality_bound(n: usize) -> Result<(usize, usize)> {
    check_odd(n)?;
    Ok((3, n + 1))
}

fn check_odd(n: usize) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::BadInput(format!("n = {n} must be odd and at least 3")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ObstructionCase {
    #[serde(rename = "mod3_2_degree_drop")]
    Mod3DegreeDrop,
    #[serde(rename = "mod6_1_S2")]
    Mod6SecondPowerSum,
    #[serde(rename = "mod6_3_S4")]
    Mod6FourthPowerSum,
    #[serde(rename = "inconclusive_n3")]
    InconclusiveN3,
}

impl ObstructionCase {
    pub fn tag(self) -> &'static str {
        match self {
            ObstructionCase::Mod3DegreeDrop => "mod3_2_degree_drop",
            ObstructionCase::Mod6SecondPowerSum => "mod6_1_S2",
            ObstructionCase::Mod6FourthPowerSum => "mod6_3_S4",
            ObstructionCase::InconclusiveN3 => "inconclusive_n3",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Conclusion {
    Impossible,
    Possible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = ">")]
    Greater,
    #[serde(rename = "<")]
    Less,
    #[serde(rename = "<=")]
    LessEq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Greater => ">",
            Relation::Less => "<",
            Relation::LessEq => "<=",
        })
    }
}

fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// `lhs relation rhs`, exactly. Integers print as plain decimals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactInequality {
    /// What `lhs` measures.
    pub quantity: String,
    #[serde(serialize_with = "ser_ratio")]
    pub lhs: BigRational,
    pub relation: Relation,
    /// What `rhs` measures.
    pub bound: String,
    #[serde(serialize_with = "ser_ratio")]
    pub rhs: BigRational,
}

impl ExactInequality {
    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::Greater => self.lhs > self.rhs,
            Relation::Less => self.lhs < self.rhs,
            Relation::LessEq => self.lhs <= self.rhs,
        }
    }
}

impl fmt::Display for ExactInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.relation, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObstructionReport {
    pub n: usize,
    pub case: ObstructionCase,
    pub inequality: ExactInequality,
    pub conclusion: Conclusion,
}

fn int(v: i64) -> BigRational {
    BigRational::from_i64(v)
}

/// Exact quadratic `A a^2 + B a + C` through the values at `a = -1, 0, 1`.
fn fit_quadratic(at: impl Fn(BigRational) -> BigRational) -> (BigRational, BigRational, BigRational) {
    let (m, z, p) = (at(int(-1)), at(int(0)), at(int(1)));
    let two = int(2);
    let a = (p.clone() + m.clone() - two.clone() * z.clone()) / two.clone();
    let b = (p - m) / two;
    (a, b, z)
}

/// Minimum over real `a` of `A a^2 + B a + C`, `A > 0`.
fn quadratic_min(q: &(BigRational, BigRational, BigRational)) -> BigRational {
    let (a, b, c) = q;
    assert!(a.is_positive(), "power sum must be convex in the free coefficient");
    c.clone() - b.clone() * b.clone() / (int(4) * a.clone())
}

/// `a` vector with `a_free` in slot `free` and generic fixed rationals
/// elsewhere, so that independence from the other coefficients is exercised.
fn coefficients_with(n: usize, free: usize, value: BigRational, others: bool) -> Vec<BigRational> {
    (1..=n)
        .map(|k| {
            if k == free {
                value.clone()
            } else if others {
                BigRational::new(BigInt::from(k as i64 * 3 - 1), BigInt::from(7))
            } else {
                BigRational::zero()
            }
        })
        .collect()
}

/// Power sum `S_p` of the roots of `sign * R(a)` with `a_free = value`.
fn power_sum_of_r(n: usize, free: usize, value: BigRational, others: bool, sign: i64, p: usize) -> BigRational {
    let a = coefficients_with(n, free, value, others);
    let r: Vec<BigRational> = r_coefficients(n, &a).into_iter().map(|c| c * int(sign)).collect();
    let sums = newton_sums_exact(&r).expect("R is monic in this case");
    if p == 4 {
        // with S_1 = 0 the general identity reduces to S_4 = 2σ2² − 4σ4
        assert!(sums.sigma1.is_zero());
        let special = int(2) * sums.sigma2.clone() * sums.sigma2.clone() - int(4) * sums.sigma4.clone();
        assert_eq!(sums.s4, special);
        sums.s4
    } else {
        sums.s2
    }
}

/// Exact certificate that `K_n` has no `(3, n+1, m)` parametrization, or the
/// record that the argument is inconclusive (`n = 3`).
pub fn certify_impossible(n: usize) -> Result<ObstructionReport> {
    check_odd(n)?;
    let n_i = n as i64;

    if n % 3 == 2 {
        // leading V_n coefficient of R is ε(n+1) = 0 whatever the a_k
        let r = r_coefficients::<BigRational>(n, &coefficients_with(n, 0, int(0), true));
        assert!(r[n].is_zero());
        let deg = r.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        let inequality = ExactInequality {
            quantity: "max number of roots of R (its degree bound)".into(),
            lhs: int(deg.max(n - 1) as i64),
            relation: Relation::Less,
            bound: "required number of distinct crossings n".into(),
            rhs: int(n_i),
        };
        return Ok(ObstructionReport {
            n,
            case: ObstructionCase::Mod3DegreeDrop,
            conclusion: if inequality.holds() {
                Conclusion::Impossible
            } else {
                Conclusion::Possible
            },
            inequality,
        });
    }

    let (case, power, free, sign, bound) = if n % 6 == 1 {
        (ObstructionCase::Mod6SecondPowerSum, 2, n, 1, n_i + 4)
    } else {
        (ObstructionCase::Mod6FourthPowerSum, 4, n - 1, -1, n_i + 22)
    };

    let q = fit_quadratic(|v| power_sum_of_r(n, free, v, false, sign, power));
    let q_others = fit_quadratic(|v| power_sum_of_r(n, free, v, true, sign, power));
    assert_eq!(q, q_others, "power sum must depend on a_{free} only");
    let min = quadratic_min(&q);

    let inequality = ExactInequality {
        quantity: format!("min over a_{free} of S{power} = sum u_i^{power}"),
        lhs: min,
        relation: Relation::Greater,
        bound: format!("ordered-configuration bound on S{power} (n + {})", bound - n_i),
        rhs: int(bound),
    };
    let contradiction = inequality.holds();
    Ok(ObstructionReport {
        n,
        case: if contradiction || case != ObstructionCase::Mod6FourthPowerSum {
            case
        } else {
            ObstructionCase::InconclusiveN3
        },
        conclusion: if contradiction {
            Conclusion::Impossible
        } else {
            Conclusion::Possible
        },
        inequality,
    })
}
