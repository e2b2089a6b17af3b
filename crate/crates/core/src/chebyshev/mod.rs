//! Monic Chebyshev algebra: polynomials, the `T`/`V` bases, the `ε`
//! sequence, divided differences and real root isolation.

mod basis;
mod bivariate;
mod poly;
mod roots;

pub use basis::{
    cheb_t, cheb_v, divided_difference_on_ellipse, epsilon, ChebSeries, MonicBasis, Series, TBasis, VBasis, VSeries,
};
pub use bivariate::{divided_difference_at, symmetric_divided_difference, SymPoly};
pub use poly::Polynomial;
pub use roots::{all_real_roots, cauchy_bound, real_roots, Multiplicity, RealRoot, MULTIPLICITY_THRESHOLD, ROOT_TOL};
