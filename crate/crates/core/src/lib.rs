//! Polynomial torus knots.
//!
//! Crossing diagrams of polynomial space curves `t ↦ (x(t), y(t), z(t))`,
//! exact impossibility certificates for `(2, n)` torus knots with
//! projections of degree `(3, n+1)`, and synthesis of low-degree curves
//! realising `K_3`, `K_5`, `K_7` and `K_9`.
//!
//! Chebyshev polynomials throughout use the monic normalization
//! `T_0 = 2`, `T_n(2 cos θ) = 2 cos(nθ)`; see [`chebyshev`].

// `!(a < b)` is how option checks reject NaN along with bad values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chebyshev;
pub mod curve;
pub mod diagram;
pub mod error;
pub mod obstruction;
pub mod render;
pub mod synth;

pub use chebyshev::{ChebSeries, Polynomial, VSeries};
pub use curve::{CrossingParams, SpaceCurve};
pub use diagram::{Crossing, Diagram};
pub use error::{Error, Result};
pub use obstruction::{certify_impossible, ObstructionReport};
pub use render::{render_svg, RenderOptions};
pub use synth::{builtin, synthesize, SynthResult, SynthSpec};
