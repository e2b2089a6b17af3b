use serde::Serialize;

use crate::chebyshev::ChebSeries;
use crate::curve::SpaceCurve;
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: [&str; 4] = ["k3", "k5", "k7", "k9"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DegreeStatus {
    /// No parametrization of lower degree exists.
    #[serde(rename = "minimal")]
    Minimal,
    /// Minimal among curves whose projection has exactly `n` double points.
    #[serde(rename = "minimal-conditional")]
    MinimalConditional,
}

/// A published parametrization with its Chebyshev coefficients exactly as
/// printed.
#[derive(Clone, Debug, PartialEq)]
pub struct Builtin {
    pub name: &'static str,
    pub n: usize,
    pub x: ChebSeries,
    pub y: ChebSeries,
    pub z: ChebSeries,
    pub degree_status: DegreeStatus,
    /// Published `cos α` of the crossings, where given.
    pub cos_alpha: Option<Vec<f64>>,
}

impl Builtin {
    pub fn curve(&self) -> SpaceCurve {
        SpaceCurve::new(
            self.x.to_monomial(),
            self.y.to_monomial(),
            Some(self.z.to_monomial()),
            format!("K{}", self.n),
        )
    }

    pub fn degrees(&self) -> (usize, usize, usize) {
        let d = |s: &ChebSeries| s.degree().unwrap_or(0);
        (d(&self.x), d(&self.y), d(&self.z))
    }
}

pub fn builtin_info(name: &str) -> Result<Builtin> {
    let t = ChebSeries::from_terms;
    let x = t(&[(3, 1.0)]);
    let b = match name.to_ascii_lowercase().as_str() {
        "k3" => Builtin {
            name: "k3",
            n: 3,
            x,
            y: t(&[(4, 1.0)]),
            z: t(&[(5, 1.0)]),
            degree_status: DegreeStatus::Minimal,
            cos_alpha: None,
        },
        "k5" => Builtin {
            name: "k5",
            n: 5,
            x,
            y: t(&[(8, 1.0), (6, -2.0), (4, 2.189), (2, -2.170)]),
            z: t(&[(7, 1.0), (5, -0.56), (1, -0.01348)]),
            degree_status: DegreeStatus::Minimal,
            cos_alpha: None,
        },
        "k7" => Builtin {
            name: "k7",
            n: 7,
            x,
            y: t(&[(10, 1.0), (8, -2.360), (6, 4.108), (4, -6.037), (2, 7.397)]),
            z: t(&[(11, 1.0), (7, 3.580), (5, -3.739), (1, -1.0)]),
            degree_status: DegreeStatus::Minimal,
            cos_alpha: Some(vec![-0.5, -0.3, -0.2, 0.0, 0.2, 0.3, 0.5]),
        },
        "k9" => Builtin {
            name: "k9",
            n: 9,
            x,
            y: t(&[
                (14, 1.0),
                (12, -4.516),
                (10, 12.16),
                (8, -24.46),
                (6, 39.92),
                (4, -55.30),
                (2, 66.60),
            ]),
            z: t(&[(13, 1.0), (11, -2.389), (7, -5.161), (5, 5.161), (1, 1.397)]),
            degree_status: DegreeStatus::MinimalConditional,
            cos_alpha: Some(vec![-0.5, -0.3, -0.2, -0.1, 0.0, 0.1, 0.2, 0.3, 0.5]),
        },
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(b)
}

/// The published curve `name` (`k3`, `k5`, `k7` or `k9`).
pub fn builtin(name: &str) -> Result<SpaceCurve> {
    builtin_info(name).map(|b| b.curve())
}
