//! Versioned JSON formats: curve files and synthesis specs.

use serde::Serialize;
use serde_json::{Map, Value};

use polyknot::synth::{Builtin, DegreeStatus, SynthSpec};
use polyknot::{ChebSeries, Polynomial, SpaceCurve};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Basis {
    /// Index `k` multiplies monic `T_k`, with `T_0 = 2`.
    #[serde(rename = "chebyshev-monic")]
    ChebyshevMonic,
    #[serde(rename = "monomial")]
    Monomial,
}

/// A space curve on disk. Coefficient arrays are ascending in index.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveFile {
    pub format: u32,
    pub basis: Basis,
    pub label: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_status: Option<DegreeStatus>,
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value, CliError> {
    obj.get(name).ok_or_else(|| CliError::parse(name, "missing"))
}

fn coeff_array(value: &Value, name: &str) -> Result<Vec<f64>, CliError> {
    let arr = value
        .as_array()
        .ok_or_else(|| CliError::parse(name, "expected an array of numbers"))?;
    if arr.is_empty() {
        return Err(CliError::parse(name, "must not be empty"));
    }
    arr.iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_f64()
                .filter(|f| f.is_finite())
                .ok_or_else(|| CliError::parse(&format!("{name}[{i}]"), "expected a finite number"))
        })
        .collect()
}

fn check_format(obj: &Map<String, Value>) -> Result<(), CliError> {
    match field(obj, "format")?.as_u64() {
        Some(v) if v == FORMAT_VERSION as u64 => Ok(()),
        _ => Err(CliError::parse("format", "expected 1")),
    }
}

fn as_object(v: &Value) -> Result<&Map<String, Value>, CliError> {
    v.as_object()
        .ok_or_else(|| CliError::parse("(root)", "expected a JSON object"))
}

fn parse_json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::parse("(root)", &format!("invalid JSON: {e}")))
}

impl CurveFile {
    pub fn parse(text: &str) -> Result<CurveFile, CliError> {
        let root = parse_json(text)?;
        let obj = as_object(&root)?;
        check_format(obj)?;
        let basis = match field(obj, "basis")?.as_str() {
            Some("chebyshev-monic") => Basis::ChebyshevMonic,
            Some("monomial") => Basis::Monomial,
            _ => return Err(CliError::parse("basis", "expected \"chebyshev-monic\" or \"monomial\"")),
        };
        let label = match obj.get("label") {
            None => String::new(),
            Some(v) => v
                .as_str()
                .ok_or_else(|| CliError::parse("label", "expected a string"))?
                .to_string(),
        };
        let z = match obj.get("z") {
            None | Some(Value::Null) => None,
            Some(v) => Some(coeff_array(v, "z")?),
        };
        let degree_status = match obj.get("degree_status").and_then(Value::as_str) {
            None => None,
            Some("minimal") => Some(DegreeStatus::Minimal),
            Some("minimal-conditional") => Some(DegreeStatus::MinimalConditional),
            Some(_) => return Err(CliError::parse("degree_status", "unknown value")),
        };
        Ok(CurveFile {
            format: FORMAT_VERSION,
            basis,
            label,
            x: coeff_array(field(obj, "x")?, "x")?,
            y: coeff_array(field(obj, "y")?, "y")?,
            z,
            degree_status,
        })
    }

    pub fn from_builtin(b: &Builtin) -> CurveFile {
        let padded = |s: &ChebSeries| {
            let c = s.coeffs().to_vec();
            if c.is_empty() {
                vec![0.0]
            } else {
                c
            }
        };
        CurveFile {
            format: FORMAT_VERSION,
            basis: Basis::ChebyshevMonic,
            label: format!("K{}", b.n),
            x: padded(&b.x),
            y: padded(&b.y),
            z: Some(padded(&b.z)),
            degree_status: Some(b.degree_status),
        }
    }

    pub fn from_series(label: &str, x: &ChebSeries, y: &ChebSeries, z: &ChebSeries) -> CurveFile {
        let v = |s: &ChebSeries| if s.is_zero() { vec![0.0] } else { s.coeffs().to_vec() };
        CurveFile {
            format: FORMAT_VERSION,
            basis: Basis::ChebyshevMonic,
            label: label.to_string(),
            x: v(x),
            y: v(y),
            z: Some(v(z)),
            degree_status: None,
        }
    }

    pub fn to_curve(&self) -> SpaceCurve {
        let poly = |c: &[f64]| match self.basis {
            Basis::Monomial => Polynomial::new(c.to_vec()),
            Basis::ChebyshevMonic => ChebSeries::new(c.to_vec()).to_monomial(),
        };
        SpaceCurve::new(
            poly(&self.x),
            poly(&self.y),
            self.z.as_deref().map(poly),
            self.label.clone(),
        )
    }
}

/// `{"format": 1, "nodes": [...], "cos_alpha": bool, "shaping": [...]}`;
/// `n` is optional and checked against the node count when present.
pub fn parse_synth_spec(text: &str) -> Result<SynthSpec, CliError> {
    let root = parse_json(text)?;
    let obj = as_object(&root)?;
    check_format(obj)?;
    let mut nodes = coeff_array(field(obj, "nodes")?, "nodes")?;
    let cos_alpha = match obj.get("cos_alpha") {
        None => false,
        Some(v) => v
            .as_bool()
            .ok_or_else(|| CliError::parse("cos_alpha", "expected a boolean"))?,
    };
    let shaping = match obj.get("shaping") {
        None => Vec::new(),
        Some(Value::Array(a)) if a.is_empty() => Vec::new(),
        Some(v) => coeff_array(v, "shaping")?,
    };
    if cos_alpha {
        nodes.iter_mut().for_each(|u| *u *= 2.0);
    }
    nodes.sort_by(f64::total_cmp);
    if let Some(n) = obj.get("n") {
        let n = n
            .as_u64()
            .ok_or_else(|| CliError::parse("n", "expected a positive integer"))?;
        if n as usize != nodes.len() {
            return Err(CliError::parse(
                "n",
                &format!("{n} does not match {} nodes", nodes.len()),
            ));
        }
    }
    Ok(SynthSpec::new(nodes)?.with_shaping(shaping))
}
