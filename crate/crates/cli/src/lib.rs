//! Front end for `polyknot`: file formats, reports and the subcommands.
//!
//! Every command returns an [`Output`] instead of printing, so the binary
//! stays a thin shell and the commands can be tested in-process.

pub mod error;
pub mod format;
pub mod report;

use std::io::Read;

use serde::Serialize;

use polyknot::diagram::{build_diagram, gauss_code};
use polyknot::render::{render_svg, RenderOptions};
use polyknot::synth::{builtin_info, grid_search_shaping, synthesize, SynthSpec};

pub use error::{CliError, EXIT_DEGENERATE, EXIT_INPUT, EXIT_NOT_RECOGNIZED, EXIT_OK};
pub use format::{CurveFile, FORMAT_VERSION};
pub use report::{verify_curve, VerifyReport};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Output {
        Output {
            stdout,
            ..Default::default()
        }
    }

    fn fail(err: &CliError, source: Option<&str>) -> Output {
        Output {
            stdout: String::new(),
            stderr: format!("{}\n", err.to_json(source)),
            code: err.exit_code(),
        }
    }
}

impl From<Result<Output, CliError>> for Output {
    fn from(r: Result<Output, CliError>) -> Output {
        r.unwrap_or_else(|e| Output::fail(&e, None))
    }
}

/// Contents of `path`, or of standard input for `-`.
pub fn read_source(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::io(path, e))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
    }
}

fn load(path: &str) -> Result<CurveFile, CliError> {
    CurveFile::parse(&read_source(path)?)
}

/// Pretty JSON with keys in sorted order, so re-serializing a parsed
/// output reproduces it byte for byte.
fn to_json<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("report types serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
    s.push('\n');
    s
}

fn verify_one(path: &str) -> Result<VerifyReport, CliError> {
    let file = load(path)?;
    let mut report = verify_curve(&file.to_curve())?;
    report.degree_status = file.degree_status;
    Ok(report)
}

/// Verify each curve file; `jobs > 1` checks files concurrently. The exit
/// code is the worst over all files.
pub fn cmd_verify(paths: &[String], jobs: usize, as_json: bool) -> Output {
    let paths: Vec<String> = if paths.is_empty() {
        vec!["-".into()]
    } else {
        paths.to_vec()
    };
    let results: Vec<Result<VerifyReport, CliError>> = if jobs > 1 && paths.len() > 1 {
        use rayon::prelude::*;
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| paths.par_iter().map(|p| verify_one(p)).collect()),
            Err(_) => paths.iter().map(|p| verify_one(p)).collect(),
        }
    } else {
        paths.iter().map(|p| verify_one(p)).collect()
    };

    let mut out = Output::default();
    let many = paths.len() > 1;
    for (path, res) in paths.iter().zip(results) {
        match res {
            Ok(report) => {
                if many && !as_json {
                    out.stdout.push_str(&format!("==> {path} <==\n"));
                }
                out.stdout
                    .push_str(&if as_json { to_json(&report) } else { report.text() });
                let code = if report.recognized.is_some() {
                    EXIT_OK
                } else {
                    EXIT_NOT_RECOGNIZED
                };
                out.code = out.code.max(code);
            }
            Err(e) => {
                out.stderr.push_str(&format!("{}\n", e.to_json(Some(path))));
                out.code = out.code.max(e.exit_code());
            }
        }
    }
    out
}

#[derive(Serialize)]
struct ObstructOutput {
    format: u32,
    #[serde(flatten)]
    report: polyknot::ObstructionReport,
}

pub fn cmd_obstruct(n: usize) -> Output {
    polyknot::certify_impossible(n)
        .map(|report| {
            Output::ok(to_json(&ObstructOutput {
                format: FORMAT_VERSION,
                report,
            }))
        })
        .map_err(CliError::from)
        .into()
}

/// How `cmd_synth` chooses the `T_{6i}` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub enum ShapingChoice {
    Fixed(Vec<f64>),
    GridSearch,
}

#[derive(Serialize)]
struct SynthOutput {
    format: u32,
    verified: bool,
    nodes: Vec<f64>,
    shaping: Vec<f64>,
    extra_roots: Vec<f64>,
    curve: CurveFile,
    report: VerifyReport,
}

/// Synthesize from `spec`; the curve file goes to `curve_out` when given,
/// and is embedded in the printed report either way.
pub fn cmd_synth(spec: SynthSpec, shaping: Option<ShapingChoice>, curve_out: Option<&str>) -> Output {
    let run = || -> Result<Output, CliError> {
        let mut spec = spec;
        if let Some(ShapingChoice::Fixed(b)) = &shaping {
            spec.shaping = b.clone();
        }
        let mut res = synthesize(&spec)?;
        if shaping == Some(ShapingChoice::GridSearch) {
            // lifted series carry no T_{6i} terms, so the search result is
            // the shaping itself
            spec.shaping = grid_search_shaping(&res);
            res = synthesize(&spec)?;
        }
        let (x, y, z) = &res.series;
        let label = format!("K{}", spec.n);
        let curve = CurveFile::from_series(&label, x, y, z);
        let mut report = VerifyReport::from_diagram(&res.curve, &res.diagram);
        report.label = label;
        if let Some(path) = curve_out {
            std::fs::write(path, to_json(&curve)).map_err(|e| CliError::io(path, e))?;
        }
        let shaping_used = (1..=y.degree().unwrap_or(0) / 6).map(|i| y.coeff(6 * i)).collect();
        Ok(Output {
            stdout: to_json(&SynthOutput {
                format: FORMAT_VERSION,
                verified: res.verified,
                nodes: spec.nodes.clone(),
                shaping: shaping_used,
                extra_roots: res.extra_roots.clone(),
                curve,
                report,
            }),
            stderr: String::new(),
            code: if res.verified { EXIT_OK } else { EXIT_NOT_RECOGNIZED },
        })
    };
    run().into()
}

pub fn cmd_render(path: &str, opts: &RenderOptions, out: Option<&str>) -> Output {
    let run = || -> Result<Output, CliError> {
        let curve = load(path)?.to_curve();
        let d = build_diagram(&curve)?;
        let svg = render_svg(&curve, &d, opts)?;
        match out {
            Some(p) if p != "-" => {
                std::fs::write(p, svg).map_err(|e| CliError::io(p, e))?;
                Ok(Output::default())
            }
            _ => Ok(Output::ok(svg)),
        }
    };
    run().into()
}

pub fn cmd_gauss(path: &str) -> Output {
    let run = || -> Result<Output, CliError> {
        let d = build_diagram(&load(path)?.to_curve())?;
        Ok(Output::ok(format!("{}\n", gauss_code(&d))))
    };
    run().into()
}

pub fn cmd_builtin(name: &str) -> Output {
    builtin_info(name)
        .map(|b| Output::ok(to_json(&CurveFile::from_builtin(&b))))
        .map_err(CliError::from)
        .into()
}

/// The parse error JSON for malformed command-line values.
pub fn usage_error(field: &str, message: &str) -> Output {
    Output::fail(&CliError::parse(field, message), None)
}
