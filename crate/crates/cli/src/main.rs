use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use polyknot::render::{Fit, RenderOptions};
use polyknot::synth::SynthSpec;
use polyknot_cli::format::parse_synth_spec;
use polyknot_cli::{
    cmd_builtin, cmd_gauss, cmd_obstruct, cmd_render, cmd_synth, cmd_verify, read_source, usage_error, CliError,
    Output, ShapingChoice,
};

/// Polynomial torus knots: crossing diagrams, impossibility certificates and
/// synthesis of K3, K5, K7, K9.
#[derive(Parser)]
#[command(name = "polyknot", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the diagram of each curve file and recognize (2, n) torus knots.
    Verify {
        /// Curve files; `-` or nothing reads standard input.
        files: Vec<String>,
        /// Check files concurrently on this many threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Print the JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Certify that K_n has no parametrization of degrees (3, n+1, m).
    Obstruct {
        #[arg(long)]
        n: usize,
    },
    /// Synthesize a (T_3, y, z) curve through the given crossing nodes.
    Synth {
        /// Expected number of crossings (checked against the nodes).
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated nodes u_i = 2 cos(alpha_i).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "spec")]
        nodes: Vec<f64>,
        /// Read nodes as cos(alpha_i).
        #[arg(long)]
        cos_alpha: bool,
        /// JSON synthesis spec instead of --nodes.
        #[arg(long)]
        spec: Option<String>,
        /// Comma-separated T_{6i} coefficients, or `auto` for a grid search.
        #[arg(long, allow_hyphen_values = true)]
        shaping: Option<String>,
        /// Also write the curve file here.
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Draw the xy-projection as SVG with broken under-strands.
    Render {
        file: String,
        #[arg(short, long)]
        output: Option<String>,
        #[arg(long, default_value_t = 600)]
        width: u32,
        #[arg(long, default_value_t = 600)]
        height: u32,
        #[arg(long, default_value_t = 2048)]
        samples: usize,
        /// Half-length of each break, in stroke widths.
        #[arg(long, default_value_t = 4.0)]
        gap: f64,
        #[arg(long)]
        no_labels: bool,
        /// Use one scale for both axes instead of fitting each separately.
        #[arg(long)]
        equal_axes: bool,
        /// Scale to the whole curve or zoom to the crossings.
        #[arg(long, value_enum, default_value_t = FitArg::Curve)]
        fit: FitArg,
    },
    /// Print the Gauss code.
    Gauss { file: String },
    /// Print a published curve (k3, k5, k7, k9) as a curve file.
    Builtin { name: String },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FitArg {
    Curve,
    Crossings,
}

impl From<FitArg> for Fit {
    fn from(f: FitArg) -> Fit {
        match f {
            FitArg::Curve => Fit::Curve,
            FitArg::Crossings => Fit::Crossings,
        }
    }
}

fn parse_shaping(s: &str) -> Result<ShapingChoice, Output> {
    if s == "auto" {
        return Ok(ShapingChoice::GridSearch);
    }
    s.split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map(ShapingChoice::Fixed)
        .map_err(|_| usage_error("shaping", "expected comma-separated numbers or `auto`"))
}

fn synth(
    n: Option<usize>,
    nodes: Vec<f64>,
    cos_alpha: bool,
    spec: Option<String>,
    shaping: Option<String>,
    output: Option<String>,
) -> Output {
    let spec = match spec {
        Some(path) => read_source(&path).and_then(|text| parse_synth_spec(&text)),
        None => {
            let mut nodes: Vec<f64> = nodes.iter().map(|u| if cos_alpha { 2.0 * u } else { *u }).collect();
            nodes.sort_by(f64::total_cmp);
            SynthSpec::new(nodes).map_err(CliError::from)
        }
    };
    let spec = match spec {
        Ok(s) => s,
        Err(e) => return Err::<Output, _>(e).into(),
    };
    if n.is_some_and(|n| n != spec.n) {
        return usage_error("n", "does not match the number of nodes");
    }
    let shaping = match shaping.as_deref().map(parse_shaping).transpose() {
        Ok(s) => s,
        Err(out) => return out,
    };
    cmd_synth(spec, shaping, output.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Verify { files, jobs, json } => cmd_verify(&files, jobs.max(1), json),
        Command::Obstruct { n } => cmd_obstruct(n),
        Command::Synth {
            n,
            nodes,
            cos_alpha,
            spec,
            shaping,
            output,
        } => synth(n, nodes, cos_alpha, spec, shaping, output),
        Command::Render {
            file,
            output,
            width,
            height,
            samples,
            gap,
            no_labels,
            equal_axes,
            fit,
        } => {
            let opts = RenderOptions {
                width,
                height,
                samples,
                gap,
                labels: !no_labels,
                equal_axes,
                fit: fit.into(),
                ..Default::default()
            };
            cmd_render(&file, &opts, output.as_deref())
        }
        Command::Gauss { file } => cmd_gauss(&file),
        Command::Builtin { name } => cmd_builtin(&name),
    };
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
