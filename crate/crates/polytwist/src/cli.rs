//! Command-line front end. `run` returns the process exit code:
//! 0 on success, 2 on usage errors, 1 on computation or IO errors.

use std::ffi::OsString;
use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polytwist_core::locus::DEFAULT_LOCUS_TOL;
use polytwist_core::roots::DEFAULT_ROOT_TOL;
use polytwist_core::{classify_cubic, find_roots, slice, CubicCategory, RealPolynomial, RootInfo};

use crate::csv_export::to_csv;
use crate::geogebra::to_geogebra;
use crate::numfmt::format_sig;
use crate::parse::{parse_coeffs, parse_expression, parse_range, ParseError};
use crate::pipeline::{compute_scene, SceneRequest, DEFAULT_SAMPLES};
use crate::scene::{to_scene_file, DEFAULT_Z_CLIP};
use crate::serve::{serve, DEFAULT_PORT};

#[derive(Parser, Debug)]
#[command(name = "polytwist", version, about = "Complex roots of real polynomials as space curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sweep the locus and write a scene (or CSV / GeoGebra script)
    Locus(ExportArgs),
    /// Same as `locus` with an explicit output format
    Export(ExportArgs),
    /// Print all roots with multiplicities
    Roots(RootArgs),
    /// Print the intersections with the plane at height LEVEL
    Slice(SliceArgs),
    /// Classify a cubic by the slope at its inflection point
    Classify(PolyArgs),
    /// Serve the scene API and viewer assets over HTTP
    Serve(ServeArgs),
}

#[derive(Args, Debug)]
struct PolyArgs {
    /// Coefficients lowest power first: `c,b,a` is az² + bz + c
    #[arg(long, allow_hyphen_values = true, conflicts_with = "poly", required_unless_present = "poly")]
    coeffs: Option<String>,
    /// Read --coeffs highest power first
    #[arg(long, requires = "coeffs")]
    desc: bool,
    /// Polynomial as an expression, e.g. "z^3 - 3z + 1"
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
}

impl PolyArgs {
    fn polynomial(&self) -> Result<RealPolynomial, ParseError> {
        match (&self.coeffs, &self.poly) {
            (Some(c), _) => parse_coeffs(c, self.desc),
            (None, Some(p)) => parse_expression(p),
            (None, None) => unreachable!("clap requires one of --coeffs/--poly"),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Scene,
    Csv,
    Geogebra,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[command(flatten)]
    poly: PolyArgs,
    /// x window as MIN:MAX; also the GeoGebra parameter range
    #[arg(long, default_value = "-3:3", allow_hyphen_values = true)]
    range: String,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_LOCUS_TOL)]
    locus_tol: f64,
    #[arg(long, default_value_t = DEFAULT_ROOT_TOL)]
    root_tol: f64,
    /// Heights beyond ±Z_CLIP are clipped and flagged
    #[arg(long, default_value_t = DEFAULT_Z_CLIP)]
    z_clip: f64,
    /// Also record the slice at this height
    #[arg(long, allow_hyphen_values = true)]
    slice: Option<f64>,
    #[arg(long, value_enum, default_value = "scene")]
    format: Format,
    /// Write here instead of standard output
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RootArgs {
    #[command(flatten)]
    poly: PolyArgs,
    #[arg(long, default_value_t = DEFAULT_ROOT_TOL)]
    root_tol: f64,
}

#[derive(Args, Debug)]
struct SliceArgs {
    #[command(flatten)]
    poly: PolyArgs,
    #[arg(long, allow_hyphen_values = true)]
    level: f64,
    #[arg(long, default_value_t = DEFAULT_ROOT_TOL)]
    root_tol: f64,
}

#[derive(Args, Debug)]
struct ServeArgs {
    #[arg(long, env = "POLYTWIST_PORT", default_value_t = DEFAULT_PORT)]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    host: IpAddr,
    /// Directory of static viewer files
    #[arg(long)]
    assets: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Compute(String),
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn compute(e: impl ToString) -> Failure {
    Failure::Compute(e.to_string())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Compute(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Locus(a) | Command::Export(a) => export(a, out),
        Command::Roots(a) => {
            let f = a.poly.polynomial().map_err(usage)?;
            let roots = find_roots(&f, a.root_tol).map_err(compute)?;
            write_roots(out, &roots).map_err(compute)
        }
        Command::Slice(a) => {
            let f = a.poly.polynomial().map_err(usage)?;
            if !a.level.is_finite() {
                return Err(usage("--level must be finite"));
            }
            let s = slice(&f, a.level, a.root_tol).map_err(compute)?;
            writeln!(out, "level\t{}", format_sig(s.level, 12)).map_err(compute)?;
            writeln!(out, "total_multiplicity\t{}", s.total_multiplicity).map_err(compute)?;
            write_roots(out, &s.intersections).map_err(compute)
        }
        Command::Classify(a) => {
            let f = a.polynomial().map_err(usage)?;
            let k = classify_cubic(&f).map_err(compute)?;
            let name = match k.category {
                CubicCategory::NegativeSlope => "NegativeSlope",
                CubicCategory::ZeroSlope => "ZeroSlope",
                CubicCategory::PositiveSlope => "PositiveSlope",
            };
            writeln!(out, "{name}").map_err(compute)?;
            writeln!(out, "inflection_x\t{}", format_sig(k.inflection_x, 12)).map_err(compute)?;
            writeln!(out, "inflection_slope\t{}", format_sig(k.inflection_slope, 12)).map_err(compute)
        }
        Command::Serve(a) => {
            let addr = SocketAddr::new(a.host, a.port);
            serve(addr, a.assets, |bound| {
                let _ = writeln!(err, "listening on http://{bound}");
            })
            .map_err(compute)
        }
    }
}

fn write_roots(out: &mut dyn Write, roots: &[RootInfo]) -> std::io::Result<()> {
    writeln!(out, "re\tim\tmultiplicity\tresidual")?;
    for r in roots {
        writeln!(
            out,
            "{}\t{}\t{}\t{:.3e}",
            format_sig(r.location.re, 12),
            format_sig(r.location.im, 12),
            r.multiplicity,
            r.residual
        )?;
    }
    Ok(())
}

fn export(a: ExportArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let f = a.poly.polynomial().map_err(usage)?;
    let (x_min, x_max) = parse_range(&a.range).map_err(usage)?;
    let text = match a.format {
        Format::Geogebra => {
            let mut s = to_geogebra(&f, x_min, x_max).map_err(compute)?.join("\n");
            s.push('\n');
            s
        }
        Format::Scene | Format::Csv => {
            let req = SceneRequest {
                samples: a.samples,
                locus_tol: a.locus_tol,
                root_tol: a.root_tol,
                slice: a.slice,
                z_clip: a.z_clip,
                ..SceneRequest::new(f, x_min, x_max)
            };
            let scene = compute_scene(&req).map_err(|e| match e {
                crate::pipeline::PipelineError::Samples(_)
                | crate::pipeline::PipelineError::Tolerance
                | crate::pipeline::PipelineError::Level => usage(e),
                _ => compute(e),
            })?;
            match a.format {
                Format::Csv => to_csv(&scene),
                _ => to_scene_file(&scene),
            }
        }
    };
    match a.output {
        Some(path) => std::fs::write(&path, text).map_err(|e| compute(format!("{}: {e}", path.display()))),
        None => out.write_all(text.as_bytes()).map_err(compute),
    }
}
