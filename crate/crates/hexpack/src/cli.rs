//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use hexpack_core::flower::{build_flower, is_conformally_symmetric, s_circles, symmetric_flower};
use hexpack_core::lattice::Window;
use hexpack_core::ExtComplex;

use crate::api::{self, AiryMapChoice, ApiError, NormalizationChoice};
use crate::json::{parse_field, parse_layout, to_canonical_string, LayoutDoc};
use crate::svg;

/// Exit status for invalid input.
pub const EXIT_INVALID: i32 = 2;
/// Exit status when `verify` finds a violated invariant.
pub const EXIT_VIOLATION: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "hexpack", version, about = "Hexagonal circle packings modulo Möbius transformations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write JSON here instead of standard output.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Also write an SVG picture.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Angles {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Flower with six touching points (comma-separated, `inf` allowed) and first petal radius.
    Flower {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long, default_value_t = 1.0)]
        r1: f64,
        #[command(flatten)]
        output: Output,
    },
    /// The conformally symmetric flower with its s-circles.
    SymmetricFlower {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[command(flatten)]
        output: Output,
    },
    /// Several members of a flower family.
    Family {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        /// Comma-separated first petal radii.
        #[arg(long, default_value = "0.5,1,2")]
        r1: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Closed-form cross-ratio field on the square window [-k, k]².
    Field {
        #[command(flatten)]
        angles: Angles,
        #[arg(long, default_value_t = 5)]
        window: i64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Packing of a field, read from a file or given by its angles.
    Layout {
        #[arg(long, conflicts_with_all = ["alpha", "beta", "gamma"])]
        field: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true, requires_all = ["beta", "gamma"])]
        alpha: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<f64>,
        #[arg(long, default_value_t = 5)]
        window: i64,
        /// `standard` or `identity`.
        #[arg(long, default_value = "standard")]
        normalization: NormalizationChoice,
        /// Skip the positive-imaginary check.
        #[arg(long)]
        unchecked: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Doyle spiral with radii R·Aⁿ·Bᵐ.
    Doyle {
        #[arg(long = "A", short = 'A')]
        a: f64,
        #[arg(long = "B", short = 'B')]
        b: f64,
        #[arg(long = "R", short = 'R', default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 5)]
        window: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Image of a hexagonal grid under the symmetric Airy map, with Schwarzian checks.
    Airy {
        #[arg(long, default_value_t = 0.2)]
        grid_spacing: f64,
        #[arg(long, default_value_t = 1.5)]
        extent: f64,
        /// `ratio` or `unit`.
        #[arg(long, default_value = "ratio")]
        map: AiryMapChoice,
        #[command(flatten)]
        output: Output,
    },
    /// Check every invariant of a layout file; exit status 1 if any fails.
    Verify {
        layout: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// HTTP JSON API for the explorer.
    Serve {
        #[arg(long, env = "HEXPACK_PORT", default_value_t = 8642)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

/// Failure of a subcommand.
#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Violation(String),
}

impl From<ApiError> for Failure {
    fn from(e: ApiError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn write_json(text: &str, out: &Option<PathBuf>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn write_svg(text: impl FnOnce() -> String, path: &Option<PathBuf>) -> Result<(), Failure> {
    if let Some(p) = path {
        std::fs::write(p, text())?;
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn points6(s: &str) -> Result<[ExtComplex; 6], Failure> {
    Ok(api::parse_points::<6>(s)?)
}

fn window(k: i64) -> Result<Window, Failure> {
    Ok(api::square_window(k)?)
}

pub fn execute(cmd: Command, stdout: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Flower { points, r1, output } => {
            let z = points6(&points)?;
            let doc = api::flower(&z, r1)?;
            write_json(&to_canonical_string(&doc), &output.out, stdout)?;
            let f = build_flower(&z, r1).map_err(ApiError::from)?;
            write_svg(|| svg::flower_svg(&f, &[], None), &output.svg)
        }
        Command::SymmetricFlower { points, output } => {
            let z = points6(&points)?;
            let doc = api::symmetric(&z)?;
            write_json(&to_canonical_string(&doc), &output.out, stdout)?;
            let f = symmetric_flower(&z).map_err(ApiError::from)?;
            let circles = s_circles(&f).map_err(ApiError::from)?;
            let common = is_conformally_symmetric(&f).map_err(ApiError::from)?.common_point;
            write_svg(|| svg::flower_svg(&f, &circles, common), &output.svg)
        }
        Command::Family { points, r1, out } => {
            let z = points6(&points)?;
            let docs = api::family(&z, &api::parse_f64_list(&r1)?)?;
            write_json(&to_canonical_string(&docs), &out, stdout)
        }
        Command::Field { angles, window: k, out } => {
            let report = api::field(angles.alpha, angles.beta, angles.gamma, window(k)?)?;
            write_json(&to_canonical_string(&report), &out, stdout)
        }
        Command::Layout { field, alpha, beta, gamma, window: k, normalization, unchecked, output } => {
            let f = match (field, alpha, beta, gamma) {
                (Some(path), _, _, _) => parse_field(&read(&path)?).map_err(ApiError::from)?,
                (None, Some(a), Some(b), Some(c)) => {
                    let p = api::solution_params(a, b, c)?;
                    hexpack_core::lattice::solution_field(&p, window(k)?).map_err(ApiError::from)?
                }
                _ => return Err(Failure::Invalid("give --field or all of --alpha, --beta, --gamma".into())),
            };
            let l = api::layout_of_field(&f, normalization, unchecked)?;
            write_json(&to_canonical_string(&LayoutDoc::from_layout(&l)), &output.out, stdout)?;
            write_svg(|| svg::layout_svg(&l, None), &output.svg)
        }
        Command::Doyle { a, b, r, window: k, output } => {
            let doc = api::doyle(a, b, r, window(k)?)?;
            write_json(&to_canonical_string(&doc), &output.out, stdout)?;
            let l = doc.to_layout().map_err(ApiError::from)?;
            write_svg(|| svg::layout_svg(&l, None), &output.svg)
        }
        Command::Airy { grid_spacing, extent, map, output } => {
            let doc = api::airy_grid(grid_spacing, extent, map)?;
            write_json(&to_canonical_string(&doc), &output.out, stdout)?;
            let img = api::grid_image(&doc)?;
            write_svg(|| svg::grid_svg(&img), &output.svg)
        }
        Command::Verify { layout, out } => {
            let l = parse_layout(&read(&layout)?).map_err(ApiError::from)?;
            let report = api::verify(&l);
            write_json(&to_canonical_string(&report), &out, stdout)?;
            if report.ok {
                Ok(())
            } else {
                let kinds: Vec<&str> = report.failures.iter().map(|f| f.kind.as_str()).collect();
                let mut summary = format!("{} invariant violation(s)", report.failures.len());
                if !kinds.is_empty() {
                    let mut uniq = kinds.clone();
                    uniq.sort_unstable();
                    uniq.dedup();
                    summary.push_str(&format!(": {}", uniq.join(", ")));
                }
                if let Some(e) = &report.field_error {
                    summary.push_str(&format!("; field: {e}"));
                }
                Err(Failure::Violation(summary))
            }
        }
        Command::Serve { port, host } => {
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(crate::serve::serve(&host, port))?;
            Ok(())
        }
    }
}

/// Parse arguments, run, and return the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_INVALID } else { 0 };
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Violation(msg)) => {
            let _ = writeln!(stderr, "verification failed: {msg}");
            EXIT_VIOLATION
        }
    }
}
