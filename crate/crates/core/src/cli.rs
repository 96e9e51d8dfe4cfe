//! `hcx` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::algebra::{Algebra, MultiplicationTable};
use crate::antiquaternion::DEFAULT_EPS;
use crate::builtin;
use crate::doubling::{self, Seed2};
use crate::expr;
use crate::geometry::{self, DEFAULT_U_STEPS, DEFAULT_V_MAX, DEFAULT_V_STEPS};
use crate::verify::{self, Settings, DEFAULT_SEED, DEFAULT_TRIALS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hcx",
    version,
    about = "Hypercomplex algebras and antiquaternion arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an antiquaternion expression, e.g. "(1 + 2*e2) * ~(e3 - e4)".
    /// Use `-` to read the expression from stdin.
    Eval { expr: String },

    /// Print a multiplication table: H=D(C,C), AH=D(C,W), D(W,W), a built-in
    /// name (C, W, H, AH) or a table file.
    Table { spec: String },

    /// Run the property suites against an algebra.
    Verify {
        target: String,
        #[arg(long, default_value_t = DEFAULT_TRIALS as u64, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_parser = positive_real)]
        eps: Option<f64>,
    },

    /// Classify the level set for scalar part A1 and pseudonorm P and write a
    /// mesh as CSV.
    #[command(allow_negative_numbers = true)]
    Surface {
        a1: f64,
        p: f64,
        /// Output CSV path (or use --out).
        path: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_parser = positive_real)]
        eps: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_U_STEPS)]
        u_steps: usize,
        #[arg(long, default_value_t = DEFAULT_V_STEPS)]
        v_steps: usize,
        #[arg(long, default_value_t = DEFAULT_V_MAX)]
        v_max: f64,
    },
}

fn positive_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be a positive finite number, got {s}"))
    }
}

/// Resolves a table spec: `NAME=D(X,Y)` / `D(X,Y)` with seeds C and W, a
/// built-in name, or a path to a table file.
pub fn resolve_algebra(spec: &str) -> Result<Algebra, String> {
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let (name, body) = match compact.split_once('=') {
        Some((n, b)) => (Some(n.to_string()), b.to_string()),
        None => (None, compact.clone()),
    };
    if let Some(args) = body.strip_prefix("D(").and_then(|r| r.strip_suffix(')')) {
        let (a, b) = args
            .split_once(',')
            .ok_or_else(|| format!("malformed doubling spec `{spec}`"))?;
        let seed = |s: &str| -> Result<Seed2, String> {
            match s {
                "C" => Ok(doubling::builtin_complex()),
                "W" => Ok(doubling::builtin_double_numbers()),
                other => Err(format!("unknown seed system `{other}` (expected C or W)")),
            }
        };
        let name = name.unwrap_or_else(|| body.clone());
        return Ok(doubling::double_anticommutative(&seed(a)?, &seed(b)?, name));
    }
    if let Some(alg) = builtin::by_name(&compact) {
        return Ok(alg);
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| format!("{spec}: {e}"))?;
        let table = MultiplicationTable::parse(&text).map_err(|e| format!("{spec}: {e}"))?;
        return Ok(Algebra::new(spec, table));
    }
    Err(format!(
        "unknown algebra spec `{spec}` (not a doubling, built-in name or file)"
    ))
}

/// Runs the CLI with explicit streams; returns the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(
    cmd: Command,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match cmd {
        Command::Eval { expr: src } => {
            let src = if src == "-" {
                let mut buf = String::new();
                stdin.read_to_string(&mut buf).map_err(io)?;
                buf.trim_end().to_string()
            } else {
                src
            };
            match expr::evaluate(&src) {
                Ok(v) => {
                    writeln!(stdout, "{v}").map_err(io)?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    writeln!(stderr, "{}", expr::render_diagnostic(&src, &e)).map_err(io)?;
                    Ok(EXIT_USAGE)
                }
            }
        }
        Command::Table { spec } => {
            let alg = resolve_algebra(&spec)?;
            write!(stdout, "{}", alg.table()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            target,
            trials,
            seed,
            eps,
        } => {
            let alg = resolve_algebra(&target)?;
            let settings = Settings {
                trials: trials as usize,
                seed,
                eps: eps.unwrap_or(DEFAULT_EPS),
            };
            let report = verify::run(&alg, settings);
            write!(stdout, "{report}").map_err(io)?;
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
        Command::Surface {
            a1,
            p,
            path,
            out,
            eps,
            u_steps,
            v_steps,
            v_max,
        } => {
            let target = match (path, out) {
                (Some(_), Some(_)) => {
                    return Err("give the output path once (positional or --out)".into())
                }
                (Some(t), None) | (None, Some(t)) => t,
                (None, None) => return Err("missing output path".into()),
            };
            if !a1.is_finite() || !p.is_finite() {
                return Err("a1 and p must be finite".into());
            }
            let class = geometry::classify_surface(
                a1,
                p,
                eps.unwrap_or_else(|| geometry::default_eps(a1, p)),
            );
            let points = geometry::sample_surface(&class, u_steps, v_steps, v_max)
                .map_err(|e| e.to_string())?;
            let file =
                fs::File::create(&target).map_err(|e| format!("{}: {e}", target.display()))?;
            let mut w = std::io::BufWriter::new(file);
            geometry::write_csv(&points, &mut w)
                .and_then(|_| w.flush())
                .map_err(|e| format!("{}: {e}", target.display()))?;
            writeln!(stdout, "{class}").map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}
