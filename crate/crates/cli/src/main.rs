use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use exparabola_cli::commands::{cmd_iterate, cmd_max, cmd_xfocal, IterateOptions};
use exparabola_cli::input::{parse_triple, read_spec};
use exparabola_cli::render::{render, Figure, RenderOptions};
use exparabola_cli::verify::{cmd_replay, cmd_verify, Sample};
use exparabola_cli::{exit, CliError, CliResult, Report};
use exparabolas::Homogeneous3;

#[derive(Parser, Debug)]
#[command(
    name = "exparabola",
    version,
    about = "Exparabolas, focal triangles and their invariants"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Triangle spec (JSON); stdin when absent or "-".
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Indented JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    pretty: bool,
    /// Compact JSON (default).
    #[arg(long, global = true)]
    json: bool,
    /// Invariant tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed recorded in reports and used by `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of `verify` trials.
    #[arg(long, global = true, default_value_t = 1000)]
    trials: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Max-exparabolas: roots, tangency points, foci, axes.
    Max,
    /// Focal triangle of the exparabolas with axes through X.
    Xfocal {
        /// Barycentric coordinates `x0,x1,x2`.
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        x: Homogeneous3,
    },
    /// Iterated focal triangles.
    Iterate {
        #[arg(long, default_value_t = 40)]
        steps: usize,
        /// Largest number of steps allowed.
        #[arg(long, default_value_t = exparabolas::iteration::DEFAULT_CAP)]
        cap: usize,
        /// Barycentric base point (experimental); the centroid when absent.
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        base: Option<Homogeneous3>,
    },
    /// Randomized check of every invariant.
    Verify {
        /// Re-run samples from a failing report or a sample file.
        #[arg(long, value_name = "FILE")]
        replay: Option<PathBuf>,
    },
    /// SVG figure.
    Render {
        #[arg(long, value_enum)]
        figure: Figure,
        /// Exparabola parameter for `--figure exparabola`.
        #[arg(long, default_value_t = 0.35, allow_hyphen_values = true)]
        t: f64,
        /// Point for `--figure anticomplementary`.
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true, default_value = "1,1,1")]
        x: Homogeneous3,
    },
}

fn write_out(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        _ => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn read_samples(path: &Path) -> CliResult<Vec<Sample>> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    // a verify report, a list of samples, or a single sample
    let samples = value
        .pointer("/result/failing_samples")
        .and_then(|v| v.as_array())
        .map(|list| {
            list.iter()
                .filter_map(|f| f.get("sample").cloned())
                .collect::<Vec<_>>()
        })
        .map(serde_json::Value::Array)
        .unwrap_or(value);
    let samples = match samples {
        serde_json::Value::Array(_) => serde_json::from_value::<Vec<Sample>>(samples),
        other => serde_json::from_value::<Sample>(other).map(|s| vec![s]),
    }
    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if samples.is_empty() {
        return Err(CliError::Input(format!("{}: no samples", path.display())));
    }
    Ok(samples)
}

fn summary(report: &Report) {
    let color = std::io::stderr().is_terminal() && std::env::var_os("NO_COLOR").is_none();
    let paint = |ok: bool| match (ok, color) {
        (true, true) => "\x1b[32mPASS\x1b[0m",
        (false, true) => "\x1b[31mFAIL\x1b[0m",
        (true, false) => "PASS",
        (false, false) => "FAIL",
    };
    let mut err = std::io::stderr().lock();
    for c in &report.invariants {
        let _ = writeln!(
            err,
            "{} {:<44} worst {:.3e} (tol {:.0e})",
            paint(c.pass),
            c.name,
            c.residual,
            c.tolerance
        );
    }
    let failed = report.invariants.iter().filter(|c| !c.pass).count();
    let _ = writeln!(
        err,
        "{}: {failed} of {} checks failed",
        paint(report.pass),
        report.invariants.len()
    );
}

fn run(cli: Cli) -> CliResult<i32> {
    let g = &cli.global;
    if g.tol.is_nan() || g.tol <= 0.0 {
        return Err(CliError::Input(format!(
            "--tol must be positive, got {}",
            g.tol
        )));
    }
    let report = match cli.command {
        Command::Render { figure, t, x } => {
            let spec = read_spec(g.input.as_deref())?;
            let svg = render(&spec, RenderOptions { figure, t, x })?;
            write_out(g.out.as_deref(), &svg)?;
            return Ok(exit::OK);
        }
        Command::Max => cmd_max(&read_spec(g.input.as_deref())?, g.tol, g.seed)?,
        Command::Xfocal { x } => cmd_xfocal(&read_spec(g.input.as_deref())?, x, g.tol, g.seed)?,
        Command::Iterate { steps, cap, base } => {
            let opts = IterateOptions {
                steps,
                tol: g.tol,
                cap,
                base,
            };
            cmd_iterate(&read_spec(g.input.as_deref())?, opts, g.seed)?
        }
        Command::Verify { replay } => {
            let report = match replay {
                Some(path) => cmd_replay(&read_samples(&path)?),
                None => {
                    if g.trials == 0 {
                        return Err(CliError::Input("--trials must be at least 1".into()));
                    }
                    cmd_verify(g.trials, g.seed)
                }
            };
            summary(&report);
            write_out(g.out.as_deref(), &report.to_json(g.pretty))?;
            return Ok(if report.pass {
                exit::OK
            } else {
                exit::VERIFY_FAILED
            });
        }
    };
    write_out(g.out.as_deref(), &report.to_json(g.pretty))?;
    Ok(exit::OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
