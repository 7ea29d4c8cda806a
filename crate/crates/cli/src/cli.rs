//! Subcommands of the `flatfront` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use flatfront_core::family::{caustic, curvature_line, parallel};
use flatfront_core::frontal::{project_period_joint, Quadruple};
use flatfront_core::gallery::GALLERY_NAMES;
use flatfront_core::singularities::singular_locus;
use serde_json::json;

use crate::config::{gallery_config, load_config, Config, GalleryParams, Loaded, SeriesConfig};
use crate::error::{CliError, Result};
use crate::mesh::{build_mesh, export_obj};
use crate::report::{analyze, curvline_csv, report_json, singular_csv, Derived};

#[derive(Debug, Parser)]
#[command(name = "flatfront", version, about = "Flat fronts from quadruple data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ConfigArg {
    /// JSON configuration file.
    #[arg(long, short)]
    config: PathBuf,
}

#[derive(Debug, Args)]
struct OutDir {
    /// Output directory for `front.obj` and `report.json`.
    #[arg(long, short, default_value = ".")]
    out: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mesh and report for the configured front.
    Build {
        #[command(flatten)]
        config: ConfigArg,
        #[command(flatten)]
        out: OutDir,
    },
    /// Validation, period, front and completeness verdicts; exit 0 iff all pass.
    Check {
        #[command(flatten)]
        config: ConfigArg,
    },
    /// Singular samples as CSV.
    Singular {
        #[command(flatten)]
        config: ConfigArg,
        /// Grid size of the scan (default: the configured resolution).
        #[arg(long)]
        samples: Option<usize>,
        /// Write CSV here instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Mesh and report of the caustic.
    Caustic {
        #[command(flatten)]
        config: ConfigArg,
        #[command(flatten)]
        out: OutDir,
    },
    /// Mesh and report of the parallel front at distance delta.
    Parallel {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long, allow_negative_numbers = true)]
        delta: f64,
        #[command(flatten)]
        out: OutDir,
    },
    /// Curvature line through (t0, v0) as CSV, with its closure defect.
    Curvline {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        t0: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        v0: f64,
        #[arg(long, default_value_t = 1)]
        turns: usize,
        #[arg(long, default_value_t = 256)]
        samples_per_turn: usize,
        /// Write CSV here; the defect summary then goes to stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// List gallery entries or print the configuration of one.
    Gallery {
        #[arg(long, conflicts_with = "name")]
        list: bool,
        #[arg(long, required_unless_present = "list")]
        name: Option<String>,
        /// Parameters as JSON, e.g. '{"phi":0.5,"n":3}'.
        #[arg(long)]
        params: Option<String>,
    },
    /// Rewrite alpha (and beta, if nonzero) so the generator closes.
    Project {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

/// Runs the CLI with process stdout/stderr and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            return fail(stderr, &CliError::Usage(e.to_string().trim_end().to_string()));
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => fail(stderr, &e),
    }
}

fn fail(stderr: &mut dyn Write, e: &CliError) -> i32 {
    let _ = writeln!(stderr, "{}", serde_json::to_string(&e.to_json()).expect("error serialises"));
    match e {
        CliError::Usage(_) => 2,
        _ => 1,
    }
}

fn emit(stdout: &mut dyn Write, text: &str) -> Result<()> {
    stdout.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn write_outputs(
    q: &Quadruple,
    loaded: &Loaded,
    command: &str,
    derived: Option<Derived>,
    out: &Path,
    stdout: &mut dyn Write,
) -> Result<()> {
    let a = analyze(q, &loaded.config, command, derived)?;
    let mesh = build_mesh(&a.front, &loaded.config.grid, Some(&a.locus))?;
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let obj = out.join("front.obj");
    let report = out.join("report.json");
    export_obj(&mesh, &obj)?;
    write_file(&report, &report_json(&a.report))?;
    let summary = json!({ "obj": obj.display().to_string(), "report": report.display().to_string() });
    emit(stdout, &format!("{summary}\n"))
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::Build { config, out } => {
            let loaded = load_config(&config.config)?;
            write_outputs(&loaded.quadruple, &loaded, "build", None, &out.out, stdout)
        }
        Command::Check { config } => {
            let loaded = load_config(&config.config)?;
            check(&loaded, stdout)
        }
        Command::Singular { config, samples, out } => {
            let loaded = load_config(&config.config)?;
            let q = &loaded.quadruple;
            let r = singular_locus(q, samples.unwrap_or(q.grid()))?;
            let csv = singular_csv(&r);
            match out {
                Some(p) => write_file(&p, &csv),
                None => emit(stdout, &csv),
            }
        }
        Command::Caustic { config, out } => {
            let loaded = load_config(&config.config)?;
            let c = caustic(&loaded.quadruple)?;
            if c.degenerate_line {
                return Err(CliError::DegenerateCausticExport);
            }
            let derived =
                Derived { operation: "caustic".to_string(), delta: None, ruling_constant: Some(c.ruling_constant) };
            write_outputs(&c.quadruple, &loaded, "caustic", Some(derived), &out.out, stdout)
        }
        Command::Parallel { config, delta, out } => {
            let loaded = load_config(&config.config)?;
            let q = parallel(&loaded.quadruple, delta);
            let derived = Derived { operation: "parallel".to_string(), delta: Some(delta), ruling_constant: None };
            write_outputs(&q, &loaded, "parallel", Some(derived), &out.out, stdout)
        }
        Command::Curvline { config, t0, v0, turns, samples_per_turn, out } => {
            let loaded = load_config(&config.config)?;
            if turns == 0 || samples_per_turn == 0 {
                return Err(CliError::Usage("turns and samples-per-turn must be positive".to_string()));
            }
            let line = curvature_line(&loaded.quadruple, t0, v0, turns, samples_per_turn);
            let csv = curvline_csv(&line);
            let summary = json!({ "defect": line.defect, "closed": line.closed });
            match out {
                Some(p) => {
                    write_file(&p, &csv)?;
                    emit(stdout, &format!("{summary}\n"))
                }
                None => emit(stdout, &format!("{csv}# {summary}\n")),
            }
        }
        Command::Gallery { list, name, params } => {
            if list {
                let names = serde_json::to_string_pretty(&GALLERY_NAMES).expect("names serialise");
                return emit(stdout, &format!("{names}\n"));
            }
            let name = name.expect("clap requires --name without --list");
            let params: GalleryParams = match params {
                Some(p) => serde_json::from_str(&p)
                    .map_err(|e| CliError::Schema { key: "params".to_string(), message: e.to_string() })?,
                None => GalleryParams::default(),
            };
            let cfg = gallery_config(&name, params)?;
            emit(stdout, &config_json(&cfg))
        }
        Command::Project { config, out } => {
            let loaded = load_config(&config.config)?;
            let cfg = project(&loaded)?;
            let text = config_json(&cfg);
            match out {
                Some(p) => write_file(&p, &text),
                None => emit(stdout, &text),
            }
        }
    }
}

pub fn config_json(c: &Config) -> String {
    let mut s = serde_json::to_string_pretty(c).expect("config serialises");
    s.push('\n');
    s
}

/// Configuration whose `alpha` (and `beta`, when nonzero) satisfy the
/// period condition.
pub fn project(loaded: &Loaded) -> Result<Config> {
    let q = &loaded.quadruple;
    let mut cfg = loaded.config.clone();
    let (a, b) = if q.beta.max_coef() == 0.0 {
        (flatfront_core::frontal::project_period(&q.xi, &q.alpha)?, q.beta.clone())
    } else {
        project_period_joint(q)?
    };
    cfg.alpha = Some(SeriesConfig::from_series(&a.trimmed(1e-15)));
    if q.beta.max_coef() != 0.0 {
        cfg.beta = Some(SeriesConfig::from_series(&b.trimmed(1e-15)));
    }
    cfg.project_period = false;
    Ok(cfg)
}

fn check(loaded: &Loaded, stdout: &mut dyn Write) -> Result<()> {
    let q = &loaded.quadruple;
    let a = analyze(q, &loaded.config, "check", None)?;
    let r = &a.report;
    emit(stdout, &report_json(r))?;
    if r.completeness_error.is_some() {
        let defect = r.period_defect.norm();
        return Err(flatfront_core::Error::PeriodConditionViolated { defect }.into());
    }
    let c = r.completeness.expect("completeness computed when the period condition holds");
    let mut failed = Vec::new();
    if !c.is_front {
        failed.push("front".to_string());
    }
    if !c.complete {
        failed.push("complete".to_string());
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::CheckFailed { failed })
    }
}
