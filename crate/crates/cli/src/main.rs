use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use lietorus::config::{parse_box, RunConfig};
use lietorus::loopmod::{verify_classification_instance, Verdict};
use lietorus::selftest::{builtin_matrix, run_selftest, Instance};

const EXIT_ERROR: u8 = 1;

#[derive(Parser)]
#[command(name = "lietorus", version, about = "Graded Lie tori and their level-zero integrable modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct Common {
    /// Run configuration (JSON).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory for report files.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Write the algebra and torus description.
    Build {
        #[command(flatten)]
        common: Common,
    },
    /// Check the Lie torus axioms.
    CheckTorus {
        #[command(flatten)]
        common: Common,
    },
    /// Run the classification pipeline and decompose the loop module.
    Decompose {
        #[command(flatten)]
        common: Common,
        /// Degree box, e.g. `-4:4` or `-2:2,0:3`.
        #[arg(long = "box", allow_hyphen_values = true)]
        bounds: Option<String>,
        /// Largest box radius tried when the window is inconclusive.
        #[arg(long)]
        escalate: Option<i64>,
    },
    /// Run the invariant suite on the instance matrix.
    Selftest {
        #[command(flatten)]
        common: Common,
        /// Corrupt one structure constant of every instance.
        #[arg(long)]
        inject_fault: bool,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] lietorus::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Pass => 0,
        Verdict::Fail => 2,
        Verdict::Inconclusive => 3,
    }
}

fn load_config(common: &Common) -> Result<RunConfig, CliError> {
    let path = common.config.as_ref().ok_or_else(|| CliError::Usage("--config is required".into()))?;
    Ok(RunConfig::from_path(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?)
}

/// Writes through a temporary file in the same directory and renames it into place.
fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let err = |path: PathBuf| move |source| CliError::Write { path, source };
    std::fs::create_dir_all(dir).map_err(err(dir.to_path_buf()))?;
    let target = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    std::fs::write(&tmp, contents).map_err(err(tmp.clone()))?;
    std::fs::rename(&tmp, &target).map_err(err(target.clone()))?;
    Ok(())
}

fn emit(common: &Common, stem: &str, json_text: &str, text: &str) -> Result<(), CliError> {
    match common.format {
        Format::Json => println!("{json_text}"),
        Format::Text => print!("{text}"),
    }
    if let Some(dir) = &common.out {
        write_atomic(dir, &format!("{stem}.json"), &format!("{json_text}\n"))?;
        write_atomic(dir, &format!("{stem}.txt"), text)?;
    }
    Ok(())
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn cmd_build(common: &Common) -> Result<u8, CliError> {
    let cfg = load_config(common)?;
    cfg.validate()?;
    let torus = cfg.torus()?;
    let algebra = torus.g.to_json();
    let gamma: Vec<Vec<i64>> = (0..torus.n())
        .map(|i| (0..torus.n()).map(|j| if i == j { torus.m()[i] as i64 } else { 0 }).collect())
        .collect();
    let mut desc = json!({
        "algebra": torus.g.rs.label(),
        "dim": torus.g.dim(),
        "n": torus.n(),
        "m": torus.m(),
        "gamma": {"hnf": gamma, "index": torus.m().iter().map(|&x| x as u64).product::<u64>()},
        "piece_dims": torus.grading.dims(),
        "sigma": cfg.sigma,
    });
    if !cfg.lambda.is_empty() {
        desc["module"] = serde_json::to_value(cfg.module(&torus)?.to_json(&torus)).expect("serializable");
    }
    let text = format!(
        "{} of dimension {}, n = {}, orders {:?}, piece dimensions {:?}\n",
        torus.g.rs.label(),
        torus.g.dim(),
        torus.n(),
        torus.m(),
        torus.grading.dims()
    );
    let desc_text = pretty(&desc);
    match common.format {
        Format::Json => println!("{desc_text}"),
        Format::Text => print!("{text}"),
    }
    if let Some(dir) = &common.out {
        write_atomic(dir, "algebra.json", &format!("{}\n", pretty(&algebra)))?;
        write_atomic(dir, "torus.json", &format!("{desc_text}\n"))?;
    }
    Ok(0)
}

fn cmd_check_torus(common: &Common) -> Result<u8, CliError> {
    let cfg = load_config(common)?;
    let torus = cfg.torus()?;
    let rep = torus.report();
    let mut text = format!("{} with orders {:?}: ", rep.algebra, rep.orders);
    match rep.failed_axiom {
        None => text.push_str("Lie torus, all axioms pass\n"),
        Some(a) => text.push_str(&format!("not a Lie torus, axiom ({a}) fails\n")),
    }
    for (k, a) in [(1, &rep.axiom1), (2, &rep.axiom2), (3, &rep.axiom3)] {
        text.push_str(&format!("  axiom ({k}) {}: {}\n", if a.passed { "pass" } else { "fail" }, a.message));
    }
    emit(common, "check_torus", &pretty(rep), &text)?;
    Ok(verdict_code(Verdict::from_bool(rep.passed)))
}

fn cmd_decompose(common: &Common, bounds: Option<&str>, escalate: Option<i64>) -> Result<u8, CliError> {
    let cfg = load_config(common)?;
    let bounds = bounds.map(parse_box).transpose()?;
    if escalate.is_some_and(|e| e < 1) {
        return Err(CliError::Usage("--escalate must be positive".into()));
    }
    let rep = verify_classification_instance(&cfg, bounds, escalate)?;
    emit(common, "decompose", &rep.to_json_string(), &rep.to_text())?;
    Ok(verdict_code(rep.overall))
}

fn cmd_selftest(common: &Common, inject_fault: bool) -> Result<u8, CliError> {
    let matrix: Vec<Instance> = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        }
        None => builtin_matrix(),
    };
    let rep = run_selftest(&matrix, inject_fault);
    for w in &rep.warnings {
        eprintln!("warning: {w}");
    }
    emit(common, "selftest", &rep.to_json_string(), &rep.to_text())?;
    Ok(verdict_code(rep.overall))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Build { common } => cmd_build(common),
        Command::CheckTorus { common } => cmd_check_torus(common),
        Command::Decompose { common, bounds, escalate } => cmd_decompose(common, bounds.as_deref(), *escalate),
        Command::Selftest { common, inject_fault } => cmd_selftest(common, *inject_fault),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
