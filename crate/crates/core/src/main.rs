use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kgua::harness::{parse_data, run_study, write_csv, Study, StudySpec};
use kgua::integrators::StepperKind;
use kgua::oracle::default_cache_dir;
use kgua::KgError;

#[derive(Parser)]
#[command(
    name = "kgua",
    about = "Uniformly accurate integrators for cubic Klein-Gordon: convergence studies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one study and write its CSV.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    study: String,
    /// Comma-separated scheme names; defaults depend on the study.
    #[arg(long, value_delimiter = ',')]
    scheme: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "1,10,100,1000")]
    c: Vec<f64>,
    /// Comma-separated steps, decreasing by powers of two.
    #[arg(long, value_delimiter = ',')]
    tau: Vec<f64>,
    #[arg(long, default_value_t = 128)]
    grid: usize,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    #[arg(long = "final-time", default_value_t = 1.0)]
    final_time: f64,
    #[arg(long, default_value_t = 1.0)]
    norm: f64,
    /// `smooth` or `rough:THETA`
    #[arg(long, default_value = "smooth")]
    data: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dealias: bool,
    #[arg(long)]
    jobs: Option<usize>,
    /// Reference cache directory (default `$KGUA_CACHE_DIR` or the temp dir).
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
    /// Print the resolved spec as JSON and exit.
    #[arg(long)]
    describe: bool,
}

fn build_spec(a: &RunArgs) -> kgua::Result<StudySpec> {
    let study: Study = a.study.parse()?;
    let mut spec = StudySpec::default_sweep(study);
    if !a.scheme.is_empty() {
        spec.schemes = a
            .scheme
            .iter()
            .map(|s| s.parse::<StepperKind>())
            .collect::<kgua::Result<_>>()?;
    }
    spec.c_values = a.c.clone();
    if !a.tau.is_empty() {
        spec.tau_values = a.tau.clone();
    } else if study == Study::NlsLimit {
        spec.tau_values = vec![1e-3];
    }
    spec.n = a.grid;
    spec.dim = a.dim;
    spec.final_time = a.final_time;
    spec.r = a.norm;
    spec.data = parse_data(&a.data, a.seed)?;
    spec.dealias = a.dealias;
    spec.out = a.out.clone();
    spec.jobs = a.jobs;
    Ok(spec)
}

fn run(a: RunArgs) -> kgua::Result<()> {
    let resolved = build_spec(&a)?.resolve()?;
    if a.describe {
        let json =
            serde_json::to_string(&resolved).map_err(|e| KgError::Validation(e.to_string()))?;
        println!("{json}");
        return Ok(());
    }
    let out = resolved.spec.out.clone().ok_or_else(|| {
        KgError::Validation("--out is required unless --describe is given".into())
    })?;
    let cache = (!a.no_cache).then(|| a.cache.clone().unwrap_or_else(default_cache_dir));
    let outcome = run_study(&resolved, cache.as_deref())?;
    for rec in &outcome.rejected {
        eprintln!(
            "below reference floor, dropped: {} c={} tau={:e} error={:e}",
            rec.scheme, rec.c, rec.tau, rec.error
        );
    }
    write_csv(&outcome.records, &out)?;
    eprintln!(
        "{} rows written to {}",
        outcome.records.len(),
        out.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let Command::Run(args) = Cli::parse().command;
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("kgua: {e}");
            ExitCode::from(match e {
                KgError::Validation(_) | KgError::InvalidParameter(_) | KgError::InvalidGrid(_) => {
                    2
                }
                KgError::ReferenceCheck(_) => 3,
                _ => 1,
            })
        }
    }
}
