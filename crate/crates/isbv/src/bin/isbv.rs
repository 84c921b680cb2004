//! Thin command-line wrapper over the library driver.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use isbv::cli::{self, FieldChoice, ReportFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "isbv",
    version,
    about = "Exact verification of involution surface bundle local models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Additional model files to load alongside the builtin registry
    #[arg(long = "model-file", value_name = "PATH")]
    model_files: Vec<PathBuf>,
    /// Coefficient field for the symbolic checks: Q or p:<prime>[,<prime>...]
    #[arg(long, default_value = "Q")]
    field: String,
    /// S-pair reduction cap per basis computation
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// Random seed for sampled scans
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Disable the on-disk basis cache
    #[arg(long)]
    no_cache: bool,
    /// Audit mode: recompute on every cache hit and compare
    #[arg(long)]
    cache_audit: bool,
    /// Override the cache directory (also via ISBV_CACHE)
    #[arg(long, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List registry entries with claim summaries
    List {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run verification checks and write a report
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        /// Models to verify (repeatable); default all
        #[arg(long = "model", value_name = "NAME")]
        models: Vec<String>,
        /// Verify every model (the default when no --model is given)
        #[arg(long)]
        all: bool,
        /// Comma-separated check names (relations,span,freeness,flatness,singular,identities,counts)
        #[arg(long, value_name = "LIST")]
        checks: Option<String>,
        /// Highest degree for fiber Hilbert values
        #[arg(long, default_value_t = 3)]
        dmax: u32,
        /// Worker threads for (model, check) tasks; 0 = library default
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write the rendered report to this path
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
        /// Report format
        #[arg(long, default_value = "json", value_parser = ["json", "markdown"])]
        format: String,
        /// Count skipped (budget-limited) checks as acceptable
        #[arg(long)]
        allow_skip: bool,
        /// Test-only model mutation, e.g. drop-row:7
        #[arg(long, value_name = "SPEC")]
        mutate: Option<String>,
        /// Include wall-clock data in the report (breaks byte reproducibility)
        #[arg(long)]
        timings: bool,
    },
    /// Re-derive the constrained relation space and diff it against the table
    Derive {
        #[command(flatten)]
        common: CommonOpts,
        /// Model name
        model: String,
        /// Form degree in the projective coordinates
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Count rational points or list singular points over one prime
    Enumerate {
        #[command(flatten)]
        common: CommonOpts,
        /// Model name
        model: String,
        /// The prime (odd)
        #[arg(long)]
        p: u64,
        /// Fix the base point, e.g. --base 1,1
        #[arg(long, value_name = "COORDS")]
        base: Option<String>,
        /// Report singular points instead of counts
        #[arg(long)]
        singular_only: bool,
    },
}

fn run_config(common: &CommonOpts) -> Result<RunConfig, String> {
    Ok(RunConfig {
        field: FieldChoice::parse(&common.field)?,
        budget: common.budget,
        seed: common.seed,
        no_cache: common.no_cache,
        cache_audit: common.cache_audit,
        cache_dir: common.cache_dir.clone(),
        model_files: common.model_files.clone(),
        ..RunConfig::default()
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::List { common } => {
            let config = run_config(&common)?;
            let out = cli::cmd_list(&config).map_err(|e| e.to_string())?;
            print!("{}", out);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            common,
            models,
            all: _,
            checks,
            dmax,
            jobs,
            report,
            format,
            allow_skip,
            mutate,
            timings,
        } => {
            let mut config = run_config(&common)?;
            config.models = models;
            config.checks = checks
                .map(|c| c.split(',').map(|s| s.trim().to_string()).collect())
                .unwrap_or_default();
            config.dmax = dmax;
            config.jobs = jobs;
            config.allow_skip = allow_skip;
            config.mutate = mutate;
            config.timings = timings;
            config.format = match format.as_str() {
                "markdown" => ReportFormat::Markdown,
                _ => ReportFormat::Json,
            };
            let (result, rendered) = cli::cmd_verify(&config).map_err(|e| e.to_string())?;
            match report {
                Some(path) => {
                    std::fs::write(&path, &rendered)
                        .map_err(|e| format!("write {}: {}", path.display(), e))?;
                    for r in &result.results {
                        println!("{:16} {:12} {}", r.model, r.check, r.status.as_str());
                    }
                }
                None => print!("{}", rendered),
            }
            eprintln!(
                "summary: {} pass, {} fail, {} skipped",
                result.pass, result.fail, result.skipped
            );
            if result.overall_pass(config.allow_skip) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Derive {
            common,
            model,
            degree,
        } => {
            let config = run_config(&common)?;
            let out = cli::cmd_derive(&config, &model, degree).map_err(|e| e.to_string())?;
            print!("{}", out);
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate {
            common,
            model,
            p,
            base,
            singular_only,
        } => {
            let config = run_config(&common)?;
            let base = match base {
                None => None,
                Some(text) => {
                    let coords: Result<Vec<u64>, _> =
                        text.split(',').map(|t| t.trim().parse()).collect();
                    Some(coords.map_err(|e| format!("bad base point: {}", e))?)
                }
            };
            let out = cli::cmd_enumerate(&config, &model, p, base, singular_only)
                .map_err(|e| e.to_string())?;
            print!("{}", out);
            Ok(ExitCode::SUCCESS)
        }
    }
}
