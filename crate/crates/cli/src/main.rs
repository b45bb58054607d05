use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gpf_cli::output::{write_reports, write_sharpness_csv, write_summary_csv};
use gpf_cli::{run_campaign, sharpness_grid, CampaignConfig, CliError, ReportFormat};
use gpf_core::inequalities::sharpness_scan;
use gpf_core::{gpf_left, FractionalParams, FunctionSpec, QuadConfig};
use log::info;

/// Generalized proportional fractional integrals and verification of
/// Chebyshev / Pólya–Szegő type inequalities.
///
/// Exit codes: 0 success, 1 numerical failure, 2 a campaign found a
/// violation, 3 invalid input or unwritable output.
/// Log verbosity is read from GPF_INEQ_LOG (off, info, debug).
#[derive(Parser)]
#[command(name = "gpf-ineq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification campaign described by a JSON config file.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Report file (overrides the config; standard output if neither is set).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<ReportFormat>,
        /// Worker threads (overrides the config).
        #[arg(long)]
        workers: Option<usize>,
        /// Generator seed (overrides the config).
        #[arg(long)]
        seed: Option<u64>,
        /// Relative margin tolerance (overrides the config).
        #[arg(long)]
        tol: Option<f64>,
        /// Per-inequality summary CSV (overrides the config).
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Evaluate the left GPF integral of one function at x.
    Eval {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        x: f64,
        /// Function descriptor, e.g. "poly:1,0.5" or "step:0.5@0.5,1.5".
        #[arg(long = "function", short = 'f', allow_hyphen_values = true)]
        function: String,
        /// Relative tolerance of the quadrature.
        #[arg(long, default_value_t = QuadConfig::default().rel_tol)]
        rel_tol: f64,
    },
    /// Ratio of the Chebyshev functional to the Grüss bound for the
    /// half-interval step function, on an even grid of ε.
    Sharpness {
        #[arg(long, default_value_t = 9)]
        count: usize,
        #[arg(long, default_value_t = 0.1)]
        eps_min: f64,
        #[arg(long, default_value_t = 0.9)]
        eps_max: f64,
        /// CSV output file (standard output if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("GPF_INEQ_LOG", "off")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(format!("cannot create {}", path.display()), e))
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Verify {
            config,
            out,
            format,
            workers,
            seed,
            tol,
            summary,
        } => {
            let mut cfg = CampaignConfig::load(&config)?;
            if let Some(seed) = seed {
                cfg.generator.seed = seed;
            }
            if let Some(tol) = tol {
                cfg.tol = tol;
            }
            if let Some(w) = workers {
                cfg.workers = Some(w);
            }
            cfg.output.path = out.or(cfg.output.path);
            cfg.output.format = format.unwrap_or(cfg.output.format);
            cfg.output.summary_csv = summary.or(cfg.output.summary_csv);
            cfg.validate()?;

            let workers = cfg
                .workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            // Open outputs before the run so an unwritable path fails fast.
            let mut reports_out = sink(cfg.output.path.as_deref())?;
            let summary_out = cfg.output.summary_csv.as_deref().map(create).transpose()?;

            let outcome = run_campaign(&cfg, workers)?;
            write_reports(&mut reports_out, &outcome.reports, cfg.output.format)?;
            if let Some(s) = summary_out {
                write_summary_csv(s, &outcome.reports)?;
            }
            let text = serde_json::to_string_pretty(&outcome.summary)
                .map_err(|e| CliError::Config(format!("serializing summary: {e}")))?;
            eprintln!("{text}");
            Ok(outcome.summary.exit_code() as u8)
        }
        Command::Eval {
            alpha,
            p,
            x,
            function,
            rel_tol,
        } => {
            let params = FractionalParams::new(alpha, p)?;
            let f = FunctionSpec::parse_integrand(&function, x)?;
            let cfg = QuadConfig {
                rel_tol,
                ..QuadConfig::default()
            };
            cfg.validate()?;
            let result = gpf_left(params, &f, x, &cfg)?;
            info!("eval {f} at x = {x}: {} nodes", result.nodes_used);
            let text =
                serde_json::to_string(&result).map_err(|e| CliError::Config(format!("serializing result: {e}")))?;
            println!("{text}");
            Ok(0)
        }
        Command::Sharpness {
            count,
            eps_min,
            eps_max,
            out,
        } => {
            let grid = sharpness_grid(count, eps_min, eps_max)?;
            let mut w = sink(out.as_deref())?;
            let points = sharpness_scan(&grid)?;
            write_sharpness_csv(&mut w, &points)?;
            Ok(0)
        }
    }
}
