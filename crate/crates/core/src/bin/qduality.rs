use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qduality::cli::{alpha_report, beta_for_config, parse_config, run, write_report, CliError, Mode, RunConfig};
use qduality::report::{ResidualReport, Status};

#[derive(Parser)]
#[command(
    name = "qduality",
    version,
    about = "Check duality identities for basic hypergeometric series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep or fixed case described by a config file.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the five worked examples.
    Examples {
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the beta table for the fixed parameters of a config.
    Beta {
        #[arg(long)]
        config: PathBuf,
    },
    /// Check the terminating identity for alpha_k on the fixed parameters of a config.
    Alpha {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
}

fn summarize(label: &str, report: &ResidualReport) {
    let s = &report.summary;
    println!(
        "{label}: {} cases, {} pass, {} fail, {} ill-conditioned, max residual {:.3e}, {:.2} s",
        report.cases.len(),
        s.n_pass,
        s.n_fail,
        s.n_flagged,
        report.max_residual(),
        s.wall_time
    );
    for case in report.cases.iter().filter(|c| c.status == Status::Fail) {
        println!(
            "  FAIL case {} ({}): residual {:.3e}{}",
            case.case_id,
            case.check,
            case.max_residual,
            case.note.as_deref().map(|n| format!(", {n}")).unwrap_or_default()
        );
    }
}

fn finish(config: &RunConfig, report: &ResidualReport) -> Result<ExitCode, CliError> {
    let label = report.cases.first().map_or("run", |c| c.check.as_str());
    summarize(label, report);
    if let Some(path) = &config.output {
        let lines = write_report(report, path)?;
        println!("report: {} and {}", path.display(), lines.display());
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main_inner(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Verify {
            config,
            samples,
            seed,
            tol,
            out,
        } => {
            let mut config = parse_config(&config)?;
            config.samples = samples.unwrap_or(config.samples);
            config.seed = seed.unwrap_or(config.seed);
            config.tol = tol.unwrap_or(config.tol);
            config.output = out.or(config.output);
            let report = run(&config)?;
            finish(&config, &report)
        }
        Command::Examples { tol, out } => {
            let mut config = RunConfig::new(Mode::Examples);
            config.tol = tol;
            config.output = out;
            let report = run(&config)?;
            finish(&config, &report)
        }
        Command::Beta { config } => {
            let config = parse_config(&config)?;
            let table = beta_for_config(&config)?;
            println!("{:>4}  {:>24}  {:>24}", "k", "re", "im");
            for (k, b) in table.iter() {
                println!("{k:>4}  {:>24.16e}  {:>24.16e}", b.re, b.im);
            }
            if table.is_empty() {
                println!("(empty support)");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Alpha { config, k } => {
            let config = parse_config(&config)?;
            let report = alpha_report(&config, k)?;
            let sample = &report.cases[0].samples;
            if let Some(s) = sample.first() {
                println!("alpha_{k}: series side {:?}, residue side {:?}", s.lhs, s.rhs);
            }
            finish(&config, &report)
        }
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
