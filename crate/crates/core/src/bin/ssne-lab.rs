//! Batch runner for experiment configs.
//!
//! Exit codes: 0 clean, 1 a claim was falsified or a rate violated,
//! 2 config or I/O error.

use clap::{Args, Parser, Subcommand};
use ssne::experiment::{self, RunOptions};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ssne-lab", version, about = "Falsify modulus claims and tabulate certified rates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run falsifiers, iterations and rate checks; write the JSON report and CSVs.
    Run(Common),
    /// Tabulate the requested rates to CSV. No sampling, no iteration.
    #[command(name = "print-rates", alias = "print_rates")]
    PrintRates(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Overrides the falsifier seed of the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the falsifier trial count of the config.
    #[arg(long)]
    samples: Option<usize>,
    /// Output directory (default: config, then $SSNE_OUT_DIR, then ./ssne-out).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long)]
    quiet: bool,
}

impl Common {
    fn options(&self) -> RunOptions {
        RunOptions {
            seed: self.seed,
            samples: self.samples,
            out_dir: self.out.clone(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli.command {
        Command::Run(c) => match experiment::run(&c.config, &c.options()) {
            Ok((report, dir)) => {
                if !c.quiet {
                    for r in report.falsification.iter().filter(|r| r.falsified()) {
                        println!("FALSIFIED {} on {}: {}", r.claim, r.target, r.certificate);
                    }
                    if let Some(rates) = &report.rates {
                        for row in &rates.rows {
                            println!(
                                "eps={} sigma={} empirical={} {:?}",
                                row.epsilon,
                                row.certified_rate,
                                row.empirical_index.map_or("-".to_owned(), |i| i.to_string()),
                                row.verdict
                            );
                        }
                    }
                    println!(
                        "{} claims checked, {} falsified, {} rate violations; report in {}",
                        report.falsification.len(),
                        report.falsified_claims,
                        report.rate_violations,
                        dir.display()
                    );
                }
                ExitCode::from(report.outcome.exit_code() as u8)
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::PrintRates(c) => match experiment::print_rates(&c.config, &c.options()) {
            Ok((rows, path)) => {
                if !c.quiet {
                    for r in &rows {
                        println!("{} eps={} {}", r.quantity, r.epsilon, r.value);
                    }
                    println!("table written to {}", path.display());
                }
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
