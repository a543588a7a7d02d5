use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use valext::cli::{self, selftest, Format, RunOptions};

#[derive(Parser)]
#[command(name = "valext", version, about = "Valuations on K(x) and generalized power series, with checkable certificates")]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the jobs in a job file.
    Run {
        job: PathBuf,
        /// Overrides the depth of every job.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
        /// Accepted for symmetry with `selftest`; jobs are deterministic.
        #[arg(long)]
        seed: Option<u64>,
        /// Where to write the report; batches get one file per job.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Re-validate a certificate file.
    Recheck {
        cert: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Seeded randomized invariant checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Multiplies the number of cases per suite.
        #[arg(long, default_value_t = 1)]
        scale: usize,
    },
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match args.cmd {
        Cmd::Run { job, depth, text, output, .. } => {
            let format = if text { Format::Text } else { Format::Json };
            let (c, out) = cli::run_file(&job, &RunOptions { depth, base_dir: None }, format, output.as_deref());
            print!("{out}");
            code(c)
        }
        Cmd::Recheck { cert, json } => match cli::recheck_file(&cert) {
            Ok(o) => {
                if json {
                    print!("{}", cli::render_json(&o.report));
                } else {
                    println!("{}", o.text);
                }
                code(if o.passed { cli::EXIT_OK } else { cli::EXIT_DOMAIN })
            }
            Err(e) => {
                eprint!("{}", cli::render_error(&e, if json { Format::Json } else { Format::Text }));
                code(e.exit_code())
            }
        },
        Cmd::Selftest { seed, scale } => {
            let results = selftest::run_all(seed, scale.max(1));
            let mut ok = true;
            for r in &results {
                ok &= r.passed();
                println!("{:<26} {:>5} cases {:>4} skipped  {}", r.name, r.cases, r.skipped, if r.passed() { "PASS" } else { "FAIL" });
                for f in &r.failures {
                    println!("    {f}");
                }
            }
            code(if ok { cli::EXIT_OK } else { cli::EXIT_DOMAIN })
        }
    }
}
