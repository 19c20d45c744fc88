use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use sigmat::campaign::{verify, CampaignOptions};
use sigmat::catalog::{self, CatalogEntry};
use sigmat::psigmat::Analysis;
use sigmat::report::AnalysisReport;
use sigmat::sigma::SupersolubleReading;
use sigmat::{Error, Lattice, SigmaPartition, DEFAULT_ORDER_CAP};

#[derive(Parser)]
#[command(name = "sigmat", version, about = "Sigma-theory analysis of small finite groups")]
struct Cli {
    /// Largest group order accepted.
    #[arg(long, global = true, env = "SIGMAT_ORDER_CAP", default_value_t = DEFAULT_ORDER_CAP)]
    cap: usize,

    /// Reading of "pi-supersoluble" used for generalized Wielandt sigma-sets.
    #[arg(long, global = true, value_enum, default_value_t = Reading::ChiefFactors)]
    reading: Reading,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reading {
    /// Chief factors whose order meets pi have prime order.
    ChiefFactors,
    /// Supersoluble and every prime divisor of |G| lies in pi.
    WithinPi,
}

impl From<Reading> for SupersolubleReading {
    fn from(r: Reading) -> Self {
        match r {
            Reading::ChiefFactors => SupersolubleReading::ChiefFactorsMeetingPi,
            Reading::WithinPi => SupersolubleReading::SupersolubleWithinPi,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one group under one sigma-partition.
    Analyze {
        /// A group file path, or `builder:NAME` (e.g. builder:S4, builder:cyclic(12)).
        #[arg(long)]
        group: String,
        /// Sigma spec such as `3,5|*`, `2|3|*` or `sigma0`.
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the verification campaign over the bundled corpus.
    Verify {
        /// Comma-separated corpus keys; defaults to the whole corpus.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        /// File with one sigma spec per line (`#` comments allowed).
        #[arg(long)]
        sigma_list: Option<PathBuf>,
        /// Worker threads; defaults to the number of cores.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

fn fail(err: Error) -> ExitCode {
    eprintln!("error: {err}");
    match err {
        Error::OrderCapExceeded { .. } => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn usage(msg: String) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn load_group(source: &str, cap: usize) -> Result<(String, Lattice), ExitCode> {
    let (key, group) = if let Some(name) = source.strip_prefix("builder:") {
        (name.to_string(), catalog::build(name).map_err(fail)?)
    } else {
        let text = std::fs::read_to_string(source).map_err(|e| usage(format!("{source}: {e}")))?;
        (source.to_string(), catalog::parse_group_file(&text, cap).map_err(fail)?)
    };
    let lat = Lattice::with_cap(Arc::new(group), cap).map_err(fail)?;
    Ok((key, lat))
}

fn read_sigma_list(path: &PathBuf) -> Result<Vec<SigmaPartition>, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| catalog::parse_sigma_spec(l).map_err(fail))
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    let reading = cli.reading.into();
    match cli.command {
        Command::Analyze { group, sigma, json } => {
            let sigma = catalog::parse_sigma_spec(&sigma).map_err(fail)?;
            let (key, lat) = load_group(&group, cli.cap)?;
            let report = AnalysisReport::build(&key, &Analysis::with_reading(&lat, &sigma, reading));
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            Ok(if report.falsification { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Verify { only, sigma_list, jobs, json } => {
            let sigmas = match &sigma_list {
                Some(p) => read_sigma_list(p)?,
                None => catalog::default_sigma_specs(),
            };
            let keys = only.unwrap_or_else(catalog::corpus_keys);
            let entries: Vec<CatalogEntry> = keys
                .iter()
                .map(|k| k.trim())
                .filter(|k| !k.is_empty())
                .map(|k| catalog::entry(k).map_err(fail))
                .collect::<Result<_, _>>()?;
            let opts = CampaignOptions { jobs, reading, cap: cli.cap };
            let summary = verify(&entries, &sigmas, &opts).map_err(fail)?;
            if json {
                println!("{}", summary.to_json());
            } else {
                print!("{}", summary.to_text());
            }
            Ok(if summary.is_clean() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(cli).unwrap_or_else(|code| code)
}
