use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use waring_cli::config::parse_size;
use waring_cli::{commands, CliError, Config};

#[derive(Parser)]
#[command(name = "waring", version, about = "Sums of exactly j positive k-th powers")]
struct Cli {
    /// Config file (key = value lines). Defaults to $WARING_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Memory cap, e.g. 512M or 8G.
    #[arg(long, global = true)]
    ram_cap: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the (j,k) sieve below LIMIT and write it to disk.
    Sieve {
        #[arg(short)]
        k: u32,
        #[arg(short)]
        j: u32,
        #[arg(long)]
        limit: u64,
        /// Output path; defaults to a file in the configured cache directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print B_j^k below LIMIT, or the tail against a base set with --base.
    Bset {
        #[arg(short)]
        k: u32,
        #[arg(short)]
        j: u32,
        #[arg(long)]
        limit: u64,
        /// File with the stabilized set, one integer per line.
        #[arg(long)]
        base: Option<PathBuf>,
    },
    /// Advance j until the stabilization test passes.
    Stabilize {
        #[arg(short)]
        k: u32,
        #[arg(long)]
        limit: u64,
        #[arg(long, default_value_t = 64)]
        jmax: u32,
    },
    /// Find a representation of N as a sum of J positive K-th powers.
    Repr {
        n: u64,
        #[arg(short)]
        j: u32,
        #[arg(short)]
        k: u32,
        /// Prune with small-j sieves.
        #[arg(long)]
        prune: bool,
        #[arg(long)]
        parallel: bool,
        /// Node budget for the search.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Search (LO, HI) for n* candidates and verify them.
    Nstar {
        #[arg(short)]
        k: u32,
        #[arg(short)]
        d: u32,
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        #[arg(long)]
        jmax: Option<u32>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Heuristic model queries.
    Heur {
        #[command(subcommand)]
        query: Heur,
    },
    /// Compare an OEIS b-file with the computed complement below LIMIT.
    VerifyOeis {
        bfile: PathBuf,
        #[arg(short)]
        k: u32,
        #[arg(short)]
        j: u32,
        #[arg(long)]
        limit: u64,
        /// Compare against sums of at most J powers instead of exactly J.
        #[arg(long)]
        at_most: bool,
    },
}

#[derive(Subcommand)]
enum Heur {
    /// V(j,k) by quadrature or Monte Carlo.
    Volume {
        #[arg(short)]
        j: u32,
        #[arg(short)]
        k: u32,
        #[arg(long)]
        monte_carlo: bool,
        #[command(flatten)]
        num: Numerics,
    },
    /// Density of j-part representations at N.
    Density {
        #[arg(long)]
        n: f64,
        #[arg(short)]
        j: u32,
        #[arg(short)]
        k: u32,
        #[command(flatten)]
        num: Numerics,
    },
    /// Expected number of coincidences above B for the listed part counts.
    Expect {
        #[arg(long)]
        b: f64,
        #[arg(short)]
        k: u32,
        /// Comma-separated part counts, e.g. 2,3,4.
        #[arg(long, value_delimiter = ',', required = true)]
        js: Vec<u32>,
        #[command(flatten)]
        num: Numerics,
    },
}

#[derive(Args)]
struct Numerics {
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
}

impl Numerics {
    fn apply(&self, cfg: &mut Config) {
        if let Some(t) = self.tol {
            cfg.tolerance = t;
        }
        if let Some(s) = self.samples {
            cfg.samples = s;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
    }
}

fn run(cli: Cli) -> Result<commands::Report, CliError> {
    let mut cfg = Config::resolve(cli.config.as_deref())?;
    if let Some(cap) = &cli.ram_cap {
        cfg.ram_cap_bytes = parse_size(cap)?;
    }
    match cli.command {
        Command::Sieve { k, j, limit, out } => commands::sieve(&cfg, k, j, limit, out.as_deref()),
        Command::Bset { k, j, limit, base } => commands::bset(&cfg, k, j, limit, base.as_deref()),
        Command::Stabilize { k, limit, jmax } => commands::stabilize(&cfg, k, limit, jmax),
        Command::Repr { n, j, k, prune, parallel, budget } => {
            if let Some(b) = budget {
                cfg.node_budget = b;
            }
            commands::repr(&cfg, n, j, k, prune, parallel)
        }
        Command::Nstar { k, d, lo, hi, jmax, budget } => {
            if let Some(b) = budget {
                cfg.node_budget = b;
            }
            commands::nstar(&cfg, k, d, lo, hi, jmax)
        }
        Command::Heur { query } => match query {
            Heur::Volume { j, k, monte_carlo, num } => {
                num.apply(&mut cfg);
                if monte_carlo && num.tol.is_none() {
                    // a standard error this small needs far more samples than the default
                    cfg.tolerance = 1e-3;
                }
                commands::heur_volume(&cfg, j, k, monte_carlo)
            }
            Heur::Density { n, j, k, num } => {
                num.apply(&mut cfg);
                commands::heur_density(&cfg, n, j, k)
            }
            Heur::Expect { b, k, js, num } => {
                num.apply(&mut cfg);
                commands::heur_expect(&cfg, b, k, &js)
            }
        },
        Command::VerifyOeis { bfile, k, j, limit, at_most } => {
            commands::verify_oeis(&cfg, &bfile, k, j, limit, at_most)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            let out = report.render(json);
            print!("{out}");
            if json {
                println!();
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
