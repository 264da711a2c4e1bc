use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use beauville_core::beauville::{Family, Regime};
use beauville_core::{Spherical, DEFAULT_BUDGET};

mod commands;
mod output;

#[derive(Parser, Debug)]
#[command(
    name = "beauville",
    version,
    about = "Verifier for mixed Beauville structures on the 2-groups G_k ⊃ H_k"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Maximum number of elements any enumeration may reach.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Directory for enumerated-group cache files.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Report wall-clock times (output is then no longer reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A single level or a range of levels.
#[derive(Args, Debug, Clone)]
pub struct Levels {
    /// Truncation level.
    #[arg(long, conflicts_with = "k_max")]
    k: Option<usize>,

    /// Run every level from --k-min up to this one.
    #[arg(long)]
    k_max: Option<usize>,

    /// First level of a --k-max range.
    #[arg(long, default_value_t = 3, requires = "k_max")]
    k_min: usize,
}

impl Levels {
    fn resolve(&self) -> anyhow::Result<Vec<usize>> {
        let ks: Vec<usize> = match (self.k, self.k_max) {
            (Some(k), _) => vec![k],
            (None, Some(hi)) => (self.k_min..=hi).collect(),
            (None, None) => anyhow::bail!("give --k or --k-max"),
        };
        if ks.is_empty() {
            anyhow::bail!("empty level range {}..={}", self.k_min, self.k_max.unwrap_or(0));
        }
        if ks.contains(&0) {
            anyhow::bail!("levels start at 1");
        }
        Ok(ks)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check conditions (A), (B) with g0 = x2, (C) and optionally (B') on u_k.
    Verify {
        #[command(flatten)]
        levels: Levels,
        /// Also run the full (B') sweep over G_k \ H_k.
        #[arg(long)]
        bprime: bool,
    },
    /// Orders of G_k and growth ratios.
    Orders {
        #[arg(long, default_value_t = 7)]
        k_max: usize,
    },
    /// Classify the powers of x0, x1, x, y0, y1, y.
    Powers {
        /// One of x0, x1, x, y0, y1, y (default: all).
        #[arg(long)]
        gen: Option<Spherical>,
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
    /// Conjugation schemes of the second non-trivial diagonal.
    Schemes {
        /// One of x,y | x0,y0 | x1,y1 (default: all).
        #[arg(long)]
        pair: Option<Family>,
        /// One of base | cube | odd-two-power | even-two-power (default: all).
        #[arg(long)]
        regime: Option<Regime>,
    },
    /// Invariants of the surface S(u_k).
    Surface {
        #[command(flatten)]
        levels: Levels,
    },
    /// Homomorphism extension checks for the reality question.
    Homcheck {
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Check ψ: x0 ↦ x0⁻¹, x1 ↦ x1⁻¹, x2 ↦ x0⁻¹ x2 x0 on G_k.
        #[arg(long)]
        psi: bool,
        /// Check the six candidate image pairs on H_k.
        #[arg(long)]
        pairs: bool,
    },
    /// Sizes of the Σ-sets and their cross intersections.
    Sigma {
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Verify { levels, bprime } => levels.resolve().and_then(|ks| commands::verify(&cli, &ks, *bprime)),
        Command::Orders { k_max } => commands::orders(&cli, *k_max),
        Command::Powers { gen, k } => commands::powers(&cli, *gen, *k),
        Command::Schemes { pair, regime } => commands::schemes(&cli, *pair, *regime),
        Command::Surface { levels } => levels.resolve().and_then(|ks| commands::surface(&cli, &ks)),
        Command::Homcheck { k, psi, pairs } => commands::homcheck(&cli, *k, *psi, *pairs),
        Command::Sigma { k } => commands::sigma_sizes(&cli, *k),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
