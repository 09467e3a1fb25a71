use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use belief_ess::definition::{parse_game, parse_hawk_dove_flag, StrategySpec};
use belief_ess::{AnyStrategy, Game};
use clap::{Args, Parser, Subcommand};

/// Evolutionarily stable strategies for symmetric two-strategy games.
#[derive(Debug, Parser)]
#[command(name = "belief-ess", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the report (or the trajectory, for `simulate`) to this file.
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find pure, mixed and belief ESS of a game.
    Solve {
        #[command(flatten)]
        game: GameArgs,
        /// Half-width of the belief interval around the mixed ESS.
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        #[arg(long, default_value_t = 1e-9, value_parser = positive)]
        tol: f64,
        /// Also test the belief ESS against mixed invaders p = 0.01..0.99.
        #[arg(long)]
        sweep: bool,
    },
    /// Check a resident strategy against invaders.
    Verify {
        #[command(flatten)]
        game: GameArgs,
        /// Resident strategy: pure=<label>, mixed=<p>, belief=<a>,<b> or @file.toml.
        #[arg(long, value_name = "SPEC")]
        strategy: String,
        /// Invader strategy (repeatable); defaults to both pure strategies.
        #[arg(long, value_name = "SPEC")]
        invader: Vec<String>,
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 1e-9, value_parser = positive)]
        tol: f64,
    },
    /// Expected payoff of one strategy against another.
    Payoff {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_name = "SPEC")]
        row: String,
        #[arg(long, value_name = "SPEC")]
        col: String,
        /// Also estimate by Monte Carlo with this many samples.
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
        mc: Option<u64>,
        #[command(flatten)]
        rng: RngArgs,
    },
    /// Replicator-dynamics invasion of a resident by a rare mutant.
    Simulate {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_name = "SPEC")]
        resident: String,
        #[arg(long, value_name = "SPEC")]
        mutant: String,
        /// Initial mutant share, in (0, 0.5).
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long, default_value_t = 100_000)]
        max_steps: usize,
        /// Record every n-th step in the trajectory.
        #[arg(long, default_value_t = 1)]
        stride: usize,
        /// Estimate encounter payoffs by Monte Carlo with this many samples.
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
        sampled: Option<u64>,
        #[command(flatten)]
        rng: RngArgs,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GameArgs {
    /// TOML game definition.
    #[arg(long, value_name = "PATH")]
    pub game: Option<PathBuf>,
    /// Inline Hawk-Dove game, e.g. V=2,C=4.
    #[arg(long, value_name = "V=..,C=..")]
    pub hawk_dove: Option<String>,
}

#[derive(Debug, Args)]
pub struct RngArgs {
    #[arg(long, env = "BELIEF_ESS_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,
}

impl GameArgs {
    pub fn load(&self) -> Result<Game> {
        match (&self.game, &self.hawk_dove) {
            (Some(path), _) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("cannot read game file {}", path.display()))?;
                parse_game(&text).with_context(|| format!("invalid game file {}", path.display()))
            }
            (None, Some(flag)) => {
                let params = parse_hawk_dove_flag(flag).context("invalid --hawk-dove")?;
                Ok(Game::hawk_dove(params)?)
            }
            (None, None) => unreachable!("clap requires a game source"),
        }
    }
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be a positive number".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Parses a strategy flag, reading `@path` arguments as TOML files.
pub fn strategy(game: &Game, arg: &str) -> Result<AnyStrategy> {
    let spec = match arg.strip_prefix('@') {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read strategy file {path}"))?;
            StrategySpec::from_toml(&text)
                .with_context(|| format!("invalid strategy file {path}"))?
        }
        None => arg
            .parse()
            .with_context(|| format!("invalid strategy {arg:?}"))?,
    };
    spec.resolve(game)
        .with_context(|| format!("invalid strategy {arg:?}"))
}
