//! `belief-ess`: solve, verify, price and simulate ESS from the command line.
//!
//! Exit status is 0 on success, 1 on any input error, and 2 when `solve`
//! finds no ESS or `verify` finds the resident invadable.

mod args;
mod render;

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use belief_ess::dynamics::{EncounterMode, InvasionConfig};
use belief_ess::ess::{ClassifyOptions, Verification};
use belief_ess::{
    classify_with, expected_payoff, invader_sweep, invasion_experiment_with,
    mc_expected_payoff_parallel, verify_ess, Game,
};
use clap::Parser;
use serde::Serialize;

use args::{Cli, Command};

/// Exit status for a completed run that found no ESS / an invadable resident.
const NEGATIVE: u8 = 2;

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct GameView<'a> {
    labels: &'a [String; 2],
    payoffs: &'a [[f64; 2]; 2],
}

impl<'a> From<&'a Game> for GameView<'a> {
    fn from(g: &'a Game) -> Self {
        Self {
            labels: g.labels(),
            payoffs: g.payoffs(),
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let output = cli.output.as_deref();
    match cli.command {
        Command::Solve {
            game,
            delta,
            tol,
            sweep,
        } => {
            let game = game.load()?;
            let report = classify_with(&game, &ClassifyOptions { delta, tol, sweep })?;
            let text = if cli.json {
                render::json(
                    &serde_json::json!({ "game": GameView::from(&game), "report": report }),
                )
            } else {
                render::solve(&game, &report)
            };
            emit(output, &text)?;
            Ok(if report.any_ess() { 0 } else { NEGATIVE })
        }
        Command::Verify {
            game,
            strategy,
            invader,
            sweep,
            tol,
        } => {
            let game = game.load()?;
            let resident = args::strategy(&game, &strategy)?;
            let invaders = invader
                .iter()
                .map(|s| args::strategy(&game, s))
                .collect::<Result<Vec<_>>>()?;
            let j = resident.as_belief();
            let verification: Verification<f64> = verify_ess(&game, &j, &invaders, tol)?;
            let swept = if sweep {
                Some(invader_sweep(&game, &j, tol)?)
            } else {
                None
            };
            let stable =
                verification.stable && swept.as_ref().is_none_or(|s| s.verification.stable);
            let text = if cli.json {
                render::json(&serde_json::json!({
                    "game": GameView::from(&game),
                    "resident": resident,
                    "verification": verification,
                    "sweep": swept,
                    "stable": stable,
                }))
            } else {
                render::verify(&game, &resident, &verification, swept.as_ref())
            };
            emit(output, &text)?;
            Ok(if stable { 0 } else { NEGATIVE })
        }
        Command::Payoff {
            game,
            row,
            col,
            mc,
            rng,
        } => {
            let game = game.load()?;
            let row = args::strategy(&game, &row)?;
            let col = args::strategy(&game, &col)?;
            let exact = expected_payoff(&game, &row, &col);
            let sampled = match mc {
                Some(n) => {
                    let workers = usize::try_from(rng.workers).context("--workers is too large")?;
                    let result = mc_expected_payoff_parallel(
                        &game,
                        &row.as_belief(),
                        &col.as_belief(),
                        n,
                        rng.seed,
                        workers,
                    )?;
                    Some(render::McRun {
                        result,
                        samples: n,
                        seed: rng.seed,
                        workers: rng.workers,
                    })
                }
                None => None,
            };
            let text = if cli.json {
                let mc = sampled.as_ref().map(|m| {
                    serde_json::json!({
                        "value": m.result.value,
                        "stderr": m.result.stderr,
                        "samples": m.samples,
                        "seed": m.seed,
                        "workers": m.workers,
                    })
                });
                render::json(&serde_json::json!({
                    "game": GameView::from(&game),
                    "row": row,
                    "col": col,
                    "closed_form": { "value": exact.value },
                    "monte_carlo": mc,
                }))
            } else {
                render::payoff(&game, &row, &col, &exact, sampled.as_ref())
            };
            emit(output, &text)?;
            Ok(0)
        }
        Command::Simulate {
            game,
            resident,
            mutant,
            epsilon,
            max_steps,
            stride,
            sampled,
            rng,
        } => {
            let game = game.load()?;
            let resident = args::strategy(&game, &resident)?;
            let mutant = args::strategy(&game, &mutant)?;
            let mode = match sampled {
                Some(samples) => EncounterMode::Sampled {
                    samples,
                    seed: rng.seed,
                },
                None => EncounterMode::ClosedForm,
            };
            let config = InvasionConfig {
                record_stride: stride,
                mode,
                ..InvasionConfig::new(epsilon, max_steps)
            };
            let trajectory = invasion_experiment_with(&game, &resident, &mutant, &config)?;
            let export = if cli.json {
                render::json(&trajectory)
            } else {
                trajectory.to_csv()
            };
            match output {
                Some(path) => {
                    emit(Some(path), &export)?;
                    emit(None, &render::verdict(&trajectory))?;
                }
                None => emit(None, &export)?,
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
