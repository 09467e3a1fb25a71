//! Discrete replicator dynamics and the invasion experiment built on it.
//!
//! One step maps shares `x_i` to `x_i · (f_i − f_min + SHIFT)`, renormalized,
//! where `f_i = Σ_j x_j · 𝔼[roster_i, roster_j]`. Shares that fall below
//! [`CLAMP_THRESHOLD`] are set to zero.
//!
//! Only the sign structure of fitness differences matters to the verdicts,
//! and the tiny shift makes selection nearly winner-take-all per step.

use std::fmt::Write as _;
use std::io;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::SymmetricGame2;
use crate::payoff::{expected_payoff, mc_expected_payoff};
use crate::scalar::Scalar;
use crate::strategy::Strategy;

/// Added to shifted fitness so every weight stays positive.
pub const SHIFT: f64 = 1e-9;
/// Shares below this are clamped to zero after each step.
pub const CLAMP_THRESHOLD: f64 = 1e-12;
/// Fitness gaps within this many ulps of the largest fitness are rounding
/// noise and count as equal; the shift would otherwise amplify them.
pub const FITNESS_NOISE_ULPS: f64 = 64.0;
/// Tolerance on Σ shares = 1.
pub const SHARE_SUM_TOL: f64 = 1e-9;
/// Mutant share below which the invader is declared extinct (and above
/// `1 − INVASION_THRESHOLD`, fixated).
pub const INVASION_THRESHOLD: f64 = 1e-6;
/// Largest per-step share change still counted as stationary.
pub const STALL_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PopulationState<T> {
    shares: Vec<T>,
}

impl<T: Scalar> PopulationState<T> {
    /// Validates non-negativity and Σ = 1 within [`SHARE_SUM_TOL`], then
    /// renormalizes.
    pub fn new(shares: Vec<T>) -> Result<Self> {
        if shares.is_empty() {
            return Err(Error::EmptyRoster);
        }
        if shares.iter().any(|s| !s.is_finite() || *s < T::zero()) {
            return Err(Error::InvalidPopulation(
                "shares must be finite and non-negative".into(),
            ));
        }
        let sum: T = shares.iter().copied().sum();
        if (sum - T::one()).abs() > T::of(SHARE_SUM_TOL) {
            return Err(Error::InvalidPopulation(format!(
                "shares sum to {sum}, expected 1"
            )));
        }
        Ok(Self {
            shares: shares.into_iter().map(|s| s / sum).collect(),
        })
    }

    pub fn shares(&self) -> &[T] {
        &self.shares
    }

    pub fn len(&self) -> usize {
        self.shares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shares.is_empty()
    }
}

/// How expected payoffs between roster members are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EncounterMode {
    /// Midpoint closed forms.
    #[default]
    ClosedForm,
    /// Monte-Carlo estimates; pair `(i, j)` of an `n`-strategy roster uses
    /// seed `seed + i·n + j` (wrapping).
    Sampled { samples: u64, seed: u64 },
}

/// `table[i][j]` = 𝔼[roster_i, roster_j].
pub fn payoff_table<T: Scalar>(
    game: &SymmetricGame2<T>,
    roster: &[Strategy<T>],
    mode: EncounterMode,
) -> Result<Vec<Vec<T>>> {
    if roster.is_empty() {
        return Err(Error::EmptyRoster);
    }
    let n = roster.len();
    let mut table = vec![vec![T::zero(); n]; n];
    for (i, row) in roster.iter().enumerate() {
        for (j, col) in roster.iter().enumerate() {
            table[i][j] = match mode {
                EncounterMode::ClosedForm => expected_payoff(game, row, col).value,
                EncounterMode::Sampled { samples, seed } => {
                    let pair_seed = seed.wrapping_add((i * n + j) as u64);
                    mc_expected_payoff(
                        game,
                        &row.as_belief(),
                        &col.as_belief(),
                        samples,
                        pair_seed,
                    )?
                    .value
                }
            };
        }
    }
    Ok(table)
}

/// One replicator step against a precomputed payoff table.
pub fn step_with_table<T: Scalar>(
    table: &[Vec<T>],
    pop: &PopulationState<T>,
) -> Result<PopulationState<T>> {
    let x = pop.shares();
    if table.is_empty() {
        return Err(Error::EmptyRoster);
    }
    if table.len() != x.len() || table.iter().any(|r| r.len() != x.len()) {
        return Err(Error::InvalidPopulation(format!(
            "{} shares for a {}-strategy roster",
            x.len(),
            table.len()
        )));
    }
    let fitness: Vec<T> = table
        .iter()
        .map(|row| row.iter().zip(x).map(|(e, s)| *e * *s).sum())
        .collect();
    let f_min = fitness.iter().copied().fold(T::infinity(), T::min);
    let scale = fitness.iter().fold(T::one(), |m, f| m.max(f.abs()));
    let noise = T::epsilon() * T::of(FITNESS_NOISE_ULPS) * scale;
    let shift = T::of(SHIFT);
    let mut next: Vec<T> = x
        .iter()
        .zip(&fitness)
        .map(|(s, f)| {
            let gap = *f - f_min;
            *s * (if gap <= noise { T::zero() } else { gap } + shift)
        })
        .collect();
    renormalize(&mut next);
    let clamp = T::of(CLAMP_THRESHOLD);
    if next.iter().any(|s| *s < clamp && *s > T::zero()) {
        next.iter_mut()
            .filter(|s| **s < clamp)
            .for_each(|s| *s = T::zero());
        renormalize(&mut next);
    }
    Ok(PopulationState { shares: next })
}

fn renormalize<T: Scalar>(shares: &mut [T]) {
    let total: T = shares.iter().copied().sum();
    shares.iter_mut().for_each(|s| *s = *s / total);
}

/// One replicator step with closed-form payoffs.
pub fn replicator_step<T: Scalar>(
    game: &SymmetricGame2<T>,
    roster: &[Strategy<T>],
    pop: &PopulationState<T>,
) -> Result<PopulationState<T>> {
    let table = payoff_table(game, roster, EncounterMode::ClosedForm)?;
    step_with_table(&table, pop)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    InvaderExtinct,
    InvaderFixated,
    Coexistence,
    MaxSteps,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::InvaderExtinct => "invader_extinct",
            Verdict::InvaderFixated => "invader_fixated",
            Verdict::Coexistence => "coexistence",
            Verdict::MaxSteps => "max_steps",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Snapshot<T> {
    pub step: usize,
    pub state: PopulationState<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory<T> {
    /// Recorded every `record_stride` steps, plus the initial and final states.
    pub steps: Vec<Snapshot<T>>,
    pub verdict: Verdict,
    /// Number of steps taken.
    pub final_step: usize,
}

impl<T: Scalar> Trajectory<T> {
    pub fn final_state(&self) -> &PopulationState<T> {
        &self
            .steps
            .last()
            .expect("trajectory always holds the initial state")
            .state
    }

    /// Comma-separated export: a header, one `step,share_0,share_1,…` record
    /// per snapshot, and a final `verdict,<verdict>` line.
    pub fn to_csv(&self) -> String {
        let width = self.steps.first().map_or(0, |s| s.state.len());
        let mut out = String::from("step");
        for i in 0..width {
            let _ = write!(out, ",share_{i}");
        }
        out.push('\n');
        for snap in &self.steps {
            let _ = write!(out, "{}", snap.step);
            for s in snap.state.shares() {
                let _ = write!(out, ",{:e}", s.as_f64());
            }
            out.push('\n');
        }
        let _ = writeln!(out, "verdict,{}", self.verdict.as_str());
        out
    }

    pub fn write_csv<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(self.to_csv().as_bytes())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvasionConfig<T> {
    /// Initial mutant share, in (0, 0.5).
    pub epsilon: T,
    pub max_steps: usize,
    pub record_stride: usize,
    pub mode: EncounterMode,
}

impl<T: Scalar> InvasionConfig<T> {
    pub fn new(epsilon: T, max_steps: usize) -> Self {
        Self {
            epsilon,
            max_steps,
            record_stride: 1,
            mode: EncounterMode::ClosedForm,
        }
    }
}

/// Resident at `1 − ε`, mutant at `ε`, iterated until the mutant share
/// leaves `[1e-6, 1 − 1e-6]`, the state stops moving, or `max_steps` is hit.
pub fn invasion_experiment<T: Scalar>(
    game: &SymmetricGame2<T>,
    resident: &Strategy<T>,
    mutant: &Strategy<T>,
    epsilon: T,
    max_steps: usize,
    record_stride: usize,
) -> Result<Trajectory<T>> {
    let config = InvasionConfig {
        record_stride,
        ..InvasionConfig::new(epsilon, max_steps)
    };
    invasion_experiment_with(game, resident, mutant, &config)
}

pub fn invasion_experiment_with<T: Scalar>(
    game: &SymmetricGame2<T>,
    resident: &Strategy<T>,
    mutant: &Strategy<T>,
    config: &InvasionConfig<T>,
) -> Result<Trajectory<T>> {
    let eps = config.epsilon;
    if !(eps > T::zero() && eps < T::half()) {
        return Err(Error::EpsilonOutOfRange(eps.as_f64()));
    }
    if config.max_steps == 0 {
        return Err(Error::ZeroSteps);
    }
    let stride = config.record_stride.max(1);
    let table = payoff_table(game, &[*resident, *mutant], config.mode)?;

    let mut state = PopulationState::new(vec![T::one() - eps, eps])?;
    let mut steps = vec![Snapshot {
        step: 0,
        state: state.clone(),
    }];
    let low = T::of(INVASION_THRESHOLD);
    let high = T::one() - low;
    let stall = T::of(STALL_THRESHOLD);

    let mut verdict = Verdict::MaxSteps;
    let mut step = 0;
    while step < config.max_steps {
        step += 1;
        let next = step_with_table(&table, &state)?;
        let change = next
            .shares()
            .iter()
            .zip(state.shares())
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), T::max);
        state = next;
        let mutant_share = state.shares()[1];
        let outcome = if mutant_share < low {
            Some(Verdict::InvaderExtinct)
        } else if mutant_share > high {
            Some(Verdict::InvaderFixated)
        } else if change < stall {
            Some(Verdict::Coexistence)
        } else {
            None
        };
        if let Some(v) = outcome {
            verdict = v;
            break;
        }
        if step % stride == 0 {
            steps.push(Snapshot {
                step,
                state: state.clone(),
            });
        }
    }
    if steps.last().map(|s| s.step) != Some(step) {
        steps.push(Snapshot { step, state });
    }
    Ok(Trajectory {
        steps,
        verdict,
        final_step: step,
    })
}
