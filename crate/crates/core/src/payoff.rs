//! Expected payoffs for every pairing of pure, mixed and belief strategies.
//!
//! A belief strategy plays `s1` with probability `t`, where `t` is drawn
//! uniformly from its belief interval `[bel, pl]`. Integrating the bilinear
//! payoff against that density leaves only the interval midpoint, so every
//! closed form here evaluates at `(bel + pl) / 2` and never divides by the
//! interval width. Zero-width intervals need no special case.
//!
//! [`mc_expected_payoff`] is the independent check: it samples the draws and
//! the resulting pure encounters directly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::SymmetricGame2;
use crate::scalar::Scalar;
use crate::strategy::{BeliefStrategy, MixedStrategy, PureStrategy, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PayoffResult<T> {
    pub value: T,
    pub method: Method,
    /// Standard error of the mean; present only for Monte-Carlo results.
    pub stderr: Option<T>,
}

impl<T: Scalar> PayoffResult<T> {
    pub fn closed_form(value: T) -> Self {
        Self {
            value,
            method: Method::ClosedForm,
            stderr: None,
        }
    }

    pub fn monte_carlo(value: T, stderr: T) -> Self {
        Self {
            value,
            method: Method::MonteCarlo,
            stderr: Some(stderr),
        }
    }
}

/// `Σ_{i,j} p1_i p2_j E(i, j)`, with `p` the probability of `s1` on each side.
fn bilinear<T: Scalar>(game: &SymmetricGame2<T>, p_row: T, p_col: T) -> T {
    let wr = [p_row, T::one() - p_row];
    let wc = [p_col, T::one() - p_col];
    let e = game.payoffs();
    let mut total = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            total = total + wr[i] * wc[j] * e[i][j];
        }
    }
    total
}

pub fn expected_mixed_vs_mixed<T: Scalar>(
    game: &SymmetricGame2<T>,
    row: &MixedStrategy<T>,
    col: &MixedStrategy<T>,
) -> PayoffResult<T> {
    PayoffResult::closed_form(bilinear(game, row.p(), col.p()))
}

/// 𝔼[s, J] = [E(s, s1) − E(s, s2)]·(bel + pl)/2 + E(s, s2).
pub fn expected_pure_vs_belief<T: Scalar>(
    game: &SymmetricGame2<T>,
    s: PureStrategy,
    j: &BeliefStrategy<T>,
) -> PayoffResult<T> {
    let hi = game.e(s, PureStrategy::FIRST);
    let lo = game.e(s, PureStrategy::SECOND);
    PayoffResult::closed_form((hi - lo) * j.midpoint() + lo)
}

/// 𝔼[J, t] = [E(s1, t) − E(s2, t)]·(bel + pl)/2 + E(s2, t).
pub fn expected_belief_vs_pure<T: Scalar>(
    game: &SymmetricGame2<T>,
    j: &BeliefStrategy<T>,
    t: PureStrategy,
) -> PayoffResult<T> {
    let hi = game.e(PureStrategy::FIRST, t);
    let lo = game.e(PureStrategy::SECOND, t);
    PayoffResult::closed_form((hi - lo) * j.midpoint() + lo)
}

/// Independent uniform draws on both sides: the bilinear form at the two
/// midpoints.
pub fn expected_belief_vs_belief<T: Scalar>(
    game: &SymmetricGame2<T>,
    j: &BeliefStrategy<T>,
    k: &BeliefStrategy<T>,
) -> PayoffResult<T> {
    PayoffResult::closed_form(bilinear(game, j.midpoint(), k.midpoint()))
}

/// Closed-form 𝔼[row, col] for any two strategy levels.
pub fn expected_payoff<T: Scalar>(
    game: &SymmetricGame2<T>,
    row: &Strategy<T>,
    col: &Strategy<T>,
) -> PayoffResult<T> {
    match (row, col) {
        (Strategy::Pure { index: s }, Strategy::Pure { index: t }) => {
            PayoffResult::closed_form(game.e(*s, *t))
        }
        (Strategy::Pure { index: s }, Strategy::Belief { belief }) => {
            expected_pure_vs_belief(game, *s, belief)
        }
        (Strategy::Belief { belief }, Strategy::Pure { index: t }) => {
            expected_belief_vs_pure(game, belief, *t)
        }
        (Strategy::Mixed { mixed: a }, Strategy::Mixed { mixed: b }) => {
            expected_mixed_vs_mixed(game, a, b)
        }
        _ => expected_belief_vs_belief(game, &row.as_belief(), &col.as_belief()),
    }
}

/// Draws the selection probability from the belief interval. This is the
/// single place the interval density lives; closed forms assume uniform.
fn draw_selection_probability<R: Rng>(rng: &mut R, bel: f64, pl: f64) -> f64 {
    bel + (pl - bel) * rng.random::<f64>()
}

/// Welford accumulator; merged with Chan's pairwise update.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let mean = (self.n as f64 * self.mean + other.n as f64 * other.mean) / n as f64;
        let m2 = self.m2 + other.m2 + delta * delta * (self.n as f64 * other.n as f64) / n as f64;
        Moments { n, mean, m2 }
    }

    fn stderr(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        (self.m2.max(0.0) / (self.n - 1) as f64 / self.n as f64).sqrt()
    }
}

fn run_trials<T: Scalar>(
    game: &SymmetricGame2<T>,
    row: (f64, f64),
    col: (f64, f64),
    trials: u64,
    seed: u64,
    stream: u64,
) -> Moments {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let e = game.payoffs().map(|r| r.map(Scalar::as_f64));
    let mut acc = Moments::default();
    for _ in 0..trials {
        let t_row = draw_selection_probability(&mut rng, row.0, row.1);
        let t_col = draw_selection_probability(&mut rng, col.0, col.1);
        let i = usize::from(rng.random::<f64>() >= t_row);
        let j = usize::from(rng.random::<f64>() >= t_col);
        acc.push(e[i][j]);
    }
    acc
}

/// Monte-Carlo estimate of 𝔼[row, col] on a single worker.
///
/// Each trial draws `t_row ~ U[bel_row, pl_row]` and `t_col ~ U[bel_col, pl_col]`
/// independently, then the two pure actions as Bernoulli(t) draws, and
/// records the row payoff. The generator is ChaCha8 (`rand_chacha`) seeded
/// with `seed_from_u64(seed)` on stream 0; per trial it consumes four `f64`
/// draws in the order `t_row, t_col, action_row, action_col`.
pub fn mc_expected_payoff<T: Scalar>(
    game: &SymmetricGame2<T>,
    row: &BeliefStrategy<T>,
    col: &BeliefStrategy<T>,
    n: u64,
    seed: u64,
) -> Result<PayoffResult<T>> {
    mc_expected_payoff_parallel(game, row, col, n, seed, 1)
}

/// As [`mc_expected_payoff`], split over `workers` threads.
///
/// Worker `w` runs a contiguous block of `n / workers` trials (the first
/// `n % workers` workers take one extra) on the ChaCha8 stream `w` of the same
/// seed, and the partial moments are merged in worker order. The result is
/// reproducible for a fixed `(n, seed, workers)`; with `workers = 1` it is
/// identical to [`mc_expected_payoff`].
pub fn mc_expected_payoff_parallel<T: Scalar>(
    game: &SymmetricGame2<T>,
    row: &BeliefStrategy<T>,
    col: &BeliefStrategy<T>,
    n: u64,
    seed: u64,
    workers: usize,
) -> Result<PayoffResult<T>> {
    if n == 0 {
        return Err(Error::ZeroSamples);
    }
    let workers = (workers.max(1) as u64).min(n);
    let interval = |b: &BeliefStrategy<T>| {
        let (bel, pl) = b.belief_interval();
        (bel.as_f64(), pl.as_f64())
    };
    let (r, c) = (interval(row), interval(col));
    let share = |w: u64| n / workers + u64::from(w < n % workers);

    let moments = if workers == 1 {
        run_trials(game, r, c, n, seed, 0)
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| scope.spawn(move || run_trials(game, r, c, share(w), seed, w)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("Monte-Carlo worker panicked"))
                .fold(Moments::default(), Moments::merge)
        })
    };
    Ok(PayoffResult::monte_carlo(
        T::of(moments.mean),
        T::of(moments.stderr()),
    ))
}
