//! Pure, mixed and belief-based ESS search and verification.
//!
//! Every strict inequality is evaluated as `lhs > rhs + tol`. A first-order
//! comparison within `tol` is a tie and routes to the second-order
//! condition; a tie there as well is reported as neutral stability, which
//! is not an ESS at that tolerance.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::SymmetricGame2;
use crate::payoff::expected_payoff;
use crate::scalar::Scalar;
use crate::strategy::{BeliefStrategy, MixedStrategy, PureStrategy, Strategy};

/// One evaluated inequality `lhs > rhs`, with `slack = lhs − rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Margin<T> {
    pub label: String,
    pub lhs: T,
    pub rhs: T,
    pub slack: T,
}

impl<T: Scalar> Margin<T> {
    fn new(label: String, lhs: T, rhs: T) -> Self {
        Self {
            label,
            lhs,
            rhs,
            slack: lhs - rhs,
        }
    }
}

/// Which condition decided a resident-versus-invader comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// E(S,S) > E(T,S).
    Strict,
    /// E(S,S) = E(T,S) and E(S,T) > E(T,T).
    SecondOrder,
    /// Ties in both conditions: neutrally stable, not an ESS at this tolerance.
    Neutral,
    /// The invader does at least as well; resident is not an ESS.
    Invadable,
}

impl Condition {
    pub fn is_ess(self) -> bool {
        matches!(self, Condition::Strict | Condition::SecondOrder)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Condition::Strict => "strict",
            Condition::SecondOrder => "second_order",
            Condition::Neutral => "neutral",
            Condition::Invadable => "invadable",
        }
    }
}

/// The four payoffs of a resident S against an invader T.
#[derive(Debug, Clone, Copy)]
struct Encounter<T> {
    ss: T,
    ts: T,
    st: T,
    tt: T,
}

fn judge<T: Scalar>(
    enc: Encounter<T>,
    names: (&str, &str),
    tol: T,
    bracket: (char, char),
) -> (Condition, Vec<Margin<T>>) {
    let (s, t) = names;
    let (open, close) = bracket;
    let first = Margin::new(
        format!("E{open}{s},{s}{close} > E{open}{t},{s}{close}"),
        enc.ss,
        enc.ts,
    );
    if first.slack > tol {
        return (Condition::Strict, vec![first]);
    }
    if first.slack.abs() > tol {
        return (Condition::Invadable, vec![first]);
    }
    let second = Margin::new(
        format!("E{open}{s},{t}{close} > E{open}{t},{t}{close}"),
        enc.st,
        enc.tt,
    );
    let outcome = if second.slack > tol {
        Condition::SecondOrder
    } else if second.slack.abs() <= tol {
        Condition::Neutral
    } else {
        Condition::Invadable
    };
    (outcome, vec![first, second])
}

fn check_tol<T: Scalar>(tol: T) -> Result<()> {
    if tol >= T::zero() && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol.as_f64()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PureEssCheck<T> {
    pub strategy: PureStrategy,
    pub label: String,
    pub condition: Condition,
    /// E(s,s), E(t,s), E(s,t), E(t,t) with `t` the other pure strategy.
    pub payoffs: [T; 4],
    pub margins: Vec<Margin<T>>,
}

impl<T: Scalar> PureEssCheck<T> {
    pub fn is_ess(&self) -> bool {
        self.condition.is_ess()
    }
}

/// Tests the pure strategy `s` against the other pure strategy.
pub fn check_pure_ess<T: Scalar>(
    game: &SymmetricGame2<T>,
    s: PureStrategy,
    tol: T,
) -> Result<PureEssCheck<T>> {
    check_tol(tol)?;
    let t = s.other();
    let enc = Encounter {
        ss: game.e(s, s),
        ts: game.e(t, s),
        st: game.e(s, t),
        tt: game.e(t, t),
    };
    let (condition, margins) = judge(enc, (game.label(s), game.label(t)), tol, ('(', ')'));
    Ok(PureEssCheck {
        strategy: s,
        label: game.label(s).to_owned(),
        condition,
        payoffs: [enc.ss, enc.ts, enc.st, enc.tt],
        margins,
    })
}

/// Outcome of solving the indifference condition E(s1, I) = E(s2, I).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixedEssSearch<T> {
    /// Formal root of the indifference equation, possibly outside [0, 1].
    pub root: T,
    pub ess: Option<MixedStrategy<T>>,
    pub rejection: Option<String>,
    pub margins: Vec<Margin<T>>,
}

/// Solves `p·E(1,1) + (1−p)·E(1,2) = p·E(2,1) + (1−p)·E(2,2)` and accepts the
/// root when it is interior and both pure strategies fail to invade.
pub fn find_mixed_ess<T: Scalar>(game: &SymmetricGame2<T>, tol: T) -> Result<MixedEssSearch<T>> {
    check_tol(tol)?;
    let e = game.payoffs();
    // E(1,I) − E(2,I) = slope·p + intercept
    let slope = e[0][0] - e[0][1] - e[1][0] + e[1][1];
    let intercept = e[0][1] - e[1][1];
    if slope.abs() <= tol {
        return Err(Error::DegenerateGame);
    }
    let root = -intercept / slope;

    if !(root > T::zero() && root < T::one()) {
        return Ok(MixedEssSearch {
            root,
            ess: None,
            rejection: Some(format!("indifference root {root} is not in (0, 1)")),
            margins: Vec::new(),
        });
    }

    let mixed = MixedStrategy::new(root)?;
    let resident = Strategy::from(mixed);
    let mut margins = Vec::new();
    let mut rejection = None;
    for t in PureStrategy::BOTH {
        let invader = Strategy::pure(t);
        let enc = encounter(game, &resident, &invader);
        let (condition, m) = judge(enc, ("I", game.label(t)), tol, ('(', ')'));
        margins.extend(m);
        if !condition.is_ess() && rejection.is_none() {
            rejection = Some(format!(
                "pure invader {} is not repelled ({})",
                game.label(t),
                condition.as_str()
            ));
        }
    }
    Ok(MixedEssSearch {
        root,
        ess: rejection.is_none().then_some(mixed),
        rejection,
        margins,
    })
}

fn encounter<T: Scalar>(
    game: &SymmetricGame2<T>,
    resident: &Strategy<T>,
    invader: &Strategy<T>,
) -> Encounter<T> {
    Encounter {
        ss: expected_payoff(game, resident, resident).value,
        ts: expected_payoff(game, invader, resident).value,
        st: expected_payoff(game, resident, invader).value,
        tt: expected_payoff(game, invader, invader).value,
    }
}

fn mixed_midpoint<T: Scalar>(game: &SymmetricGame2<T>, tol: T) -> Result<T> {
    match find_mixed_ess(game, tol) {
        Ok(MixedEssSearch { ess: Some(m), .. }) => Ok(m.p()),
        Ok(_) | Err(Error::DegenerateGame) => Err(Error::NoMixedEss),
        Err(e) => Err(e),
    }
}

/// Largest δ with `0 ≤ p* − δ ≤ p* + δ ≤ 1`, i.e. `min(p*, 1 − p*)`.
pub fn max_delta<T: Scalar>(game: &SymmetricGame2<T>) -> Result<T> {
    let p = mixed_midpoint(game, T::ESS_TOL)?;
    Ok(p.min(T::one() - p))
}

/// The belief ESS of half-width `delta` around the mixed ESS `p*`:
/// `a = p* − δ`, `b = 1 − p* − δ`, so `{s1, s2}` carries `2δ`.
pub fn find_belief_ess<T: Scalar>(
    game: &SymmetricGame2<T>,
    delta: T,
    tol: T,
) -> Result<BeliefStrategy<T>> {
    check_tol(tol)?;
    let p = mixed_midpoint(game, tol)?;
    let max = p.min(T::one() - p);
    if !(delta >= T::zero() && delta <= max + T::NORMALIZATION_TOL) {
        return Err(Error::DeltaOutOfRange {
            delta: delta.as_f64(),
            max: max.as_f64(),
        });
    }
    let j = BeliefStrategy::new(p - delta, T::one() - p - delta)?;
    let gap = expected_payoff(game, &PureStrategy::FIRST.into(), &j.into()).value
        - expected_payoff(game, &PureStrategy::SECOND.into(), &j.into()).value;
    debug_assert!(
        gap.abs() <= tol.max(T::of(1e-10)),
        "indifference violated by {gap}"
    );
    Ok(j)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvaderCheck<T> {
    pub invader: Strategy<T>,
    pub condition: Condition,
    pub margins: Vec<Margin<T>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification<T> {
    pub checks: Vec<InvaderCheck<T>>,
    /// Conjunction over all invaders.
    pub stable: bool,
}

impl<T: Scalar> Verification<T> {
    pub fn min_slack(&self) -> Option<T> {
        self.checks
            .iter()
            .filter_map(|c| c.margins.last())
            .map(|m| m.slack)
            .reduce(T::min)
    }
}

fn strategy_name<T: Scalar>(game: &SymmetricGame2<T>, s: &Strategy<T>) -> String {
    match s {
        Strategy::Pure { index } => game.label(*index).to_owned(),
        Strategy::Mixed { mixed } => format!("mixed({})", mixed.p()),
        Strategy::Belief { belief } => format!("belief({},{})", belief.a(), belief.b()),
    }
}

/// Checks the resident `j` against each invader (both pure strategies when
/// `invaders` is empty).
pub fn verify_ess<T: Scalar>(
    game: &SymmetricGame2<T>,
    j: &BeliefStrategy<T>,
    invaders: &[Strategy<T>],
    tol: T,
) -> Result<Verification<T>> {
    check_tol(tol)?;
    let defaults = PureStrategy::BOTH.map(Strategy::pure);
    let invaders = if invaders.is_empty() {
        &defaults[..]
    } else {
        invaders
    };
    let resident = Strategy::from(*j);
    let checks: Vec<InvaderCheck<T>> = invaders
        .iter()
        .map(|inv| {
            let (condition, margins) = judge(
                encounter(game, &resident, inv),
                ("J", &strategy_name(game, inv)),
                tol,
                ('[', ']'),
            );
            InvaderCheck {
                invader: *inv,
                condition,
                margins,
            }
        })
        .collect();
    let stable = checks.iter().all(|c| c.condition.is_ess());
    Ok(Verification { checks, stable })
}

/// Mixed invaders `p = 0.01, 0.02, …, 0.99` against a resident.
///
/// Invaders whose payoff-relevant midpoint equals the resident's within
/// `tol` are payoff-equivalent to it and listed separately; they do not
/// enter the verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvaderSweep<T> {
    pub verification: Verification<T>,
    pub payoff_equivalent: Vec<T>,
}

pub fn invader_sweep<T: Scalar>(
    game: &SymmetricGame2<T>,
    j: &BeliefStrategy<T>,
    tol: T,
) -> Result<InvaderSweep<T>> {
    let (equivalent, invaders): (Vec<_>, Vec<_>) = (1..100)
        .map(|k| T::of(k as f64 / 100.0))
        .partition(|p| (*p - j.midpoint()).abs() <= tol);
    let invaders = invaders
        .into_iter()
        .map(Strategy::mixed)
        .collect::<Result<Vec<_>>>()?;
    let verification = if invaders.is_empty() {
        Verification {
            checks: Vec::new(),
            stable: true,
        }
    } else {
        verify_ess(game, j, &invaders, tol)?
    };
    Ok(InvaderSweep {
        verification,
        payoff_equivalent: equivalent,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BeliefInstance<T> {
    pub delta: T,
    pub strategy: BeliefStrategy<T>,
    pub verification: Verification<T>,
    pub sweep: Option<InvaderSweep<T>>,
}

/// The δ-family of belief ESS around a mixed ESS.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BeliefFamily<T> {
    pub midpoint: T,
    pub delta_max: T,
    /// The member at the requested δ, when δ is in range.
    pub instance: Option<BeliefInstance<T>>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MixedOutcome<T> {
    Found { search: MixedEssSearch<T> },
    Rejected { search: MixedEssSearch<T> },
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EssReport<T> {
    pub labels: [String; 2],
    pub tolerance: T,
    pub pure_checks: Vec<PureEssCheck<T>>,
    pub pure_ess: Vec<PureStrategy>,
    pub mixed: MixedOutcome<T>,
    pub mixed_ess: Option<MixedStrategy<T>>,
    pub belief_ess: Option<BeliefFamily<T>>,
    pub margins: Vec<Margin<T>>,
}

impl<T: Scalar> EssReport<T> {
    pub fn any_ess(&self) -> bool {
        !self.pure_ess.is_empty() || self.mixed_ess.is_some()
    }

    /// The belief ESS at the requested δ, when it was found and verified.
    pub fn belief_strategy(&self) -> Option<BeliefStrategy<T>> {
        self.belief_ess
            .as_ref()
            .and_then(|f| f.instance.as_ref())
            .filter(|i| i.verification.stable)
            .map(|i| i.strategy)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions<T> {
    pub delta: T,
    pub tol: T,
    /// Also run the mixed-invader sweep on the belief ESS.
    pub sweep: bool,
}

pub fn classify<T: Scalar>(game: &SymmetricGame2<T>, delta: T, tol: T) -> Result<EssReport<T>> {
    classify_with(
        game,
        &ClassifyOptions {
            delta,
            tol,
            sweep: false,
        },
    )
}

/// Runs every check on `game` and assembles the full report. A degenerate
/// indifference equation is recorded in the report rather than returned as
/// an error, since the pure checks still apply.
pub fn classify_with<T: Scalar>(
    game: &SymmetricGame2<T>,
    opts: &ClassifyOptions<T>,
) -> Result<EssReport<T>> {
    let ClassifyOptions { delta, tol, sweep } = *opts;
    check_tol(tol)?;
    let pure_checks = PureStrategy::BOTH
        .into_iter()
        .map(|s| check_pure_ess(game, s, tol))
        .collect::<Result<Vec<_>>>()?;
    let pure_ess = pure_checks
        .iter()
        .filter(|c| c.is_ess())
        .map(|c| c.strategy)
        .collect();
    let mut margins: Vec<Margin<T>> = pure_checks.iter().flat_map(|c| c.margins.clone()).collect();

    let mixed = match find_mixed_ess(game, tol) {
        Ok(search) if search.ess.is_some() => MixedOutcome::Found { search },
        Ok(search) => MixedOutcome::Rejected { search },
        Err(Error::DegenerateGame) => MixedOutcome::Degenerate,
        Err(e) => return Err(e),
    };
    let mixed_ess = match &mixed {
        MixedOutcome::Found { search } => {
            margins.extend(search.margins.iter().cloned());
            search.ess
        }
        _ => None,
    };

    let belief_ess = match mixed_ess {
        Some(m) => {
            let p = m.p();
            let delta_max = p.min(T::one() - p);
            match find_belief_ess(game, delta, tol) {
                Ok(strategy) => {
                    let verification = verify_ess(game, &strategy, &[], tol)?;
                    margins.extend(verification.checks.iter().flat_map(|c| c.margins.clone()));
                    let sweep = if sweep {
                        Some(invader_sweep(game, &strategy, tol)?)
                    } else {
                        None
                    };
                    Some(BeliefFamily {
                        midpoint: p,
                        delta_max,
                        instance: Some(BeliefInstance {
                            delta,
                            strategy,
                            verification,
                            sweep,
                        }),
                        note: None,
                    })
                }
                Err(Error::DeltaOutOfRange { .. }) => Some(BeliefFamily {
                    midpoint: p,
                    delta_max,
                    instance: None,
                    note: Some(format!(
                        "requested delta {delta} is outside [0, {delta_max}]"
                    )),
                }),
                Err(e) => return Err(e),
            }
        }
        None => None,
    };

    Ok(EssReport {
        labels: game.labels().clone(),
        tolerance: tol,
        pure_checks,
        pure_ess,
        mixed,
        mixed_ess,
        belief_ess,
        margins,
    })
}
