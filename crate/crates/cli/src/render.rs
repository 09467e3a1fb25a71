//! Text and JSON rendering. Reals carry at most 12 significant digits.

use std::fmt::Write;

use belief_ess::ess::{InvaderSweep, MixedOutcome, Verification};
use belief_ess::{AnyStrategy, Belief, Game, Margin, Payoff, Report, Trajectory};
use serde::Serialize;
use serde_json::Value;

pub fn round(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn num(x: f64) -> String {
    let r = round(x);
    if r == 0.0 || !r.is_finite() || (1e-6..1e15).contains(&r.abs()) {
        r.to_string()
    } else {
        format!("{r:e}")
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n
                .as_f64()
                .and_then(|x| serde_json::Number::from_f64(round(x)))
            {
                *n = x;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

pub fn json<S: Serialize>(value: &S) -> String {
    let mut v = serde_json::to_value(value).expect("reports serialize");
    round_value(&mut v);
    let mut out = serde_json::to_string_pretty(&v).expect("values serialize");
    out.push('\n');
    out
}

pub fn strategy_name(game: &Game, s: &AnyStrategy) -> String {
    match s {
        AnyStrategy::Pure { index } => format!("pure {}", game.label(*index)),
        AnyStrategy::Mixed { mixed } => format!("mixed p={}", num(mixed.p())),
        AnyStrategy::Belief { belief } => {
            format!("belief a={},b={}", num(belief.a()), num(belief.b()))
        }
    }
}

fn game_header(out: &mut String, game: &Game) {
    let [l1, l2] = game.labels();
    let e = game.payoffs();
    let _ = writeln!(out, "game: {l1}, {l2}");
    if let Some(hd) = game.hawk_dove_params() {
        let _ = writeln!(out, "  hawk-dove V={} C={}", num(hd.v), num(hd.c));
    }
    for (i, row) in e.iter().enumerate() {
        let li = &game.labels()[i];
        let _ = writeln!(
            out,
            "  E({li},{l1}) = {}  E({li},{l2}) = {}",
            num(row[0]),
            num(row[1])
        );
    }
}

fn margins(out: &mut String, indent: &str, ms: &[Margin<f64>]) {
    for m in ms {
        let _ = writeln!(
            out,
            "{indent}{}: {} vs {} (slack {})",
            m.label,
            num(m.lhs),
            num(m.rhs),
            num(m.slack)
        );
    }
}

fn belief_line(out: &mut String, indent: &str, j: &Belief) {
    let (bel, pl) = j.belief_interval();
    let _ = writeln!(
        out,
        "{indent}a = {}, b = {}, ambiguity = {}, [Bel, Pl] = [{}, {}]",
        num(j.a()),
        num(j.b()),
        num(j.ambiguity()),
        num(bel),
        num(pl)
    );
}

fn verification(out: &mut String, game: &Game, v: &Verification<f64>) {
    for c in &v.checks {
        let _ = writeln!(
            out,
            "  invader {}: {}",
            strategy_name(game, &c.invader),
            c.condition.as_str()
        );
        margins(out, "    ", &c.margins);
    }
}

fn sweep(out: &mut String, s: &InvaderSweep<f64>) {
    let v = &s.verification;
    let failing: Vec<String> = v
        .checks
        .iter()
        .filter(|c| !c.condition.is_ess())
        .map(|c| num(c.invader.midpoint()))
        .collect();
    let _ = writeln!(
        out,
        "  sweep: {} mixed invaders, {}",
        v.checks.len(),
        if v.stable {
            "all repelled".to_string()
        } else {
            format!("invaded by p = {}", failing.join(", "))
        }
    );
    if !s.payoff_equivalent.is_empty() {
        let ps: Vec<String> = s.payoff_equivalent.iter().map(|p| num(*p)).collect();
        let _ = writeln!(out, "  payoff-equivalent (excluded): p = {}", ps.join(", "));
    }
}

pub fn solve(game: &Game, report: &Report) -> String {
    let mut out = String::new();
    game_header(&mut out, game);
    let _ = writeln!(out, "tolerance: {}", num(report.tolerance));

    let _ = writeln!(out, "\n[pure]");
    for c in &report.pure_checks {
        let _ = writeln!(out, "{}: {}", c.label, c.condition.as_str());
        margins(&mut out, "  ", &c.margins);
    }

    let _ = writeln!(out, "\n[mixed]");
    match &report.mixed {
        MixedOutcome::Found { search } => {
            let _ = writeln!(out, "ESS at p = {}", num(search.root));
            margins(&mut out, "  ", &search.margins);
        }
        MixedOutcome::Rejected { search } => {
            let reason = search.rejection.as_deref().unwrap_or("rejected");
            let _ = writeln!(out, "none: {reason} (root p = {})", num(search.root));
            margins(&mut out, "  ", &search.margins);
        }
        MixedOutcome::Degenerate => {
            let _ = writeln!(out, "none: degenerate game, indifference holds for every p");
        }
    }

    let _ = writeln!(out, "\n[belief]");
    match &report.belief_ess {
        None => {
            let _ = writeln!(out, "none: no mixed ESS to widen");
        }
        Some(family) => {
            let _ = writeln!(
                out,
                "family: midpoint {}, delta in [0, {}]",
                num(family.midpoint),
                num(family.delta_max)
            );
            if let Some(inst) = &family.instance {
                let _ = writeln!(out, "delta = {}:", num(inst.delta));
                belief_line(&mut out, "  ", &inst.strategy);
                let _ = writeln!(
                    out,
                    "  verified: {}",
                    if inst.verification.stable {
                        "yes"
                    } else {
                        "no"
                    }
                );
                verification(&mut out, game, &inst.verification);
                if let Some(s) = &inst.sweep {
                    sweep(&mut out, s);
                }
            }
            if let Some(note) = &family.note {
                let _ = writeln!(out, "note: {note}");
            }
        }
    }

    let _ = writeln!(out, "\n[summary]");
    let pure: Vec<&str> = report.pure_ess.iter().map(|s| game.label(*s)).collect();
    let _ = writeln!(
        out,
        "pure ESS: {}",
        if pure.is_empty() {
            "none".into()
        } else {
            pure.join(", ")
        }
    );
    let _ = writeln!(
        out,
        "mixed ESS: {}",
        report
            .mixed_ess
            .map_or("none".into(), |m| format!("p = {}", num(m.p())))
    );
    let _ = writeln!(
        out,
        "belief ESS: {}",
        report.belief_strategy().map_or("none".into(), |j| format!(
            "a = {}, b = {}",
            num(j.a()),
            num(j.b())
        ))
    );
    out
}

pub fn verify(
    game: &Game,
    resident: &AnyStrategy,
    v: &Verification<f64>,
    s: Option<&InvaderSweep<f64>>,
) -> String {
    let mut out = String::new();
    game_header(&mut out, game);
    let _ = writeln!(out, "resident J: {}", strategy_name(game, resident));
    belief_line(&mut out, "  ", &resident.as_belief());
    verification(&mut out, game, v);
    if let Some(s) = s {
        sweep(&mut out, s);
    }
    let stable = v.stable && s.is_none_or(|s| s.verification.stable);
    let _ = writeln!(
        out,
        "verdict: {}",
        if stable { "stable" } else { "not stable" }
    );
    out
}

pub struct McRun {
    pub result: Payoff,
    pub samples: u64,
    pub seed: u64,
    pub workers: u64,
}

pub fn payoff(
    game: &Game,
    row: &AnyStrategy,
    col: &AnyStrategy,
    exact: &Payoff,
    mc: Option<&McRun>,
) -> String {
    let mut out = String::new();
    game_header(&mut out, game);
    let _ = writeln!(out, "row: {}", strategy_name(game, row));
    let _ = writeln!(out, "col: {}", strategy_name(game, col));
    let _ = writeln!(
        out,
        "{:<12} {:<20} {:<20} {:<10} {:<8} workers",
        "method", "value", "stderr", "samples", "seed"
    );
    let _ = writeln!(
        out,
        "{:<12} {:<20} {:<20} {:<10} {:<8} -",
        "closed_form",
        num(exact.value),
        "-",
        "-",
        "-"
    );
    if let Some(m) = mc {
        let _ = writeln!(
            out,
            "{:<12} {:<20} {:<20} {:<10} {:<8} {}",
            "monte_carlo",
            num(m.result.value),
            num(m.result.stderr.unwrap_or(0.0)),
            m.samples,
            m.seed,
            m.workers
        );
    }
    out
}

pub fn verdict(t: &Trajectory<f64>) -> String {
    let shares: Vec<String> = t.final_state().shares().iter().map(|s| num(*s)).collect();
    format!(
        "verdict: {} after {} steps (final shares {})\n",
        t.verdict.as_str(),
        t.final_step,
        shares.join(", ")
    )
}
