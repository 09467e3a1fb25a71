//! Test-only oracles, independent of the closed forms they check.
#![allow(dead_code)]

use belief_ess::{Game, HawkDove};

pub fn hawk_dove(v: f64, c: f64) -> Game {
    Game::hawk_dove(HawkDove::new(v, c).unwrap()).unwrap()
}

/// Enumerates the four pure encounters and weights them.
pub fn enumerate_mixed(game: &Game, p_row: f64, p_col: f64) -> f64 {
    let rows = [(0, p_row), (1, 1.0 - p_row)];
    let cols = [(0, p_col), (1, 1.0 - p_col)];
    let mut total = 0.0;
    for (i, wi) in rows {
        for (j, wj) in cols {
            total += wi * wj * game.payoff(i, j).unwrap();
        }
    }
    total
}

/// Composite Simpson average of `f` over `[lo, hi]`; the point value when
/// the interval is empty.
pub fn interval_average(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    if hi - lo <= 0.0 {
        return f(lo);
    }
    let n = 1000;
    let h = (hi - lo) / n as f64;
    let mut sum = f(lo) + f(hi);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(lo + k as f64 * h);
    }
    sum * h / 3.0 / (hi - lo)
}

/// Pure strategy `s` against an opponent whose s1-probability is uniform on `[bel, pl]`.
pub fn quadrature_pure_vs_interval(game: &Game, s: usize, bel: f64, pl: f64) -> f64 {
    let e1 = game.payoff(s, 0).unwrap();
    let e2 = game.payoff(s, 1).unwrap();
    interval_average(bel, pl, |t| t * e1 + (1.0 - t) * e2)
}

/// Interval player against pure strategy `t`.
pub fn quadrature_interval_vs_pure(game: &Game, bel: f64, pl: f64, t: usize) -> f64 {
    let e1 = game.payoff(0, t).unwrap();
    let e2 = game.payoff(1, t).unwrap();
    interval_average(bel, pl, |x| x * e1 + (1.0 - x) * e2)
}
