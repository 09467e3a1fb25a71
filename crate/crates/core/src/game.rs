//! Symmetric two-strategy normal-form games.
//!
//! Payoffs are always the row player's: `payoffs[i][j]` is E(i, j), what
//! strategy `i` earns against strategy `j`. The column player's payoff
//! follows from symmetry.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::strategy::PureStrategy;

/// Resource value `v` and injury cost `c` of a Hawk-Dove contest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HawkDoveParams<T> {
    pub v: T,
    pub c: T,
}

impl<T: Scalar> HawkDoveParams<T> {
    pub fn new(v: T, c: T) -> Result<Self> {
        for (name, value) in [("V", v), ("C", c)] {
            if value.is_nan() || value <= T::zero() || value.is_infinite() {
                return Err(Error::NonPositiveParameter {
                    name,
                    value: value.as_f64(),
                });
            }
        }
        Ok(Self { v, c })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetricGame2<T> {
    labels: [String; 2],
    payoffs: [[T; 2]; 2],
    hawk_dove: Option<HawkDoveParams<T>>,
}

impl<T: Scalar> SymmetricGame2<T> {
    pub fn new(labels: [&str; 2], payoffs: [[T; 2]; 2]) -> Result<Self> {
        if labels[0] == labels[1] {
            return Err(Error::InvalidGame(format!(
                "strategy labels must differ, both are {:?}",
                labels[0]
            )));
        }
        if payoffs.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidGame("payoff entries must be finite".into()));
        }
        Ok(Self {
            labels: labels.map(str::to_owned),
            payoffs,
            hawk_dove: None,
        })
    }

    /// Hawk-Dove: `[[(V−C)/2, V], [0, V/2]]` in (H, D) order.
    pub fn hawk_dove(params: HawkDoveParams<T>) -> Result<Self> {
        let HawkDoveParams { v, c } = HawkDoveParams::new(params.v, params.c)?;
        let two = T::of(2.0);
        let mut game = Self::new(["H", "D"], [[(v - c) / two, v], [T::zero(), v / two]])?;
        game.hawk_dove = Some(params);
        Ok(game)
    }

    pub fn labels(&self) -> &[String; 2] {
        &self.labels
    }

    pub fn label(&self, s: PureStrategy) -> &str {
        &self.labels[s.index()]
    }

    pub fn payoffs(&self) -> &[[T; 2]; 2] {
        &self.payoffs
    }

    pub fn hawk_dove_params(&self) -> Option<HawkDoveParams<T>> {
        self.hawk_dove
    }

    /// E(s, t) by raw index.
    pub fn payoff(&self, s: usize, t: usize) -> Result<T> {
        if s > 1 {
            return Err(Error::IndexOutOfRange(s));
        }
        if t > 1 {
            return Err(Error::IndexOutOfRange(t));
        }
        Ok(self.payoffs[s][t])
    }

    /// E(s, t) for typed pure strategies; never fails.
    pub fn e(&self, s: PureStrategy, t: PureStrategy) -> T {
        self.payoffs[s.index()][t.index()]
    }

    pub fn strategy_by_label(&self, label: &str) -> Result<PureStrategy> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(PureStrategy::from_index_unchecked)
            .ok_or_else(|| Error::UnknownElement(label.to_owned()))
    }

    /// Same payoffs (and Hawk-Dove provenance) under new labels.
    pub fn relabeled(&self, labels: [&str; 2]) -> Result<Self> {
        let mut game = Self::new(labels, self.payoffs)?;
        game.hawk_dove = self.hawk_dove;
        Ok(game)
    }

    /// Every payoff multiplied by `k`.
    pub fn scaled(&self, k: T) -> Self {
        Self {
            labels: self.labels.clone(),
            payoffs: self.payoffs.map(|row| row.map(|x| x * k)),
            hawk_dove: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::PureStrategy as P;

    #[test]
    fn hawk_dove_matrix() {
        let g = SymmetricGame2::hawk_dove(HawkDoveParams::new(2.0, 4.0).unwrap()).unwrap();
        assert_eq!(g.payoffs(), &[[-1.0, 2.0], [0.0, 1.0]]);
        assert_eq!(g.payoff(0, 1).unwrap(), 2.0);
        assert_eq!(g.payoff(1, 0).unwrap(), 0.0);
        assert_eq!(g.payoff(1, 1).unwrap(), 1.0);
        assert_eq!(g.e(P::FIRST, P::FIRST), -1.0);
    }

    #[test]
    fn hawk_dove_boundary_v_equals_c() {
        let g = SymmetricGame2::hawk_dove(HawkDoveParams::new(2.0, 2.0).unwrap()).unwrap();
        assert_eq!(g.payoff(0, 0).unwrap(), 0.0);
        assert_eq!(g.payoff(1, 0).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            HawkDoveParams::new(2.0, 0.0),
            Err(Error::NonPositiveParameter { name: "C", .. })
        ));
        assert!(matches!(
            SymmetricGame2::hawk_dove(HawkDoveParams { v: -1.0, c: 2.0 }),
            Err(Error::NonPositiveParameter { name: "V", .. })
        ));
        assert!(HawkDoveParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn index_out_of_range() {
        let g = SymmetricGame2::new(["a", "b"], [[1.0, 2.0], [3.0, 4.0]]).unwrap();
        assert_eq!(g.payoff(2, 0), Err(Error::IndexOutOfRange(2)));
        assert_eq!(g.payoff(0, 5), Err(Error::IndexOutOfRange(5)));
    }

    #[test]
    fn rejects_non_finite_and_duplicate_labels() {
        assert!(SymmetricGame2::new(["a", "a"], [[1.0, 2.0], [3.0, 4.0]]).is_err());
        assert!(SymmetricGame2::new(["a", "b"], [[f64::INFINITY, 2.0], [3.0, 4.0]]).is_err());
    }

    #[test]
    fn label_lookup() {
        let g = SymmetricGame2::hawk_dove(HawkDoveParams::new(2.0f32, 4.0).unwrap()).unwrap();
        assert_eq!(g.strategy_by_label("D").unwrap(), P::SECOND);
        assert!(matches!(
            g.strategy_by_label("X"),
            Err(Error::UnknownElement(_))
        ));
    }
}
