//! The pure → mixed → belief strategy hierarchy for two-strategy games.
//!
//! A [`BeliefStrategy`] is a mass function over `{s1}`, `{s2}` and
//! `{s1, s2}`; it bounds the probability of playing `s1` by the interval
//! `[bel, pl] = [a, 1 − b]`. A mixed strategy is the zero-width case and a
//! pure strategy is a mixed strategy at 0 or 1.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evidence::{FrameOfDiscernment, MassFunction, Subset};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PureStrategy(u8);

impl PureStrategy {
    pub const FIRST: PureStrategy = PureStrategy(0);
    pub const SECOND: PureStrategy = PureStrategy(1);
    pub const BOTH: [PureStrategy; 2] = [Self::FIRST, Self::SECOND];

    pub fn new(index: usize) -> Result<Self> {
        match index {
            0 | 1 => Ok(PureStrategy(index as u8)),
            _ => Err(Error::IndexOutOfRange(index)),
        }
    }

    pub(crate) fn from_index_unchecked(index: usize) -> Self {
        debug_assert!(index < 2);
        PureStrategy(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn other(self) -> Self {
        PureStrategy(1 - self.0)
    }
}

/// `p·s1 + (1 − p)·s2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MixedStrategy<T> {
    p: T,
}

impl<T: Scalar> MixedStrategy<T> {
    pub fn new(p: T) -> Result<Self> {
        if !(p >= T::zero() && p <= T::one()) {
            return Err(Error::InvalidStrategy(format!(
                "mixed probability {p} outside [0, 1]"
            )));
        }
        Ok(Self { p })
    }

    pub fn pure(s: PureStrategy) -> Self {
        Self {
            p: if s == PureStrategy::FIRST {
                T::one()
            } else {
                T::zero()
            },
        }
    }

    /// Probability of the first strategy.
    pub fn p(&self) -> T {
        self.p
    }

    /// (p, 1 − p).
    pub fn weights(&self) -> [T; 2] {
        [self.p, T::one() - self.p]
    }
}

/// Returned by [`BeliefStrategy::to_mixed`] when the interval has positive width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NotDegenerate<T> {
    pub width: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BeliefStrategy<T> {
    a: T,
    b: T,
}

impl<T: Scalar> BeliefStrategy<T> {
    /// `a` = m({s1}), `b` = m({s2}); the remainder goes to `{s1, s2}`.
    ///
    /// Values up to [`Scalar::NORMALIZATION_TOL`] outside the simplex are
    /// clamped back onto it.
    pub fn new(a: T, b: T) -> Result<Self> {
        let tol = T::NORMALIZATION_TOL;
        if !a.is_finite() || !b.is_finite() || a < -tol || b < -tol || a + b > T::one() + tol {
            return Err(Error::InvalidStrategy(format!(
                "belief masses a={a}, b={b} need a ≥ 0, b ≥ 0, a + b ≤ 1"
            )));
        }
        let a = a.max(T::zero()).min(T::one());
        let b = b.max(T::zero()).min(T::one() - a);
        Ok(Self { a, b })
    }

    /// From the interval `[bel, pl]` on the first strategy.
    pub fn from_interval(bel: T, pl: T) -> Result<Self> {
        if bel > pl + T::NORMALIZATION_TOL {
            return Err(Error::InvalidStrategy(format!(
                "interval [{bel}, {pl}] is reversed"
            )));
        }
        Self::new(bel, T::one() - pl)
    }

    pub fn from_mixed(mixed: MixedStrategy<T>) -> Self {
        Self {
            a: mixed.p,
            b: T::one() - mixed.p,
        }
    }

    pub fn pure(s: PureStrategy) -> Self {
        Self::from_mixed(MixedStrategy::pure(s))
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    /// Mass on the ambiguous set `{s1, s2}`.
    pub fn ambiguity(&self) -> T {
        T::one() - self.a - self.b
    }

    /// `(Bel(s1), Pl(s1)) = (a, 1 − b)`.
    pub fn belief_interval(&self) -> (T, T) {
        (self.a, T::one() - self.b)
    }

    /// `(Bel(s2), Pl(s2)) = (b, 1 − a)`.
    pub fn second_interval(&self) -> (T, T) {
        (self.b, T::one() - self.a)
    }

    /// Centre of the belief interval; the only quantity the uniform-draw
    /// payoffs depend on.
    pub fn midpoint(&self) -> T {
        let (bel, pl) = self.belief_interval();
        (bel + pl) * T::half()
    }

    /// Half-width δ of the belief interval.
    pub fn half_width(&self) -> T {
        let (bel, pl) = self.belief_interval();
        (pl - bel) * T::half()
    }

    pub fn to_mixed(&self) -> Result<MixedStrategy<T>, NotDegenerate<T>> {
        let (bel, pl) = self.belief_interval();
        let width = pl - bel;
        if width <= T::NORMALIZATION_TOL {
            Ok(MixedStrategy { p: self.a })
        } else {
            Err(NotDegenerate { width })
        }
    }

    /// Mass-function form over a two-element frame; zero masses are omitted.
    pub fn as_mass_function(&self, frame: &FrameOfDiscernment) -> Result<MassFunction<T>> {
        if frame.len() != 2 {
            return Err(Error::WrongFrameSize {
                expected: 2,
                actual: frame.len(),
            });
        }
        MassFunction::new(
            frame.clone(),
            [
                (Subset::singleton(0), self.a),
                (Subset::singleton(1), self.b),
                (frame.full(), self.ambiguity().max(T::zero())),
            ],
        )
    }
}

/// Any strategy a player may adopt in a two-strategy game.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Strategy<T> {
    Pure { index: PureStrategy },
    Mixed { mixed: MixedStrategy<T> },
    Belief { belief: BeliefStrategy<T> },
}

impl<T: Scalar> Strategy<T> {
    pub fn pure(s: PureStrategy) -> Self {
        Strategy::Pure { index: s }
    }

    pub fn mixed(p: T) -> Result<Self> {
        Ok(Strategy::Mixed {
            mixed: MixedStrategy::new(p)?,
        })
    }

    pub fn belief(a: T, b: T) -> Result<Self> {
        Ok(Strategy::Belief {
            belief: BeliefStrategy::new(a, b)?,
        })
    }

    /// Embeds any level into the belief level.
    pub fn as_belief(&self) -> BeliefStrategy<T> {
        match *self {
            Strategy::Pure { index } => BeliefStrategy::pure(index),
            Strategy::Mixed { mixed } => BeliefStrategy::from_mixed(mixed),
            Strategy::Belief { belief } => belief,
        }
    }

    /// Expected probability of the first strategy.
    pub fn midpoint(&self) -> T {
        match *self {
            Strategy::Pure { index } => MixedStrategy::<T>::pure(index).p(),
            Strategy::Mixed { mixed } => mixed.p(),
            Strategy::Belief { belief } => belief.midpoint(),
        }
    }
}

impl<T: Scalar> From<PureStrategy> for Strategy<T> {
    fn from(s: PureStrategy) -> Self {
        Strategy::pure(s)
    }
}

impl<T: Scalar> From<MixedStrategy<T>> for Strategy<T> {
    fn from(mixed: MixedStrategy<T>) -> Self {
        Strategy::Mixed { mixed }
    }
}

impl<T: Scalar> From<BeliefStrategy<T>> for Strategy<T> {
    fn from(belief: BeliefStrategy<T>) -> Self {
        Strategy::Belief { belief }
    }
}

impl<T: Scalar> fmt::Display for Strategy<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Pure { index } => write!(f, "pure={}", index.index()),
            Strategy::Mixed { mixed } => write!(f, "mixed={}", mixed.p()),
            Strategy::Belief { belief } => write!(f, "belief={},{}", belief.a(), belief.b()),
        }
    }
}
