//! Evolutionarily stable strategies for symmetric two-strategy games, at
//! three levels: pure strategies, mixed strategies, and Dempster-Shafer
//! belief strategies whose selection probability is only known to lie in a
//! `[Bel, Pl]` interval.
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64`.
//!
//! ```
//! use belief_ess::{classify, Game, HawkDove};
//!
//! let game = Game::hawk_dove(HawkDove::new(2.0, 4.0).unwrap()).unwrap();
//! let report = classify(&game, 0.2, 1e-9).unwrap();
//! assert_eq!(report.mixed_ess.unwrap().p(), 0.5);
//! let j = report.belief_strategy().unwrap();
//! assert!((j.a() - 0.3).abs() < 1e-12 && (j.ambiguity() - 0.4).abs() < 1e-12);
//! ```

pub mod definition;
pub mod dynamics;
pub mod error;
pub mod ess;
pub mod evidence;
pub mod game;
pub mod payoff;
pub mod scalar;
pub mod strategy;

pub use dynamics::{
    invasion_experiment, invasion_experiment_with, replicator_step, EncounterMode, InvasionConfig,
    PopulationState, Trajectory, Verdict,
};
pub use error::{Error, Result};
pub use ess::{
    check_pure_ess, classify, classify_with, find_belief_ess, find_mixed_ess, invader_sweep,
    max_delta, verify_ess, ClassifyOptions, Condition, EssReport, Margin,
};
pub use evidence::{FrameOfDiscernment, MassFunction, Subset};
pub use game::{HawkDoveParams, SymmetricGame2};
pub use payoff::{
    expected_belief_vs_belief, expected_belief_vs_pure, expected_mixed_vs_mixed, expected_payoff,
    expected_pure_vs_belief, mc_expected_payoff, mc_expected_payoff_parallel, Method, PayoffResult,
};
pub use scalar::Scalar;
pub use strategy::{BeliefStrategy, MixedStrategy, NotDegenerate, PureStrategy, Strategy};

pub type Game = SymmetricGame2<f64>;
pub type HawkDove = HawkDoveParams<f64>;
pub type Mass = MassFunction<f64>;
pub type Mixed = MixedStrategy<f64>;
pub type Belief = BeliefStrategy<f64>;
pub type AnyStrategy = Strategy<f64>;
pub type Report = EssReport<f64>;
pub type Payoff = PayoffResult<f64>;
pub type Population = PopulationState<f64>;

pub type Game32 = SymmetricGame2<f32>;
pub type Belief32 = BeliefStrategy<f32>;
