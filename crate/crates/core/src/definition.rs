//! Text formats for games and strategies.
//!
//! Game files are TOML with `labels = ["H", "D"]` and exactly one of
//! `payoffs = [[e11, e12], [e21, e22]]` or `hawk_dove = { V = 2.0, C = 4.0 }`.
//!
//! Strategies are written either as TOML (`pure = "H"`,
//! `mixed = { p = 0.5 }`, `belief = { a = 0.3, b = 0.3 }`) or in the compact
//! flag form `pure=H`, `mixed=0.5`, `belief=0.3,0.3`.

use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::game::{HawkDoveParams, SymmetricGame2};
use crate::scalar::Scalar;
use crate::strategy::Strategy;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GameFile {
    labels: Option<[String; 2]>,
    payoffs: Option<[[f64; 2]; 2]>,
    hawk_dove: Option<HawkDoveFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HawkDoveFile {
    #[serde(rename = "V")]
    v: f64,
    #[serde(rename = "C")]
    c: f64,
}

/// Parses a game definition document.
pub fn parse_game<T: Scalar>(text: &str) -> Result<SymmetricGame2<T>> {
    let file: GameFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    match (file.payoffs, file.hawk_dove) {
        (Some(_), Some(_)) => Err(Error::Parse(
            "keys `payoffs` and `hawk_dove` are mutually exclusive".into(),
        )),
        (None, None) => Err(Error::Parse(
            "one of `payoffs` or `hawk_dove` is required".into(),
        )),
        (Some(p), None) => {
            let labels = file.labels.unwrap_or_else(|| ["s1".into(), "s2".into()]);
            SymmetricGame2::new([&labels[0], &labels[1]], p.map(|r| r.map(T::of)))
        }
        (None, Some(hd)) => {
            let game = SymmetricGame2::hawk_dove(HawkDoveParams::new(T::of(hd.v), T::of(hd.c))?)?;
            match file.labels {
                Some(labels) => game.relabeled([&labels[0], &labels[1]]),
                None => Ok(game),
            }
        }
    }
}

/// Parses the inline `V=<real>,C=<real>` form (keys in any order).
pub fn parse_hawk_dove_flag<T: Scalar>(text: &str) -> Result<HawkDoveParams<T>> {
    let (mut v, mut c) = (None, None);
    for part in text.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected KEY=VALUE in {part:?}")))?;
        let value = parse_real(value)?;
        match key.trim() {
            "V" | "v" => v = Some(value),
            "C" | "c" => c = Some(value),
            other => {
                return Err(Error::Parse(format!(
                    "unknown hawk-dove key {other:?} (expected V or C)"
                )))
            }
        }
    }
    match (v, c) {
        (Some(v), Some(c)) => HawkDoveParams::new(T::of(v), T::of(c)),
        _ => Err(Error::Parse(format!(
            "hawk-dove parameters need both V and C, got {text:?}"
        ))),
    }
}

fn parse_real(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("{s:?} is not a number")))
}

/// A strategy before its labels are resolved against a game.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum StrategySpec {
    Pure(String),
    Mixed { p: f64 },
    Belief { a: f64, b: f64 },
}

impl StrategySpec {
    /// Parses a TOML strategy document with exactly one of `pure`, `mixed`, `belief`.
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn resolve<T: Scalar>(&self, game: &SymmetricGame2<T>) -> Result<Strategy<T>> {
        match self {
            StrategySpec::Pure(label) => Ok(Strategy::pure(game.strategy_by_label(label)?)),
            StrategySpec::Mixed { p } => Strategy::mixed(T::of(*p)),
            StrategySpec::Belief { a, b } => Strategy::belief(T::of(*a), T::of(*b)),
        }
    }
}

impl FromStr for StrategySpec {
    type Err = Error;

    /// `pure=<label>`, `mixed=<p>` or `belief=<a>,<b>`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, value) = s.split_once('=').ok_or_else(|| {
            Error::Parse(format!(
                "strategy {s:?} must look like pure=H, mixed=0.5 or belief=0.3,0.3"
            ))
        })?;
        match kind.trim() {
            "pure" => {
                let label = value.trim();
                if label.is_empty() {
                    return Err(Error::Parse("pure strategy needs a label".into()));
                }
                Ok(StrategySpec::Pure(label.to_owned()))
            }
            "mixed" => Ok(StrategySpec::Mixed {
                p: parse_real(value)?,
            }),
            "belief" => {
                let (a, b) = value.split_once(',').ok_or_else(|| {
                    Error::Parse(format!("belief strategy needs a,b, got {value:?}"))
                })?;
                Ok(StrategySpec::Belief {
                    a: parse_real(a)?,
                    b: parse_real(b)?,
                })
            }
            other => Err(Error::Parse(format!("unknown strategy kind {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::PureStrategy;

    #[test]
    fn payoff_file() {
        let g: SymmetricGame2<f64> = parse_game(
            r#"
labels = ["C", "D"]
payoffs = [[3, 0], [5, 1]]
"#,
        )
        .unwrap();
        assert_eq!(g.payoffs(), &[[3.0, 0.0], [5.0, 1.0]]);
        assert_eq!(g.labels(), &["C".to_string(), "D".to_string()]);
    }

    #[test]
    fn hawk_dove_file() {
        let g: SymmetricGame2<f64> = parse_game("hawk_dove = { V = 2.0, C = 4.0 }").unwrap();
        assert_eq!(g.payoffs(), &[[-1.0, 2.0], [0.0, 1.0]]);
        assert_eq!(g.label(PureStrategy::FIRST), "H");

        let g: SymmetricGame2<f64> =
            parse_game("labels = [\"A\", \"P\"]\nhawk_dove = { V = 2, C = 4 }").unwrap();
        assert_eq!(g.label(PureStrategy::SECOND), "P");
        assert_eq!(g.payoff(0, 0).unwrap(), -1.0);
    }

    #[test]
    fn game_file_errors() {
        let both = "payoffs = [[1, 2], [3, 4]]\nhawk_dove = { V = 2, C = 4 }";
        assert!(matches!(parse_game::<f64>(both), Err(Error::Parse(_))));
        assert!(matches!(
            parse_game::<f64>("labels = [\"a\", \"b\"]"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_game::<f64>("hawk_dove = { V = 2, C = 0 }"),
            Err(Error::NonPositiveParameter { .. })
        ));
        let err = parse_game::<f64>("payoffs = [[1, 2], [3]]")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 1"), "{err}");
        assert!(parse_game::<f64>("payoff = [[1, 2], [3, 4]]").is_err());
    }

    #[test]
    fn hawk_dove_flag() {
        let p: HawkDoveParams<f64> = parse_hawk_dove_flag("V=2,C=4").unwrap();
        assert_eq!((p.v, p.c), (2.0, 4.0));
        let p: HawkDoveParams<f64> = parse_hawk_dove_flag(" C = 4 , V = 1.5 ").unwrap();
        assert_eq!((p.v, p.c), (1.5, 4.0));
        assert!(parse_hawk_dove_flag::<f64>("V=2").is_err());
        assert!(parse_hawk_dove_flag::<f64>("V=2,C=x").is_err());
        assert!(parse_hawk_dove_flag::<f64>("V=2,K=4").is_err());
        assert!(matches!(
            parse_hawk_dove_flag::<f64>("V=2,C=0"),
            Err(Error::NonPositiveParameter { .. })
        ));
    }

    #[test]
    fn strategy_flags() {
        assert_eq!(
            "pure=H".parse::<StrategySpec>().unwrap(),
            StrategySpec::Pure("H".into())
        );
        assert_eq!(
            "mixed=0.5".parse::<StrategySpec>().unwrap(),
            StrategySpec::Mixed { p: 0.5 }
        );
        assert_eq!(
            "belief=0.3,0.2".parse::<StrategySpec>().unwrap(),
            StrategySpec::Belief { a: 0.3, b: 0.2 }
        );
        assert!("belief=0.3".parse::<StrategySpec>().is_err());
        assert!("guess=1".parse::<StrategySpec>().is_err());
        assert!("pure=".parse::<StrategySpec>().is_err());
    }

    #[test]
    fn strategy_toml() {
        assert_eq!(
            StrategySpec::from_toml("pure = \"D\"").unwrap(),
            StrategySpec::Pure("D".into())
        );
        assert_eq!(
            StrategySpec::from_toml("mixed = { p = 0.25 }").unwrap(),
            StrategySpec::Mixed { p: 0.25 }
        );
        assert_eq!(
            StrategySpec::from_toml("belief = { a = 0.3, b = 0.3 }").unwrap(),
            StrategySpec::Belief { a: 0.3, b: 0.3 }
        );
        assert!(StrategySpec::from_toml("pure = \"D\"\nmixed = { p = 0.25 }").is_err());
    }

    #[test]
    fn resolve_against_game() {
        let g: SymmetricGame2<f64> = parse_game("hawk_dove = { V = 2, C = 4 }").unwrap();
        assert_eq!(
            StrategySpec::Pure("D".into()).resolve(&g).unwrap(),
            Strategy::pure(PureStrategy::SECOND)
        );
        assert!(matches!(
            StrategySpec::Pure("X".into()).resolve(&g),
            Err(Error::UnknownElement(_))
        ));
        assert!(StrategySpec::Belief { a: 0.8, b: 0.8 }.resolve(&g).is_err());
        assert!(StrategySpec::Mixed { p: -0.1 }.resolve(&g).is_err());
    }
}
