use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("bad value `{value}` for `{key}`")]
    BadValue { key: String, value: String },
    #[error("invalid config: {0}")]
    Invalid(String),
}

fn bad(key: &str, value: &str) -> ConfigError {
    ConfigError::BadValue {
        key: key.to_string(),
        value: value.to_string(),
    }
}

/// The F/S/U enhancement switches, written like `FSU`, `xSx`, `xxx`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Enhancements {
    pub final_move: bool,
    pub solver: bool,
    pub uct_pn: bool,
}

impl Enhancements {
    pub const NONE: Enhancements = Enhancements {
        final_move: false,
        solver: false,
        uct_pn: false,
    };
    pub const ALL: Enhancements = Enhancements {
        final_move: true,
        solver: true,
        uct_pn: true,
    };
}

impl FromStr for Enhancements {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let c: Vec<char> = s.trim().chars().collect();
        let flag = |ch: char, on: char| match ch {
            x if x == on => Some(true),
            'x' | 'X' | '-' => Some(false),
            _ => None,
        };
        if c.len() != 3 {
            return Err(bad("flags", s));
        }
        match (flag(c[0], 'F'), flag(c[1], 'S'), flag(c[2], 'U')) {
            (Some(final_move), Some(solver), Some(uct_pn)) => Ok(Enhancements {
                final_move,
                solver,
                uct_pn,
            }),
            _ => Err(bad("flags", s)),
        }
    }
}

impl fmt::Display for Enhancements {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pick = |on: bool, c: char| if on { c } else { 'x' };
        write!(
            f,
            "{}{}{}",
            pick(self.final_move, 'F'),
            pick(self.solver, 'S'),
            pick(self.uct_pn, 'U')
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Plain UCT: one child per expansion, no proof numbers.
    Uct,
    /// Full expansion with proof numbers maintained; behaviour set by the flags.
    PnMcts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LayerMode {
    Single,
    Double,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Budget {
    Iterations(u64),
    WallClock(Duration),
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Budget::Iterations(n) => write!(f, "iters:{n}"),
            Budget::WallClock(d) => write!(f, "ms:{}", d.as_millis()),
        }
    }
}

impl FromStr for Budget {
    type Err = ConfigError;

    /// `iters:<k>` or `ms:<k>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (mode, value) = s.trim().split_once(':').ok_or_else(|| bad("budget", s))?;
        let n: u64 = value.trim().parse().map_err(|_| bad("budget", s))?;
        Budget::from_parts(mode, n).ok_or_else(|| bad("budget", s))
    }
}

impl Budget {
    fn from_parts(mode: &str, n: u64) -> Option<Budget> {
        match mode.trim() {
            "iters" | "iterations" => Some(Budget::Iterations(n)),
            "ms" | "millis" => Some(Budget::WallClock(Duration::from_millis(n))),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig<F> {
    pub algorithm: Algorithm,
    /// Exploration constant of UCB1.
    pub c: F,
    /// Weight of the proof-number rank bonus.
    pub c_pn: F,
    pub flags: Enhancements,
    /// A solved child is skipped by selection only once its visits exceed this.
    pub t_threshold: u32,
    pub layers: LayerMode,
    /// Prefer a proven draw when the root value is strictly below this.
    pub contempt: F,
    pub budget: Budget,
    pub seed: u64,
}

impl<F: Scalar> Default for SearchConfig<F> {
    fn default() -> Self {
        SearchConfig {
            algorithm: Algorithm::PnMcts,
            c: F::of(std::f64::consts::SQRT_2),
            c_pn: F::one(),
            flags: Enhancements::ALL,
            t_threshold: 5,
            layers: LayerMode::Single,
            contempt: F::zero(),
            budget: Budget::Iterations(1000),
            seed: 0,
        }
    }
}

impl<F: Scalar> SearchConfig<F> {
    pub fn uct() -> Self {
        SearchConfig {
            algorithm: Algorithm::Uct,
            flags: Enhancements::NONE,
            ..Default::default()
        }
    }

    pub fn pn_mcts(flags: Enhancements) -> Self {
        SearchConfig {
            algorithm: Algorithm::PnMcts,
            flags,
            ..Default::default()
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_c_pn(mut self, c_pn: F) -> Self {
        self.c_pn = c_pn;
        self
    }

    pub fn with_layers(mut self, layers: LayerMode) -> Self {
        self.layers = layers;
        self
    }

    pub fn with_contempt(mut self, contempt: F) -> Self {
        self.contempt = contempt;
        self
    }

    #[inline]
    pub fn maintains_proofs(&self) -> bool {
        self.algorithm == Algorithm::PnMcts
    }

    /// Flags that only have an effect when proofs are maintained.
    #[inline]
    pub fn effective_flags(&self) -> Enhancements {
        if self.maintains_proofs() {
            self.flags
        } else {
            Enhancements::NONE
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.c >= F::zero()) {
            return Err(ConfigError::Invalid("c must be >= 0".into()));
        }
        if !(self.c_pn >= F::zero()) {
            return Err(ConfigError::Invalid("c_pn must be >= 0".into()));
        }
        if self.contempt.is_nan() || self.contempt > F::one() {
            return Err(ConfigError::Invalid("contempt must lie in [-inf, 1]".into()));
        }
        match self.budget {
            Budget::Iterations(0) => Err(ConfigError::Invalid("iteration budget must be positive".into())),
            Budget::WallClock(d) if d.is_zero() => {
                Err(ConfigError::Invalid("time budget must be positive".into()))
            }
            _ => Ok(()),
        }
    }

    /// Short label such as `uct` or `FSU` with non-default parameters appended.
    pub fn label(&self) -> String {
        let mut s = match self.algorithm {
            Algorithm::Uct => "uct".to_string(),
            Algorithm::PnMcts => self.flags.to_string(),
        };
        let d = SearchConfig::<F>::default();
        if self.maintains_proofs() {
            if self.c_pn != d.c_pn {
                s.push_str(&format!(",c_pn={}", self.c_pn));
            }
            if self.layers == LayerMode::Double {
                s.push_str(",layers=double");
                s.push_str(&format!(",contempt={}", format_contempt(self.contempt)));
            }
            if self.t_threshold != d.t_threshold {
                s.push_str(&format!(",t={}", self.t_threshold));
            }
        }
        if self.c != d.c {
            s.push_str(&format!(",c={}", self.c));
        }
        s
    }

    /// Sets one `key = value` entry. Budget may be given as `budget = iters:1000`
    /// or through `budget_mode` + `budget_value`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let key = key.trim();
        let value = value.trim();
        let real = |v: &str| parse_real::<F>(v).ok_or_else(|| bad(key, v));
        match key {
            "algorithm" => {
                self.algorithm = match value {
                    "uct" | "mcts" => Algorithm::Uct,
                    "pn-mcts" | "pnmcts" => Algorithm::PnMcts,
                    _ => return Err(bad(key, value)),
                }
            }
            "c" => self.c = real(value)?,
            "c_pn" => self.c_pn = real(value)?,
            "flags" => {
                if value == "uct" {
                    self.algorithm = Algorithm::Uct;
                    self.flags = Enhancements::NONE;
                } else {
                    self.flags = value.parse()?;
                }
            }
            "t_threshold" | "t" => self.t_threshold = value.parse().map_err(|_| bad(key, value))?,
            "layers" => {
                self.layers = match value {
                    "single" | "1" => LayerMode::Single,
                    "double" | "2" => LayerMode::Double,
                    _ => return Err(bad(key, value)),
                }
            }
            "contempt" => self.contempt = real(value)?,
            "budget" => self.budget = value.parse()?,
            "budget_mode" => {
                let n = match self.budget {
                    Budget::Iterations(n) => n,
                    Budget::WallClock(d) => d.as_millis() as u64,
                };
                self.budget = Budget::from_parts(value, n).ok_or_else(|| bad(key, value))?;
            }
            "budget_value" => {
                let n: u64 = value.parse().map_err(|_| bad(key, value))?;
                self.budget = match self.budget {
                    Budget::Iterations(_) => Budget::Iterations(n),
                    Budget::WallClock(_) => Budget::WallClock(Duration::from_millis(n)),
                };
            }
            "seed" => self.seed = value.parse().map_err(|_| bad(key, value))?,
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }
}

/// Reals with `inf`, `-inf` and the `<-1` contempt sentinel accepted.
pub fn parse_real<F: Scalar>(s: &str) -> Option<F> {
    match s.trim() {
        "<-1" | "-inf" | "-infinity" => Some(F::neg_infinity()),
        "inf" | "infinity" => Some(F::infinity()),
        v => v.parse::<f64>().ok().map(F::of),
    }
}

pub fn format_contempt<F: Scalar>(contempt: F) -> String {
    if contempt < -F::one() {
        "<-1".to_string()
    } else {
        format!("{contempt}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_the_reference_settings() {
        let c = SearchConfig::<f64>::default();
        assert!((c.c - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(c.c_pn, 1.0);
        assert_eq!(c.t_threshold, 5);
        assert_eq!(c.contempt, 0.0);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn flag_strings() {
        for s in ["FSU", "xSx", "xxx", "FxU", "Fxx"] {
            let f: Enhancements = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("FSX1".parse::<Enhancements>().is_err());
        assert!("SFU".parse::<Enhancements>().is_err());
    }

    #[test]
    fn budget_strings() {
        assert_eq!("iters:100".parse::<Budget>().unwrap(), Budget::Iterations(100));
        assert_eq!(
            "ms:125".parse::<Budget>().unwrap(),
            Budget::WallClock(Duration::from_millis(125))
        );
        assert!("s:1".parse::<Budget>().is_err());
    }

    #[test]
    fn key_value_setting_and_validation() {
        let mut c = SearchConfig::<f32>::default();
        c.set("c_pn", "1e6").unwrap();
        c.set("contempt", "<-1").unwrap();
        c.set("budget_mode", "ms").unwrap();
        c.set("budget_value", "125").unwrap();
        assert_eq!(c.c_pn, 1e6);
        assert!(c.contempt.is_infinite());
        assert_eq!(c.budget, Budget::WallClock(Duration::from_millis(125)));
        assert!(c.set("nope", "1").is_err());
        c.contempt = 1.5;
        assert!(c.validate().is_err());
        c.contempt = 0.0;
        c.c = -1.0;
        assert!(c.validate().is_err());
    }
}
