//! Seeded random process-tree generation: the number of activities is drawn
//! from a triangular distribution, operators from a configurable categorical
//! distribution, and every activity budget of one becomes a leaf.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::tree::{Operator, ProcessTree};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("triangular bounds must satisfy low <= mode <= high and low >= 1, got ({0}, {1}, {2})")]
    BadTriangle(u32, u32, u32),
    #[error("operator probabilities must lie in [0, 1] and sum to 1, got sum {0}")]
    BadProbabilities(f64),
    #[error("bad generator config line {line:?}: {message}")]
    BadLine { line: String, message: String },
    #[error("unknown generator config key {0:?}")]
    UnknownKey(String),
}

/// Operator weights; must sum to 1 within 1e-9.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorProbabilities {
    pub seq: f64,
    pub xor: f64,
    pub and: f64,
    pub loop_: f64,
}

impl Default for OperatorProbabilities {
    fn default() -> Self {
        OperatorProbabilities { seq: 0.35, xor: 0.25, and: 0.25, loop_: 0.15 }
    }
}

impl OperatorProbabilities {
    fn validate(&self) -> Result<(), ConfigError> {
        let parts = [self.seq, self.xor, self.and, self.loop_];
        let sum: f64 = parts.iter().sum();
        if parts.iter().any(|p| !(0.0..=1.0).contains(p)) || (sum - 1.0).abs() > 1e-9 {
            return Err(ConfigError::BadProbabilities(sum));
        }
        Ok(())
    }
}

/// Generator configuration: triangular activity-count distribution given as
/// `(low, mode, high)`, operator probabilities, and the seed.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub activities: (u32, u32, u32),
    pub probabilities: OperatorProbabilities,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(activities: (u32, u32, u32), seed: u64) -> Result<Self, ConfigError> {
        let config =
            GeneratorConfig { activities, probabilities: OperatorProbabilities::default(), seed };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let (low, mode, high) = self.activities;
        if low < 1 || low > mode || mode > high {
            return Err(ConfigError::BadTriangle(low, mode, high));
        }
        self.probabilities.validate()
    }

    /// Parses a plain `key=value` config. Keys: `activities=L,M,H`,
    /// `probs=SEQ,XOR,AND,LOOP`, `seed=N`. Blank lines and `#` comments are
    /// ignored.
    pub fn from_key_value_str(input: &str) -> Result<Self, ConfigError> {
        let mut config = GeneratorConfig {
            activities: (10, 20, 30),
            probabilities: OperatorProbabilities::default(),
            seed: 0,
        };
        for raw in input.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::BadLine {
                line: line.to_string(),
                message: "expected key=value".to_string(),
            })?;
            let bad = |message: &str| ConfigError::BadLine {
                line: line.to_string(),
                message: message.to_string(),
            };
            match key.trim() {
                "activities" => {
                    config.activities =
                        parse_triple(value).ok_or_else(|| bad("expected three integers L,M,H"))?;
                }
                "probs" => {
                    let parts: Vec<f64> = value
                        .split(',')
                        .map(|p| p.trim().parse::<f64>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| bad("expected four numbers SEQ,XOR,AND,LOOP"))?;
                    if parts.len() != 4 {
                        return Err(bad("expected four numbers SEQ,XOR,AND,LOOP"));
                    }
                    config.probabilities = OperatorProbabilities {
                        seq: parts[0],
                        xor: parts[1],
                        and: parts[2],
                        loop_: parts[3],
                    };
                }
                "seed" => {
                    config.seed = value.trim().parse().map_err(|_| bad("expected an integer"))?;
                }
                other => return Err(ConfigError::UnknownKey(other.to_string())),
            }
        }
        config.validate()?;
        Ok(config)
    }
}

fn parse_triple(value: &str) -> Option<(u32, u32, u32)> {
    let parts: Vec<u32> = value.split(',').map(|p| p.trim().parse().ok()).collect::<Option<_>>()?;
    match parts.as_slice() {
        [a, b, c] => Some((*a, *b, *c)),
        _ => None,
    }
}

/// Inverse-CDF triangular sample, rounded to the nearest integer and clamped
/// to `[low, high]`.
fn sample_triangular(rng: &mut impl Rng, (low, mode, high): (u32, u32, u32)) -> u32 {
    let (a, c, b) = (f64::from(low), f64::from(mode), f64::from(high));
    if high == low {
        return low;
    }
    let u: f64 = rng.gen();
    let cut = (c - a) / (b - a);
    let x = if u < cut { a + (u * (b - a) * (c - a)).sqrt() } else { b - ((1.0 - u) * (b - a) * (b - c)).sqrt() };
    (x.round() as u32).clamp(low, high)
}

/// Draws a process tree. Deterministic in the config (including the seed):
/// the same config always yields the same tree. The tree has exactly the
/// sampled number of distinct activity leaves, named `a1..an` left to right;
/// loops are binary and the other operators draw an arity in `[2, 4]`.
pub fn sample_tree(config: &GeneratorConfig) -> ProcessTree {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let count = sample_triangular(&mut rng, config.activities);
    let mut names = (1..=count).map(|i| format!("a{i}"));
    build(&mut rng, &config.probabilities, count, &mut names)
}

fn build(
    rng: &mut impl Rng,
    probs: &OperatorProbabilities,
    budget: u32,
    names: &mut impl Iterator<Item = String>,
) -> ProcessTree {
    if budget == 1 {
        return ProcessTree::Leaf(crate::petri::Label::Activity(
            names.next().expect("activity budget matches the name supply"),
        ));
    }
    let kind = sample_operator(rng, probs);
    let arity = if kind == Operator::Loop {
        2
    } else {
        rng.gen_range(2..=4u32).min(budget)
    };
    let parts = split_budget(rng, budget, arity);
    let children = parts.into_iter().map(|b| build(rng, probs, b, names)).collect();
    ProcessTree::Operator(kind, children)
}

fn sample_operator(rng: &mut impl Rng, probs: &OperatorProbabilities) -> Operator {
    let u: f64 = rng.gen();
    if u < probs.seq {
        Operator::Seq
    } else if u < probs.seq + probs.xor {
        Operator::Xor
    } else if u < probs.seq + probs.xor + probs.and {
        Operator::And
    } else {
        Operator::Loop
    }
}

/// Random composition of `budget` into `arity` positive parts: `arity - 1`
/// distinct cut points in `1..budget`.
fn split_budget(rng: &mut impl Rng, budget: u32, arity: u32) -> Vec<u32> {
    debug_assert!(arity >= 2 && budget >= arity);
    let mut cuts: Vec<u32> = Vec::with_capacity(arity as usize + 1);
    while cuts.len() < arity as usize - 1 {
        let cut = rng.gen_range(1..budget);
        if !cuts.contains(&cut) {
            cuts.push(cut);
        }
    }
    cuts.push(0);
    cuts.push(budget);
    cuts.sort_unstable();
    cuts.windows(2).map(|w| w[1] - w[0]).collect()
}
