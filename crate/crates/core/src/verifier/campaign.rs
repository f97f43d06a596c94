//! Randomized verification campaigns over a seeded corpus.

use std::fmt;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::checks::{rerun_check, run_checks, CheckConfig, CheckResult};
use super::generate::{GenBounds, Generator, Instance, Tags};
use super::shrink::shrink;
use crate::builtins;
use crate::io::{algebra_dim, InstanceFile};

/// Attempts per corpus slot before a generator failure is reported.
const MAX_ATTEMPTS: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Source {
    Builtin { name: String },
    Generated { generator: Generator, seed: u64 },
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Builtin { name } => write!(f, "builtin {name}"),
            Source::Generated { generator, seed } => write!(f, "{} {seed}", generator.name()),
        }
    }
}

impl Source {
    /// Parses the `Display` form.
    pub fn parse(line: &str) -> Option<Source> {
        let mut words = line.split_whitespace();
        let (kind, arg) = (words.next()?, words.next()?);
        if words.next().is_some() {
            return None;
        }
        if kind == "builtin" {
            builtins::by_name(arg)?;
            return Some(Source::Builtin { name: arg.into() });
        }
        Some(Source::Generated {
            generator: Generator::from_name(kind)?,
            seed: arg.parse().ok()?,
        })
    }
}

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub seed: u64,
    /// generated instances, split evenly between groupoid and partial
    /// generators (groupoids take the odd one)
    pub trials: usize,
    pub bounds: GenBounds,
    pub checks: CheckConfig,
    /// prepend the built-in examples when `trials > 0`
    pub include_builtins: bool,
    pub shrink: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: 0,
            trials: 600,
            bounds: GenBounds::default(),
            checks: CheckConfig::default(),
            include_builtins: true,
            shrink: true,
        }
    }
}

pub fn plan_corpus(config: &CampaignConfig) -> Vec<Source> {
    let mut out = Vec::new();
    if config.trials == 0 {
        return out;
    }
    if config.include_builtins {
        out.extend(builtins::NAMES.iter().map(|n| Source::Builtin { name: n.to_string() }));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let groupoids = config.trials.div_ceil(2);
    for i in 0..config.trials {
        let generator = if i < groupoids { Generator::Groupoid } else { Generator::Partial };
        out.push(Source::Generated {
            generator,
            seed: rng.next_u64(),
        });
    }
    out
}

/// Builds the instance for `source`. With `retry`, a generator failure moves
/// on to seeds derived from the original one, and the returned source names
/// the seed actually used.
pub fn materialize(source: &Source, bounds: &GenBounds, retry: bool) -> Result<(Source, Instance), String> {
    match source {
        Source::Builtin { name } => {
            let sys = builtins::by_name(name).ok_or_else(|| format!("unknown builtin {name:?}"))?;
            let dim = algebra_dim(&sys);
            if dim > bounds.max_dim {
                return Err(format!("builtin {name} has dimension {dim} > {}", bounds.max_dim));
            }
            Ok((source.clone(), Instance::new(sys, &format!("builtin:{name}"), 0)))
        }
        Source::Generated { generator, seed } => {
            let mut derived = ChaCha8Rng::seed_from_u64(*seed);
            let mut s = *seed;
            let attempts = if retry { MAX_ATTEMPTS } else { 1 };
            let mut last = String::new();
            for _ in 0..attempts {
                match generator.generate(s, bounds) {
                    Ok(inst) => {
                        return Ok((
                            Source::Generated {
                                generator: *generator,
                                seed: s,
                            },
                            inst,
                        ))
                    }
                    Err(e) => last = e.to_string(),
                }
                s = derived.next_u64();
            }
            Err(format!("{source}: {last}"))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ShrunkFailure {
    pub check: &'static str,
    pub instance: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub source: Source,
    pub tags: Option<Tags>,
    pub dim: usize,
    pub results: Vec<CheckResult>,
    pub shrunk: Vec<ShrunkFailure>,
    /// set when the instance could not be generated
    pub error: Option<String>,
}

impl Outcome {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    pub fn is_clean(&self) -> bool {
        self.error.is_none() && self.results.iter().all(|r| r.passed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub outcomes: Vec<Outcome>,
}

impl Summary {
    pub fn instances(&self) -> usize {
        self.outcomes.iter().filter(|o| o.error.is_none()).count()
    }

    pub fn checks(&self) -> usize {
        self.outcomes.iter().map(|o| o.results.len()).sum()
    }

    pub fn failures(&self) -> usize {
        self.outcomes.iter().map(|o| o.failures().count()).sum()
    }

    pub fn errors(&self) -> usize {
        self.outcomes.iter().filter(|o| o.error.is_some()).count()
    }

    pub fn is_clean(&self) -> bool {
        self.outcomes.iter().all(Outcome::is_clean)
    }

    /// One `Source` per line, replayable with [`run_sources`].
    pub fn seed_file(&self) -> String {
        self.outcomes.iter().map(|o| format!("{}\n", o.source)).collect()
    }
}

pub fn parse_seed_file(text: &str) -> Result<Vec<Source>, String> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| Source::parse(l).ok_or_else(|| format!("line {}: cannot parse {l:?}", i + 1)))
        .collect()
}

fn run_one(source: &Source, config: &CampaignConfig, retry: bool) -> Outcome {
    let (source, inst) = match materialize(source, &config.bounds, retry) {
        Ok(x) => x,
        Err(e) => {
            return Outcome {
                source: source.clone(),
                tags: None,
                dim: 0,
                results: Vec::new(),
                shrunk: Vec::new(),
                error: Some(e),
            }
        }
    };
    let results = run_checks(&inst, &config.checks);
    let shrunk = if config.shrink {
        results
            .iter()
            .filter(|r| !r.passed)
            .map(|r| {
                let small = shrink(&inst, |i| rerun_check(r.name, i, &config.checks).is_some_and(|c| !c.passed));
                ShrunkFailure {
                    check: r.name,
                    instance: serde_json::to_value(InstanceFile::from_dynsys(&small.system)).expect("serializable"),
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    Outcome {
        source,
        tags: Some(inst.tags.clone()),
        dim: algebra_dim(&inst.system),
        results,
        shrunk,
        error: None,
    }
}

/// Checks every source in parallel; outcomes keep the input order.
pub fn run_sources(sources: &[Source], config: &CampaignConfig, retry: bool) -> Summary {
    Summary {
        outcomes: sources.par_iter().map(|s| run_one(s, config, retry)).collect(),
    }
}

pub fn run_campaign(config: &CampaignConfig) -> Summary {
    run_sources(&plan_corpus(config), config, true)
}
