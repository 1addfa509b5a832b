//! Threshold assignment schemes: uniform, random interval, centrality-derived.

use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::centrality::RankVector;
use crate::diffusion::{Provenance, ThresholdAssignment};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Rank values this close outside `[0, 1]` are treated as rounding noise and clamped.
const RANK_SLACK: f64 = 1e-12;

/// Every node gets `theta`.
pub fn uniform(g: &Graph, theta: f64) -> Result<ThresholdAssignment> {
    check_unit(theta, "threshold")?;
    ThresholdAssignment::new(
        vec![theta; g.node_count()],
        Provenance {
            scheme: "uniform".into(),
            params: format!("{theta}"),
            seed: None,
        },
    )
}

/// Independent uniform draws in `[lo, hi]`, or `(lo, hi]` when
/// `lo_exclusive` (a draw equal to `lo` is redrawn). Nodes draw in index order
/// from a ChaCha8 stream seeded with `seed`.
pub fn random_interval(
    g: &Graph,
    lo: f64,
    hi: f64,
    lo_exclusive: bool,
    seed: u64,
) -> Result<ThresholdAssignment> {
    check_interval(lo, hi, lo_exclusive)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..g.node_count())
        .map(|_| loop {
            let x = rng.gen_range(lo..=hi);
            if !(lo_exclusive && x == lo) {
                break x;
            }
        })
        .collect();
    ThresholdAssignment::new(
        values,
        Provenance {
            scheme: "random".into(),
            params: interval_label(lo, hi, lo_exclusive),
            seed: Some(seed),
        },
    )
}

fn check_unit(x: f64, what: &str) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::validation(format!("{what} {x} is outside [0, 1]")))
    }
}

fn check_interval(lo: f64, hi: f64, lo_exclusive: bool) -> Result<()> {
    check_unit(lo, "interval bound")?;
    check_unit(hi, "interval bound")?;
    if lo > hi {
        return Err(Error::validation(format!("inverted interval [{lo}, {hi}]")));
    }
    if lo == hi && lo_exclusive {
        return Err(Error::validation(format!("interval ({lo}, {hi}] is empty")));
    }
    Ok(())
}

fn interval_label(lo: f64, hi: f64, lo_exclusive: bool) -> String {
    format!("{}{lo}..{hi}]", if lo_exclusive { '(' } else { '[' })
}

/// `theta(i) = rank(i)`, or `1 - rank(i)` for the complement.
pub fn from_centrality(rank: &RankVector, complement: bool) -> Result<ThresholdAssignment> {
    let mut values = Vec::with_capacity(rank.len());
    for (i, &v) in rank.values().iter().enumerate() {
        if !(-RANK_SLACK..=1.0 + RANK_SLACK).contains(&v) {
            return Err(Error::validation(format!(
                "{} value {v} of node {i} is outside [0, 1]; the measure is not normalized",
                rank.measure()
            )));
        }
        let v = v.clamp(0.0, 1.0);
        values.push(if complement { 1.0 - v } else { v });
    }
    let label = if complement {
        format!("1-{}", rank.measure())
    } else {
        rank.measure().to_string()
    };
    ThresholdAssignment::new(
        values,
        Provenance {
            scheme: "centrality".into(),
            params: format!("{label} ({})", rank.params()),
            seed: None,
        },
    )
}

/// `1 - theta` for every node.
pub fn complement(theta: &ThresholdAssignment) -> ThresholdAssignment {
    let p = theta.provenance();
    ThresholdAssignment::new(
        theta.values().iter().map(|v| 1.0 - v).collect(),
        Provenance {
            scheme: format!("complement({})", p.scheme),
            params: p.params.clone(),
            seed: p.seed,
        },
    )
    .expect("complement of a valid assignment is valid")
}

/// Population statistics of an assignment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSummary {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub stddev: f64,
}

pub fn summarize(theta: &ThresholdAssignment) -> ThresholdSummary {
    let v = theta.values();
    let n = v.len() as f64;
    let min = v.iter().copied().fold(f64::INFINITY, f64::min);
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    ThresholdSummary {
        min,
        max,
        mean,
        stddev: var.sqrt(),
    }
}

/// A recipe for drawing threshold assignments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdScheme {
    Uniform(f64),
    Interval {
        lo: f64,
        hi: f64,
        lo_exclusive: bool,
    },
}

impl ThresholdScheme {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ThresholdScheme::Uniform(t) => check_unit(t, "threshold"),
            ThresholdScheme::Interval {
                lo,
                hi,
                lo_exclusive,
            } => check_interval(lo, hi, lo_exclusive),
        }
    }

    pub fn draw(&self, g: &Graph, seed: u64) -> Result<ThresholdAssignment> {
        match *self {
            ThresholdScheme::Uniform(t) => uniform(g, t),
            ThresholdScheme::Interval {
                lo,
                hi,
                lo_exclusive,
            } => random_interval(g, lo, hi, lo_exclusive, seed),
        }
    }
}

impl fmt::Display for ThresholdScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ThresholdScheme::Uniform(t) => write!(f, "uniform({t})"),
            ThresholdScheme::Interval {
                lo,
                hi,
                lo_exclusive,
            } => f.write_str(&interval_label(lo, hi, lo_exclusive)),
        }
    }
}

/// CSV `original_id,theta` in node order.
pub fn write_csv<W: Write>(g: &Graph, theta: &ThresholdAssignment, mut out: W) -> Result<()> {
    writeln!(out, "original_id,theta")?;
    for (i, t) in theta.values().iter().enumerate() {
        writeln!(out, "{},{}", g.original_id(i), t)?;
    }
    Ok(())
}

/// Reads the format of [`write_csv`]. Every node of `g` must appear exactly once.
pub fn read_csv<R: Read>(g: &Graph, source: R) -> Result<ThresholdAssignment> {
    let mut values = vec![f64::NAN; g.node_count()];
    let mut seen = 0;
    for (k, line) in BufReader::new(source).lines().enumerate() {
        let line = line?;
        let lineno = k + 1;
        let text = line.trim();
        if text.is_empty() || (k == 0 && text.starts_with("original_id")) {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: lineno,
            message,
        };
        let (id, t) = text
            .split_once(',')
            .ok_or_else(|| parse_err("expected original_id,theta".into()))?;
        let id: u64 = id
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("bad node id {id:?}")))?;
        let t: f64 = t
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("bad threshold {t:?}")))?;
        let i = g
            .index_of(id)
            .ok_or_else(|| parse_err(format!("node {id} is not in the graph")))?;
        if !values[i].is_nan() {
            return Err(parse_err(format!("node {id} listed twice")));
        }
        values[i] = t;
        seen += 1;
    }
    if seen != g.node_count() {
        return Err(Error::validation(format!(
            "threshold file covers {seen} of {} nodes",
            g.node_count()
        )));
    }
    ThresholdAssignment::new(
        values,
        Provenance {
            scheme: "file".into(),
            params: String::new(),
            seed: None,
        },
    )
}
