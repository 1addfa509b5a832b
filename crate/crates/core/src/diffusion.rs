//! Linear Threshold and Independent Cascade spread processes.
//!
//! The LT process runs in synchronous rounds. An inactive node `i` with a
//! nonempty neighborhood `N(i)` activates in round `t + 1` when the fraction
//! of its neighbors active after round `t` meets its threshold. Nodes with an
//! empty neighborhood only become active by being seeded.

use std::io::Write;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Comparison between a node's active-neighbor fraction and its threshold.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Activation {
    /// `fraction >= theta`
    #[default]
    AtLeast,
    /// `fraction > theta`
    Exceeds,
}

impl Activation {
    #[inline]
    pub fn fires(self, active_neighbors: usize, degree: usize, theta: f64) -> bool {
        if degree == 0 {
            return false;
        }
        let frac = active_neighbors as f64 / degree as f64;
        match self {
            Activation::AtLeast => frac >= theta,
            Activation::Exceeds => frac > theta,
        }
    }
}

/// Where a threshold assignment came from, enough to regenerate it.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub scheme: String,
    pub params: String,
    pub seed: Option<u64>,
}

/// Per-node resistance values in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdAssignment {
    values: Vec<f64>,
    provenance: Provenance,
}

impl ThresholdAssignment {
    pub fn new(values: Vec<f64>, provenance: Provenance) -> Result<Self> {
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::validation(format!(
                "threshold {v} of node {i} is outside [0, 1]"
            )));
        }
        Ok(ThresholdAssignment { values, provenance })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn check_for(&self, g: &Graph) -> Result<()> {
        if self.values.len() != g.node_count() {
            return Err(Error::validation(format!(
                "threshold assignment has {} values for a graph with {} nodes",
                self.values.len(),
                g.node_count()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadResult {
    /// Final active set, sorted ascending.
    pub active: Vec<usize>,
    /// `trace[0]` is the seed set, `trace[t]` the nodes activated in round `t`; each sorted.
    pub trace: Vec<Vec<usize>>,
    pub steps: usize,
}

impl SpreadResult {
    /// One line per step: the step index, then the newly activated original IDs, tab-separated.
    pub fn write_trace<W: Write>(&self, g: &Graph, mut out: W) -> Result<()> {
        for (step, nodes) in self.trace.iter().enumerate() {
            write!(out, "{step}")?;
            for &v in nodes {
                write!(out, "\t{}", g.original_id(v))?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

const NEVER: u32 = u32::MAX;

/// An LT process bound to one graph and one threshold assignment.
///
/// Thresholds are converted once into integer activation counts, so many
/// spreads (one per node when ranking) share that work. Each spread costs
/// O(sum of degrees of the nodes it activates) plus the number of
/// zero-requirement nodes.
#[derive(Debug, Clone)]
pub struct LtSpreader<'g> {
    g: &'g Graph,
    need: Vec<u32>,
    /// Nodes that activate in the first round with no active neighbors.
    eager: Vec<u32>,
}

/// Reusable buffers for [`LtSpreader`]; one per thread.
#[derive(Debug, Default, Clone)]
pub struct LtScratch {
    active: Vec<bool>,
    count: Vec<u32>,
    touched: Vec<u32>,
    activated: Vec<u32>,
    frontier: Vec<u32>,
    next: Vec<u32>,
}

impl LtScratch {
    pub fn new(n: usize) -> Self {
        LtScratch {
            active: vec![false; n],
            count: vec![0; n],
            ..Default::default()
        }
    }

    fn reset(&mut self, n: usize) {
        if self.active.len() != n {
            *self = LtScratch::new(n);
            return;
        }
        for &v in &self.touched {
            self.count[v as usize] = 0;
        }
        for &v in &self.activated {
            self.active[v as usize] = false;
        }
        self.touched.clear();
        self.activated.clear();
        self.frontier.clear();
        self.next.clear();
    }
}

impl<'g> LtSpreader<'g> {
    pub fn new(g: &'g Graph, theta: &ThresholdAssignment) -> Result<Self> {
        Self::with_activation(g, theta, Activation::default())
    }

    pub fn with_activation(
        g: &'g Graph,
        theta: &ThresholdAssignment,
        rule: Activation,
    ) -> Result<Self> {
        theta.check_for(g)?;
        let need: Vec<u32> = (0..g.node_count())
            .map(|i| required_count(rule, g.neighbors(i).len(), theta.values()[i]))
            .collect();
        let eager = (0..need.len() as u32)
            .filter(|&i| need[i as usize] == 0)
            .collect();
        Ok(LtSpreader { g, need, eager })
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn scratch(&self) -> LtScratch {
        LtScratch::new(self.g.node_count())
    }

    /// Size of the final active set.
    pub fn spread_size<I>(&self, seeds: I, scratch: &mut LtScratch) -> usize
    where
        I: IntoIterator<Item = usize>,
    {
        self.run(seeds, scratch, |_| {});
        scratch.activated.len()
    }

    /// Full result with the per-round trace.
    pub fn spread<I>(&self, seeds: I, scratch: &mut LtScratch) -> SpreadResult
    where
        I: IntoIterator<Item = usize>,
    {
        let mut trace: Vec<Vec<usize>> = Vec::new();
        self.run(seeds, scratch, |round| {
            let mut r: Vec<usize> = round.iter().map(|&v| v as usize).collect();
            r.sort_unstable();
            trace.push(r);
        });
        let mut active: Vec<usize> = scratch.activated.iter().map(|&v| v as usize).collect();
        active.sort_unstable();
        let steps = trace.len() - 1;
        SpreadResult {
            active,
            trace,
            steps,
        }
    }

    fn run<I, F>(&self, seeds: I, s: &mut LtScratch, mut on_round: F)
    where
        I: IntoIterator<Item = usize>,
        F: FnMut(&[u32]),
    {
        let g = self.g;
        s.reset(g.node_count());
        for v in seeds {
            if !s.active[v] {
                s.active[v] = true;
                s.activated.push(v as u32);
                s.frontier.push(v as u32);
            }
        }
        on_round(&s.frontier);

        let mut first = true;
        loop {
            s.next.clear();
            if first {
                for &v in &self.eager {
                    if !s.active[v as usize] {
                        s.next.push(v);
                    }
                }
                first = false;
            }
            for &u in &s.frontier {
                for &v in g.neighbors(u as usize) {
                    let vi = v as usize;
                    if s.active[vi] {
                        continue;
                    }
                    if s.count[vi] == 0 {
                        s.touched.push(v);
                    }
                    s.count[vi] += 1;
                    if s.count[vi] == self.need[vi] {
                        s.next.push(v);
                    }
                }
            }
            if s.next.is_empty() {
                break;
            }
            for &v in &s.next {
                s.active[v as usize] = true;
                s.activated.push(v);
            }
            on_round(&s.next);
            std::mem::swap(&mut s.frontier, &mut s.next);
        }
    }
}

/// Smallest number of active neighbors out of `degree` that makes `rule` fire.
fn required_count(rule: Activation, degree: usize, theta: f64) -> u32 {
    if degree == 0 {
        return NEVER;
    }
    let mut k = ((theta * degree as f64).ceil().max(0.0) as usize).min(degree);
    while k > 0 && rule.fires(k - 1, degree, theta) {
        k -= 1;
    }
    while k <= degree && !rule.fires(k, degree, theta) {
        k += 1;
    }
    if k > degree {
        NEVER
    } else {
        k as u32
    }
}

/// Runs the LT process from `seeds` under `theta` with the `>=` rule.
pub fn lt_spread(g: &Graph, seeds: &[usize], theta: &ThresholdAssignment) -> Result<SpreadResult> {
    lt_spread_with(g, seeds, theta, Activation::default())
}

pub fn lt_spread_with(
    g: &Graph,
    seeds: &[usize],
    theta: &ThresholdAssignment,
    rule: Activation,
) -> Result<SpreadResult> {
    check_seeds(g, seeds)?;
    let spreader = LtSpreader::with_activation(g, theta, rule)?;
    let mut scratch = spreader.scratch();
    Ok(spreader.spread(seeds.iter().copied(), &mut scratch))
}

fn check_seeds(g: &Graph, seeds: &[usize]) -> Result<()> {
    match seeds.iter().find(|&&s| s >= g.node_count()) {
        Some(&s) => Err(Error::NodeOutOfRange {
            index: s,
            node_count: g.node_count(),
        }),
        None => Ok(()),
    }
}

/// Reusable buffers for [`ic_spread_size`].
#[derive(Debug, Default, Clone)]
pub struct IcScratch {
    active: Vec<bool>,
    order: Vec<u32>,
}

/// Independent Cascade from `seeds` with uniform arc probability `p`.
///
/// Newly active nodes are processed in activation order, each trying its
/// out-arcs once in ascending target order, one uniform draw per attempt.
/// Returns the final active set, sorted.
pub fn ic_spread<R: Rng + ?Sized>(
    g: &Graph,
    seeds: &[usize],
    p: f64,
    rng: &mut R,
) -> Result<Vec<usize>> {
    check_probability(p)?;
    check_seeds(g, seeds)?;
    let mut scratch = IcScratch::default();
    ic_run(g, seeds.iter().copied(), p, rng, &mut scratch);
    let mut out: Vec<usize> = scratch.order.iter().map(|&v| v as usize).collect();
    out.sort_unstable();
    Ok(out)
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::validation(format!(
            "probability {p} is outside [0, 1]"
        )))
    }
}

/// Size of the IC spread; `p` must already be validated.
pub fn ic_spread_size<R, I>(
    g: &Graph,
    seeds: I,
    p: f64,
    rng: &mut R,
    scratch: &mut IcScratch,
) -> usize
where
    R: Rng + ?Sized,
    I: IntoIterator<Item = usize>,
{
    ic_run(g, seeds, p, rng, scratch);
    scratch.order.len()
}

fn ic_run<R, I>(g: &Graph, seeds: I, p: f64, rng: &mut R, s: &mut IcScratch)
where
    R: Rng + ?Sized,
    I: IntoIterator<Item = usize>,
{
    let n = g.node_count();
    if s.active.len() != n {
        s.active = vec![false; n];
    } else {
        for &v in &s.order {
            s.active[v as usize] = false;
        }
    }
    s.order.clear();
    for v in seeds {
        if !s.active[v] {
            s.active[v] = true;
            s.order.push(v as u32);
        }
    }
    let mut head = 0;
    while head < s.order.len() {
        let u = s.order[head] as usize;
        head += 1;
        for &v in g.out_neighbors(u) {
            let hit = rng.gen::<f64>() < p;
            if hit && !s.active[v as usize] {
                s.active[v as usize] = true;
                s.order.push(v);
            }
        }
    }
}
