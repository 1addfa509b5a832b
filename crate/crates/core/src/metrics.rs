//! Statistics of a rank distribution and the seed-set influence measures
//! built from it.
//!
//! The three top-set measures seed an LT spread with the best-ranked actors
//! and report the activated fraction of the network:
//!
//! * `Top10`: the 10 best-ranked actors.
//! * `Top10%Actors`: the best `floor(n / 10)` actors.
//! * `Top10%Values`: every actor holding one of the highest `ceil(|D| / 10)`
//!   distinct rank values, `D` being the set of distinct values.
//!
//! Ties in rank are broken by ascending original ID.

use serde::{Deserialize, Serialize};

use crate::centrality::RankVector;
use crate::diffusion::{Activation, LtSpreader, ThresholdAssignment};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Size of the fixed top set.
pub const TOP_K: usize = 10;

/// Gini coefficient, `sum_ij |x_i - x_j| / (2 n sum_i x_i)`, via the sorted
/// form `sum_k (2k - n + 1) x_(k) / (n sum x)`.
///
/// An all-zero input has no defined coefficient; it yields 0 with a logged warning.
pub fn gini(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::validation("Gini coefficient of an empty list"));
    }
    if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::validation(format!(
            "Gini coefficient needs nonnegative values, got {bad}"
        )));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let total: f64 = sorted.iter().sum();
    if total == 0.0 {
        log::warn!("Gini coefficient of an all-zero list is undefined; reporting 0");
        return Ok(0.0);
    }
    let weighted: f64 = sorted
        .iter()
        .enumerate()
        .map(|(k, x)| (2.0 * k as f64 - n + 1.0) * x)
        .sum();
    Ok((weighted / (n * total)).clamp(0.0, 1.0))
}

/// Population standard deviation and number of distinct values.
///
/// Distinct values are counted on [`RankVector::tie_keys`], i.e. on exact
/// numerators for LT-based ranks.
pub fn rank_stats(rank: &RankVector) -> Result<(f64, usize)> {
    let v = rank.values();
    if v.is_empty() {
        return Err(Error::validation("statistics of an empty rank vector"));
    }
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    let mut keys = rank.tie_keys();
    keys.sort_unstable();
    keys.dedup();
    Ok((var.sqrt(), keys.len()))
}

/// Rounding of `|D| / 10` when picking the top distinct values.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValuesCut {
    #[default]
    Ceil,
    Floor,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopOptions {
    pub values_cut: ValuesCut,
    pub activation: Activation,
}

/// Seed sets derived from one ranking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopSets {
    order: Vec<usize>,
    keys: Vec<i64>,
}

impl TopSets {
    pub fn new(rank: &RankVector) -> Self {
        TopSets {
            order: rank.ranking(),
            keys: rank.tie_keys(),
        }
    }

    fn require(&self, k: usize) -> Result<()> {
        if self.order.len() < k {
            return Err(Error::TooFewNodes {
                required: k,
                actual: self.order.len(),
            });
        }
        Ok(())
    }

    pub fn top10(&self) -> Result<&[usize]> {
        self.require(TOP_K)?;
        Ok(&self.order[..TOP_K])
    }

    pub fn top10pct_actors(&self) -> Result<&[usize]> {
        self.require(TOP_K)?;
        Ok(&self.order[..self.order.len() / 10])
    }

    pub fn top10pct_values(&self, cut: ValuesCut) -> &[usize] {
        let mut distinct = 0usize;
        let mut prev = None;
        for &i in &self.order {
            if prev != Some(self.keys[i]) {
                distinct += 1;
                prev = Some(self.keys[i]);
            }
        }
        let take = match cut {
            ValuesCut::Ceil => distinct.div_ceil(10),
            ValuesCut::Floor => distinct / 10,
        };
        if take == 0 {
            return &[];
        }
        // `order` is sorted by key, so the chosen actors form a prefix ending
        // after the last actor holding the `take`-th distinct value.
        let mut seen = 0usize;
        let mut prev = None;
        for (pos, &i) in self.order.iter().enumerate() {
            if prev != Some(self.keys[i]) {
                seen += 1;
                if seen > take {
                    return &self.order[..pos];
                }
                prev = Some(self.keys[i]);
            }
        }
        &self.order
    }
}

fn check_lengths(g: &Graph, rank: &RankVector) -> Result<()> {
    if rank.len() != g.node_count() {
        return Err(Error::validation(format!(
            "rank vector has {} values for a graph with {} nodes",
            rank.len(),
            g.node_count()
        )));
    }
    Ok(())
}

fn fraction(spreader: &LtSpreader<'_>, seeds: &[usize]) -> f64 {
    let mut scratch = spreader.scratch();
    spreader.spread_size(seeds.iter().copied(), &mut scratch) as f64
        / spreader.graph().node_count() as f64
}

pub fn top10(g: &Graph, rank: &RankVector, theta: &ThresholdAssignment) -> Result<f64> {
    check_lengths(g, rank)?;
    let sets = TopSets::new(rank);
    let spreader = LtSpreader::new(g, theta)?;
    Ok(fraction(&spreader, sets.top10()?))
}

pub fn top10pct_actors(
    g: &Graph,
    rank: &RankVector,
    theta: &ThresholdAssignment,
) -> Result<(f64, usize)> {
    check_lengths(g, rank)?;
    let sets = TopSets::new(rank);
    let spreader = LtSpreader::new(g, theta)?;
    let seeds = sets.top10pct_actors()?;
    Ok((fraction(&spreader, seeds), seeds.len()))
}

pub fn top10pct_values(
    g: &Graph,
    rank: &RankVector,
    theta: &ThresholdAssignment,
) -> Result<(f64, usize)> {
    check_lengths(g, rank)?;
    let sets = TopSets::new(rank);
    let spreader = LtSpreader::new(g, theta)?;
    let seeds = sets.top10pct_values(ValuesCut::default());
    Ok((fraction(&spreader, seeds), seeds.len()))
}

/// The three spread-based measures of one ranking under one assignment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TopSpreads {
    pub top10: f64,
    pub top10pct_actors: f64,
    pub actors_size: usize,
    pub top10pct_values: f64,
    pub values_size: usize,
}

pub fn top_spreads(
    g: &Graph,
    rank: &RankVector,
    theta: &ThresholdAssignment,
    opts: TopOptions,
) -> Result<TopSpreads> {
    check_lengths(g, rank)?;
    let sets = TopSets::new(rank);
    let spreader = LtSpreader::with_activation(g, theta, opts.activation)?;
    let top = sets.top10()?;
    let actors = sets.top10pct_actors()?;
    let values = sets.top10pct_values(opts.values_cut);
    Ok(TopSpreads {
        top10: fraction(&spreader, top),
        top10pct_actors: fraction(&spreader, actors),
        actors_size: actors.len(),
        top10pct_values: fraction(&spreader, values),
        values_size: values.len(),
    })
}

/// One table row: distribution statistics plus top-set spreads.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub sigma: f64,
    pub distinct: usize,
    pub gini: f64,
    pub top: TopSpreads,
}

pub fn metrics_row(
    g: &Graph,
    rank: &RankVector,
    theta: &ThresholdAssignment,
    opts: TopOptions,
) -> Result<MetricsRow> {
    let (sigma, distinct) = rank_stats(rank)?;
    let gini = gini(rank.values())?;
    let top = top_spreads(g, rank, theta, opts)?;
    Ok(MetricsRow {
        sigma,
        distinct,
        gini,
        top,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::{ExactValues, Measure};
    use crate::thresholds;

    fn double_sum_gini(x: &[f64]) -> f64 {
        let n = x.len() as f64;
        let num: f64 = x
            .iter()
            .flat_map(|a| x.iter().map(move |b| (a - b).abs()))
            .sum();
        num / (2.0 * n * x.iter().sum::<f64>())
    }

    #[test]
    fn gini_examples() {
        assert_eq!(gini(&[1.0, 2.0, 3.0, 4.0]).unwrap(), 0.25);
        assert_eq!(double_sum_gini(&[1.0, 2.0, 3.0, 4.0]), 0.25);
        assert_eq!(gini(&[0.0, 1.0]).unwrap(), 0.5);
        assert_eq!(gini(&[3.5; 7]).unwrap(), 0.0);
        assert_eq!(gini(&[0.0, 0.0]).unwrap(), 0.0);
        assert!(gini(&[]).is_err());
        assert!(gini(&[1.0, -1.0]).is_err());
    }

    #[test]
    fn rank_stats_examples() {
        let c = RankVector::new(Measure::PageRank, vec![0.3; 5], "");
        assert_eq!(rank_stats(&c).unwrap(), (0.0, 1));
        let two = RankVector::new(Measure::PageRank, vec![0.0, 1.0], "");
        assert_eq!(rank_stats(&two).unwrap(), (0.5, 2));
    }

    fn exact(nums: Vec<u64>) -> RankVector {
        let d = nums.len() as u64;
        RankVector::from_exact(
            Measure::Fltr,
            ExactValues {
                numerators: nums,
                denominator: d,
            },
            "",
        )
    }

    #[test]
    fn value_cut_takes_whole_tie_groups() {
        // Distinct values 9,8,...,0 with value 9 held by three actors.
        let r = exact(vec![9, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0, 9]);
        let sets = TopSets::new(&r);
        assert_eq!(sets.top10pct_values(ValuesCut::Ceil), &[0, 1, 11]);
        assert_eq!(sets.top10pct_values(ValuesCut::Floor), &[0, 1, 11]);
        assert_eq!(sets.top10().unwrap(), &[0, 1, 11, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(sets.top10pct_actors().unwrap(), &[0]);
    }

    #[test]
    fn constant_rank_values_cut_is_everyone() {
        let r = exact(vec![3; 12]);
        let sets = TopSets::new(&r);
        assert_eq!(sets.top10pct_values(ValuesCut::Ceil).len(), 12);
        assert_eq!(sets.top10pct_values(ValuesCut::Floor).len(), 0);
        assert_eq!(sets.top10pct_actors().unwrap(), &[0]);
    }

    #[test]
    fn distinct_ranks_take_ceil_of_n_over_ten() {
        let r = exact((0..25).collect());
        assert_eq!(TopSets::new(&r).top10pct_values(ValuesCut::Ceil).len(), 3);
    }

    #[test]
    fn too_few_nodes() {
        let g = Graph::from_edges(false, &[(0, 1), (1, 2), (2, 0)], None).unwrap();
        let r = RankVector::new(Measure::PageRank, vec![1.0 / 3.0; 3], "");
        let t = thresholds::uniform(&g, 0.5).unwrap();
        assert!(matches!(
            top10(&g, &r, &t),
            Err(Error::TooFewNodes {
                required: 10,
                actual: 3
            })
        ));
        assert!(metrics_row(&g, &r, &t, TopOptions::default()).is_err());
        let (spread, size) = top10pct_values(&g, &r, &t).unwrap();
        assert_eq!((spread, size), (1.0, 3));
    }

    #[test]
    fn everything_seeded_spreads_fully() {
        let edges: Vec<(u64, u64)> = (0..12).map(|i| (i, (i + 1) % 12)).collect();
        let g = Graph::from_edges(false, &edges, None).unwrap();
        let r = exact(vec![1; 12]);
        let t = thresholds::uniform(&g, 0.5).unwrap();
        // Ten consecutive cycle nodes: the two others each see one of two neighbors active.
        assert_eq!(top10(&g, &r, &t).unwrap(), 1.0);
        let t1 = thresholds::uniform(&g, 1.0).unwrap();
        // Node 10 has neighbors 9 and 11, only 9 is seeded.
        assert_eq!(top10(&g, &r, &t1).unwrap(), 10.0 / 12.0);
    }
}
