use std::iter;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ExactValues, Measure, RankVector};
use crate::diffusion::{
    check_probability, ic_spread_size, Activation, IcScratch, LtSpreader, ThresholdAssignment,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seeding::{self, stream};
use crate::thresholds::ThresholdScheme;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IcrParams {
    pub p: f64,
    pub runs: usize,
    pub seed: u64,
}

impl Default for IcrParams {
    fn default() -> Self {
        IcrParams {
            p: 0.01,
            runs: 100,
            seed: 0,
        }
    }
}

/// Independent Cascade Rank: mean singleton IC spread over `runs` trials,
/// divided by the largest mean so the top node scores exactly 1.
///
/// Node `u` draws from its own stream keyed by `(seed, u)`.
pub fn icr(g: &Graph, params: IcrParams) -> Result<RankVector> {
    check_probability(params.p)?;
    if params.runs == 0 {
        return Err(Error::validation("ICR needs at least one run"));
    }
    let n = g.node_count();
    let totals: Vec<u64> = (0..n)
        .into_par_iter()
        .map_init(IcScratch::default, |scratch, u| {
            let mut rng = seeding::rng_for(params.seed, stream::ICR_NODE, u as u64);
            (0..params.runs)
                .map(|_| ic_spread_size(g, [u], params.p, &mut rng, scratch) as u64)
                .sum()
        })
        .collect();
    // Means share the denominator `runs`, so the ratio of totals is the ratio of means.
    let max = *totals.iter().max().expect("graph is nonempty") as f64;
    let values = totals.iter().map(|&t| t as f64 / max).collect();
    Ok(RankVector::new(
        Measure::Icr,
        values,
        format!("p={} runs={} seed={}", params.p, params.runs, params.seed),
    ))
}

/// Spread size from `{i} ∪ neighbors(i)` for every node `i`.
fn neighborhood_spreads(
    g: &Graph,
    theta: &ThresholdAssignment,
    rule: Activation,
    forward: bool,
) -> Result<Vec<u64>> {
    let spreader = LtSpreader::with_activation(g, theta, rule)?;
    let n = g.node_count();
    Ok((0..n)
        .into_par_iter()
        .map_init(
            || spreader.scratch(),
            |scratch, i| {
                let nb = if forward {
                    g.out_neighbors(i)
                } else {
                    g.neighbors(i)
                };
                let seeds = iter::once(i).chain(nb.iter().map(|&j| j as usize));
                spreader.spread_size(seeds, scratch) as u64
            },
        )
        .collect())
}

fn exact_rank(
    measure: Measure,
    g: &Graph,
    counts: Vec<u64>,
    theta: &ThresholdAssignment,
) -> RankVector {
    let p = theta.provenance();
    RankVector::from_exact(
        measure,
        ExactValues {
            numerators: counts,
            denominator: g.node_count() as u64,
        },
        format!("theta={} {}", p.scheme, p.params),
    )
}

/// Linear Threshold Rank: `|F({i} ∪ N(i))| / n`.
pub fn ltr(g: &Graph, theta: &ThresholdAssignment) -> Result<RankVector> {
    ltr_with(g, theta, Activation::default())
}

pub fn ltr_with(g: &Graph, theta: &ThresholdAssignment, rule: Activation) -> Result<RankVector> {
    let counts = neighborhood_spreads(g, theta, rule, false)?;
    Ok(exact_rank(Measure::Ltr, g, counts, theta))
}

/// Forward Linear Threshold Rank: `|F({i} ∪ N⁺(i))| / n`.
pub fn fltr(g: &Graph, theta: &ThresholdAssignment) -> Result<RankVector> {
    fltr_with(g, theta, Activation::default())
}

pub fn fltr_with(g: &Graph, theta: &ThresholdAssignment, rule: Activation) -> Result<RankVector> {
    let counts = neighborhood_spreads(g, theta, rule, true)?;
    Ok(exact_rank(Measure::Fltr, g, counts, theta))
}

/// Per-node mean of FLTR over several threshold assignments.
pub fn fltr_mean(
    g: &Graph,
    assignments: &[ThresholdAssignment],
    rule: Activation,
) -> Result<RankVector> {
    let runs: Vec<RankVector> = assignments
        .iter()
        .map(|t| fltr_with(g, t, rule))
        .collect::<Result<_>>()?;
    mean_of_runs(g, &runs, "explicit assignments".to_string())
}

fn mean_of_runs(g: &Graph, runs: &[RankVector], params: String) -> Result<RankVector> {
    if runs.is_empty() {
        return Err(Error::validation("FLTR averaging needs at least one run"));
    }
    let n = g.node_count();
    let mut sums = vec![0u64; n];
    for r in runs {
        let e = r.exact().expect("FLTR vectors are exact");
        for (s, k) in sums.iter_mut().zip(&e.numerators) {
            *s += k;
        }
    }
    Ok(RankVector::from_exact(
        Measure::Fltr,
        ExactValues {
            numerators: sums,
            denominator: (runs.len() * n) as u64,
        },
        params,
    ))
}

/// FLTR averaged over `runs` assignments drawn from `scheme`.
#[derive(Debug, Clone)]
pub struct SampledFltr {
    pub mean: RankVector,
    /// Each drawn assignment with the FLTR it produced, in run order.
    pub runs: Vec<(ThresholdAssignment, RankVector)>,
}

/// Run `r` draws its thresholds with seed `derive_seed(seed, THRESHOLD_RUN, r)`.
pub fn fltr_sampled(
    g: &Graph,
    scheme: &ThresholdScheme,
    runs: usize,
    seed: u64,
    rule: Activation,
) -> Result<SampledFltr> {
    let mut per_run = Vec::with_capacity(runs);
    let mean = fltr_sampled_each(g, scheme, runs, seed, rule, |_, theta, rank| {
        per_run.push((theta.clone(), rank.clone()));
        Ok(())
    })?;
    Ok(SampledFltr {
        mean,
        runs: per_run,
    })
}

/// Like [`fltr_sampled`] but hands each run to `visit` instead of keeping it.
pub fn fltr_sampled_each<F>(
    g: &Graph,
    scheme: &ThresholdScheme,
    runs: usize,
    seed: u64,
    rule: Activation,
    mut visit: F,
) -> Result<RankVector>
where
    F: FnMut(usize, &ThresholdAssignment, &RankVector) -> Result<()>,
{
    if runs == 0 {
        return Err(Error::validation("FLTR sampling needs at least one run"));
    }
    scheme.validate()?;
    let n = g.node_count();
    let mut sums = vec![0u64; n];
    for r in 0..runs {
        let theta = scheme.draw(
            g,
            seeding::derive_seed(seed, stream::THRESHOLD_RUN, r as u64),
        )?;
        let rank = fltr_with(g, &theta, rule)?;
        let e = rank.exact().expect("FLTR vectors are exact");
        for (s, k) in sums.iter_mut().zip(&e.numerators) {
            *s += k;
        }
        visit(r, &theta, &rank)?;
    }
    Ok(RankVector::from_exact(
        Measure::Fltr,
        ExactValues {
            numerators: sums,
            denominator: (runs * n) as u64,
        },
        format!("scheme={scheme} runs={runs} seed={seed}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffusion::Provenance;
    use crate::thresholds;

    fn theta(g: &Graph, t: f64) -> ThresholdAssignment {
        thresholds::uniform(g, t).unwrap()
    }

    #[test]
    fn icr_examples() {
        let g = Graph::from_edges(true, &[(0, 1), (1, 2)], None).unwrap();
        let zero = icr(
            &g,
            IcrParams {
                p: 0.0,
                runs: 5,
                seed: 1,
            },
        )
        .unwrap();
        assert_eq!(zero.values(), &[1.0, 1.0, 1.0]);
        let one = icr(
            &g,
            IcrParams {
                p: 1.0,
                runs: 5,
                seed: 1,
            },
        )
        .unwrap();
        assert_eq!(one.values(), &[1.0, 2.0 / 3.0, 1.0 / 3.0]);
    }

    #[test]
    fn icr_single_arc_half_probability() {
        let g = Graph::from_edges(true, &[(0, 1)], None).unwrap();
        let r = icr(
            &g,
            IcrParams {
                p: 0.5,
                runs: 10_000,
                seed: 3,
            },
        )
        .unwrap();
        assert_eq!(r.values()[0], 1.0);
        assert!(
            (r.values()[1] - 1.0 / 1.5).abs() <= 0.02,
            "{}",
            r.values()[1]
        );
    }

    #[test]
    fn ltr_examples() {
        let g =
            Graph::from_nodes_and_edges(false, &[0, 1, 2, 3, 4], &[(0, 1), (1, 2), (2, 3)], None)
                .unwrap();
        let r = ltr(&g, &theta(&g, 0.5)).unwrap();
        assert_eq!(r.values()[4], 1.0 / 5.0);
        assert_eq!(r.values()[0], 4.0 / 5.0);

        let k3 = Graph::from_edges(false, &[(0, 1), (1, 2), (0, 2)], None).unwrap();
        for t in [0.0, 0.3, 1.0] {
            assert_eq!(ltr(&k3, &theta(&k3, t)).unwrap().values(), &[1.0, 1.0, 1.0]);
        }
    }

    #[test]
    fn fltr_examples() {
        let g = Graph::from_edges(true, &[(0, 1), (1, 2), (2, 3)], None).unwrap();
        let r = fltr(&g, &theta(&g, 0.5)).unwrap();
        assert_eq!(r.values()[0], 1.0);
        assert_eq!(r.exact().unwrap().numerators, vec![4, 4, 4, 4]);

        let r1 = fltr(&g, &theta(&g, 1.0)).unwrap();
        assert_eq!(r1.values()[3], 0.25);
    }

    #[test]
    fn sampled_with_a_constant_scheme_matches_fltr() {
        let g = Graph::from_edges(true, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)], None).unwrap();
        let plain = fltr(&g, &theta(&g, 0.5)).unwrap();
        let s = fltr_sampled(
            &g,
            &ThresholdScheme::Uniform(0.5),
            4,
            11,
            Activation::AtLeast,
        )
        .unwrap();
        assert_eq!(s.mean.values(), plain.values());
        assert_eq!(s.runs.len(), 4);
    }

    #[test]
    fn mean_of_two_assignments() {
        let g = Graph::from_edges(true, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)], None).unwrap();
        let a = ThresholdAssignment::new(vec![0.2, 0.9, 0.5, 1.0], Provenance::default()).unwrap();
        let b = ThresholdAssignment::new(vec![1.0, 0.1, 0.7, 0.3], Provenance::default()).unwrap();
        let fa = fltr(&g, &a).unwrap();
        let fb = fltr(&g, &b).unwrap();
        let m = fltr_mean(&g, &[a, b], Activation::AtLeast).unwrap();
        for i in 0..4 {
            assert!((m.values()[i] - (fa.values()[i] + fb.values()[i]) / 2.0).abs() < 1e-15);
        }
    }
}
