use serde::{Deserialize, Serialize};

use super::{Measure, RankVector};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PageRankParams {
    pub alpha: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankParams {
    fn default() -> Self {
        PageRankParams {
            alpha: 0.85,
            tol: 1e-10,
            max_iter: 200,
        }
    }
}

/// Probability-normalized PageRank by power iteration.
///
/// Teleport mass `(1 - alpha) / n` goes to every node and the mass of
/// dangling nodes is spread uniformly, so the values sum to 1. Iteration
/// stops when the L1 change drops below `tol`; hitting `max_iter` first sets
/// a warning on the result instead of failing.
pub fn pagerank(g: &Graph, params: PageRankParams) -> Result<RankVector> {
    let PageRankParams {
        alpha,
        tol,
        max_iter,
    } = params;
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::validation(format!(
            "damping {alpha} is outside (0, 1]"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::validation(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let n = g.node_count();
    let nf = n as f64;
    let out_deg: Vec<f64> = (0..n).map(|i| g.out_neighbors(i).len() as f64).collect();
    let dangling: Vec<usize> = (0..n).filter(|&i| out_deg[i] == 0.0).collect();

    let mut rank = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        let dangling_mass: f64 = dangling.iter().map(|&i| rank[i]).sum();
        let base = (1.0 - alpha) / nf + alpha * dangling_mass / nf;
        for (i, slot) in next.iter_mut().enumerate() {
            let inflow: f64 = g
                .in_neighbors(i)
                .iter()
                .map(|&j| rank[j as usize] / out_deg[j as usize])
                .sum();
            *slot = base + alpha * inflow;
        }
        let change: f64 = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if change < tol {
            converged = true;
            break;
        }
    }

    let warning = (!converged)
        .then(|| format!("PageRank did not converge to {tol:e} in {max_iter} iterations"));
    if let Some(w) = &warning {
        log::warn!("{w}");
    }
    Ok(RankVector::new(
        Measure::PageRank,
        rank,
        format!("alpha={alpha} tol={tol:e} max_iter={max_iter} iterations={iterations}"),
    )
    .with_warning(warning))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cycle_is_symmetric() {
        let g = Graph::from_edges(true, &[(0, 1), (1, 0)], None).unwrap();
        let r = pagerank(&g, PageRankParams::default()).unwrap();
        assert!(r.values().iter().all(|v| (v - 0.5).abs() < 1e-12));
        assert!(r.warning().is_none());
    }

    #[test]
    fn isolated_nodes_are_uniform() {
        let g = Graph::from_nodes_and_edges(true, &[0, 1, 2], &[], None).unwrap();
        let r = pagerank(&g, PageRankParams::default()).unwrap();
        assert!(r.values().iter().all(|v| (v - 1.0 / 3.0).abs() < 1e-15));
    }

    #[test]
    fn bad_parameters() {
        let g = Graph::from_edges(true, &[(0, 1)], None).unwrap();
        let p = PageRankParams {
            alpha: 0.0,
            ..Default::default()
        };
        assert!(pagerank(&g, p).is_err());
        let p = PageRankParams {
            tol: 0.0,
            ..Default::default()
        };
        assert!(pagerank(&g, p).is_err());
    }

    #[test]
    fn non_convergence_is_a_warning() {
        let g = Graph::from_edges(true, &[(0, 1), (1, 2), (2, 0), (0, 2)], None).unwrap();
        let p = PageRankParams {
            max_iter: 2,
            ..Default::default()
        };
        let r = pagerank(&g, p).unwrap();
        assert!(r.warning().is_some());
    }
}
