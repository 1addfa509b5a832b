use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Measure, RankVector};
use crate::graph::Graph;

/// Divisor applied to raw pair-dependency sums.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairNormalization {
    /// `(n-1)(n-2)`: the number of ordered pairs not involving the node.
    #[default]
    Ordered,
    /// `(n-1)(n-2)/2`.
    Unordered,
    /// Raw sums.
    None,
}

impl PairNormalization {
    fn divisor(self, n: usize) -> f64 {
        let pairs = (n.saturating_sub(1) * n.saturating_sub(2)) as f64;
        match self {
            PairNormalization::Ordered => pairs,
            PairNormalization::Unordered => pairs / 2.0,
            PairNormalization::None => 1.0,
        }
    }
}

/// Betweenness over ordered `(s, t)` pairs, following arc directions,
/// normalized by `(n-1)(n-2)`.
pub fn betweenness(g: &Graph) -> RankVector {
    betweenness_with(g, PairNormalization::Ordered)
}

pub fn betweenness_with(g: &Graph, norm: PairNormalization) -> RankVector {
    let n = g.node_count();
    // Fixed chunking so the floating-point summation order never depends on
    // the number of worker threads.
    let chunk = (n / 64).max(64);
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(chunk)
        .map(|block| {
            let mut acc = vec![0.0; n];
            let mut work = BrandesWork::new(n);
            for &s in block {
                work.accumulate(g, s, &mut acc);
            }
            acc
        })
        .collect();

    let mut raw = vec![0.0; n];
    for p in &partials {
        for (r, x) in raw.iter_mut().zip(p) {
            *r += x;
        }
    }
    let div = norm.divisor(n);
    let values = if div > 0.0 {
        raw.into_iter().map(|x| x / div).collect()
    } else {
        vec![0.0; n]
    };
    RankVector::new(
        Measure::Betweenness,
        values,
        format!("normalization={norm:?}"),
    )
}

struct BrandesWork {
    dist: Vec<i64>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    stack: Vec<usize>,
    queue: VecDeque<usize>,
}

impl BrandesWork {
    fn new(n: usize) -> Self {
        BrandesWork {
            dist: vec![-1; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            stack: Vec::with_capacity(n),
            queue: VecDeque::new(),
        }
    }

    fn accumulate(&mut self, g: &Graph, s: usize, acc: &mut [f64]) {
        self.dist[s] = 0;
        self.sigma[s] = 1.0;
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.stack.push(v);
            let dv = self.dist[v];
            for &w in g.out_neighbors(v) {
                let w = w as usize;
                if self.dist[w] < 0 {
                    self.dist[w] = dv + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == dv + 1 {
                    self.sigma[w] += self.sigma[v];
                }
            }
        }
        // Predecessors of w are the in-neighbors one level closer to s.
        for &w in self.stack.iter().rev() {
            let dw = self.dist[w];
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for &v in g.in_neighbors(w) {
                let v = v as usize;
                if dw > 0 && self.dist[v] == dw - 1 {
                    self.delta[v] += self.sigma[v] * coeff;
                }
            }
            if w != s {
                acc[w] += self.delta[w];
            }
        }
        for &x in &self.stack {
            self.dist[x] = -1;
            self.sigma[x] = 0.0;
            self.delta[x] = 0.0;
        }
        self.stack.clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undirected_path() {
        let g = Graph::from_edges(false, &[(0, 1), (1, 2)], None).unwrap();
        assert_eq!(betweenness(&g).values(), &[0.0, 1.0, 0.0]);
        assert_eq!(
            betweenness_with(&g, PairNormalization::None).values(),
            &[0.0, 2.0, 0.0]
        );
    }

    #[test]
    fn directed_path() {
        let g = Graph::from_edges(true, &[(0, 1), (1, 2)], None).unwrap();
        let raw = betweenness_with(&g, PairNormalization::None);
        assert_eq!(raw.values(), &[0.0, 1.0, 0.0]);
        assert_eq!(betweenness(&g).values(), &[0.0, 0.5, 0.0]);
    }

    #[test]
    fn complete_graph_is_all_zero() {
        let edges: Vec<(u64, u64)> = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
            .collect();
        let g = Graph::from_edges(false, &edges, None).unwrap();
        assert!(betweenness(&g).values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn two_node_graph_has_no_intermediate_pairs() {
        let g = Graph::from_edges(false, &[(0, 1)], None).unwrap();
        assert_eq!(betweenness(&g).values(), &[0.0, 0.0]);
    }
}
