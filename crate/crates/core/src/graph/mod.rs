//! Immutable graph storage in compressed adjacency form.
//!
//! Nodes are densely reindexed in ascending order of their original IDs, so
//! "ascending original ID" and "ascending dense index" are the same order.
//! Undirected graphs store every edge as two arcs.

mod io;
mod stats;

pub use self::io::{load_edge_list, load_edge_list_file, write_edge_list, LoadOptions};
pub use self::stats::{
    average_clustering, diameter, main_core, stats, Diameter, GraphStats, MainCore,
};

use crate::error::{Error, Result};

/// Compressed sparse rows: `targets[offsets[i]..offsets[i + 1]]` are the entries of row `i`.
#[derive(Debug, Clone, PartialEq)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Csr {
    /// Builds rows from `(row, col)` pairs that are already sorted and duplicate-free.
    fn from_sorted_pairs(n: usize, pairs: &[(u32, u32)]) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(r, _) in pairs {
            offsets[r as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = pairs.iter().map(|&(_, c)| c).collect();
        Csr { offsets, targets }
    }

    #[inline]
    fn row(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    directed: bool,
    edge_count: usize,
    out: Csr,
    inc: Csr,
    /// Union of in- and out-neighbors, the neighborhood the LT rule divides by.
    nbr: Csr,
    /// Per out-arc weights aligned with `out.targets`; `None` means unit weights.
    weights: Option<Vec<f64>>,
    ids: Vec<u64>,
}

impl Graph {
    /// Builds a graph from edges given in original IDs.
    ///
    /// Self-loops are dropped (their endpoint still becomes a node), parallel
    /// edges are collapsed keeping the first weight seen, and for undirected
    /// graphs `(u, v)` and `(v, u)` are the same edge.
    pub fn from_edges(
        directed: bool,
        edges: &[(u64, u64)],
        weights: Option<&[f64]>,
    ) -> Result<Self> {
        if let Some(w) = weights {
            if w.len() != edges.len() {
                return Err(Error::validation(format!(
                    "{} weights given for {} edges",
                    w.len(),
                    edges.len()
                )));
            }
            if let Some(bad) = w.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
                return Err(Error::validation(format!(
                    "edge weight {bad} is not a nonnegative number"
                )));
            }
        }
        let mut ids: Vec<u64> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        ids.sort_unstable();
        ids.dedup();
        Self::from_edges_with_nodes(directed, ids, edges, weights)
    }

    /// Like [`Graph::from_edges`] but with an explicit node universe, so
    /// isolated nodes can be represented. Every endpoint must be in `ids`.
    pub fn from_nodes_and_edges(
        directed: bool,
        nodes: &[u64],
        edges: &[(u64, u64)],
        weights: Option<&[f64]>,
    ) -> Result<Self> {
        let mut ids = nodes.to_vec();
        ids.sort_unstable();
        ids.dedup();
        for &(a, b) in edges {
            for x in [a, b] {
                if ids.binary_search(&x).is_err() {
                    return Err(Error::validation(format!(
                        "edge endpoint {x} is not a declared node"
                    )));
                }
            }
        }
        Self::from_edges_with_nodes(directed, ids, edges, weights)
    }

    fn from_edges_with_nodes(
        directed: bool,
        ids: Vec<u64>,
        edges: &[(u64, u64)],
        weights: Option<&[f64]>,
    ) -> Result<Self> {
        let n = ids.len();
        if n == 0 {
            return Err(Error::validation("graph has no nodes"));
        }
        if n > u32::MAX as usize {
            return Err(Error::validation(format!(
                "{n} nodes exceed the supported maximum"
            )));
        }
        let index = |x: u64| ids.binary_search(&x).expect("endpoint registered") as u32;

        // (src, dst, position in input) so the first weight wins on duplicates.
        let mut arcs: Vec<(u32, u32, usize)> = edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a != b)
            .map(|(k, &(a, b))| {
                let (s, t) = (index(a), index(b));
                if directed || s < t {
                    (s, t, k)
                } else {
                    (t, s, k)
                }
            })
            .collect();
        arcs.sort_unstable();
        arcs.dedup_by_key(|a| (a.0, a.1));
        let edge_count = arcs.len();

        let mut out_pairs: Vec<(u32, u32, usize)> = if directed {
            arcs
        } else {
            let mut both = Vec::with_capacity(2 * arcs.len());
            for &(s, t, k) in &arcs {
                both.push((s, t, k));
                both.push((t, s, k));
            }
            both.sort_unstable_by_key(|a| (a.0, a.1));
            both
        };
        out_pairs.shrink_to_fit();

        let weights = weights.map(|w| {
            out_pairs
                .iter()
                .map(|&(_, _, k)| w[k])
                .collect::<Vec<f64>>()
        });
        let out_plain: Vec<(u32, u32)> = out_pairs.iter().map(|&(s, t, _)| (s, t)).collect();
        let out = Csr::from_sorted_pairs(n, &out_plain);

        let (inc, nbr) = if directed {
            let mut in_pairs: Vec<(u32, u32)> = out_plain.iter().map(|&(s, t)| (t, s)).collect();
            in_pairs.sort_unstable();
            let inc = Csr::from_sorted_pairs(n, &in_pairs);
            let mut union = out_plain;
            union.extend_from_slice(&in_pairs);
            union.sort_unstable();
            union.dedup();
            (inc, Csr::from_sorted_pairs(n, &union))
        } else {
            (out.clone(), out.clone())
        };

        Ok(Graph {
            directed,
            edge_count,
            out,
            inc,
            nbr,
            weights,
            ids,
        })
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    /// Edges as given in the input: arcs for directed graphs, unordered
    /// edges for undirected ones.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Number of stored arcs (twice the edge count for undirected graphs).
    pub fn arc_count(&self) -> usize {
        self.out.targets.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    /// Successors of `i`, sorted ascending.
    #[inline]
    pub fn out_neighbors(&self, i: usize) -> &[u32] {
        self.out.row(i)
    }

    /// Predecessors of `i`, sorted ascending.
    #[inline]
    pub fn in_neighbors(&self, i: usize) -> &[u32] {
        self.inc.row(i)
    }

    /// `N(i)`: nodes joined to `i` by an arc in either direction, sorted, never containing `i`.
    #[inline]
    pub fn neighbors(&self, i: usize) -> &[u32] {
        self.nbr.row(i)
    }

    /// Weights of the out-arcs of `i`, aligned with [`Graph::out_neighbors`].
    pub fn out_weights(&self, i: usize) -> Option<&[f64]> {
        self.weights
            .as_ref()
            .map(|w| &w[self.out.offsets[i]..self.out.offsets[i + 1]])
    }

    /// Checked version of [`Graph::neighbors`].
    pub fn neighborhood(&self, i: usize) -> Result<&[u32]> {
        self.check(i)?;
        Ok(self.neighbors(i))
    }

    /// Checked version of [`Graph::out_neighbors`].
    pub fn out_neighborhood(&self, i: usize) -> Result<&[u32]> {
        self.check(i)?;
        Ok(self.out_neighbors(i))
    }

    pub fn original_id(&self, i: usize) -> u64 {
        self.ids[i]
    }

    pub fn original_ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn index_of(&self, original: u64) -> Option<usize> {
        self.ids.binary_search(&original).ok()
    }

    fn check(&self, i: usize) -> Result<()> {
        if i < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                index: i,
                node_count: self.node_count(),
            })
        }
    }

    /// Arcs `(src, dst)` in dense indices, in adjacency order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count())
            .flat_map(move |i| self.out_neighbors(i).iter().map(move |&j| (i, j as usize)))
    }
}
