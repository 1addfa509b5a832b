//! Structural summaries: clustering, main core, diameter.
//!
//! All three work on the undirected view of the graph (the `N(i)` sets).

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;

use super::Graph;

/// Average of local clustering coefficients over all nodes.
///
/// For node `i` with `d = |N(i)|`, `C_i` is the number of ordered pairs
/// `(j, k)` of distinct neighbors that are themselves adjacent, divided by
/// `d(d-1)`. On undirected graphs this is the usual `2T_i / d(d-1)`. Nodes
/// with `d < 2` contribute 0.
pub fn average_clustering(g: &Graph) -> f64 {
    let n = g.node_count();
    let local: Vec<f64> = (0..n)
        .into_par_iter()
        .map_init(
            || vec![false; n],
            |mark, i| {
                let nb = g.neighbors(i);
                let d = nb.len();
                if d < 2 {
                    return 0.0;
                }
                for &j in nb {
                    mark[j as usize] = true;
                }
                let mut linked = 0usize;
                for &j in nb {
                    linked += g
                        .neighbors(j as usize)
                        .iter()
                        .filter(|&&k| mark[k as usize])
                        .count();
                }
                for &j in nb {
                    mark[j as usize] = false;
                }
                linked as f64 / (d * (d - 1)) as f64
            },
        )
        .collect();
    // Sequential sum keeps the result independent of the thread count.
    local.iter().sum::<f64>() / n as f64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainCore {
    pub k: usize,
    pub members: Vec<usize>,
}

/// Core numbers by bucket-based minimum-degree peeling, degree = `|N(i)|`.
pub fn core_numbers(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut deg: Vec<usize> = (0..n).map(|i| g.neighbors(i).len()).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // Nodes sorted by degree with bucket start positions (Batagelj & Zaversnik).
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut order = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[deg[v]];
        order[pos[v]] = v;
        bin[deg[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for idx in 0..n {
        let v = order[idx];
        for &u in g.neighbors(v) {
            let u = u as usize;
            if deg[u] > deg[v] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = order[pw];
                if u != w {
                    order.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    deg
}

/// The nonempty k-core with the largest k.
pub fn main_core(g: &Graph) -> MainCore {
    let cores = core_numbers(g);
    let k = cores.iter().copied().max().unwrap_or(0);
    let members = (0..cores.len()).filter(|&i| cores[i] == k).collect();
    MainCore { k, members }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diameter {
    Connected(usize),
    /// Graph is not weakly connected; carries the diameter of the largest component.
    Disconnected {
        largest_component: usize,
    },
}

impl Diameter {
    /// The finite diameter value, of the whole graph or of its largest component.
    pub fn value(&self) -> usize {
        match *self {
            Diameter::Connected(d) => d,
            Diameter::Disconnected { largest_component } => largest_component,
        }
    }

    pub fn is_connected(&self) -> bool {
        matches!(self, Diameter::Connected(_))
    }
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Connected(d) => write!(f, "{d}"),
            Diameter::Disconnected { largest_component } => write!(f, "inf({largest_component})"),
        }
    }
}

/// Weakly connected component label per node, labels in order of smallest member.
pub fn weak_components(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.node_count();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                let v = v as usize;
                if label[v] == usize::MAX {
                    label[v] = count;
                    queue.push_back(v);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// Exact diameter with unit edge lengths, ignoring arc direction.
///
/// Runs one BFS per node of the largest weakly connected component, so the
/// cost is O(n (n + m)). Meant for desk-scale graphs.
pub fn diameter(g: &Graph) -> Diameter {
    let n = g.node_count();
    let (label, count) = weak_components(g);
    let mut sizes = vec![0usize; count];
    for &l in &label {
        sizes[l] += 1;
    }
    // First component of maximum size, i.e. the one with the smallest member on ties.
    let biggest = (0..count)
        .max_by_key(|&c| (sizes[c], std::cmp::Reverse(c)))
        .unwrap_or(0);
    let sources: Vec<usize> = (0..n).filter(|&i| label[i] == biggest).collect();

    let d = sources
        .par_iter()
        .map_init(
            || (vec![u32::MAX; n], VecDeque::new(), Vec::new()),
            |(dist, queue, seen), &s| eccentricity(g, s, dist, queue, seen),
        )
        .max()
        .unwrap_or(0);

    if count == 1 {
        Diameter::Connected(d)
    } else {
        Diameter::Disconnected {
            largest_component: d,
        }
    }
}

fn eccentricity(
    g: &Graph,
    s: usize,
    dist: &mut [u32],
    queue: &mut VecDeque<usize>,
    seen: &mut Vec<usize>,
) -> usize {
    dist[s] = 0;
    seen.push(s);
    queue.push_back(s);
    let mut ecc = 0;
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        ecc = du;
        for &v in g.neighbors(u) {
            let v = v as usize;
            if dist[v] == u32::MAX {
                dist[v] = du + 1;
                seen.push(v);
                queue.push_back(v);
            }
        }
    }
    for v in seen.drain(..) {
        dist[v] = u32::MAX;
    }
    ecc as usize
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphStats {
    pub nodes: usize,
    pub edges: usize,
    pub directed: bool,
    pub weighted: bool,
    pub acc: f64,
    pub diameter: Diameter,
    pub main_core_size: usize,
}

pub fn stats(g: &Graph) -> GraphStats {
    GraphStats {
        nodes: g.node_count(),
        edges: g.edge_count(),
        directed: g.is_directed(),
        weighted: g.is_weighted(),
        acc: average_clustering(g),
        diameter: diameter(g),
        main_core_size: main_core(g).members.len(),
    }
}
