//! Slow, obviously-correct reference implementations used to check the
//! library. Nothing here calls into the library's algorithms; only the
//! `Graph` accessors are shared.
#![allow(dead_code, clippy::needless_range_loop)]

use influence_rank::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random graph with `n` nodes labelled `0..n`, each ordered pair an arc with probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64, directed: bool) -> Graph {
    let nodes: Vec<u64> = (0..n as u64).collect();
    let mut edges = Vec::new();
    for a in 0..n as u64 {
        for b in 0..n as u64 {
            if a == b || (!directed && b < a) {
                continue;
            }
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_nodes_and_edges(directed, &nodes, &edges, None).unwrap()
}

pub fn seeded_graph(seed: u64, n: usize, p: f64, directed: bool) -> Graph {
    random_graph(&mut ChaCha8Rng::seed_from_u64(seed), n, p, directed)
}

/// Undirected adjacency matrix of the `N(i)` relation, built from raw arcs.
pub fn undirected_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for &j in g.out_neighbors(i) {
            adj[i][j as usize] = true;
            adj[j as usize][i] = true;
        }
    }
    adj
}

/// LT by full rescans: every round recomputes every inactive node's active
/// neighbor fraction from scratch and activates all that satisfy `>= theta`.
pub fn naive_lt(g: &Graph, seeds: &[usize], theta: &[f64]) -> (Vec<usize>, usize) {
    let n = g.node_count();
    let adj = undirected_matrix(g);
    let mut active = vec![false; n];
    for &s in seeds {
        active[s] = true;
    }
    let mut steps = 0;
    loop {
        let mut newly = Vec::new();
        for i in 0..n {
            if active[i] {
                continue;
            }
            let deg = (0..n).filter(|&j| adj[i][j]).count();
            if deg == 0 {
                continue;
            }
            let on = (0..n).filter(|&j| adj[i][j] && active[j]).count();
            if on as f64 / deg as f64 >= theta[i] {
                newly.push(i);
            }
        }
        if newly.is_empty() {
            break;
        }
        for i in newly {
            active[i] = true;
        }
        steps += 1;
    }
    ((0..n).filter(|&i| active[i]).collect(), steps)
}

/// BFS distances and shortest-path counts from `s` along out-arcs.
fn bfs_counts(g: &Graph, s: usize) -> (Vec<Option<usize>>, Vec<f64>) {
    let n = g.node_count();
    let mut dist = vec![None; n];
    let mut sigma = vec![0.0; n];
    dist[s] = Some(0);
    sigma[s] = 1.0;
    let mut level = vec![s];
    let mut d = 0;
    while !level.is_empty() {
        let mut next = Vec::new();
        for &u in &level {
            for &v in g.out_neighbors(u) {
                let v = v as usize;
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    next.push(v);
                }
            }
        }
        // Counts for the new level come from every predecessor on the current level.
        for &v in &next {
            sigma[v] = level
                .iter()
                .filter(|&&u| g.out_neighbors(u).contains(&(v as u32)))
                .map(|&u| sigma[u])
                .sum();
        }
        level = next;
        d += 1;
    }
    (dist, sigma)
}

/// Unnormalized betweenness from all-pairs distances and path counts:
/// `sum over s != i != t of sigma_si * sigma_it / sigma_st` when `i` lies on a
/// shortest s-t path.
pub fn pair_count_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let all: Vec<_> = (0..n).map(|s| bfs_counts(g, s)).collect();
    let mut out = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let Some(dst) = all[s].0[t] else { continue };
            for (i, slot) in out.iter_mut().enumerate() {
                if i == s || i == t {
                    continue;
                }
                if let (Some(dsi), Some(dit)) = (all[s].0[i], all[i].0[t]) {
                    if dsi + dit == dst {
                        *slot += all[s].1[i] * all[i].1[t] / all[s].1[t];
                    }
                }
            }
        }
    }
    out
}

/// PageRank as the solution of `(I - alpha M) x = (1 - alpha)/n`, where `M`
/// is column-stochastic with dangling columns uniform. Solved by Gaussian
/// elimination with partial pivoting.
pub fn dense_pagerank(g: &Graph, alpha: f64) -> Vec<f64> {
    let n = g.node_count();
    let nf = n as f64;
    let mut a = vec![vec![0.0; n + 1]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 1.0;
        row[n] = (1.0 - alpha) / nf;
    }
    for j in 0..n {
        let out = g.out_neighbors(j);
        if out.is_empty() {
            for row in a.iter_mut() {
                row[j] -= alpha / nf;
            }
        } else {
            for &i in out {
                a[i as usize][j] -= alpha / out.len() as f64;
            }
        }
    }
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        a.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                if f != 0.0 {
                    for c in col..=n {
                        a[r][c] -= f * a[col][c];
                    }
                }
            }
        }
    }
    (0..n).map(|i| a[i][n] / a[i][i]).collect()
}

/// All-pairs distances on the undirected view by Floyd–Warshall. Returns
/// `(connected, max finite distance within the largest component)`.
pub fn floyd_warshall_diameter(g: &Graph) -> (bool, usize) {
    let n = g.node_count();
    let adj = undirected_matrix(g);
    const INF: usize = usize::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if adj[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    // Component of each node = set of reachable nodes; pick the biggest, smallest member first.
    let size = |i: usize| (0..n).filter(|&j| d[i][j] < INF).count();
    let biggest = (0..n)
        .max_by_key(|&i| (size(i), std::cmp::Reverse(i)))
        .unwrap();
    let members: Vec<usize> = (0..n).filter(|&j| d[biggest][j] < INF).collect();
    let diam = members
        .iter()
        .flat_map(|&a| members.iter().map(move |&b| (a, b)))
        .map(|(a, b)| d[a][b])
        .max()
        .unwrap_or(0);
    (members.len() == n, diam)
}

pub fn double_sum_gini(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let num: f64 = x
        .iter()
        .flat_map(|a| x.iter().map(move |b| (a - b).abs()))
        .sum();
    num / (2.0 * n * x.iter().sum::<f64>())
}

/// Seeds ordered by descending value then ascending index, by selection.
pub fn naive_order(values: &[f64]) -> Vec<usize> {
    let mut left: Vec<usize> = (0..values.len()).collect();
    let mut out = Vec::new();
    while !left.is_empty() {
        let mut best = 0;
        for k in 1..left.len() {
            if values[left[k]] > values[left[best]] {
                best = k;
            }
        }
        out.push(left.remove(best));
    }
    out
}
