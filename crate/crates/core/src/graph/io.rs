//! SNAP-style plain-text edge lists.
//!
//! One edge per line: `src dst [weight]`, fields separated by any run of
//! whitespace. Lines starting with `#` and blank lines are skipped.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadOptions {
    pub directed: bool,
    /// Read the optional third column as an edge weight (unit when absent).
    pub weighted: bool,
}

pub fn load_edge_list<R: Read>(source: R, options: LoadOptions) -> Result<Graph> {
    let reader = BufReader::new(source);
    let mut edges = Vec::new();
    let mut weights = Vec::new();

    for (k, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = k + 1;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut fields = text.split_whitespace();
        let src = parse_endpoint(fields.next(), lineno, "source")?;
        let dst = parse_endpoint(fields.next(), lineno, "target")?;
        if options.weighted {
            let w = match fields.next() {
                None => 1.0,
                Some(tok) => tok.parse::<f64>().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("weight {tok:?} is not a number"),
                })?,
            };
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::validation(format!(
                    "line {lineno}: negative or non-finite weight {w}"
                )));
            }
            weights.push(w);
        }
        edges.push((src, dst));
    }

    if edges.is_empty() {
        return Err(Error::validation("edge list contains no edges"));
    }
    Graph::from_edges(
        options.directed,
        &edges,
        options.weighted.then_some(&weights[..]),
    )
}

fn parse_endpoint(tok: Option<&str>, line: usize, what: &str) -> Result<u64> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        message: format!("missing {what} node"),
    })?;
    tok.parse::<u64>().map_err(|_| Error::Parse {
        line,
        message: format!("{what} node {tok:?} is not a nonnegative integer"),
    })
}

pub fn load_edge_list_file(path: impl AsRef<Path>, options: LoadOptions) -> Result<Graph> {
    let file = File::open(path.as_ref())?;
    load_edge_list(file, options)
}

/// Writes the graph back as an edge list in original IDs. Undirected edges
/// are written once, smaller endpoint first. Isolated nodes cannot be
/// expressed in this format and are lost.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(
        out,
        "# {} nodes: {} edges: {}",
        if g.is_directed() {
            "directed"
        } else {
            "undirected"
        },
        g.node_count(),
        g.edge_count()
    )?;
    for i in 0..g.node_count() {
        let weights = g.out_weights(i);
        for (k, &j) in g.out_neighbors(i).iter().enumerate() {
            let j = j as usize;
            if !g.is_directed() && j < i {
                continue;
            }
            match weights {
                Some(w) => writeln!(out, "{}\t{}\t{}", g.original_id(i), g.original_id(j), w[k])?,
                None => writeln!(out, "{}\t{}", g.original_id(i), g.original_id(j))?,
            }
        }
    }
    Ok(())
}
