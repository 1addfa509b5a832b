//! Node rankings: betweenness, PageRank and the influence-based ICR, LTR, FLTR.

mod betweenness;
mod influence;
mod pagerank;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use self::betweenness::{betweenness, betweenness_with, PairNormalization};
pub use self::influence::{
    fltr, fltr_mean, fltr_sampled, fltr_sampled_each, fltr_with, icr, ltr, ltr_with, IcrParams,
    SampledFltr,
};
pub use self::pagerank::{pagerank, PageRankParams};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Measure {
    #[serde(rename = "Btwn")]
    Betweenness,
    #[serde(rename = "PgR")]
    PageRank,
    #[serde(rename = "ICR")]
    Icr,
    #[serde(rename = "LTR")]
    Ltr,
    #[serde(rename = "FLTR")]
    Fltr,
}

impl Measure {
    pub const ALL: [Measure; 5] = [
        Measure::Betweenness,
        Measure::PageRank,
        Measure::Icr,
        Measure::Ltr,
        Measure::Fltr,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Measure::Betweenness => "Btwn",
            Measure::PageRank => "PgR",
            Measure::Icr => "ICR",
            Measure::Ltr => "LTR",
            Measure::Fltr => "FLTR",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::validation(format!(
                    "unknown measure {s:?} (expected Btwn, PgR, ICR, LTR or FLTR)"
                ))
            })
    }
}

/// Values that are exact fractions over a common denominator.
///
/// LTR/FLTR values are spread sizes over `n`, and their averages over runs
/// are sums of sizes over `runs * n`; keeping the numerators makes ties exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactValues {
    pub numerators: Vec<u64>,
    pub denominator: u64,
}

/// Per-node centrality values with their measure and parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RankVector {
    values: Vec<f64>,
    measure: Measure,
    params: String,
    exact: Option<ExactValues>,
    warning: Option<String>,
}

/// Scale used to quantize non-exact values for tie detection.
const QUANTUM: f64 = 1e12;

impl RankVector {
    pub fn new(measure: Measure, values: Vec<f64>, params: impl Into<String>) -> Self {
        RankVector {
            values,
            measure,
            params: params.into(),
            exact: None,
            warning: None,
        }
    }

    pub fn from_exact(measure: Measure, exact: ExactValues, params: impl Into<String>) -> Self {
        let d = exact.denominator as f64;
        let values = exact.numerators.iter().map(|&k| k as f64 / d).collect();
        RankVector {
            values,
            measure,
            params: params.into(),
            exact: Some(exact),
            warning: None,
        }
    }

    pub(crate) fn with_warning(mut self, warning: Option<String>) -> Self {
        self.warning = warning;
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn params(&self) -> &str {
        &self.params
    }

    pub fn exact(&self) -> Option<&ExactValues> {
        self.exact.as_ref()
    }

    /// Set when the computation finished without meeting its convergence criterion.
    pub fn warning(&self) -> Option<&str> {
        self.warning.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Integer keys with the same order and ties as the values: the exact
    /// numerators when present, otherwise values rounded to 1e-12.
    pub fn tie_keys(&self) -> Vec<i64> {
        match &self.exact {
            Some(e) => e.numerators.iter().map(|&k| k as i64).collect(),
            None => self
                .values
                .iter()
                .map(|&v| (v * QUANTUM).round() as i64)
                .collect(),
        }
    }

    /// Node indices by descending value, ties by ascending index (= ascending original ID).
    pub fn ranking(&self) -> Vec<usize> {
        let keys = self.tie_keys();
        let mut order: Vec<usize> = (0..keys.len()).collect();
        order.sort_by(|&a, &b| keys[b].cmp(&keys[a]).then(a.cmp(&b)));
        order
    }

    /// CSV `original_id,value`, highest value first, ties by ascending ID.
    pub fn write_csv<W: Write>(&self, g: &Graph, mut out: W) -> Result<()> {
        if self.values.len() != g.node_count() {
            return Err(Error::validation(
                "rank vector length does not match the graph",
            ));
        }
        writeln!(out, "original_id,value")?;
        for i in self.ranking() {
            writeln!(out, "{},{}", g.original_id(i), self.values[i])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_labels_round_trip() {
        for m in Measure::ALL {
            assert_eq!(m.label().parse::<Measure>().unwrap(), m);
        }
        assert_eq!("pgr".parse::<Measure>().unwrap(), Measure::PageRank);
        assert!("Katz".parse::<Measure>().is_err());
    }

    #[test]
    fn ranking_breaks_ties_by_index() {
        let r = RankVector::new(Measure::PageRank, vec![0.2, 0.5, 0.2, 0.1], "");
        assert_eq!(r.ranking(), vec![1, 0, 2, 3]);
    }

    #[test]
    fn csv_export_order() {
        let g = Graph::from_edges(true, &[(7, 3), (3, 7), (9, 3)], None).unwrap();
        let r = RankVector::new(Measure::PageRank, vec![0.4, 0.4, 0.2], "");
        let mut buf = Vec::new();
        r.write_csv(&g, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "original_id,value\n3,0.4\n7,0.4\n9,0.2\n"
        );
    }
}
