//! End-to-end experiment drivers and their CSV reports.
//!
//! Three families: one uniform threshold per row, thresholds drawn at random
//! and averaged over runs, and thresholds set from a centrality measure.
//! Every random choice is derived from the master seed, so a report is a pure
//! function of (graph, config).

use std::io::Write;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::centrality::{
    betweenness_with, fltr_sampled_each, fltr_with, icr, ltr_with, pagerank, IcrParams, Measure,
    PageRankParams, PairNormalization, RankVector,
};
use crate::diffusion::{Activation, ThresholdAssignment};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphStats};
use crate::metrics::{self, MetricsRow, TopOptions, TopSpreads, ValuesCut};
use crate::seeding::{self, stream};
use crate::thresholds::{self, ThresholdScheme, ThresholdSummary};

/// Parameters shared by every experiment family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub seed: u64,
    pub activation: Activation,
    pub values_cut: ValuesCut,
    pub pagerank: PageRankParams,
    /// ICR trial probability.
    pub icr_p: f64,
    pub icr_runs: usize,
    pub betweenness_normalization: PairNormalization,
    /// Uniform threshold under which the FLTR/LTR base ranking is computed.
    pub base_theta: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: 0,
            activation: Activation::AtLeast,
            values_cut: ValuesCut::Ceil,
            pagerank: PageRankParams::default(),
            icr_p: 0.01,
            icr_runs: 100,
            betweenness_normalization: PairNormalization::Ordered,
            base_theta: 0.5,
        }
    }
}

impl Settings {
    fn top_options(&self) -> TopOptions {
        TopOptions {
            values_cut: self.values_cut,
            activation: self.activation,
        }
    }

    fn icr_params(&self) -> IcrParams {
        IcrParams {
            p: self.icr_p,
            runs: self.icr_runs,
            seed: seeding::derive_seed(self.seed, stream::CENTRALITY_BASE, 0),
        }
    }
}

/// Which experiment to run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Experiment {
    Uniform {
        thetas: Vec<f64>,
    },
    Random {
        lo: f64,
        hi: f64,
        lo_exclusive: bool,
        runs: usize,
        /// Compute top metrics once on the averaged ranking (with the last
        /// run's thresholds) instead of per run.
        top_on_mean: bool,
    },
    Centrality {
        measure: Measure,
        complement: bool,
    },
}

/// Everything needed to regenerate a report, echoed into its header.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub network: String,
    pub graph: String,
    pub directed: bool,
    pub weighted: bool,
    pub experiment: Experiment,
    pub settings: Settings,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub network: String,
    pub scheme: String,
    pub param: String,
    pub outcome: std::result::Result<MetricsRow, String>,
    /// Present for centrality-derived thresholds.
    pub thresholds: Option<ThresholdSummary>,
    /// Wall-clock time; logged, never written to the CSV.
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub rows: Vec<ReportRow>,
}

pub const REPORT_COLUMNS: &str =
    "network,scheme,param,sigma,distinct,gini,top10,top10pA,szA,top10pV,szV";

/// Runs the configured experiment over an already loaded graph.
pub fn run(g: &Graph, config: &ExperimentConfig) -> ExperimentReport {
    let rows = match &config.experiment {
        Experiment::Uniform { thetas } => run_uniform(g, &config.network, thetas, &config.settings),
        Experiment::Random {
            lo,
            hi,
            lo_exclusive,
            runs,
            top_on_mean,
        } => {
            let scheme = ThresholdScheme::Interval {
                lo: *lo,
                hi: *hi,
                lo_exclusive: *lo_exclusive,
            };
            vec![run_random(
                g,
                &config.network,
                scheme,
                *runs,
                *top_on_mean,
                &config.settings,
            )]
        }
        Experiment::Centrality {
            measure,
            complement,
        } => {
            vec![run_centrality(
                g,
                &config.network,
                *measure,
                *complement,
                &config.settings,
            )]
        }
    };
    ExperimentReport {
        config: config.clone(),
        rows,
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn log_row(row: &ReportRow) {
    match &row.outcome {
        Ok(_) => log::info!(
            "{} {} {}: done in {:.3}s",
            row.network,
            row.scheme,
            row.param,
            row.elapsed.as_secs_f64()
        ),
        Err(e) => log::warn!("{} {} {}: {e}", row.network, row.scheme, row.param),
    }
}

/// One row per threshold: FLTR under the uniform assignment and its metrics.
pub fn run_uniform(
    g: &Graph,
    network: &str,
    thetas: &[f64],
    settings: &Settings,
) -> Vec<ReportRow> {
    thetas
        .iter()
        .map(|&theta| {
            let (outcome, elapsed) = timed(|| -> Result<MetricsRow> {
                let t = thresholds::uniform(g, theta)?;
                let rank = fltr_with(g, &t, settings.activation)?;
                metrics::metrics_row(g, &rank, &t, settings.top_options())
            });
            let row = ReportRow {
                network: network.to_string(),
                scheme: "uniform".into(),
                param: format!("{theta}"),
                outcome: outcome.map_err(|e| e.to_string()),
                thresholds: None,
                elapsed,
            };
            log_row(&row);
            row
        })
        .collect()
}

/// Distribution statistics on the FLTR averaged over `runs` draws; top
/// metrics per run then averaged (or once on the mean with `top_on_mean`).
/// Reported set sizes are those of the last run.
pub fn run_random(
    g: &Graph,
    network: &str,
    scheme: ThresholdScheme,
    runs: usize,
    top_on_mean: bool,
    settings: &Settings,
) -> ReportRow {
    let (outcome, elapsed) = timed(|| -> Result<MetricsRow> {
        let opts = settings.top_options();
        let mut sum = TopSpreads {
            top10: 0.0,
            top10pct_actors: 0.0,
            actors_size: 0,
            top10pct_values: 0.0,
            values_size: 0,
        };
        let mut last: Option<(ThresholdAssignment, TopSpreads)> = None;
        let mean = fltr_sampled_each(
            g,
            &scheme,
            runs,
            settings.seed,
            settings.activation,
            |r, theta, rank| {
                let top = if top_on_mean {
                    None
                } else {
                    let t = metrics::top_spreads(g, rank, theta, opts)?;
                    sum.top10 += t.top10;
                    sum.top10pct_actors += t.top10pct_actors;
                    sum.top10pct_values += t.top10pct_values;
                    Some(t)
                };
                if r + 1 == runs {
                    last = Some((theta.clone(), top.unwrap_or(sum)));
                }
                log::debug!("{network} {scheme}: run {} of {runs}", r + 1);
                Ok(())
            },
        )?;
        let (last_theta, last_top) = last.expect("at least one run");
        let top = if top_on_mean {
            metrics::top_spreads(g, &mean, &last_theta, opts)?
        } else {
            let k = runs as f64;
            TopSpreads {
                top10: sum.top10 / k,
                top10pct_actors: sum.top10pct_actors / k,
                actors_size: last_top.actors_size,
                top10pct_values: sum.top10pct_values / k,
                values_size: last_top.values_size,
            }
        };
        let (sigma, distinct) = metrics::rank_stats(&mean)?;
        Ok(MetricsRow {
            sigma,
            distinct,
            gini: metrics::gini(mean.values())?,
            top,
        })
    });
    let row = ReportRow {
        network: network.to_string(),
        scheme: "random".into(),
        param: format!("{scheme}x{runs}{}", if top_on_mean { "/mean" } else { "" }),
        outcome: outcome.map_err(|e| e.to_string()),
        thresholds: None,
        elapsed,
    };
    log_row(&row);
    row
}

/// Computes one ranking. LTR and FLTR use a uniform assignment at `settings.base_theta`.
pub fn compute_rank(g: &Graph, measure: Measure, settings: &Settings) -> Result<RankVector> {
    match measure {
        Measure::Betweenness => Ok(betweenness_with(g, settings.betweenness_normalization)),
        Measure::PageRank => pagerank(g, settings.pagerank),
        Measure::Icr => icr(g, settings.icr_params()),
        Measure::Ltr => ltr_with(
            g,
            &thresholds::uniform(g, settings.base_theta)?,
            settings.activation,
        ),
        Measure::Fltr => fltr_with(
            g,
            &thresholds::uniform(g, settings.base_theta)?,
            settings.activation,
        ),
    }
}

/// Thresholds from a centrality (or its complement), then FLTR under them.
pub fn run_centrality(
    g: &Graph,
    network: &str,
    measure: Measure,
    complement: bool,
    settings: &Settings,
) -> ReportRow {
    let mut summary = None;
    let (outcome, elapsed) = timed(|| -> Result<MetricsRow> {
        if measure == Measure::Ltr {
            return Err(Error::validation(
                "centrality thresholds support Btwn, ICR, PgR and FLTR",
            ));
        }
        let base = compute_rank(g, measure, settings)?;
        let theta = thresholds::from_centrality(&base, complement)?;
        summary = Some(thresholds::summarize(&theta));
        let rank = fltr_with(g, &theta, settings.activation)?;
        metrics::metrics_row(g, &rank, &theta, settings.top_options())
    });
    let row = ReportRow {
        network: network.to_string(),
        scheme: "centrality".into(),
        param: if complement {
            format!("1-{measure}")
        } else {
            measure.to_string()
        },
        outcome: outcome.map_err(|e| e.to_string()),
        thresholds: summary,
        elapsed,
    };
    log_row(&row);
    row
}

impl ExperimentReport {
    /// Writes the report: `#` lines with the tool version and the config as
    /// JSON, then the CSV header and one line per row. Threshold summary
    /// columns appear only for centrality experiments.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# influence-rank {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(
            out,
            "# config {}",
            serde_json::to_string(&self.config).map_err(|e| Error::validation(e.to_string()))?
        )?;
        let with_thresholds = matches!(self.config.experiment, Experiment::Centrality { .. });
        write!(out, "{REPORT_COLUMNS}")?;
        if with_thresholds {
            write!(out, ",theta_min,theta_max,theta_mean,theta_sd")?;
        }
        writeln!(out, ",status")?;
        for row in &self.rows {
            write!(
                out,
                "{},{},{}",
                csv_field(&row.network),
                row.scheme,
                csv_field(&row.param)
            )?;
            match &row.outcome {
                Ok(m) => write!(
                    out,
                    ",{},{},{},{},{},{},{},{}",
                    m.sigma,
                    m.distinct,
                    m.gini,
                    m.top.top10,
                    m.top.top10pct_actors,
                    m.top.actors_size,
                    m.top.top10pct_values,
                    m.top.values_size
                )?,
                Err(_) => write!(out, ",,,,,,,,")?,
            }
            if with_thresholds {
                match &row.thresholds {
                    Some(s) => write!(out, ",{},{},{},{}", s.min, s.max, s.mean, s.stddev)?,
                    None => write!(out, ",,,,")?,
                }
            }
            match &row.outcome {
                Ok(_) => writeln!(out, ",ok")?,
                Err(e) => writeln!(out, ",{}", csv_field(&format!("error: {e}")))?,
            }
        }
        Ok(())
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const STATS_COLUMNS: &str = "network,n,m,directed,weighted,acc,diameter,main_core";

pub fn write_stats_csv<W: Write>(rows: &[(String, GraphStats)], mut out: W) -> Result<()> {
    writeln!(out, "{STATS_COLUMNS}")?;
    for (network, s) in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            csv_field(network),
            s.nodes,
            s.edges,
            if s.directed { "directed" } else { "undirected" },
            if s.weighted { "weighted" } else { "unweighted" },
            s.acc,
            s.diameter,
            s.main_core_size
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::from_edges(false, &[(0, 1), (1, 2), (2, 0)], None).unwrap()
    }

    fn config(experiment: Experiment) -> ExperimentConfig {
        ExperimentConfig {
            network: "k3".into(),
            graph: "k3.txt".into(),
            directed: false,
            weighted: false,
            experiment,
            settings: Settings::default(),
        }
    }

    #[test]
    fn small_graph_error_is_reported_in_row() {
        let report = run(&k3(), &config(Experiment::Uniform { thetas: vec![0.5] }));
        assert_eq!(report.rows.len(), 1);
        let err = report.rows[0].outcome.as_ref().unwrap_err();
        assert!(err.contains("at least 10"), "{err}");
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let last = text.lines().last().unwrap();
        assert!(last.starts_with("k3,uniform,0.5,,,,,,,,,"), "{last}");
        assert!(last.contains("error: need at least 10 nodes"));
    }

    #[test]
    fn stats_csv_for_triangle() {
        let s = crate::graph::stats(&k3());
        let mut buf = Vec::new();
        write_stats_csv(&[("tri".into(), s)], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            format!("{STATS_COLUMNS}\ntri,3,3,undirected,unweighted,1,1,3\n")
        );
    }

    #[test]
    fn ltr_thresholds_rejected() {
        let row = run_centrality(&k3(), "k3", Measure::Ltr, false, &Settings::default());
        assert!(row.outcome.is_err());
    }

    #[test]
    fn config_round_trips_through_json() {
        let c = config(Experiment::Random {
            lo: 0.0,
            hi: 0.5,
            lo_exclusive: true,
            runs: 20,
            top_on_mean: false,
        });
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<ExperimentConfig>(&json).unwrap(), c);
    }
}
