//! `influence-rank`: graph statistics, rankings and threshold experiments.

mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use influence_rank::centrality::PairNormalization;
use influence_rank::experiment::{self, Experiment, ExperimentConfig, Settings};
use influence_rank::metrics::ValuesCut;
use influence_rank::thresholds::ThresholdScheme;
use influence_rank::{graph, Activation, Graph, LoadOptions, Measure};

use config::FileConfig;

#[derive(Parser, Debug)]
#[command(
    name = "influence-rank",
    version,
    about = "Influence rankings under the Linear Threshold model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Network statistics: nodes, edges, clustering, diameter, main core.
    Stats(Common),
    /// Compute one ranking and write `original_id,value`.
    Rank {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        measure: Option<String>,
        /// Uniform threshold for LTR/FLTR (defaults to the base threshold).
        #[arg(long)]
        theta: Option<f64>,
    },
    /// FLTR metrics under uniform thresholds.
    ExpUniform {
        #[command(flatten)]
        common: Common,
        /// Comma-separated values; `start:stop:step` expands to a sweep.
        #[arg(long)]
        theta: Option<String>,
    },
    /// FLTR metrics averaged over random threshold draws.
    ExpRandom {
        #[command(flatten)]
        common: Common,
        /// `LO,HI`
        #[arg(long)]
        interval: Option<String>,
        #[arg(long)]
        lo_exclusive: bool,
        #[arg(long)]
        runs: Option<usize>,
        /// Compute top metrics once on the averaged ranking.
        #[arg(long)]
        top_on_mean: bool,
    },
    /// FLTR metrics under thresholds set from a centrality.
    ExpCentrality {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        measure: Option<String>,
        /// Use `1 - centrality` as the threshold.
        #[arg(long)]
        complement: bool,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Edge-list file (repeatable for `stats`).
    #[arg(long)]
    graph: Vec<PathBuf>,
    /// TOML file with default values for any flag.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Label used in reports (defaults to the file stem).
    #[arg(long)]
    network: Option<String>,
    #[arg(long)]
    directed: bool,
    #[arg(long)]
    weighted: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    threads: Option<usize>,

    /// PageRank damping factor.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    pagerank_tol: Option<f64>,
    #[arg(long)]
    pagerank_max_iter: Option<usize>,
    /// ICR activation probability.
    #[arg(long)]
    icr_p: Option<f64>,
    #[arg(long)]
    icr_runs: Option<usize>,
    /// Uniform threshold for FLTR/LTR used as a base ranking.
    #[arg(long)]
    base_theta: Option<f64>,
    /// `ceil` or `floor`: how many distinct values make the top 10%.
    #[arg(long)]
    values_cut: Option<String>,
    /// Activate only when the active fraction strictly exceeds the threshold.
    #[arg(long)]
    strict: bool,
    /// `ordered`, `unordered` or `none`.
    #[arg(long)]
    betweenness_normalization: Option<String>,
}

enum Failure {
    Usage(String),
    Data(String),
}

type CliResult<T> = Result<T, Failure>;

type Action = Box<dyn FnOnce(&Resolved) -> CliResult<Vec<u8>> + Send>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Usage(msg.into()))
}

fn data(e: impl std::fmt::Display) -> Failure {
    Failure::Data(e.to_string())
}

/// Flags merged over the config file.
struct Resolved {
    file: FileConfig,
    graphs: Vec<PathBuf>,
    network: Option<String>,
    directed: bool,
    weighted: bool,
    out: Option<PathBuf>,
    threads: usize,
    settings: Settings,
}

fn resolve(c: Common) -> CliResult<Resolved> {
    let file = match &c.config {
        Some(p) => FileConfig::load(p).map_err(Failure::Usage)?,
        None => FileConfig::default(),
    };
    let graphs = if c.graph.is_empty() {
        file.graph.clone().unwrap_or_default()
    } else {
        c.graph
    };
    if graphs.is_empty() {
        return usage("--graph is required");
    }

    let mut s = Settings::default();
    s.seed = c.seed.or(file.seed).unwrap_or(s.seed);
    s.pagerank.alpha = c.alpha.or(file.alpha).unwrap_or(s.pagerank.alpha);
    s.pagerank.tol = c
        .pagerank_tol
        .or(file.pagerank_tol)
        .unwrap_or(s.pagerank.tol);
    s.pagerank.max_iter = c
        .pagerank_max_iter
        .or(file.pagerank_max_iter)
        .unwrap_or(s.pagerank.max_iter);
    s.icr_p = c.icr_p.or(file.icr_p).unwrap_or(s.icr_p);
    s.icr_runs = c.icr_runs.or(file.icr_runs).unwrap_or(s.icr_runs);
    s.base_theta = c.base_theta.or(file.base_theta).unwrap_or(s.base_theta);
    if c.strict || file.strict.unwrap_or(false) {
        s.activation = Activation::Exceeds;
    }
    if let Some(cut) = c.values_cut.or(file.values_cut.clone()) {
        s.values_cut = match cut.to_ascii_lowercase().as_str() {
            "ceil" => ValuesCut::Ceil,
            "floor" => ValuesCut::Floor,
            _ => {
                return usage(format!(
                    "unknown values cut {cut:?} (expected ceil or floor)"
                ))
            }
        };
    }
    if let Some(norm) = c
        .betweenness_normalization
        .or(file.betweenness_normalization.clone())
    {
        s.betweenness_normalization = match norm.to_ascii_lowercase().as_str() {
            "ordered" => PairNormalization::Ordered,
            "unordered" => PairNormalization::Unordered,
            "none" => PairNormalization::None,
            _ => return usage(format!("unknown betweenness normalization {norm:?}")),
        };
    }
    if !(0.0..=1.0).contains(&s.base_theta) {
        return usage("--base-theta must lie in [0,1]");
    }
    if !(0.0..=1.0).contains(&s.icr_p) || s.icr_runs == 0 {
        return usage("--icr-p must lie in [0,1] and --icr-runs must be positive");
    }
    if !(s.pagerank.alpha > 0.0 && s.pagerank.alpha <= 1.0)
        || s.pagerank.tol <= 0.0
        || s.pagerank.max_iter == 0
    {
        return usage("PageRank needs 0 < alpha <= 1, tol > 0 and max_iter > 0");
    }

    Ok(Resolved {
        graphs,
        network: c.network.or(file.network.clone()),
        directed: c.directed || file.directed.unwrap_or(false),
        weighted: c.weighted || file.weighted.unwrap_or(false),
        out: c.out.or(file.out.clone()),
        threads: c.threads.or(file.threads).unwrap_or(0),
        settings: s,
        file,
    })
}

impl Resolved {
    fn options(&self) -> LoadOptions {
        LoadOptions {
            directed: self.directed,
            weighted: self.weighted,
        }
    }

    fn single_graph(&self) -> CliResult<&Path> {
        match self.graphs.as_slice() {
            [one] => Ok(one),
            _ => usage("this command takes exactly one --graph"),
        }
    }

    fn label(&self, path: &Path) -> String {
        match (&self.network, self.graphs.len()) {
            (Some(n), 1) => n.clone(),
            _ => stem(path),
        }
    }

    fn load(&self, path: &Path) -> CliResult<Graph> {
        log::info!("loading {}", path.display());
        graph::load_edge_list_file(path, self.options())
            .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
    }
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn parse_measure(s: &str) -> CliResult<Measure> {
    s.parse().map_err(|_| {
        Failure::Usage(format!(
            "unknown measure {s:?} (expected one of {})",
            Measure::ALL
                .iter()
                .map(|m| m.label())
                .collect::<Vec<_>>()
                .join(", ")
        ))
    })
}

/// Parses `0.25,0.5` and `0.2:0.5:0.02` items into a list of thresholds.
fn parse_theta_list(s: &str) -> CliResult<Vec<f64>> {
    let num = |t: &str| -> CliResult<f64> {
        t.trim()
            .parse::<f64>()
            .map_err(|_| Failure::Usage(format!("bad threshold {t:?}")))
    };
    let mut out = Vec::new();
    for item in s.split(',').filter(|t| !t.trim().is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [v] => out.push(num(v)?),
            [a, b, step] => {
                let (a, b, step) = (num(a)?, num(b)?, num(step)?);
                if step <= 0.0 || b < a {
                    return usage(format!("bad sweep {item:?}"));
                }
                let count = ((b - a) / step + 1e-9).floor() as usize;
                out.extend((0..=count).map(|k| ((a + k as f64 * step) * 1e12).round() / 1e12));
            }
            _ => return usage(format!("bad threshold item {item:?}")),
        }
    }
    Ok(out)
}

fn parse_interval(s: &str) -> CliResult<[f64; 2]> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [a, b] => match (a.trim().parse(), b.trim().parse()) {
            (Ok(a), Ok(b)) => Ok([a, b]),
            _ => usage(format!("bad interval {s:?}")),
        },
        _ => usage(format!("--interval expects LO,HI, got {s:?}")),
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match out {
        Some(p) => {
            std::fs::write(p, bytes).map_err(|e| Failure::Data(format!("{}: {e}", p.display())))
        }
        None => std::io::stdout().write_all(bytes).map_err(data),
    }
}

fn experiment_config(r: &Resolved, experiment: Experiment) -> CliResult<(Graph, ExperimentConfig)> {
    let path = r.single_graph()?;
    let g = r.load(path)?;
    let config = ExperimentConfig {
        network: r.label(path),
        graph: path.display().to_string(),
        directed: r.directed,
        weighted: r.weighted,
        experiment,
        settings: r.settings,
    };
    Ok((g, config))
}

fn run_experiment(r: &Resolved, experiment: Experiment) -> CliResult<Vec<u8>> {
    let (g, config) = experiment_config(r, experiment)?;
    let report = experiment::run(&g, &config);
    let mut buf = Vec::new();
    report.write_csv(&mut buf).map_err(data)?;
    Ok(buf)
}

fn execute(command: Command) -> CliResult<()> {
    let (common, action): (Common, Action) = match command {
        Command::Stats(common) => (
            common,
            Box::new(|r| {
                let mut rows = Vec::new();
                for path in &r.graphs {
                    let g = r.load(path)?;
                    rows.push((r.label(path), graph::stats(&g)));
                }
                let mut buf = Vec::new();
                experiment::write_stats_csv(&rows, &mut buf).map_err(data)?;
                Ok(buf)
            }),
        ),
        Command::Rank {
            common,
            measure,
            theta,
        } => (
            common,
            Box::new(move |r| {
                let measure = match measure.or(r.file.measure.clone()) {
                    Some(m) => parse_measure(&m)?,
                    None => return usage("--measure is required"),
                };
                let mut settings = r.settings;
                if let Some(t) = theta.or(r.file.theta.as_ref().and_then(|v| v.first().copied())) {
                    if !(0.0..=1.0).contains(&t) {
                        return usage("--theta must lie in [0,1]");
                    }
                    settings.base_theta = t;
                }
                let g = r.load(r.single_graph()?)?;
                let rank = experiment::compute_rank(&g, measure, &settings).map_err(data)?;
                if let Some(w) = rank.warning() {
                    log::warn!("{w}");
                }
                let mut buf = Vec::new();
                rank.write_csv(&g, &mut buf).map_err(data)?;
                Ok(buf)
            }),
        ),
        Command::ExpUniform { common, theta } => (
            common,
            Box::new(move |r| {
                let thetas = match theta {
                    Some(t) => parse_theta_list(&t)?,
                    None => r.file.theta.clone().unwrap_or_default(),
                };
                if thetas.is_empty() {
                    return usage("--theta is required");
                }
                if thetas.iter().any(|t| !(0.0..=1.0).contains(t)) {
                    return usage("thresholds must lie in [0,1]");
                }
                run_experiment(r, Experiment::Uniform { thetas })
            }),
        ),
        Command::ExpRandom {
            common,
            interval,
            lo_exclusive,
            runs,
            top_on_mean,
        } => (
            common,
            Box::new(move |r| {
                let [lo, hi] = match interval {
                    Some(s) => parse_interval(&s)?,
                    None => match r.file.interval {
                        Some(i) => i,
                        None => return usage("--interval is required"),
                    },
                };
                let lo_exclusive = lo_exclusive || r.file.lo_exclusive.unwrap_or(false);
                let Some(runs) = runs.or(r.file.runs) else {
                    return usage("--runs is required");
                };
                if runs == 0 {
                    return usage("--runs must be at least 1");
                }
                ThresholdScheme::Interval {
                    lo,
                    hi,
                    lo_exclusive,
                }
                .validate()
                .map_err(|e| Failure::Usage(e.to_string()))?;
                let top_on_mean = top_on_mean || r.file.top_on_mean.unwrap_or(false);
                run_experiment(
                    r,
                    Experiment::Random {
                        lo,
                        hi,
                        lo_exclusive,
                        runs,
                        top_on_mean,
                    },
                )
            }),
        ),
        Command::ExpCentrality {
            common,
            measure,
            complement,
        } => (
            common,
            Box::new(move |r| {
                let measure = match measure.or(r.file.measure.clone()) {
                    Some(m) => parse_measure(&m)?,
                    None => return usage("--measure is required"),
                };
                if measure == Measure::Ltr {
                    return usage("centrality thresholds support Btwn, ICR, PgR and FLTR");
                }
                let complement = complement || r.file.complement.unwrap_or(false);
                run_experiment(
                    r,
                    Experiment::Centrality {
                        measure,
                        complement,
                    },
                )
            }),
        ),
    };

    let resolved = resolve(common)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(resolved.threads)
        .build()
        .map_err(data)?;
    let bytes = pool.install(|| action(&resolved))?;
    emit(resolved.out.as_deref(), &bytes)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
