mod oracles;

use influence_rank::centrality::{self, fltr_sampled, Measure};
use influence_rank::diffusion::Provenance;
use influence_rank::experiment::{self, Experiment, ExperimentConfig, Settings};
use influence_rank::metrics::{self, TopOptions};
use influence_rank::thresholds::{self, ThresholdScheme};
use influence_rank::{Activation, ThresholdAssignment};

use oracles::seeded_graph;

fn config(experiment: Experiment) -> ExperimentConfig {
    ExperimentConfig {
        network: "net".into(),
        graph: "net.txt".into(),
        directed: true,
        weighted: false,
        experiment,
        settings: Settings {
            seed: 11,
            icr_runs: 10,
            ..Settings::default()
        },
    }
}

fn csv(report: &experiment::ExperimentReport) -> String {
    let mut buf = Vec::new();
    report.write_csv(&mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn config_echo_replays_byte_identically() {
    let g = seeded_graph(3, 60, 0.05, true);
    for exp in [
        Experiment::Uniform {
            thetas: vec![0.25, 0.5],
        },
        Experiment::Random {
            lo: 0.0,
            hi: 1.0,
            lo_exclusive: true,
            runs: 3,
            top_on_mean: false,
        },
        Experiment::Centrality {
            measure: Measure::Icr,
            complement: true,
        },
    ] {
        let first = csv(&experiment::run(&g, &config(exp)));
        let echo = first
            .lines()
            .nth(1)
            .unwrap()
            .strip_prefix("# config ")
            .unwrap();
        let replayed: ExperimentConfig = serde_json::from_str(echo).unwrap();
        assert_eq!(csv(&experiment::run(&g, &replayed)), first);
    }
}

#[test]
fn uniform_half_equals_constant_assignment_pipeline() {
    let g = seeded_graph(8, 50, 0.06, false);
    let settings = Settings::default();
    let rows = experiment::run_uniform(&g, "net", &[0.5], &settings);
    let got = rows[0].outcome.as_ref().unwrap();

    let constant =
        ThresholdAssignment::new(vec![0.5; g.node_count()], Provenance::default()).unwrap();
    let rank = centrality::fltr(&g, &constant).unwrap();
    let want = metrics::metrics_row(&g, &rank, &constant, TopOptions::default()).unwrap();
    assert_eq!(got, &want);
}

#[test]
fn single_random_run_equals_one_pipeline() {
    let g = seeded_graph(5, 50, 0.06, true);
    let settings = Settings::default();
    let scheme = ThresholdScheme::Interval {
        lo: 0.0,
        hi: 1.0,
        lo_exclusive: true,
    };
    let row = experiment::run_random(&g, "net", scheme, 1, false, &settings);
    let sampled = fltr_sampled(&g, &scheme, 1, settings.seed, Activation::AtLeast).unwrap();
    let (theta, rank) = &sampled.runs[0];
    let want = metrics::metrics_row(&g, rank, theta, TopOptions::default()).unwrap();
    assert_eq!(row.outcome.unwrap(), want);
}

#[test]
fn centrality_thresholds_summary_matches_assignment() {
    let g = seeded_graph(4, 40, 0.08, true);
    let settings = Settings::default();
    let row = experiment::run_centrality(&g, "net", Measure::PageRank, false, &settings);
    let base = experiment::compute_rank(&g, Measure::PageRank, &settings).unwrap();
    let theta = thresholds::from_centrality(&base, false).unwrap();
    assert_eq!(row.thresholds.unwrap(), thresholds::summarize(&theta));
    assert!(row.outcome.is_ok());
}
