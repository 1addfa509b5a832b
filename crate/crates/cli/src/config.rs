//! Declarative TOML config file. Every key is optional; command-line flags win.

use std::path::{Path, PathBuf};

use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub graph: Option<Vec<PathBuf>>,
    pub network: Option<String>,
    pub directed: Option<bool>,
    pub weighted: Option<bool>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,

    pub theta: Option<Vec<f64>>,
    pub interval: Option<[f64; 2]>,
    pub lo_exclusive: Option<bool>,
    pub runs: Option<usize>,
    pub top_on_mean: Option<bool>,
    pub measure: Option<String>,
    pub complement: Option<bool>,

    pub alpha: Option<f64>,
    pub pagerank_tol: Option<f64>,
    pub pagerank_max_iter: Option<usize>,
    pub icr_p: Option<f64>,
    pub icr_runs: Option<usize>,
    pub base_theta: Option<f64>,
    pub values_cut: Option<String>,
    pub strict: Option<bool>,
    pub betweenness_normalization: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let c: FileConfig = toml::from_str(
            r#"
            graph = ["a.txt"]
            directed = true
            seed = 7
            theta = [0.25, 0.5]
            interval = [0.0, 0.5]
            lo_exclusive = true
            runs = 20
            measure = "PgR"
            alpha = 0.9
            values_cut = "floor"
            "#,
        )
        .unwrap();
        assert_eq!(c.graph.unwrap(), vec![PathBuf::from("a.txt")]);
        assert_eq!(c.interval, Some([0.0, 0.5]));
        assert_eq!(c.runs, Some(20));
        assert_eq!(c.values_cut.as_deref(), Some("floor"));
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(toml::from_str::<FileConfig>("grahp = [\"x\"]").is_err());
    }
}
