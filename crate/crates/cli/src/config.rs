use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use electodist::cultures::{sample_dataset, CultureEntry};
use electodist::election::{compass_election, CompassKind};
use electodist::map::{LayoutConfig, COMPASS_CLASS};
use electodist::metrics::{DistanceOptions, MetricKind};
use electodist::Election;
use serde::{Deserialize, Serialize};

/// A reproducible experiment bundle read from JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub m: usize,
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub dataset: Vec<CultureEntry>,
    #[serde(default)]
    pub compass: Vec<CompassKind>,
    #[serde(default = "default_metrics")]
    pub metrics: Vec<MetricKind>,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    #[serde(default)]
    pub layout: LayoutConfig,
    #[serde(default)]
    pub options: DistanceOptions,
}

fn default_metrics() -> Vec<MetricKind> {
    vec![MetricKind::IsoSwap, MetricKind::EmdPositionwise]
}

fn default_output() -> PathBuf {
    PathBuf::from("out")
}

/// Command-line values that replace config fields when present.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub metrics: Option<Vec<MetricKind>>,
    pub output: Option<PathBuf>,
}

/// One dataset element with its file stem and color class.
pub struct Item {
    pub id: String,
    pub class: String,
    pub election: Election,
}

impl ExperimentConfig {
    pub fn load(path: &Path, o: &Overrides) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut cfg: ExperimentConfig =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if let Some(m) = o.m {
            cfg.m = m;
        }
        if let Some(n) = o.n {
            cfg.n = n;
        }
        if let Some(s) = o.seed {
            cfg.seed = s;
        }
        if let Some(ms) = &o.metrics {
            cfg.metrics = ms.clone();
        }
        if let Some(out) = &o.output {
            cfg.output = out.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            bail!("m and n must be positive, got m={}, n={}", self.m, self.n);
        }
        if self.metrics.is_empty() {
            bail!("at least one metric is required");
        }
        for e in &self.dataset {
            e.spec.validate()?;
        }
        for c in &self.compass {
            c.check(self.m, self.n)?;
        }
        Ok(())
    }

    /// Sampled elections followed by the requested compass elections.
    pub fn build(&self) -> Result<Vec<Item>> {
        let mut items: Vec<Item> = sample_dataset(&self.dataset, self.m, self.n, self.seed)?
            .into_iter()
            .enumerate()
            .map(|(i, (spec, election))| Item { id: format!("e{i:04}"), class: spec.label(), election })
            .collect();
        for &c in &self.compass {
            items.push(Item {
                id: c.label().to_string(),
                class: COMPASS_CLASS.to_string(),
                election: compass_election(c, self.m, self.n)?,
            });
        }
        if items.is_empty() {
            bail!("the dataset is empty");
        }
        Ok(items)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_config() {
        let cfg: ExperimentConfig = serde_json::from_str(
            r#"{"m": 4, "n": 24, "dataset": [{"model": "ic", "count": 2},
                {"model": "urn", "params": {"alpha": 0.5}, "count": 1}], "compass": ["ID", "UN"]}"#,
        )
        .unwrap();
        cfg.validate().unwrap();
        let items = cfg.build().unwrap();
        assert_eq!(items.len(), 5);
        assert_eq!(items[3].id, "ID");
        assert_eq!(items[2].class, "urn-0.5");
        assert_eq!(cfg.metrics, default_metrics());
    }

    #[test]
    fn rejects_impossible_compass() {
        let cfg: ExperimentConfig = serde_json::from_str(r#"{"m": 3, "n": 4, "compass": ["UN"]}"#).unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn rejects_unknown_model() {
        let r: std::result::Result<ExperimentConfig, _> =
            serde_json::from_str(r#"{"m": 3, "n": 4, "dataset": [{"model": "nope", "count": 1}]}"#);
        assert!(r.is_err());
    }
}
