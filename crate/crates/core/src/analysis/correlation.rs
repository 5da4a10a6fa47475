//! Pearson and Spearman correlation between metrics over a dataset.

use rayon::prelude::*;
use serde::Serialize;

use crate::election::Election;
use crate::error::{Error, Result};
use crate::metrics::{distance_with, DistanceOptions, MetricKind};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub metric_a: MetricKind,
    pub metric_b: MetricKind,
    pub pearson: f64,
    pub spearman: f64,
    pub pair_count: usize,
}

impl CorrelationReport {
    pub const CSV_HEADER: &'static str = "metric_a,metric_b,pearson,spearman,pairs";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:.6},{:.6},{}",
            self.metric_a, self.metric_b, self.pearson, self.spearman, self.pair_count
        )
    }
}

/// Distances for all unordered pairs `i < j`, in row-major order.
pub fn pair_distances(dataset: &[Election], kind: MetricKind, opts: &DistanceOptions) -> Result<Vec<i64>> {
    let pairs: Vec<(usize, usize)> = (0..dataset.len())
        .flat_map(|i| (i + 1..dataset.len()).map(move |j| (i, j)))
        .collect();
    pairs
        .par_iter()
        .map(|&(i, j)| distance_with(&dataset[i], &dataset[j], kind, opts).map(|o| o.value))
        .collect()
}

pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            what: "sample length",
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::UndefinedCorrelation("fewer than two samples".into()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("a sample has zero variance".into()));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// 1-based ranks with ties replaced by their average rank.
pub fn fractional_ranks(x: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut ranks = vec![0.0; x.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && x[idx[j + 1]] == x[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    pearson(&fractional_ranks(x), &fractional_ranks(y))
}

pub fn correlation_from_distances(kind_a: MetricKind, a: &[i64], kind_b: MetricKind, b: &[i64]) -> Result<CorrelationReport> {
    let xa: Vec<f64> = a.iter().map(|&v| v as f64).collect();
    let xb: Vec<f64> = b.iter().map(|&v| v as f64).collect();
    Ok(CorrelationReport {
        metric_a: kind_a,
        metric_b: kind_b,
        pearson: pearson(&xa, &xb)?,
        spearman: spearman(&xa, &xb)?,
        pair_count: a.len(),
    })
}

/// Correlation of two metrics over all unordered pairs of distinct elections.
pub fn correlation(dataset: &[Election], kind_a: MetricKind, kind_b: MetricKind) -> Result<CorrelationReport> {
    if dataset.len() < 2 {
        return Err(Error::UndefinedCorrelation("need at least two elections".into()));
    }
    let opts = DistanceOptions::default();
    let a = pair_distances(dataset, kind_a, &opts)?;
    let b = pair_distances(dataset, kind_b, &opts)?;
    correlation_from_distances(kind_a, &a, kind_b, &b)
}
