//! Distance matrices over datasets and two-dimensional maps of elections.

mod export;
mod layout;

pub use export::{export_map, render_csv, render_svg, MapFormat, COMPASS_CLASS, PALETTE};
pub use layout::{embed, stress, Embedding, LayoutConfig, LayoutMethod};

use serde::{Deserialize, Serialize};

use crate::analysis::pair_distances;
use crate::election::Election;
use crate::error::{Error, Result};
use crate::metrics::{DistanceOptions, MetricKind};

/// Symmetric matrix of pairwise distances with a zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    pub labels: Vec<String>,
    cells: Vec<i64>,
    pub metric: MetricKind,
}

impl DistanceMatrix {
    /// Builds a matrix from full rows, checking symmetry, the zero diagonal and nonnegativity.
    pub fn from_rows(labels: Vec<String>, rows: Vec<Vec<i64>>, metric: MetricKind) -> Result<Self> {
        let k = labels.len();
        if rows.len() != k {
            return Err(Error::DimensionMismatch { what: "matrix rows", left: rows.len(), right: k });
        }
        let mut cells = Vec::with_capacity(k * k);
        for row in &rows {
            if row.len() != k {
                return Err(Error::NotSquare { rows: k, cols: row.len() });
            }
            cells.extend_from_slice(row);
        }
        for i in 0..k {
            if cells[i * k + i] != 0 {
                return Err(Error::InvalidParameter(format!("nonzero diagonal at {i}")));
            }
            for j in 0..k {
                let v = cells[i * k + j];
                if v < 0 {
                    return Err(Error::NegativeEntry(v.to_string()));
                }
                if v != cells[j * k + i] {
                    return Err(Error::InvalidParameter(format!("asymmetric entries at ({i},{j})")));
                }
            }
        }
        Ok(DistanceMatrix { labels, cells, metric })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.cells[i * self.len() + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        let k = self.len();
        if k == 0 {
            return Vec::new();
        }
        self.cells.chunks(k).map(|r| r.to_vec()).collect()
    }

    pub fn max(&self) -> i64 {
        self.cells.iter().copied().max().unwrap_or(0)
    }

    /// Reorders rows and columns so that entry `i` of the result is entry `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<DistanceMatrix> {
        let k = self.len();
        let mut seen = vec![false; k];
        if perm.len() != k || perm.iter().any(|&p| p >= k || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidParameter("not a permutation of the matrix indices".into()));
        }
        let mut cells = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                cells[i * k + j] = self.get(perm[i], perm[j]);
            }
        }
        Ok(DistanceMatrix {
            labels: perm.iter().map(|&p| self.labels[p].clone()).collect(),
            cells,
            metric: self.metric,
        })
    }

    /// CSV with a header row of labels and one labelled row per element.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id");
        for l in &self.labels {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(l);
            for j in 0..self.len() {
                out.push(',');
                out.push_str(&self.get(i, j).to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Evaluates `kind` on every unordered pair of the dataset in parallel.
pub fn distance_matrix(
    labels: Vec<String>,
    dataset: &[Election],
    kind: MetricKind,
    opts: &DistanceOptions,
) -> Result<DistanceMatrix> {
    if labels.len() != dataset.len() {
        return Err(Error::DimensionMismatch { what: "label count", left: labels.len(), right: dataset.len() });
    }
    if let Some(first) = dataset.first() {
        for e in dataset {
            if e.m() != first.m() {
                return Err(Error::DimensionMismatch { what: "candidate count", left: first.m(), right: e.m() });
            }
            if e.n() != first.n() {
                return Err(Error::DimensionMismatch { what: "voter count", left: first.n(), right: e.n() });
            }
        }
    }
    let k = dataset.len();
    let flat = pair_distances(dataset, kind, opts)?;
    let mut cells = vec![0; k * k];
    let mut it = flat.into_iter();
    for i in 0..k {
        for j in i + 1..k {
            let v = it.next().expect("pair count");
            cells[i * k + j] = v;
            cells[j * k + i] = v;
        }
    }
    Ok(DistanceMatrix { labels, cells, metric: kind })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::compass_distance_formula;
    use crate::election::{compass_election, CompassKind};

    fn compass_dataset(m: usize, n: usize) -> (Vec<String>, Vec<Election>) {
        CompassKind::ALL
            .iter()
            .map(|&c| (c.label().to_string(), compass_election(c, m, n).unwrap()))
            .unzip()
    }

    #[test]
    fn compass_emd_matrix() {
        let (labels, data) = compass_dataset(4, 24);
        let d = distance_matrix(labels, &data, MetricKind::EmdPositionwise, &DistanceOptions::default()).unwrap();
        assert_eq!(d.get(0, 2), 120);
        for (i, &a) in CompassKind::ALL.iter().enumerate() {
            for (j, &b) in CompassKind::ALL.iter().enumerate().skip(i + 1) {
                let f = compass_distance_formula(MetricKind::EmdPositionwise, (a, b), 4, 24).unwrap();
                assert!(f.value.admits(d.get(i, j)), "{a:?} {b:?}");
            }
        }
        assert_eq!(d.rows(), d.permuted(&[0, 1, 2, 3]).unwrap().rows());
        for i in 0..4 {
            assert_eq!(d.get(i, i), 0);
            for j in 0..4 {
                assert_eq!(d.get(i, j), d.get(j, i));
            }
        }
    }

    #[test]
    fn single_element() {
        let (mut labels, mut data) = compass_dataset(4, 24);
        labels.truncate(1);
        data.truncate(1);
        let d = distance_matrix(labels, &data, MetricKind::IsoSwap, &DistanceOptions::default()).unwrap();
        assert_eq!(d.rows(), vec![vec![0]]);
    }

    #[test]
    fn reordering_permutes_matrix() {
        let (labels, data) = compass_dataset(4, 24);
        let opts = DistanceOptions::default();
        let d = distance_matrix(labels.clone(), &data, MetricKind::Pairwise, &opts).unwrap();
        let perm = [2, 0, 3, 1];
        let l2: Vec<String> = perm.iter().map(|&p| labels[p].clone()).collect();
        let e2: Vec<Election> = perm.iter().map(|&p| data[p].clone()).collect();
        let d2 = distance_matrix(l2, &e2, MetricKind::Pairwise, &opts).unwrap();
        assert_eq!(d2, d.permuted(&perm).unwrap());
    }

    #[test]
    fn mixed_sizes_rejected() {
        let a = compass_election(CompassKind::Id, 4, 6).unwrap();
        let b = compass_election(CompassKind::Id, 4, 24).unwrap();
        let r = distance_matrix(vec!["a".into(), "b".into()], &[a, b], MetricKind::Bordawise, &DistanceOptions::default());
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn from_rows_validates() {
        let l = vec!["a".to_string(), "b".to_string()];
        assert!(DistanceMatrix::from_rows(l.clone(), vec![vec![0, 1], vec![2, 0]], MetricKind::IsoSwap).is_err());
        assert!(DistanceMatrix::from_rows(l.clone(), vec![vec![1, 1], vec![1, 0]], MetricKind::IsoSwap).is_err());
        let d = DistanceMatrix::from_rows(l, vec![vec![0, 3], vec![3, 0]], MetricKind::IsoSwap).unwrap();
        assert_eq!(d.to_csv(), "id,a,b\na,0,3\nb,3,0\n");
    }
}
