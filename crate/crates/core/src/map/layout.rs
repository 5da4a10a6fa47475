//! Spring layout and classical MDS for distance matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::DistanceMatrix;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LayoutMethod {
    /// Spring embedder whose ideal lengths are proportional to the distances.
    #[default]
    Force,
    /// Classical multidimensional scaling.
    Mds,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LayoutConfig {
    pub method: LayoutMethod,
    pub iterations: usize,
    pub seed: u64,
    /// Largest displacement of a point in the first iteration, in units of the largest distance.
    pub initial_temperature: f64,
    pub final_temperature: f64,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        LayoutConfig {
            method: LayoutMethod::Force,
            iterations: 1000,
            seed: 0,
            initial_temperature: 0.1,
            final_temperature: 1e-4,
        }
    }
}

/// Points in the unit square, one per label.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Embedding {
    pub labels: Vec<String>,
    pub points: Vec<[f64; 2]>,
    pub config: LayoutConfig,
    pub stress: f64,
    /// Stress after each iteration.
    pub stress_trace: Vec<f64>,
}

/// Normalized stress `Σ(s·e − d)² / Σd²` under the best scale `s`.
pub fn stress(points: &[[f64; 2]], d: &DistanceMatrix) -> f64 {
    let k = d.len().min(points.len());
    let (mut ed, mut ee, mut dd) = (0.0, 0.0, 0.0);
    for i in 0..k {
        for j in i + 1..k {
            let e = dist(points[i], points[j]);
            let t = d.get(i, j) as f64;
            ed += e * t;
            ee += e * e;
            dd += t * t;
        }
    }
    if dd == 0.0 {
        return 0.0;
    }
    if ee == 0.0 {
        return 1.0;
    }
    let s = ed / ee;
    ((s * s * ee - 2.0 * s * ed + dd) / dd).max(0.0)
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

pub fn embed(d: &DistanceMatrix, config: &LayoutConfig) -> Embedding {
    let k = d.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut points: Vec<[f64; 2]> = (0..k).map(|_| [rng.random::<f64>(), rng.random::<f64>()]).collect();
    let mut trace = Vec::new();
    if k >= 2 && d.max() > 0 {
        match config.method {
            LayoutMethod::Force => force_layout(d, config, &mut points, &mut trace),
            LayoutMethod::Mds => {
                points = classical_mds(d, &mut rng);
                trace.push(stress(&points, d));
            }
        }
    }
    normalize(&mut points);
    Embedding {
        labels: d.labels.clone(),
        stress: stress(&points, d),
        points,
        config: config.clone(),
        stress_trace: trace,
    }
}

fn force_layout(d: &DistanceMatrix, config: &LayoutConfig, points: &mut [[f64; 2]], trace: &mut Vec<f64>) {
    let k = d.len();
    let scale = d.max() as f64;
    let target = |i: usize, j: usize| d.get(i, j) as f64 / scale;
    let iters = config.iterations.max(1);
    let cooling = (config.final_temperature / config.initial_temperature)
        .max(f64::MIN_POSITIVE)
        .powf(1.0 / iters as f64);
    let mut temp = config.initial_temperature;
    let mut current = stress(points, d);
    let mut candidate = points.to_vec();
    for _ in 0..iters {
        for i in 0..k {
            let mut f = [0.0, 0.0];
            for j in 0..k {
                if i == j {
                    continue;
                }
                let dx = points[j][0] - points[i][0];
                let dy = points[j][1] - points[i][1];
                let len = (dx * dx + dy * dy).sqrt();
                let (ux, uy) = if len > 1e-12 {
                    (dx / len, dy / len)
                } else {
                    let a = (i * k + j) as f64 * 2.399_963_229_728_653;
                    (a.cos(), a.sin())
                };
                let pull = len - target(i, j);
                f[0] += pull * ux;
                f[1] += pull * uy;
            }
            f[0] /= (k - 1) as f64;
            f[1] /= (k - 1) as f64;
            let norm = (f[0] * f[0] + f[1] * f[1]).sqrt();
            let cap = if norm > temp { temp / norm } else { 1.0 };
            candidate[i] = [points[i][0] + f[0] * cap, points[i][1] + f[1] * cap];
        }
        let next = stress(&candidate, d);
        if next <= current {
            points.copy_from_slice(&candidate);
            current = next;
            temp *= cooling;
        } else {
            temp *= 0.5;
        }
        trace.push(current);
    }
}

fn classical_mds(d: &DistanceMatrix, rng: &mut ChaCha8Rng) -> Vec<[f64; 2]> {
    let k = d.len();
    let mut b = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..k {
            let v = d.get(i, j) as f64;
            b[i * k + j] = -0.5 * v * v;
        }
    }
    let row_mean: Vec<f64> = (0..k).map(|i| b[i * k..(i + 1) * k].iter().sum::<f64>() / k as f64).collect();
    let all_mean = row_mean.iter().sum::<f64>() / k as f64;
    for i in 0..k {
        for j in 0..k {
            b[i * k + j] += all_mean - row_mean[i] - row_mean[j];
        }
    }
    let mut axes: Vec<(f64, Vec<f64>)> = Vec::new();
    for _ in 0..2 {
        let mut v: Vec<f64> = (0..k).map(|_| rng.random::<f64>() - 0.5).collect();
        let mut lambda = 0.0;
        for _ in 0..1000 {
            for (_, u) in &axes {
                let p: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(u).for_each(|(a, b)| *a -= p * b);
            }
            let w: Vec<f64> = (0..k).map(|i| (0..k).map(|j| b[i * k + j] * v[j]).sum()).collect();
            let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 {
                lambda = 0.0;
                break;
            }
            lambda = v.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>();
            v = w.into_iter().map(|x| x / norm).collect();
        }
        axes.push((lambda.max(0.0), v));
    }
    (0..k)
        .map(|i| [axes[0].1[i] * axes[0].0.sqrt(), axes[1].1[i] * axes[1].0.sqrt()])
        .collect()
}

/// Translates and uniformly rescales into the unit square, centering the shorter axis.
fn normalize(points: &mut [[f64; 2]]) {
    if points.is_empty() {
        return;
    }
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in points.iter() {
        for a in 0..2 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]);
    for p in points.iter_mut() {
        for a in 0..2 {
            p[a] = if extent > 0.0 {
                (p[a] - lo[a]) / extent + (1.0 - (hi[a] - lo[a]) / extent) / 2.0
            } else {
                0.5
            };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::MetricKind;

    fn matrix(rows: Vec<Vec<i64>>) -> DistanceMatrix {
        let labels = (0..rows.len()).map(|i| i.to_string()).collect();
        DistanceMatrix::from_rows(labels, rows, MetricKind::IsoSwap).unwrap()
    }

    fn random_matrix(k: usize, seed: u64) -> DistanceMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows = vec![vec![0; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let v = rng.random_range(1..50);
                rows[i][j] = v;
                rows[j][i] = v;
            }
        }
        matrix(rows)
    }

    #[test]
    fn two_points() {
        let d = matrix(vec![vec![0, 7], vec![7, 0]]);
        let e = embed(&d, &LayoutConfig::default());
        assert!((dist(e.points[0], e.points[1]) - 1.0).abs() < 0.05);
        assert!(e.stress < 1e-9);
    }

    #[test]
    fn pythagorean_triangle() {
        let d = matrix(vec![vec![0, 3, 4], vec![3, 0, 5], vec![4, 5, 0]]);
        for method in [LayoutMethod::Force, LayoutMethod::Mds] {
            let e = embed(&d, &LayoutConfig { method, ..Default::default() });
            let p = &e.points;
            let (a, b, c) = (dist(p[0], p[1]), dist(p[0], p[2]), dist(p[1], p[2]));
            assert!((b / a - 4.0 / 3.0).abs() < 0.1 * 4.0 / 3.0, "{method:?}");
            assert!((c / a - 5.0 / 3.0).abs() < 0.1 * 5.0 / 3.0, "{method:?}");
            assert!(e.stress < 1e-3, "{method:?} {}", e.stress);
        }
    }

    #[test]
    fn all_zero_matrix() {
        let d = matrix(vec![vec![0; 5]; 5]);
        for method in [LayoutMethod::Force, LayoutMethod::Mds] {
            let e = embed(&d, &LayoutConfig { method, ..Default::default() });
            assert!(e.points.iter().flatten().all(|x| x.is_finite()));
            assert_eq!(e.stress, 0.0);
        }
    }

    #[test]
    fn single_point() {
        let e = embed(&matrix(vec![vec![0]]), &LayoutConfig::default());
        assert_eq!(e.points, vec![[0.5, 0.5]]);
    }

    #[test]
    fn stress_trace_non_increasing() {
        for seed in 0..5 {
            let d = random_matrix(20, seed);
            let e = embed(&d, &LayoutConfig { seed, ..Default::default() });
            let tail = &e.stress_trace[e.stress_trace.len() * 9 / 10..];
            assert!(tail.windows(2).all(|w| w[1] <= w[0]));
            assert!((e.stress - e.stress_trace.last().unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let d = random_matrix(12, 3);
        let c = LayoutConfig { seed: 9, ..Default::default() };
        assert_eq!(embed(&d, &c), embed(&d, &c));
    }

    #[test]
    fn points_in_unit_square() {
        let e = embed(&random_matrix(15, 1), &LayoutConfig::default());
        assert!(e.points.iter().flatten().all(|&x| (0.0..=1.0 + 1e-12).contains(&x)));
    }

    #[test]
    fn mds_recovers_planar_configuration() {
        let pts = [(0, 0), (6, 0), (0, 8), (6, 8), (3, 4)];
        let rows = pts
            .iter()
            .map(|a| {
                pts.iter()
                    .map(|b| ((((a.0 - b.0) * (a.0 - b.0) + (a.1 - b.1) * (a.1 - b.1)) as f64).sqrt() * 10.0).round() as i64)
                    .collect()
            })
            .collect();
        let e = embed(&matrix(rows), &LayoutConfig { method: LayoutMethod::Mds, ..Default::default() });
        assert!(e.stress < 1e-4, "{}", e.stress);
    }

    #[test]
    fn stress_is_scale_invariant() {
        let d = random_matrix(6, 2);
        let p: Vec<[f64; 2]> = (0..6).map(|i| [i as f64, (i * i) as f64]).collect();
        let q: Vec<[f64; 2]> = p.iter().map(|x| [3.0 * x[0] + 1.0, 3.0 * x[1] - 2.0]).collect();
        assert!((stress(&p, &d) - stress(&q, &d)).abs() < 1e-12);
    }
}
