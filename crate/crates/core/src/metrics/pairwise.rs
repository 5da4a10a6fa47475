//! Pairwise distance over weighted majority relations.

use super::assignment::{solve_assignment, CostMatrix};
use super::{DistanceOptions, DistanceOutcome};
use crate::election::{same_shape, CandidateMatching, Election, MajorityMatrix};
use crate::error::{guard, Error, Result};

/// `Σ_{a≠b} |M_A(a,b) − M_B(σ(a),σ(b))|` at a fixed σ.
pub fn pairwise_cost_at(a: &Election, b: &Election, sigma: &CandidateMatching) -> Result<i64> {
    same_shape(a, b)?;
    if sigma.len() != a.m() {
        return Err(Error::DimensionMismatch {
            what: "matching size",
            left: sigma.len(),
            right: a.m(),
        });
    }
    Ok(majority_cost_at(&a.majority_matrix(), &b.majority_matrix(), sigma.as_slice()))
}

pub(crate) fn majority_cost_at(x: &MajorityMatrix, y: &MajorityMatrix, sigma: &[usize]) -> i64 {
    let m = x.m();
    let mut total = 0;
    for p in 0..m {
        for q in 0..m {
            if p != q {
                total += (x.get(p, q) as i64 - y.get(sigma[p], sigma[q]) as i64).abs();
            }
        }
    }
    total
}

pub fn pairwise_distance(a: &Election, b: &Election, opts: &DistanceOptions) -> Result<DistanceOutcome> {
    same_shape(a, b)?;
    pairwise_distance_matrices(&a.majority_matrix(), &b.majority_matrix(), opts)
}

pub fn pairwise_distance_matrices(x: &MajorityMatrix, y: &MajorityMatrix, opts: &DistanceOptions) -> Result<DistanceOutcome> {
    if x.m() != y.m() {
        return Err(Error::DimensionMismatch {
            what: "candidate count",
            left: x.m(),
            right: y.m(),
        });
    }
    guard("pairwise distance (candidate count)", opts.pairwise_guard, x.m())?;
    let m = x.m();
    let mut search = Search {
        m,
        x: (0..m * m).map(|i| x.get(i / m, i % m) as i64).collect(),
        y: (0..m * m).map(|i| y.get(i / m, i % m) as i64).collect(),
        sigma: Vec::with_capacity(m),
        used: vec![false; m],
        best_cost: i64::MAX,
        best: None,
        nodes: 0,
        node_limit: opts.node_limit,
        truncated: false,
    };
    search.dfs(0);
    let sigma = search.best.expect("at least one leaf is evaluated");
    Ok(DistanceOutcome {
        value: search.best_cost,
        candidate_matching: Some(CandidateMatching::new(sigma).expect("search yields a bijection")),
        voter_matching: None,
        exact: !search.truncated,
    })
}

struct Search {
    m: usize,
    x: Vec<i64>,
    y: Vec<i64>,
    sigma: Vec<usize>,
    used: Vec<bool>,
    best_cost: i64,
    best: Option<Vec<usize>>,
    nodes: u64,
    node_limit: Option<u64>,
    truncated: bool,
}

impl Search {
    /// Cost of pairs between candidate `p` (mapped to `d`) and the assigned prefix.
    fn contribution(&self, p: usize, d: usize) -> i64 {
        let m = self.m;
        self.sigma
            .iter()
            .enumerate()
            .map(|(c, &sc)| (self.x[p * m + c] - self.y[d * m + sc]).abs() + (self.x[c * m + p] - self.y[sc * m + d]).abs())
            .sum()
    }

    fn lower_bound(&self) -> i64 {
        let k = self.sigma.len();
        let rows: Vec<usize> = (k..self.m).collect();
        let cols: Vec<usize> = (0..self.m).filter(|&d| !self.used[d]).collect();
        if rows.is_empty() {
            return 0;
        }
        let costs = CostMatrix::from_fn(rows.len(), |i, j| self.contribution(rows[i], cols[j]));
        solve_assignment(&costs).cost
    }

    fn dfs(&mut self, cost: i64) {
        if self.truncated {
            return;
        }
        self.nodes += 1;
        if self.node_limit.is_some_and(|lim| self.nodes > lim) && self.best.is_some() {
            self.truncated = true;
            return;
        }
        let k = self.sigma.len();
        if k == self.m {
            if cost < self.best_cost {
                self.best_cost = cost;
                self.best = Some(self.sigma.clone());
            }
            return;
        }
        for d in 0..self.m {
            if self.used[d] {
                continue;
            }
            let step = self.contribution(k, d);
            self.used[d] = true;
            self.sigma.push(d);
            let next = cost + step;
            if next < self.best_cost && next + self.lower_bound() < self.best_cost {
                self.dfs(next);
            }
            self.sigma.pop();
            self.used[d] = false;
        }
    }
}
