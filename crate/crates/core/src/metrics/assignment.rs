//! Exact minimum-cost perfect matching on square integer cost matrices.

use crate::error::{Error, Result};

/// Square matrix of assignment costs, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostMatrix {
    k: usize,
    cells: Vec<i64>,
}

impl CostMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let k = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != k) {
            return Err(Error::NotSquare { rows: k, cols: r.len() });
        }
        Ok(CostMatrix {
            k,
            cells: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(k: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut cells = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                cells.push(f(i, j));
            }
        }
        CostMatrix { k, cells }
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.cells[i * self.k + j]
    }

    /// Total cost of `matching[row] = col`.
    pub fn cost_of(&self, matching: &[usize]) -> i64 {
        matching.iter().enumerate().map(|(i, &j)| self.get(i, j)).sum()
    }
}

/// An optimal assignment: `matching[row] = col`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub matching: Vec<usize>,
    pub cost: i64,
}

/// Shortest augmenting path with potentials, O(k³).
pub fn solve_assignment(costs: &CostMatrix) -> Assignment {
    let k = costs.k;
    if k == 0 {
        return Assignment {
            matching: Vec::new(),
            cost: 0,
        };
    }
    const INF: i64 = i64::MAX / 4;
    // 1-based bookkeeping; column 0 is the virtual source.
    let mut u = vec![0i64; k + 1];
    let mut v = vec![0i64; k + 1];
    let mut owner = vec![0usize; k + 1];
    let mut way = vec![0usize; k + 1];
    for row in 1..=k {
        owner[0] = row;
        let mut j0 = 0usize;
        let mut minv = vec![INF; k + 1];
        let mut used = vec![false; k + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = INF;
            let mut j1 = 0usize;
            for j in 1..=k {
                if used[j] {
                    continue;
                }
                let cur = costs.get(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=k {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut matching = vec![0usize; k];
    for j in 1..=k {
        matching[owner[j] - 1] = j - 1;
    }
    let cost = costs.cost_of(&matching);
    Assignment { matching, cost }
}

/// Like [`solve_assignment`] but returns the lexicographically smallest
/// optimal matching.
pub fn solve_assignment_lexmin(costs: &CostMatrix) -> Assignment {
    let k = costs.k;
    let optimum = solve_assignment(costs).cost;
    let mut matching = Vec::with_capacity(k);
    let mut used = vec![false; k];
    let mut fixed_cost = 0i64;
    for row in 0..k {
        let rest_rows: Vec<usize> = (row + 1..k).collect();
        let mut chosen = None;
        for col in (0..k).filter(|&c| !used[c]) {
            let rest_cols: Vec<usize> = (0..k).filter(|&c| !used[c] && c != col).collect();
            let sub = CostMatrix::from_fn(rest_rows.len(), |i, j| costs.get(rest_rows[i], rest_cols[j]));
            let total = fixed_cost + costs.get(row, col) + solve_assignment(&sub).cost;
            if total == optimum {
                chosen = Some(col);
                break;
            }
        }
        // an optimal completion always exists for some column
        let col = chosen.expect("optimal completion exists");
        used[col] = true;
        fixed_cost += costs.get(row, col);
        matching.push(col);
    }
    Assignment {
        matching,
        cost: optimum,
    }
}
