//! Isomorphic swap and discrete distances: minimum over candidate
//! bijections σ and voter matchings ρ of summed vote distances.

use std::collections::HashMap;

use super::assignment::{solve_assignment, CostMatrix};
use super::{DistanceOptions, DistanceOutcome};
use crate::election::{same_shape, CandidateMatching, Election, Vote, VoterMatching};
use crate::error::{guard, Error, Result};
use crate::perm;

/// Which vote distance the isomorphic metric extends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsoKind {
    Swap,
    Discrete,
}

/// Number of candidate pairs ranked in opposite order.
pub fn vote_swap_distance(u: &Vote, v: &Vote) -> Result<u64> {
    check_vote_lengths(u, v)?;
    let pu = u.positions();
    let pv = v.positions();
    let m = u.len();
    let mut count = 0;
    for a in 0..m {
        for b in a + 1..m {
            if (pu[a] < pu[b]) != (pv[a] < pv[b]) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// 0 for identical votes, 1 otherwise.
pub fn vote_discrete_distance(u: &Vote, v: &Vote) -> Result<u64> {
    check_vote_lengths(u, v)?;
    Ok((u != v) as u64)
}

fn check_vote_lengths(u: &Vote, v: &Vote) -> Result<()> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            what: "vote length",
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(())
}

fn vote_distance(kind: IsoKind, u: &Vote, v: &Vote) -> u64 {
    match kind {
        IsoKind::Swap => vote_swap_distance(u, v).unwrap_or(0),
        IsoKind::Discrete => (u != v) as u64,
    }
}

/// `Σ_i d(σ(a_i), b_{ρ(i)})` for fixed witnesses.
pub fn iso_cost_at(a: &Election, b: &Election, kind: IsoKind, sigma: &CandidateMatching, rho: &VoterMatching) -> Result<u64> {
    same_shape(a, b)?;
    if sigma.len() != a.m() || rho.len() != a.n() {
        return Err(Error::DimensionMismatch {
            what: "matching size",
            left: sigma.len(),
            right: a.m(),
        });
    }
    Ok(a
        .votes()
        .iter()
        .enumerate()
        .map(|(i, v)| vote_distance(kind, &v.relabel(sigma), &b.votes()[rho.apply(i)]))
        .sum())
}

pub fn iso_distance(a: &Election, b: &Election, kind: IsoKind, opts: &DistanceOptions) -> Result<DistanceOutcome> {
    same_shape(a, b)?;
    match kind {
        IsoKind::Swap => {
            guard("isomorphic swap distance (candidate count)", opts.swap_guard, a.m())?;
            Ok(iso_swap(a, b, opts.node_limit))
        }
        IsoKind::Discrete => Ok(iso_discrete(a, b)),
    }
}

struct SwapSearch<'a> {
    m: usize,
    n: usize,
    pos_a: Vec<Vec<usize>>,
    pos_b: Vec<Vec<usize>>,
    sigma: Vec<usize>,
    used: Vec<bool>,
    partial: Vec<i64>,
    best_cost: i64,
    best: Option<(Vec<usize>, Vec<usize>)>,
    nodes: u64,
    node_limit: Option<u64>,
    truncated: bool,
    _a: &'a Election,
}

impl SwapSearch<'_> {
    /// Adds (sign = 1) or removes (sign = −1) the inversion contributions of
    /// pairs between candidate `k` and every earlier candidate.
    fn apply_candidate(&mut self, k: usize, sign: i64) {
        let sk = self.sigma[k];
        for c in 0..k {
            let sc = self.sigma[c];
            for i in 0..self.n {
                let ord_a = self.pos_a[i][c] < self.pos_a[i][k];
                let row = &mut self.partial[i * self.n..(i + 1) * self.n];
                for (j, cell) in row.iter_mut().enumerate() {
                    let ord_b = self.pos_b[j][sc] < self.pos_b[j][sk];
                    if ord_a != ord_b {
                        *cell += sign;
                    }
                }
            }
        }
    }

    fn lower_bound(&self) -> i64 {
        let n = self.n;
        let rows: i64 = (0..n)
            .map(|i| self.partial[i * n..(i + 1) * n].iter().copied().min().unwrap_or(0))
            .sum();
        let cols: i64 = (0..n)
            .map(|j| (0..n).map(|i| self.partial[i * n + j]).min().unwrap_or(0))
            .sum();
        rows.max(cols)
    }

    fn dfs(&mut self, k: usize) {
        if self.truncated {
            return;
        }
        self.nodes += 1;
        if self.node_limit.is_some_and(|lim| self.nodes > lim) && self.best.is_some() {
            self.truncated = true;
            return;
        }
        if k == self.m {
            let n = self.n;
            let costs = CostMatrix::from_fn(n, |i, j| self.partial[i * n + j]);
            let sol = solve_assignment(&costs);
            if sol.cost < self.best_cost {
                self.best_cost = sol.cost;
                self.best = Some((self.sigma.clone(), sol.matching));
            }
            return;
        }
        for target in 0..self.m {
            if self.used[target] {
                continue;
            }
            self.used[target] = true;
            self.sigma[k] = target;
            self.apply_candidate(k, 1);
            if self.lower_bound() < self.best_cost {
                self.dfs(k + 1);
            }
            self.apply_candidate(k, -1);
            self.used[target] = false;
        }
    }
}

fn iso_swap(a: &Election, b: &Election, node_limit: Option<u64>) -> DistanceOutcome {
    let (m, n) = (a.m(), a.n());
    let mut search = SwapSearch {
        m,
        n,
        pos_a: a.votes().iter().map(|v| v.positions()).collect(),
        pos_b: b.votes().iter().map(|v| v.positions()).collect(),
        sigma: vec![0; m],
        used: vec![false; m],
        partial: vec![0; n * n],
        best_cost: i64::MAX,
        best: None,
        nodes: 0,
        node_limit,
        truncated: false,
        _a: a,
    };
    search.dfs(0);
    let (sigma, rho) = search.best.expect("at least one leaf is evaluated");
    DistanceOutcome {
        value: search.best_cost,
        candidate_matching: Some(CandidateMatching::new(sigma).expect("search yields a bijection")),
        voter_matching: Some(VoterMatching::new(rho).expect("assignment yields a bijection")),
        exact: !search.truncated,
    }
}

/// Polynomial: an optimal σ either maps some vote exactly onto some other
/// vote (and is then determined by that pair) or no vote matches at all.
fn iso_discrete(a: &Election, b: &Election) -> DistanceOutcome {
    let (m, n) = (a.m(), a.n());
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(n * n);
    for va in a.votes() {
        for vb in b.votes() {
            let mut sigma = vec![0usize; m];
            for k in 0..m {
                sigma[va.at(k)] = vb.at(k);
            }
            candidates.push(sigma);
        }
    }
    candidates.sort_unstable();
    candidates.dedup();

    let mut b_counts: HashMap<&Vote, usize> = HashMap::new();
    for v in b.votes() {
        *b_counts.entry(v).or_default() += 1;
    }

    let mut best: Option<(usize, Vec<usize>)> = None;
    for sigma in candidates {
        let cm = CandidateMatching::new(sigma.clone()).expect("derived from two permutations");
        let mut a_counts: HashMap<Vote, usize> = HashMap::new();
        for v in a.votes() {
            *a_counts.entry(v.relabel(&cm)).or_default() += 1;
        }
        let matched: usize = a_counts
            .iter()
            .map(|(v, &c)| c.min(b_counts.get(v).copied().unwrap_or(0)))
            .sum();
        if best.as_ref().is_none_or(|(bm, _)| matched > *bm) {
            best = Some((matched, sigma));
        }
    }
    let (matched, sigma) = best.expect("n >= 1 gives at least one candidate matching");
    let sigma = CandidateMatching::new(sigma).expect("bijection");
    let rho = match_identical_votes(a, b, &sigma);
    DistanceOutcome {
        value: (n - matched) as i64,
        candidate_matching: Some(sigma),
        voter_matching: Some(rho),
        exact: true,
    }
}

/// Pairs each relabeled vote of `a` with an identical vote of `b` where
/// possible; leftovers are paired in order.
fn match_identical_votes(a: &Election, b: &Election, sigma: &CandidateMatching) -> VoterMatching {
    let n = a.n();
    let mut free: HashMap<&Vote, Vec<usize>> = HashMap::new();
    for (j, v) in b.votes().iter().enumerate().rev() {
        free.entry(v).or_default().push(j);
    }
    let mut rho = vec![usize::MAX; n];
    let mut taken = vec![false; n];
    for (i, v) in a.votes().iter().enumerate() {
        let mapped = v.relabel(sigma);
        if let Some(j) = free.get_mut(&mapped).and_then(|s| s.pop()) {
            rho[i] = j;
            taken[j] = true;
        }
    }
    let mut rest = (0..n).filter(|&j| !taken[j]);
    for r in rho.iter_mut().filter(|r| **r == usize::MAX) {
        *r = rest.next().expect("counts agree");
    }
    VoterMatching::new(rho).expect("bijection")
}

/// Exhaustive minimum over all σ and ρ; a testing oracle for tiny elections.
pub fn brute_force_iso_distance(a: &Election, b: &Election, kind: IsoKind) -> Result<u64> {
    same_shape(a, b)?;
    guard("brute-force isomorphic distance (candidates)", 4, a.m())?;
    guard("brute-force isomorphic distance (voters)", 4, a.n())?;
    let rhos = perm::all_permutations(a.n());
    let mut best = u64::MAX;
    for s in perm::all_permutations(a.m()) {
        let sigma = CandidateMatching::new(s).expect("permutation");
        let relabeled: Vec<Vote> = a.votes().iter().map(|v| v.relabel(&sigma)).collect();
        for rho in &rhos {
            let total = relabeled
                .iter()
                .enumerate()
                .map(|(i, v)| vote_distance(kind, v, &b.votes()[rho[i]]))
                .sum();
            best = best.min(total);
        }
    }
    Ok(best)
}
