//! Recovering elections from aggregate representations.

use crate::election::{BordaVector, Election, MajorityMatrix, PositionMatrix, Vote};
use crate::error::{guard, Result};
use crate::perm;

/// Kuhn's augmenting-path matching from positions to candidates over
/// strictly positive cells.
fn perfect_matching(p: &PositionMatrix) -> Option<Vec<usize>> {
    let m = p.m();
    let mut cand_to_pos: Vec<Option<usize>> = vec![None; m];
    fn augment(p: &PositionMatrix, pos: usize, seen: &mut [bool], cand_to_pos: &mut [Option<usize>]) -> bool {
        for c in 0..p.m() {
            if p.get(pos, c) == 0 || seen[c] {
                continue;
            }
            seen[c] = true;
            let free = match cand_to_pos[c] {
                None => true,
                Some(other) => augment(p, other, seen, cand_to_pos),
            };
            if free {
                cand_to_pos[c] = Some(pos);
                return true;
            }
        }
        false
    }
    for pos in 0..m {
        let mut seen = vec![false; m];
        if !augment(p, pos, &mut seen, &mut cand_to_pos) {
            return None;
        }
    }
    let mut ranking = vec![0; m];
    for (c, pos) in cand_to_pos.into_iter().enumerate() {
        ranking[pos.expect("perfect")] = c;
    }
    Some(ranking)
}

/// An election whose position matrix is `p`, by repeatedly peeling off a
/// permutation supported on the positive cells.
pub fn recover_election(p: &PositionMatrix) -> Result<Election> {
    let m = p.m();
    let mut rest = p.clone();
    let mut votes = Vec::with_capacity(p.n() as usize);
    while rest.n() > 0 {
        let ranking = perfect_matching(&rest).expect("equal row and column sums admit a perfect matching");
        let k = (0..m).map(|pos| rest.get(pos, ranking[pos])).min().expect("m >= 1");
        for (pos, &c) in ranking.iter().enumerate() {
            rest.set(pos, c, rest.get(pos, c) - k);
        }
        let vote = Vote::new(ranking).expect("matching is a permutation");
        votes.extend(std::iter::repeat_n(vote, k as usize));
    }
    Election::new(m, votes)
}

pub const BORDA_REALIZABLE_MAX_M: usize = 5;

/// Searches vote-count vectors whose Borda scores equal `x`.
pub fn borda_realizable(x: &BordaVector, n: usize) -> Result<Option<Election>> {
    let m = x.scores().len();
    guard("Borda realizability search (candidates)", BORDA_REALIZABLE_MAX_M, m)?;
    if m == 0 {
        return Ok(None);
    }
    let total: u64 = x.scores().iter().sum();
    if total != (n * m * (m - 1) / 2) as u64 {
        return Ok(None);
    }
    let perms = perm::all_permutations(m);
    let contrib: Vec<Vec<i64>> = perms
        .iter()
        .map(|v| {
            let mut s = vec![0i64; m];
            for (pos, &c) in v.iter().enumerate() {
                s[c] = (m - 1 - pos) as i64;
            }
            s
        })
        .collect();
    // prefix sums of the best possible per-vote scores for the top-t candidates
    let best_prefix: Vec<i64> = (0..=m).map(|t| (0..t).map(|i| (m - 1 - i) as i64).sum()).collect();
    let mut remaining: Vec<i64> = x.scores().iter().map(|&s| s as i64).collect();
    let mut chosen = Vec::with_capacity(n);

    fn feasible(remaining: &[i64], votes_left: usize, best_prefix: &[i64]) -> bool {
        if remaining.iter().any(|&r| r < 0) {
            return false;
        }
        let mut sorted = remaining.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut acc = 0;
        for (t, r) in sorted.iter().enumerate() {
            acc += r;
            if acc > votes_left as i64 * best_prefix[t + 1] {
                return false;
            }
        }
        true
    }

    fn dfs(
        start: usize,
        votes_left: usize,
        remaining: &mut [i64],
        contrib: &[Vec<i64>],
        best_prefix: &[i64],
        chosen: &mut Vec<usize>,
    ) -> bool {
        if votes_left == 0 {
            return remaining.iter().all(|&r| r == 0);
        }
        for t in start..contrib.len() {
            for (r, s) in remaining.iter_mut().zip(&contrib[t]) {
                *r -= s;
            }
            chosen.push(t);
            if feasible(remaining, votes_left - 1, best_prefix)
                && dfs(t, votes_left - 1, remaining, contrib, best_prefix, chosen)
            {
                return true;
            }
            chosen.pop();
            for (r, s) in remaining.iter_mut().zip(&contrib[t]) {
                *r += s;
            }
        }
        false
    }

    if !feasible(&remaining, n, &best_prefix) {
        return Ok(None);
    }
    if dfs(0, n, &mut remaining, &contrib, &best_prefix, &mut chosen) {
        let votes = chosen.into_iter().map(|t| perms[t].clone()).collect();
        Ok(Some(Election::from_rankings(m, votes)?))
    } else {
        Ok(None)
    }
}

pub const MAJORITY_BRUTEFORCE_MAX_M: usize = 4;
pub const MAJORITY_BRUTEFORCE_MAX_N: usize = 4;

/// Exhaustive search over vote multisets for a profile with majority matrix `mm`.
pub fn majority_realizable_bruteforce(mm: &MajorityMatrix, n: usize) -> Result<Option<Election>> {
    let m = mm.m();
    guard("majority realizability search (candidates)", MAJORITY_BRUTEFORCE_MAX_M, m)?;
    guard("majority realizability search (voters)", MAJORITY_BRUTEFORCE_MAX_N, n)?;
    if mm.n() != n as u64 || n == 0 {
        return Ok(None);
    }
    let perms = perm::all_permutations(m);
    let k = perms.len();
    let mut idx = vec![0usize; n];
    loop {
        let e = Election::from_rankings(m, idx.iter().map(|&i| perms[i].clone()).collect())?;
        if e.majority_matrix() == *mm {
            return Ok(Some(e));
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if idx[i] + 1 < k {
                let v = idx[i] + 1;
                for x in idx.iter_mut().skip(i) {
                    *x = v;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::{compass_election, CompassKind};

    #[test]
    fn recover_round_trips() {
        let e = Election::from_rankings(3, vec![vec![0, 1, 2], vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        let p = e.position_matrix();
        assert_eq!(recover_election(&p).unwrap().position_matrix(), p);
        let id = PositionMatrix::from_rows(vec![vec![5, 0, 0], vec![0, 5, 0], vec![0, 0, 5]]).unwrap();
        let r = recover_election(&id).unwrap();
        assert!(r.votes().iter().all(|v| v.ranking() == [0, 1, 2]));
        let flat = PositionMatrix::from_rows(vec![vec![2; 3]; 3]).unwrap();
        let un = compass_election(CompassKind::Un, 3, 6).unwrap();
        assert_eq!(recover_election(&flat).unwrap().position_matrix(), un.position_matrix());
    }

    #[test]
    fn borda_cases() {
        let w = borda_realizable(&BordaVector(vec![3, 5, 1]), 3).unwrap().unwrap();
        assert_eq!(w.borda_vector().scores(), &[3, 5, 1]);
        assert!(borda_realizable(&BordaVector(vec![6, 6, 0, 0]), 2).unwrap().is_none());
        assert!(borda_realizable(&BordaVector(vec![2, 2, 2]), 2).unwrap().is_some());
        assert!(borda_realizable(&BordaVector(vec![2, 2, 1]), 2).unwrap().is_none());
        assert!(borda_realizable(&BordaVector(vec![0; 6]), 1).is_err());
    }

    #[test]
    fn majority_cases() {
        let two = MajorityMatrix::from_rows(vec![vec![0, 2], vec![0, 0]], 2).unwrap();
        let w = majority_realizable_bruteforce(&two, 2).unwrap().unwrap();
        assert!(w.votes().iter().all(|v| v.ranking() == [0, 1]));
        let cycle = MajorityMatrix::from_rows(vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]], 1).unwrap();
        assert!(majority_realizable_bruteforce(&cycle, 1).unwrap().is_none());
        let e = Election::from_rankings(3, vec![vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]]).unwrap();
        assert!(majority_realizable_bruteforce(&e.majority_matrix(), 3).unwrap().is_some());
    }
}
