//! Exhaustive enumeration of small elections up to isomorphism.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::election::{Election, Vote};
use crate::error::{guard, Result};
use crate::perm;

pub const CENSUS_MAX_M: usize = 4;
pub const CENSUS_MAX_N: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub m: usize,
    pub n: usize,
    pub anec_count: usize,
    pub positionwise_classes: usize,
    pub pairwise_classes: usize,
    pub bordawise_classes: usize,
}

impl CensusReport {
    pub const CSV_HEADER: &'static str = "m,n,anecs,positionwise,pairwise,bordawise";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.m, self.n, self.anec_count, self.positionwise_classes, self.pairwise_classes, self.bordawise_classes
        )
    }
}

/// `table[σ][r]` is the rank of `σ(unrank(r))`.
fn relabel_table(m: usize) -> Vec<Vec<usize>> {
    let perms = perm::all_permutations(m);
    perms
        .iter()
        .map(|sigma| {
            perms
                .iter()
                .map(|v| perm::rank(&v.iter().map(|&c| sigma[c]).collect::<Vec<_>>()))
                .collect()
        })
        .collect()
}

fn is_self_minimal(ranks: &[usize], table: &[Vec<usize>], buf: &mut Vec<usize>) -> bool {
    for row in table.iter().skip(1) {
        buf.clear();
        buf.extend(ranks.iter().map(|&r| row[r]));
        buf.sort_unstable();
        if buf.as_slice() < ranks {
            return false;
        }
    }
    true
}

/// Calls `f` with each nondecreasing sequence of `n` ranks below `k`
/// whose first element is `first`.
fn for_each_multiset(k: usize, n: usize, first: usize, f: &mut impl FnMut(&[usize])) {
    let mut cur = vec![first; n];
    loop {
        f(&cur);
        // advance the rightmost position that can still grow
        let mut i = n;
        loop {
            if i == 1 {
                return;
            }
            i -= 1;
            if cur[i] + 1 < k {
                let v = cur[i] + 1;
                for x in cur.iter_mut().skip(i) {
                    *x = v;
                }
                break;
            }
        }
    }
}

/// Vote-rank multisets (sorted) of one representative per isomorphism class.
fn anec_rank_lists(m: usize, n: usize) -> Result<Vec<Vec<usize>>> {
    guard("census (candidates)", CENSUS_MAX_M, m)?;
    guard("census (voters)", CENSUS_MAX_N, n)?;
    if m == 0 || n == 0 {
        return Ok(Vec::new());
    }
    let k = perm::factorial(m) as usize;
    let table = relabel_table(m);
    let chunks: Vec<Vec<Vec<usize>>> = (0..k)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut buf = Vec::with_capacity(n);
            if n == 1 {
                if is_self_minimal(&[first], &table, &mut buf) {
                    out.push(vec![first]);
                }
                return out;
            }
            for_each_multiset(k, n, first, &mut |ranks| {
                if is_self_minimal(ranks, &table, &mut buf) {
                    out.push(ranks.to_vec());
                }
            });
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// One canonical election per anonymous, neutral equivalence class.
pub fn enumerate_anecs(m: usize, n: usize) -> Result<Vec<Election>> {
    Ok(anec_rank_lists(m, n)?
        .into_iter()
        .map(|ranks| {
            let votes = ranks.into_iter().map(|r| Vote::new(perm::unrank(r, m)).expect("unrank")).collect();
            Election::new(m, votes).expect("valid votes")
        })
        .collect())
}

pub fn count_equivalence_classes(m: usize, n: usize) -> Result<CensusReport> {
    let anecs = enumerate_anecs(m, n)?;
    let pos: HashSet<Vec<Vec<u64>>> = anecs.par_iter().map(|e| e.position_matrix().canonical_columns()).collect();
    let pair: HashSet<Vec<u64>> = anecs.par_iter().map(|e| e.majority_matrix().canonical_form()).collect();
    let borda: HashSet<Vec<u64>> = anecs.par_iter().map(|e| e.borda_vector().sorted_desc()).collect();
    Ok(CensusReport {
        m,
        n,
        anec_count: anecs.len(),
        positionwise_classes: pos.len(),
        pairwise_classes: pair.len(),
        bordawise_classes: borda.len(),
    })
}
