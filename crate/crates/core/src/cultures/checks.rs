use crate::election::{Election, Vote};
use crate::error::{Error, Result};
use crate::metrics::vote_swap_distance;
use crate::perm;

fn axis_positions(axis: &[usize], m: usize) -> Result<Vec<usize>> {
    if axis.len() != m || !perm::is_permutation(axis) {
        return Err(Error::NotAPermutation {
            m,
            detail: format!("axis {axis:?}"),
        });
    }
    Ok(perm::inverse(axis))
}

/// Each top-k prefix of `v` is an interval of `axis`.
pub fn is_single_peaked_vote(v: &Vote, axis: &[usize]) -> Result<bool> {
    let pos = axis_positions(axis, v.len())?;
    let peak = pos[v.at(0)];
    let (mut l, mut r) = (peak, peak);
    for &c in &v.ranking()[1..] {
        let p = pos[c];
        if l > 0 && p == l - 1 {
            l -= 1;
        } else if p == r + 1 {
            r += 1;
        } else {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_single_peaked(e: &Election, axis: &[usize]) -> Result<bool> {
    for v in e.votes() {
        if !is_single_peaked_vote(v, axis)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Each top-k prefix of `v` is a contiguous arc of `circle`.
pub fn is_spoc_vote(v: &Vote, circle: &[usize]) -> Result<bool> {
    let m = v.len();
    let pos = axis_positions(circle, m)?;
    let top = pos[v.at(0)];
    let (mut start, mut len) = (top, 1usize);
    for &c in &v.ranking()[1..] {
        let p = pos[c];
        if p == (start + m - 1) % m {
            start = p;
        } else if p != (start + len) % m {
            return Ok(false);
        }
        len += 1;
    }
    Ok(true)
}

/// Orders votes by swap distance to the identity and checks that every
/// candidate pair flips at most once along that order.
pub fn is_single_crossing(e: &Election) -> bool {
    let id = Vote::identity(e.m());
    let mut votes: Vec<&Vote> = e.votes().iter().collect();
    votes.sort_by_key(|v| vote_swap_distance(v, &id).expect("same length"));
    let positions: Vec<Vec<usize>> = votes.iter().map(|v| v.positions()).collect();
    for a in 0..e.m() {
        for b in a + 1..e.m() {
            let flips = positions
                .windows(2)
                .filter(|w| (w[0][a] < w[0][b]) != (w[1][a] < w[1][b]))
                .count();
            if flips > 1 {
                return false;
            }
        }
    }
    true
}
