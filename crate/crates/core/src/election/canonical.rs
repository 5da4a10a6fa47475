use super::Election;
use crate::error::{guard, Result};
use crate::perm;

/// Largest candidate count accepted by [`canonical_anec_key`] by default.
pub const ANEC_KEY_GUARD: usize = 8;

/// Isomorphism-class key: equal keys iff the elections agree up to renaming
/// candidates and reordering voters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnecKey(Vec<u8>);

impl AnecKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// Lexicographic minimum, over all `m!` relabelings, of the sorted multiset
/// of vote ranks.
pub fn canonical_anec_key(e: &Election) -> Result<AnecKey> {
    canonical_anec_key_with_guard(e, ANEC_KEY_GUARD)
}

pub fn canonical_anec_key_with_guard(e: &Election, max_m: usize) -> Result<AnecKey> {
    guard("canonical ANEC key", max_m, e.m())?;
    let ranks = minimal_relabeling(e);
    let mut bytes = Vec::with_capacity(8 + 4 * ranks.len());
    bytes.extend_from_slice(&(e.m() as u32).to_be_bytes());
    bytes.extend_from_slice(&(e.n() as u32).to_be_bytes());
    for r in ranks {
        bytes.extend_from_slice(&(r as u32).to_be_bytes());
    }
    Ok(AnecKey(bytes))
}

fn minimal_relabeling(e: &Election) -> Vec<usize> {
    let m = e.m();
    let mut best: Option<Vec<usize>> = None;
    let mut sigma: Vec<usize> = (0..m).collect();
    let mut buf = Vec::with_capacity(m);
    loop {
        let mut ranks: Vec<usize> = e
            .votes()
            .iter()
            .map(|v| {
                buf.clear();
                buf.extend(v.ranking().iter().map(|&c| sigma[c]));
                perm::rank(&buf)
            })
            .collect();
        ranks.sort_unstable();
        if best.as_ref().is_none_or(|b| ranks < *b) {
            best = Some(ranks);
        }
        if !perm::next_permutation(&mut sigma) {
            break;
        }
    }
    best.unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::{CandidateMatching, VoterMatching};

    fn from(m: usize, rows: &[&[usize]]) -> Election {
        Election::from_rankings(m, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    // a=0, b=1, c=2
    fn x() -> Election {
        from(3, &[&[0, 1, 2], &[1, 0, 2], &[2, 0, 1], &[0, 2, 1], &[1, 2, 0], &[2, 1, 0]])
    }
    fn y() -> Election {
        from(3, &[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1], &[0, 1, 2], &[1, 2, 0], &[2, 0, 1]])
    }
    fn z() -> Election {
        from(3, &[&[0, 1, 2], &[0, 1, 2], &[0, 1, 2], &[2, 1, 0], &[2, 1, 0], &[2, 1, 0]])
    }

    #[test]
    fn invariant_under_matchings() {
        let e = from(3, &[&[0, 1, 2], &[1, 2, 0], &[1, 0, 2]]);
        let sigma = CandidateMatching::new(vec![2, 0, 1]).unwrap();
        let rho = VoterMatching::new(vec![1, 2, 0]).unwrap();
        let f = e.apply_matchings(&sigma, &rho).unwrap();
        assert_eq!(canonical_anec_key(&e).unwrap(), canonical_anec_key(&f).unwrap());
    }

    #[test]
    fn separates_fineness_witnesses() {
        let (kx, ky, kz) = (
            canonical_anec_key(&x()).unwrap(),
            canonical_anec_key(&y()).unwrap(),
            canonical_anec_key(&z()).unwrap(),
        );
        assert_ne!(kx, ky);
        assert_ne!(kx, kz);
        assert_ne!(ky, kz);
    }

    #[test]
    fn guard_rejects_large_m() {
        let e = Election::new(9, vec![crate::election::Vote::identity(9)]).unwrap();
        assert!(canonical_anec_key(&e).is_err());
    }
}
