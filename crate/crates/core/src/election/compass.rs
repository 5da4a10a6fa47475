use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{Election, FrequencyMatrix, Vote};
use crate::error::{Error, Result};
use crate::perm;

/// The four reference elections: identity, antagonism, uniformity and
/// stratification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CompassKind {
    #[serde(rename = "ID")]
    Id,
    #[serde(rename = "AN")]
    An,
    #[serde(rename = "UN")]
    Un,
    #[serde(rename = "ST")]
    St,
}

impl CompassKind {
    pub const ALL: [CompassKind; 4] = [CompassKind::Id, CompassKind::An, CompassKind::Un, CompassKind::St];

    pub fn label(self) -> &'static str {
        match self {
            CompassKind::Id => "ID",
            CompassKind::An => "AN",
            CompassKind::Un => "UN",
            CompassKind::St => "ST",
        }
    }

    /// Checks the divisibility conditions under which the election exists.
    pub fn check(self, m: usize, n: usize) -> Result<()> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter("m and n must be positive".into()));
        }
        match self {
            CompassKind::Id => Ok(()),
            CompassKind::An => {
                if n % 2 != 0 {
                    return Err(Error::Divisibility(format!("AN requires 2 | n, got n = {n}")));
                }
                Ok(())
            }
            CompassKind::Un => {
                let f = perm::factorial(m);
                if f > n as u64 || n as u64 % f != 0 {
                    return Err(Error::Divisibility(format!("UN requires m! | n, got m = {m}, n = {n}")));
                }
                Ok(())
            }
            CompassKind::St => {
                if m % 2 != 0 {
                    return Err(Error::Divisibility(format!("ST requires even m, got m = {m}")));
                }
                let h = perm::factorial(m / 2);
                let blocks = h.saturating_mul(h);
                if blocks > n as u64 || n as u64 % blocks != 0 {
                    return Err(Error::Divisibility(format!(
                        "ST requires ((m/2)!)^2 | n, got m = {m}, n = {n}"
                    )));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for CompassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CompassKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "ID" => Ok(CompassKind::Id),
            "AN" => Ok(CompassKind::An),
            "UN" => Ok(CompassKind::Un),
            "ST" => Ok(CompassKind::St),
            other => Err(Error::InvalidParameter(format!("unknown compass election '{other}'"))),
        }
    }
}

/// Generates the compass election of the given kind.
///
/// ST puts the first `m/2` candidates (block A) ahead of the rest in every
/// vote, with each of the `((m/2)!)²` such orders appearing equally often.
pub fn compass_election(kind: CompassKind, m: usize, n: usize) -> Result<Election> {
    kind.check(m, n)?;
    let id = Vote::identity(m);
    let votes = match kind {
        CompassKind::Id => vec![id; n],
        CompassKind::An => {
            let rev = id.reversed();
            let mut v = vec![id; n / 2];
            v.extend(std::iter::repeat_n(rev, n / 2));
            v
        }
        CompassKind::Un => {
            let all: Vec<Vote> = perm::all_permutations(m).into_iter().map(Vote).collect();
            let copies = n / all.len();
            (0..copies).flat_map(|_| all.iter().cloned()).collect()
        }
        CompassKind::St => {
            let h = m / 2;
            let top = perm::all_permutations(h);
            let mut orders = Vec::with_capacity(top.len() * top.len());
            for a in &top {
                for b in &top {
                    let mut r = a.clone();
                    r.extend(b.iter().map(|&c| c + h));
                    orders.push(Vote(r));
                }
            }
            let copies = n / orders.len();
            (0..copies).flat_map(|_| orders.iter().cloned()).collect()
        }
    };
    Election::new(m, votes)
}

/// Normalized position matrix of the compass election of the given kind.
pub fn compass_matrix(kind: CompassKind, m: usize) -> Result<FrequencyMatrix> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let mi = m as i64;
    let zero = Ratio::from_integer(0);
    let mut rows = vec![vec![zero; m]; m];
    match kind {
        CompassKind::Id => {
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] = Ratio::from_integer(1);
            }
        }
        CompassKind::Un => {
            for row in rows.iter_mut() {
                row.fill(Ratio::new(1, mi));
            }
        }
        CompassKind::An => {
            let half = Ratio::new(1, 2);
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] += half;
                row[m - 1 - i] += half;
            }
        }
        CompassKind::St => {
            if m % 2 != 0 {
                return Err(Error::Divisibility(format!("ST requires even m, got m = {m}")));
            }
            let h = m / 2;
            let w = Ratio::new(2, mi);
            for (i, row) in rows.iter_mut().enumerate() {
                for (c, cell) in row.iter_mut().enumerate() {
                    if (i < h) == (c < h) {
                        *cell = w;
                    }
                }
            }
        }
    }
    FrequencyMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_compass_elections() {
        let an = compass_election(CompassKind::An, 2, 2).unwrap();
        let mut rankings: Vec<Vec<usize>> = an.votes().iter().map(|v| v.ranking().to_vec()).collect();
        rankings.sort();
        assert_eq!(rankings, vec![vec![0, 1], vec![1, 0]]);

        let un = compass_election(CompassKind::Un, 3, 6).unwrap();
        let mut ranks: Vec<usize> = un.votes().iter().map(|v| v.rank()).collect();
        ranks.sort();
        assert_eq!(ranks, (0..6).collect::<Vec<_>>());

        let st = compass_election(CompassKind::St, 2, 1).unwrap();
        assert_eq!(st.votes()[0].ranking(), &[0, 1]);
    }

    #[test]
    fn divisibility_errors() {
        assert!(matches!(compass_election(CompassKind::An, 3, 3), Err(Error::Divisibility(_))));
        assert!(matches!(compass_election(CompassKind::Un, 3, 4), Err(Error::Divisibility(_))));
        assert!(matches!(compass_election(CompassKind::St, 3, 4), Err(Error::Divisibility(_))));
        assert!(matches!(compass_election(CompassKind::St, 4, 6), Err(Error::Divisibility(_))));
        assert!(matches!(compass_matrix(CompassKind::St, 5), Err(Error::Divisibility(_))));
    }

    #[test]
    fn compass_matrices() {
        let un = compass_matrix(CompassKind::Un, 2).unwrap();
        for i in 0..2 {
            for c in 0..2 {
                assert_eq!(un.get(i, c), Ratio::new(1, 2));
            }
        }
        let id = compass_matrix(CompassKind::Id, 3).unwrap();
        for i in 0..3 {
            for c in 0..3 {
                assert_eq!(id.get(i, c), Ratio::from_integer((i == c) as i64));
            }
        }
    }

    #[test]
    fn elections_normalize_to_matrices() {
        for &(m, n) in &[(2usize, 4usize), (4, 24), (4, 48)] {
            for kind in CompassKind::ALL {
                let e = compass_election(kind, m, n).unwrap();
                assert_eq!(e.position_matrix().to_frequency(), compass_matrix(kind, m).unwrap(), "{kind} m={m} n={n}");
            }
        }
        // odd m for kinds that allow it
        for kind in [CompassKind::Id, CompassKind::An, CompassKind::Un] {
            let e = compass_election(kind, 3, 6).unwrap();
            assert_eq!(e.position_matrix().to_frequency(), compass_matrix(kind, 3).unwrap());
        }
    }
}
