//! Ordinal elections and their aggregate representations.
//!
//! Candidates are `0..m` indices and a [`Vote`] stores candidates from most
//! to least preferred. The three aggregate views used by the non-isomorphic
//! metrics are [`PositionMatrix`], [`MajorityMatrix`] and [`BordaVector`].

mod canonical;
mod compass;
mod io;

pub use canonical::{canonical_anec_key, canonical_anec_key_with_guard, AnecKey, ANEC_KEY_GUARD};
pub use compass::{compass_election, compass_matrix, CompassKind};
pub use io::{parse_election, serialize_election};

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm;

/// A total order over `0..m`, most preferred candidate first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Vote(Vec<usize>);

impl Vote {
    pub fn new(ranking: Vec<usize>) -> Result<Self> {
        let m = ranking.len();
        let mut seen = vec![false; m];
        for &c in &ranking {
            if c >= m {
                return Err(Error::CandidateOutOfRange { candidate: c, m });
            }
            if seen[c] {
                return Err(Error::NotAPermutation {
                    m,
                    detail: format!("duplicate candidate {c}"),
                });
            }
            seen[c] = true;
        }
        Ok(Vote(ranking))
    }

    /// The canonical order `0 ≻ 1 ≻ … ≻ m−1`.
    pub fn identity(m: usize) -> Self {
        Vote((0..m).collect())
    }

    pub fn reversed(&self) -> Self {
        Vote(self.0.iter().rev().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ranking(&self) -> &[usize] {
        &self.0
    }

    /// Candidate at 0-based position `k`.
    pub fn at(&self, k: usize) -> usize {
        self.0[k]
    }

    /// 1-based position of candidate `c`.
    pub fn position_of(&self, c: usize) -> Result<usize> {
        self.0
            .iter()
            .position(|&x| x == c)
            .map(|k| k + 1)
            .ok_or(Error::CandidateOutOfRange {
                candidate: c,
                m: self.0.len(),
            })
    }

    /// Candidate → 0-based position.
    pub fn positions(&self) -> Vec<usize> {
        perm::inverse(&self.0)
    }

    /// Replaces every candidate `c` with `sigma(c)`.
    pub fn relabel(&self, sigma: &CandidateMatching) -> Vote {
        Vote(self.0.iter().map(|&c| sigma.0[c]).collect())
    }

    /// Lexicographic index among all `m!` orders.
    pub fn rank(&self) -> usize {
        perm::rank(&self.0)
    }
}

impl TryFrom<Vec<usize>> for Vote {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Vote::new(v)
    }
}

impl From<Vote> for Vec<usize> {
    fn from(v: Vote) -> Self {
        v.0
    }
}

impl fmt::Display for Vote {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A bijection on candidates, `map[c] = σ(c)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CandidateMatching(Vec<usize>);

/// A bijection on voters, `map[i] = ρ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VoterMatching(Vec<usize>);

macro_rules! matching_impl {
    ($t:ident, $what:literal) => {
        impl $t {
            pub fn new(map: Vec<usize>) -> Result<Self> {
                if !perm::is_permutation(&map) {
                    return Err(Error::NotAPermutation {
                        m: map.len(),
                        detail: concat!($what, " matching is not a bijection").to_string(),
                    });
                }
                Ok($t(map))
            }

            pub fn identity(k: usize) -> Self {
                $t((0..k).collect())
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn apply(&self, x: usize) -> usize {
                self.0[x]
            }

            pub fn as_slice(&self) -> &[usize] {
                &self.0
            }

            pub fn inverse(&self) -> Self {
                $t(perm::inverse(&self.0))
            }
        }
    };
}

matching_impl!(CandidateMatching, "candidate");
matching_impl!(VoterMatching, "voter");

/// An election with `m ≥ 1` candidates and `n ≥ 1` votes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Election {
    m: usize,
    votes: Vec<Vote>,
}

impl Election {
    pub fn new(m: usize, votes: Vec<Vote>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("an election needs at least one candidate".into()));
        }
        if votes.is_empty() {
            return Err(Error::InvalidParameter("an election needs at least one vote".into()));
        }
        if let Some(v) = votes.iter().find(|v| v.len() != m) {
            return Err(Error::DimensionMismatch {
                what: "vote length",
                left: v.len(),
                right: m,
            });
        }
        Ok(Election { m, votes })
    }

    /// Builds an election from raw rankings, validating each one.
    pub fn from_rankings(m: usize, rankings: Vec<Vec<usize>>) -> Result<Self> {
        let votes = rankings.into_iter().map(Vote::new).collect::<Result<Vec<_>>>()?;
        Election::new(m, votes)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.votes.len()
    }

    pub fn votes(&self) -> &[Vote] {
        &self.votes
    }

    pub fn position_matrix(&self) -> PositionMatrix {
        let m = self.m;
        let mut cells = vec![0u64; m * m];
        for v in &self.votes {
            for (pos, &c) in v.ranking().iter().enumerate() {
                cells[pos * m + c] += 1;
            }
        }
        PositionMatrix { m, cells }
    }

    pub fn majority_matrix(&self) -> MajorityMatrix {
        let m = self.m;
        let mut cells = vec![0u64; m * m];
        for v in &self.votes {
            let r = v.ranking();
            for i in 0..m {
                for j in i + 1..m {
                    cells[r[i] * m + r[j]] += 1;
                }
            }
        }
        MajorityMatrix {
            m,
            n: self.n() as u64,
            cells,
        }
    }

    pub fn borda_vector(&self) -> BordaVector {
        let m = self.m;
        let mut scores = vec![0u64; m];
        for v in &self.votes {
            for (pos, &c) in v.ranking().iter().enumerate() {
                scores[c] += (m - 1 - pos) as u64;
            }
        }
        BordaVector(scores)
    }

    /// Vote `i` of the result is `σ(v_{ρ(i)})`.
    pub fn apply_matchings(&self, sigma: &CandidateMatching, rho: &VoterMatching) -> Result<Election> {
        if sigma.len() != self.m {
            return Err(Error::DimensionMismatch {
                what: "candidate matching",
                left: sigma.len(),
                right: self.m,
            });
        }
        if rho.len() != self.n() {
            return Err(Error::DimensionMismatch {
                what: "voter matching",
                left: rho.len(),
                right: self.n(),
            });
        }
        let votes = (0..self.n()).map(|i| self.votes[rho.apply(i)].relabel(sigma)).collect();
        Ok(Election { m: self.m, votes })
    }

    /// Concatenates the votes of two elections over the same candidates.
    pub fn concat(&self, other: &Election) -> Result<Election> {
        same_candidates(self, other)?;
        let mut votes = self.votes.clone();
        votes.extend(other.votes.iter().cloned());
        Ok(Election { m: self.m, votes })
    }
}

pub(crate) fn same_candidates(a: &Election, b: &Election) -> Result<()> {
    if a.m() != b.m() {
        return Err(Error::DimensionMismatch {
            what: "candidate count",
            left: a.m(),
            right: b.m(),
        });
    }
    Ok(())
}

pub(crate) fn same_shape(a: &Election, b: &Election) -> Result<()> {
    same_candidates(a, b)?;
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            what: "voter count",
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(())
}

/// `cells[i][c]` counts voters ranking candidate `c` at position `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PositionMatrix {
    m: usize,
    cells: Vec<u64>,
}

impl PositionMatrix {
    /// Accepts any nonnegative square matrix whose rows and columns all share one sum.
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::InvalidParameter("empty position matrix".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::NotSquare { rows: m, cols: r.len() });
        }
        let cells: Vec<u64> = rows.into_iter().flatten().collect();
        let pm = PositionMatrix { m, cells };
        let n = pm.row_sum(0);
        for i in 0..m {
            if pm.row_sum(i) != n {
                return Err(Error::SumMismatch {
                    left: format!("row {i} sums to {}", pm.row_sum(i)),
                    right: format!("{n}"),
                });
            }
            if pm.col_sum(i) != n {
                return Err(Error::SumMismatch {
                    left: format!("column {i} sums to {}", pm.col_sum(i)),
                    right: format!("{n}"),
                });
            }
        }
        Ok(pm)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Common row/column sum.
    pub fn n(&self) -> u64 {
        self.row_sum(0)
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.cells[row * self.m + col]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: u64) {
        self.cells[row * self.m + col] = value;
    }

    /// Position vector of candidate `c`.
    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.m).map(|i| self.get(i, c)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.cells.chunks(self.m).map(|r| r.to_vec()).collect()
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.cells[i * self.m..(i + 1) * self.m].iter().sum()
    }

    pub fn col_sum(&self, c: usize) -> u64 {
        (0..self.m).map(|i| self.get(i, c)).sum()
    }

    /// Column `c` of the result is column `perm[c]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> PositionMatrix {
        let m = self.m;
        let mut cells = vec![0; m * m];
        for i in 0..m {
            for c in 0..m {
                cells[i * m + c] = self.get(i, perm[c]);
            }
        }
        PositionMatrix { m, cells }
    }

    /// Canonical form up to candidate renaming: columns sorted lexicographically.
    pub fn canonical_columns(&self) -> Vec<Vec<u64>> {
        let mut cols: Vec<Vec<u64>> = (0..self.m).map(|c| self.column(c)).collect();
        cols.sort();
        cols
    }

    pub fn to_frequency(&self) -> FrequencyMatrix {
        let n = self.n() as i64;
        let cells = self.cells.iter().map(|&x| Ratio::new(x as i64, n)).collect();
        FrequencyMatrix { m: self.m, cells }
    }

    /// Borda scores via `Σ_i (m−i)·cells[i−1][c]`.
    pub fn borda_vector(&self) -> BordaVector {
        let m = self.m;
        BordaVector(
            (0..m)
                .map(|c| (0..m).map(|i| (m - 1 - i) as u64 * self.get(i, c)).sum())
                .collect(),
        )
    }
}

impl fmt::Display for PositionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let parts: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Weighted majority relation, `cells[a][b]` voters preferring `a` to `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MajorityMatrix {
    m: usize,
    n: u64,
    cells: Vec<u64>,
}

impl MajorityMatrix {
    /// Validates the zero diagonal and `cells[a][b] + cells[b][a] = n`.
    pub fn from_rows(rows: Vec<Vec<u64>>, n: u64) -> Result<Self> {
        let m = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::NotSquare { rows: m, cols: r.len() });
        }
        let cells: Vec<u64> = rows.into_iter().flatten().collect();
        for a in 0..m {
            if cells[a * m + a] != 0 {
                return Err(Error::InvalidParameter(format!("diagonal entry {a} is nonzero")));
            }
            for b in a + 1..m {
                if cells[a * m + b] + cells[b * m + a] != n {
                    return Err(Error::SumMismatch {
                        left: format!("M[{a}][{b}] + M[{b}][{a}] = {}", cells[a * m + b] + cells[b * m + a]),
                        right: format!("{n}"),
                    });
                }
            }
        }
        Ok(MajorityMatrix { m, n, cells })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.cells[a * self.m + b]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.cells.chunks(self.m).map(|r| r.to_vec()).collect()
    }

    /// Entry `(a, b)` of the result is `cells[σ(a)][σ(b)]`.
    pub fn relabel(&self, sigma: &[usize]) -> MajorityMatrix {
        let m = self.m;
        let mut cells = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                cells[a * m + b] = self.get(sigma[a], sigma[b]);
            }
        }
        MajorityMatrix { m, n: self.n, cells }
    }

    /// Lexicographic minimum of the flattened matrix over all relabelings.
    pub fn canonical_form(&self) -> Vec<u64> {
        perm::all_permutations(self.m)
            .iter()
            .map(|s| self.relabel(s).cells)
            .min()
            .unwrap_or_default()
    }

    /// Borda scores via `Σ_{d≠c} cells[c][d]`.
    pub fn borda_vector(&self) -> BordaVector {
        BordaVector((0..self.m).map(|c| (0..self.m).map(|d| self.get(c, d)).sum()).collect())
    }
}

/// Borda score per candidate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BordaVector(pub Vec<u64>);

impl BordaVector {
    pub fn scores(&self) -> &[u64] {
        &self.0
    }

    /// Scores in nonincreasing order.
    pub fn sorted_desc(&self) -> Vec<u64> {
        let mut s = self.0.clone();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }
}

/// Position matrix normalized by `n`; bistochastic, exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrequencyMatrix {
    m: usize,
    cells: Vec<Ratio<i64>>,
}

impl FrequencyMatrix {
    pub fn from_rows(rows: Vec<Vec<Ratio<i64>>>) -> Result<Self> {
        let m = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::NotSquare { rows: m, cols: r.len() });
        }
        let cells: Vec<Ratio<i64>> = rows.into_iter().flatten().collect();
        let fm = FrequencyMatrix { m, cells };
        if !fm.is_bistochastic() {
            return Err(Error::InvalidParameter("frequency matrix is not bistochastic".into()));
        }
        Ok(fm)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, row: usize, col: usize) -> Ratio<i64> {
        self.cells[row * self.m + col]
    }

    pub fn column(&self, c: usize) -> Vec<Ratio<i64>> {
        (0..self.m).map(|i| self.get(i, c)).collect()
    }

    pub fn is_bistochastic(&self) -> bool {
        let one = Ratio::from_integer(1);
        let zero = Ratio::from_integer(0);
        self.cells.iter().all(|x| *x >= zero)
            && (0..self.m).all(|i| {
                (0..self.m).map(|c| self.get(i, c)).sum::<Ratio<i64>>() == one
                    && (0..self.m).map(|r| self.get(r, i)).sum::<Ratio<i64>>() == one
            })
    }

    /// Smallest common denominator of all entries.
    pub(crate) fn common_denominator(&self) -> i64 {
        self.cells.iter().fold(1i64, |acc, x| lcm(acc, *x.denom()))
    }

    /// Entries scaled by `scale` (which must clear every denominator).
    pub(crate) fn scaled_integer_columns(&self, scale: i64) -> Vec<Vec<i64>> {
        (0..self.m)
            .map(|c| {
                self.column(c)
                    .into_iter()
                    .map(|x| (x * scale).to_integer())
                    .collect()
            })
            .collect()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}
