//! Paths of minimal steps between elections.

use serde::Serialize;

use crate::election::{same_shape, Election, PositionMatrix, Vote, VoterMatching};
use crate::error::{Error, Result};
use crate::metrics::{
    distance, iso_distance, positionwise_distance_matrices, DistanceOptions, IsoKind, MetricKind, PositionwiseVariant,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntrinsicPath {
    /// Position matrices from the source to the matched target, inclusive.
    pub steps: Vec<PositionMatrix>,
    pub step_distance: i64,
    pub total: i64,
}

impl IntrinsicPath {
    /// Elections realizing each step.
    pub fn elections(&self) -> Result<Vec<Election>> {
        self.steps.iter().map(super::recover_election).collect()
    }
}

/// Signed cell access on a working copy of a position matrix.
#[derive(Clone, PartialEq, Eq)]
struct Grid {
    m: usize,
    cells: Vec<i64>,
}

impl Grid {
    fn from(p: &PositionMatrix) -> Self {
        let m = p.m();
        Grid {
            m,
            cells: (0..m * m).map(|i| p.get(i / m, i % m) as i64).collect(),
        }
    }

    fn at(&self, row: usize, col: usize) -> i64 {
        self.cells[row * self.m + col]
    }

    fn add(&mut self, row: usize, col: usize, delta: i64) {
        self.cells[row * self.m + col] += delta;
    }

    /// Moves one unit in column `c` from row `r` to row `r2`, and one unit in
    /// column `c2` from row `r2` to row `r`.
    fn shift(&self, c: usize, c2: usize, r: usize, r2: usize) -> Grid {
        let mut g = self.clone();
        g.add(r, c, -1);
        g.add(r2, c, 1);
        g.add(r2, c2, -1);
        g.add(r, c2, 1);
        g
    }

    fn to_matrix(&self) -> PositionMatrix {
        let m = self.m;
        PositionMatrix::from_rows((0..m).map(|r| (0..m).map(|c| self.at(r, c) as u64).collect()).collect())
            .expect("moves preserve nonnegativity and line sums")
    }

    fn column(&self, c: usize) -> Vec<i64> {
        (0..self.m).map(|r| self.at(r, c)).collect()
    }

    fn cost_to(&self, y: &Grid, variant: PositionwiseVariant) -> i64 {
        (0..self.m)
            .map(|c| {
                let (a, b) = (self.column(c), y.column(c));
                match variant {
                    PositionwiseVariant::L1 => a.iter().zip(&b).map(|(p, q)| (p - q).abs()).sum(),
                    PositionwiseVariant::Emd => {
                        let (mut pa, mut pb, mut t) = (0, 0, 0);
                        for (p, q) in a.iter().zip(&b) {
                            pa += p;
                            pb += q;
                            t += (pa - pb).abs();
                        }
                        t
                    }
                }
            })
            .sum()
    }
}

/// Source grid and target grid with the target's columns reordered so that
/// the identity is an optimal candidate matching.
fn matched_grids(a: &Election, b: &Election, variant: PositionwiseVariant) -> Result<(Grid, Grid)> {
    same_shape(a, b)?;
    let (pa, pb) = (a.position_matrix(), b.position_matrix());
    let out = positionwise_distance_matrices(&pa, &pb, variant)?;
    let sigma = out.candidate_matching.expect("positionwise distance returns a matching");
    Ok((Grid::from(&pa), Grid::from(&pb.permute_columns(sigma.as_slice()))))
}

/// Recomputes every step with the real metric, dropping zero-length steps.
fn finish(grids: Vec<Grid>, variant: PositionwiseVariant, step_distance: i64) -> Result<IntrinsicPath> {
    let mut steps: Vec<PositionMatrix> = Vec::with_capacity(grids.len());
    let mut dists: Vec<i64> = Vec::new();
    for g in grids {
        let p = g.to_matrix();
        if let Some(prev) = steps.last() {
            let d = positionwise_distance_matrices(prev, &p, variant)?.value;
            if d == 0 {
                // the previous matrix is interchangeable with this one
                steps.pop();
                if let (Some(before), Some(_)) = (steps.last(), dists.pop()) {
                    dists.push(positionwise_distance_matrices(before, &p, variant)?.value);
                }
            } else {
                dists.push(d);
            }
        }
        steps.push(p);
    }
    if let Some(bad) = dists.iter().find(|&&d| d != step_distance) {
        return Err(Error::InvalidParameter(format!(
            "path construction produced a step of length {bad}, expected {step_distance}"
        )));
    }
    Ok(IntrinsicPath {
        total: dists.iter().sum(),
        steps,
        step_distance,
    })
}

/// Path of ℓ1-positionwise steps of length 4 with total at most twice the distance.
pub fn l1pos_intrinsic_path(a: &Election, b: &Election) -> Result<IntrinsicPath> {
    let (mut x, y) = matched_grids(a, b, PositionwiseVariant::L1)?;
    let m = x.m;
    let mut grids = vec![x.clone()];
    while x != y {
        let mut best: Option<(Grid, bool)> = None;
        'search: for c in 0..m {
            for r in (0..m).filter(|&r| x.at(r, c) > y.at(r, c)) {
                for r2 in (0..m).filter(|&r2| x.at(r2, c) < y.at(r2, c)) {
                    for c2 in (0..m).filter(|&c2| c2 != c && x.at(r2, c2) > y.at(r2, c2)) {
                        let full = x.at(r, c2) < y.at(r, c2);
                        if best.as_ref().is_none_or(|(_, f)| full && !f) {
                            best = Some((x.shift(c, c2, r, r2), full));
                        }
                        if full {
                            break 'search;
                        }
                    }
                }
            }
        }
        let (next, _) = best.expect("a reducing move exists while the matrices differ");
        debug_assert!(next.cost_to(&y, PositionwiseVariant::L1) <= x.cost_to(&y, PositionwiseVariant::L1) - 2);
        x = next;
        grids.push(x.clone());
    }
    finish(grids, PositionwiseVariant::L1, 4)
}

/// Splits a shift between rows `r > r2` into unit-row shifts through an
/// intermediate column holding mass in row `r − 1`.
fn decompose_emd(x: &Grid, x2: &Grid, c: usize, c2: usize, r: usize, r2: usize, out: &mut Vec<Grid>) {
    if r - r2 == 1 {
        out.push(x2.clone());
        return;
    }
    let c3 = (0..x.m).find(|&k| x.at(r - 1, k) >= 1).expect("row r − 1 carries mass");
    let z = if c3 == c { x.clone() } else { x.shift(c, c3, r, r - 1) };
    let z2 = if c3 == c2 { x2.clone() } else { x2.shift(c2, c3, r, r - 1) };
    if z != *x {
        out.push(z.clone());
    }
    decompose_emd(&z, &z2, c, c2, r - 1, r2, out);
    if z2 != *x2 {
        out.push(x2.clone());
    }
}

/// Path of EMD-positionwise steps of length 2 with total at most twice the distance.
pub fn emdpos_intrinsic_path(a: &Election, b: &Election) -> Result<IntrinsicPath> {
    let (mut x, y) = matched_grids(a, b, PositionwiseVariant::Emd)?;
    let m = x.m;
    let mut grids = vec![x.clone()];
    while x != y {
        let here = x.cost_to(&y, PositionwiseVariant::Emd);
        let mut chosen = None;
        'search: for gap in 1..m {
            for r in gap..m {
                let r2 = r - gap;
                for c in (0..m).filter(|&c| x.at(r, c) > 0) {
                    for c2 in (0..m).filter(|&c2| c2 != c && x.at(r2, c2) > 0) {
                        let next = x.shift(c, c2, r, r2);
                        if here - next.cost_to(&y, PositionwiseVariant::Emd) >= 2 * gap as i64 {
                            chosen = Some((next, c, c2, r, r2));
                            break 'search;
                        }
                    }
                }
            }
        }
        let (next, c, c2, r, r2) = chosen.expect("a reducing move exists while the matrices differ");
        decompose_emd(&x, &next, c, c2, r, r2, &mut grids);
        x = next;
    }
    finish(grids, PositionwiseVariant::Emd, 2)
}

/// Elections from `a` to a relabeled, reordered copy of `b`, one adjacent
/// swap per step.
pub fn swap_unit_path(a: &Election, b: &Election) -> Result<Vec<Election>> {
    let target = aligned_target(a, b, IsoKind::Swap)?;
    let mut cur: Vec<Vec<usize>> = a.votes().iter().map(|v| v.ranking().to_vec()).collect();
    let mut path = vec![a.clone()];
    for i in 0..cur.len() {
        let goal = target[i].ranking().to_vec();
        for k in 0..goal.len() {
            let mut j = cur[i].iter().position(|&c| c == goal[k]).expect("same candidates");
            while j > k {
                cur[i].swap(j - 1, j);
                j -= 1;
                path.push(Election::from_rankings(a.m(), cur.clone())?);
            }
        }
    }
    Ok(path)
}

/// Elections from `a` to a relabeled, reordered copy of `b`, one replaced
/// vote per step.
pub fn discrete_unit_path(a: &Election, b: &Election) -> Result<Vec<Election>> {
    let target = aligned_target(a, b, IsoKind::Discrete)?;
    let mut cur: Vec<Vote> = a.votes().to_vec();
    let mut path = vec![a.clone()];
    for i in 0..cur.len() {
        if cur[i] != target[i] {
            cur[i] = target[i].clone();
            path.push(Election::new(a.m(), cur.clone())?);
        }
    }
    Ok(path)
}

/// `b` mapped into `a`'s candidate names and voter order along optimal witnesses.
fn aligned_target(a: &Election, b: &Election, kind: IsoKind) -> Result<Vec<Vote>> {
    let out = iso_distance(a, b, kind, &DistanceOptions::default())?;
    let sigma_inv = out.candidate_matching.expect("isomorphic witness").inverse();
    let rho: VoterMatching = out.voter_matching.expect("isomorphic witness");
    Ok((0..a.n()).map(|i| b.votes()[rho.apply(i)].relabel(&sigma_inv)).collect())
}

/// Sum of consecutive distances along a path of elections.
pub fn path_length(path: &[Election], kind: MetricKind) -> Result<i64> {
    path.windows(2)
        .map(|w| distance(&w[0], &w[1], kind).map(|o| o.value))
        .sum()
}
