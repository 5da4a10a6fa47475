//! EMD- and ℓ1-positionwise distances.

use num_rational::Ratio;

use super::assignment::{solve_assignment_lexmin, CostMatrix};
use super::vector::{emd_counts, l1_counts};
use super::DistanceOutcome;
use crate::election::{lcm, same_shape, CandidateMatching, Election, FrequencyMatrix, PositionMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PositionwiseVariant {
    Emd,
    L1,
}

fn column_cost(variant: PositionwiseVariant, x: &[i64], y: &[i64]) -> i64 {
    match variant {
        PositionwiseVariant::L1 => x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum(),
        PositionwiseVariant::Emd => {
            let (mut px, mut py, mut total) = (0, 0, 0);
            for (a, b) in x.iter().zip(y) {
                px += a;
                py += b;
                total += (px - py).abs();
            }
            total
        }
    }
}

/// Column cost matrix: entry `(c, d)` compares column `c` of `x` with column `d` of `y`.
pub fn positionwise_cost_matrix(x: &PositionMatrix, y: &PositionMatrix, variant: PositionwiseVariant) -> CostMatrix {
    let xs: Vec<Vec<u64>> = (0..x.m()).map(|c| x.column(c)).collect();
    let ys: Vec<Vec<u64>> = (0..y.m()).map(|c| y.column(c)).collect();
    CostMatrix::from_fn(x.m(), |c, d| match variant {
        PositionwiseVariant::Emd => emd_counts(&xs[c], &ys[d]),
        PositionwiseVariant::L1 => l1_counts(&xs[c], &ys[d]),
    })
}

pub fn positionwise_distance(a: &Election, b: &Election, variant: PositionwiseVariant) -> Result<DistanceOutcome> {
    same_shape(a, b)?;
    positionwise_distance_matrices(&a.position_matrix(), &b.position_matrix(), variant)
}

pub fn positionwise_distance_matrices(
    x: &PositionMatrix,
    y: &PositionMatrix,
    variant: PositionwiseVariant,
) -> Result<DistanceOutcome> {
    if x.m() != y.m() {
        return Err(Error::DimensionMismatch {
            what: "candidate count",
            left: x.m(),
            right: y.m(),
        });
    }
    if x.n() != y.n() {
        return Err(Error::DimensionMismatch {
            what: "voter count",
            left: x.n() as usize,
            right: y.n() as usize,
        });
    }
    let sol = solve_assignment_lexmin(&positionwise_cost_matrix(x, y, variant));
    Ok(DistanceOutcome {
        value: sol.cost,
        candidate_matching: Some(CandidateMatching::new(sol.matching).expect("assignment is a bijection")),
        voter_matching: None,
        exact: true,
    })
}

/// Positionwise distance between normalized matrices, as an exact rational.
pub fn positionwise_distance_frequency(
    x: &FrequencyMatrix,
    y: &FrequencyMatrix,
    variant: PositionwiseVariant,
) -> Result<(Ratio<i64>, CandidateMatching)> {
    if x.m() != y.m() {
        return Err(Error::DimensionMismatch {
            what: "candidate count",
            left: x.m(),
            right: y.m(),
        });
    }
    let scale = lcm(x.common_denominator(), y.common_denominator());
    let xs = x.scaled_integer_columns(scale);
    let ys = y.scaled_integer_columns(scale);
    let costs = CostMatrix::from_fn(x.m(), |c, d| column_cost(variant, &xs[c], &ys[d]));
    let sol = solve_assignment_lexmin(&costs);
    Ok((
        Ratio::new(sol.cost, scale),
        CandidateMatching::new(sol.matching).expect("assignment is a bijection"),
    ))
}

/// Objective at a fixed matching.
pub fn positionwise_cost_at(
    a: &Election,
    b: &Election,
    variant: PositionwiseVariant,
    sigma: &CandidateMatching,
) -> Result<i64> {
    same_shape(a, b)?;
    let costs = positionwise_cost_matrix(&a.position_matrix(), &b.position_matrix(), variant);
    Ok(costs.cost_of(sigma.as_slice()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::{compass_matrix, CompassKind};
    use crate::perm;

    fn pair() -> (Election, Election) {
        let e = Election::from_rankings(3, vec![vec![0, 1, 2], vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        let f = Election::from_rankings(3, vec![vec![0, 1, 2], vec![0, 1, 2], vec![1, 0, 2]]).unwrap();
        (e, f)
    }

    #[test]
    fn emd_worked_example() {
        let (e, f) = pair();
        let out = positionwise_distance(&e, &f, PositionwiseVariant::Emd).unwrap();
        assert_eq!(out.value, 2);
        let sigma = out.candidate_matching.unwrap();
        assert_eq!(sigma.as_slice(), &[1, 0, 2]);
        assert_eq!(positionwise_cost_at(&e, &f, PositionwiseVariant::Emd, &sigma).unwrap(), 2);
        let id = CandidateMatching::identity(3);
        assert_eq!(positionwise_cost_at(&e, &f, PositionwiseVariant::Emd, &id).unwrap(), 4);
    }

    #[test]
    fn l1_matches_brute_force() {
        let (e, f) = pair();
        let out = positionwise_distance(&e, &f, PositionwiseVariant::L1).unwrap();
        let best = perm::all_permutations(3)
            .into_iter()
            .map(|p| {
                let s = CandidateMatching::new(p).unwrap();
                positionwise_cost_at(&e, &f, PositionwiseVariant::L1, &s).unwrap()
            })
            .min()
            .unwrap();
        assert_eq!(out.value, best);
    }

    #[test]
    fn identical_is_zero() {
        let (e, _) = pair();
        for v in [PositionwiseVariant::Emd, PositionwiseVariant::L1] {
            assert_eq!(positionwise_distance(&e, &e, v).unwrap().value, 0);
        }
    }

    #[test]
    fn frequency_id_un() {
        let id = compass_matrix(CompassKind::Id, 4).unwrap();
        let un = compass_matrix(CompassKind::Un, 4).unwrap();
        let (d, _) = positionwise_distance_frequency(&id, &un, PositionwiseVariant::Emd).unwrap();
        // (m² − 1)/3 for m = 4
        assert_eq!(d, Ratio::from_integer(5));
    }
}
