//! The six election metrics, vector distances and the assignment solver.

mod assignment;
mod borda;
mod isomorphic;
mod pairwise;
mod positionwise;
mod vector;

pub use assignment::{solve_assignment, solve_assignment_lexmin, Assignment, CostMatrix};
pub use borda::{bordawise_distance, bordawise_distance_vectors};
pub use isomorphic::{
    brute_force_iso_distance, iso_cost_at, iso_distance, vote_discrete_distance, vote_swap_distance, IsoKind,
};
pub use pairwise::{pairwise_cost_at, pairwise_distance, pairwise_distance_matrices};
pub use positionwise::{
    positionwise_cost_at, positionwise_cost_matrix, positionwise_distance, positionwise_distance_frequency,
    positionwise_distance_matrices, PositionwiseVariant,
};
pub use vector::{emd, l1};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::election::{CandidateMatching, Election, VoterMatching};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricKind {
    IsoSwap,
    IsoDiscrete,
    EmdPositionwise,
    L1Positionwise,
    Pairwise,
    Bordawise,
}

impl MetricKind {
    pub const ALL: [MetricKind; 6] = [
        MetricKind::IsoSwap,
        MetricKind::IsoDiscrete,
        MetricKind::EmdPositionwise,
        MetricKind::L1Positionwise,
        MetricKind::Pairwise,
        MetricKind::Bordawise,
    ];

    /// Short name used on the command line and in CSV headers.
    pub fn short_name(self) -> &'static str {
        match self {
            MetricKind::IsoSwap => "swap",
            MetricKind::IsoDiscrete => "discrete",
            MetricKind::EmdPositionwise => "emd-pos",
            MetricKind::L1Positionwise => "l1-pos",
            MetricKind::Pairwise => "pairwise",
            MetricKind::Bordawise => "borda",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Ok(match key.as_str() {
            "swap" | "iso-swap" | "isoswap" => MetricKind::IsoSwap,
            "discrete" | "disc" | "iso-discrete" | "isodiscrete" => MetricKind::IsoDiscrete,
            "emd-pos" | "emdpos" | "emd" | "emd-positionwise" | "emdpositionwise" => MetricKind::EmdPositionwise,
            "l1-pos" | "l1pos" | "l1" | "l1-positionwise" | "l1positionwise" => MetricKind::L1Positionwise,
            "pairwise" | "pair" => MetricKind::Pairwise,
            "borda" | "bordawise" => MetricKind::Bordawise,
            _ => return Err(Error::InvalidParameter(format!("unknown metric '{s}'"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceOutcome {
    pub value: i64,
    pub candidate_matching: Option<CandidateMatching>,
    pub voter_matching: Option<VoterMatching>,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct DistanceOptions {
    /// Largest `m` accepted by the isomorphic swap search.
    pub swap_guard: usize,
    /// Largest `m` accepted by the pairwise search.
    pub pairwise_guard: usize,
    /// Optional cap on search nodes; hitting it clears `exact`.
    pub node_limit: Option<u64>,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            swap_guard: 8,
            pairwise_guard: 10,
            node_limit: None,
        }
    }
}

pub fn distance(a: &Election, b: &Election, kind: MetricKind) -> Result<DistanceOutcome> {
    distance_with(a, b, kind, &DistanceOptions::default())
}

pub fn distance_with(a: &Election, b: &Election, kind: MetricKind, opts: &DistanceOptions) -> Result<DistanceOutcome> {
    match kind {
        MetricKind::IsoSwap => iso_distance(a, b, IsoKind::Swap, opts),
        MetricKind::IsoDiscrete => iso_distance(a, b, IsoKind::Discrete, opts),
        MetricKind::EmdPositionwise => positionwise_distance(a, b, PositionwiseVariant::Emd),
        MetricKind::L1Positionwise => positionwise_distance(a, b, PositionwiseVariant::L1),
        MetricKind::Pairwise => pairwise_distance(a, b, opts),
        MetricKind::Bordawise => bordawise_distance(a, b),
    }
}

/// Re-evaluates the objective of `kind` at the witnesses in `out`.
/// Returns `None` when the outcome carries no witness to check.
pub fn objective_at(a: &Election, b: &Election, kind: MetricKind, out: &DistanceOutcome) -> Result<Option<i64>> {
    let Some(sigma) = out.candidate_matching.as_ref() else {
        return Ok(None);
    };
    let value = match kind {
        MetricKind::IsoSwap | MetricKind::IsoDiscrete => {
            let Some(rho) = out.voter_matching.as_ref() else {
                return Ok(None);
            };
            let iso = if kind == MetricKind::IsoSwap { IsoKind::Swap } else { IsoKind::Discrete };
            iso_cost_at(a, b, iso, sigma, rho)? as i64
        }
        MetricKind::EmdPositionwise => positionwise_cost_at(a, b, PositionwiseVariant::Emd, sigma)?,
        MetricKind::L1Positionwise => positionwise_cost_at(a, b, PositionwiseVariant::L1, sigma)?,
        MetricKind::Pairwise => pairwise_cost_at(a, b, sigma)?,
        MetricKind::Bordawise => return Ok(None),
    };
    Ok(Some(value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in MetricKind::ALL {
            assert_eq!(k.short_name().parse::<MetricKind>().unwrap(), k);
            let json = serde_json::to_string(&k).unwrap();
            assert_eq!(serde_json::from_str::<MetricKind>(&json).unwrap(), k);
        }
        assert!("manhattan".parse::<MetricKind>().is_err());
    }

    #[test]
    fn dispatcher_and_witnesses() {
        let e = Election::from_rankings(3, vec![vec![0, 1, 2], vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        let f = Election::from_rankings(3, vec![vec![0, 1, 2], vec![0, 1, 2], vec![1, 0, 2]]).unwrap();
        assert_eq!(distance(&e, &f, MetricKind::Bordawise).unwrap().value, 1);
        assert_eq!(distance(&e, &e, MetricKind::IsoDiscrete).unwrap().value, 0);
        for k in MetricKind::ALL {
            let ab = distance(&e, &f, k).unwrap();
            let ba = distance(&f, &e, k).unwrap();
            assert_eq!(ab.value, ba.value, "{k}");
            assert!(ab.exact);
            if let Some(v) = objective_at(&e, &f, k, &ab).unwrap() {
                assert_eq!(v, ab.value, "{k}");
            }
        }
    }
}
