use super::vector::emd_counts;
use super::DistanceOutcome;
use crate::election::{same_shape, BordaVector, Election};
use crate::error::{Error, Result};

/// EMD between the nonincreasingly sorted Borda score vectors.
pub fn bordawise_distance(a: &Election, b: &Election) -> Result<DistanceOutcome> {
    same_shape(a, b)?;
    bordawise_distance_vectors(&a.borda_vector(), &b.borda_vector())
}

pub fn bordawise_distance_vectors(x: &BordaVector, y: &BordaVector) -> Result<DistanceOutcome> {
    if x.scores().len() != y.scores().len() {
        return Err(Error::DimensionMismatch {
            what: "Borda vector length",
            left: x.scores().len(),
            right: y.scores().len(),
        });
    }
    let (sx, sy) = (x.sorted_desc(), y.sorted_desc());
    let (tx, ty): (u64, u64) = (sx.iter().sum(), sy.iter().sum());
    if tx != ty {
        return Err(Error::SumMismatch {
            left: tx.to_string(),
            right: ty.to_string(),
        });
    }
    Ok(DistanceOutcome {
        value: emd_counts(&sx, &sy),
        candidate_matching: None,
        voter_matching: None,
        exact: true,
    })
}
