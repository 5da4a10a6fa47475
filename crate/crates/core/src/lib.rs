//! Distances between ordinal elections.
//!
//! Provides the isomorphic swap and discrete metrics, the EMD- and
//! ℓ1-positionwise metrics, the pairwise metric and the Bordawise metric,
//! together with synthetic preference cultures, census and correlation
//! analysis, and a two-dimensional map of an election dataset.

pub mod analysis;
pub mod cultures;
pub mod election;
pub mod error;
pub mod map;
pub mod metrics;
pub mod perm;

pub use election::{CandidateMatching, Election, Vote, VoterMatching};
pub use error::{Error, Result};
pub use metrics::{distance, DistanceOutcome, MetricKind};
