//! Census, correlation, compass, realizability and path analyses.

mod census;
mod compass;
mod correlation;
mod paths;
mod realize;

pub use census::{count_equivalence_classes, enumerate_anecs, CensusReport, CENSUS_MAX_M, CENSUS_MAX_N};
pub use compass::{
    borda_diameter_defect, check_diameter, compass_distance_computed, compass_distance_formula, diameter,
    CompassFormula, DiameterViolation, FormulaValue,
};
pub use correlation::{
    correlation, correlation_from_distances, fractional_ranks, pair_distances, pearson, spearman, CorrelationReport,
};
pub use paths::{
    discrete_unit_path, emdpos_intrinsic_path, l1pos_intrinsic_path, path_length, swap_unit_path, IntrinsicPath,
};
pub use realize::{
    borda_realizable, majority_realizable_bruteforce, recover_election, BORDA_REALIZABLE_MAX_M,
    MAJORITY_BRUTEFORCE_MAX_M, MAJORITY_BRUTEFORCE_MAX_N,
};
