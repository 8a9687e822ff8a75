//! Eventual coincidence of tilings, the overlap graph, and spectrum verdicts.

mod certify;
mod overlap;
mod probe;

pub use certify::{
    find_coincident_prototile_pair, prototile_probe_power, theorem_certify, CertificationReport,
    CertifyConfig, HypothesisReport, PairWitness,
};
pub use overlap::{
    overlap_children, overlap_graph, seed_overlaps, spectrum_verdict, OverlapClass, OverlapGraph,
    SeedOverlaps, SpectrumVerdict,
};
pub use probe::{dense_coincidence_probe, eventually_coincident_at, Cover, ProbeReport};

use thiserror::Error;

use crate::substitution::SubstitutionError;
use crate::tiling::TilingError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoincidenceError {
    #[error("point lies on a tile boundary")]
    EndpointHit,
    #[error("point is not covered by the given tiles")]
    Uncovered,
    #[error("empty probe interval")]
    EmptyInterval,
    #[error(transparent)]
    Tiling(TilingError),
    #[error(transparent)]
    Substitution(#[from] SubstitutionError),
}

impl From<TilingError> for CoincidenceError {
    fn from(e: TilingError) -> Self {
        match e {
            TilingError::EndpointHit => CoincidenceError::EndpointHit,
            TilingError::Uncovered => CoincidenceError::Uncovered,
            e => CoincidenceError::Tiling(e),
        }
    }
}
