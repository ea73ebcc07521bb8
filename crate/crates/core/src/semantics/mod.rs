//! Finite interpretations, Kripke structures, model checking and the
//! bounded brute-force satisfiability oracles.

mod brute;
mod interpretation;
mod kripke;

use thiserror::Error;

pub use brute::{
    brute_force_el_sat, brute_force_elk_sat, BruteBounds, BruteForceOracle, BruteVerdict,
    ElModelSpace,
};
pub use interpretation::{check_el, eval_concept, ElInterpretation};
pub use kripke::{
    check_elk, compose_relation, equivalence_closure, ElkInterpretation, PointedElk, WorldRelation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("individual {0} is not mapped to a domain element")]
    UnmappedIndividual(String),
    #[error("malformed structure: {0}")]
    MalformedStructure(String),
}
