//! EL reasoning: translation of literals into EL++ inclusions, completion,
//! entailment, satisfiability of EL formulas and model construction.

mod abstraction;
mod canonical;
mod completion;
mod normalize;
mod reasoning;
mod tau;

use thiserror::Error;

pub use abstraction::{
    el_formula_model, el_formula_sat, m_consistent, prop_abstraction, search_assignments,
    PropAbstraction, PropFormula,
};
pub use canonical::{
    canonical_model, canonical_model_of_concept, canonical_model_over, witness_el_model,
    witness_el_model_over,
};
pub use completion::{elpp_consistent, CompletionState};
pub use normalize::{normalize, normalize_el, Basic, NormalAxiom, NormalizedOntology};
pub use reasoning::{entails, entails_instance, literals_sat, ElReasoner};
pub use tau::{tau, tau_set, FreshIndividuals, Gci};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElError {
    #[error("invalid witness input: {0}")]
    InvalidWitnessInput(String),
    #[error("constructed model does not satisfy {0}")]
    WitnessCheckFailed(String),
}
