//! Exact and epistemic learning protocols: oracles for membership,
//! equivalence, K-membership and example queries over a pluggable logic,
//! learners, the adapters between the two settings, and the adversarial
//! propositional experiment.

mod adapters;
mod backend;
mod learner;
mod oracle;
mod prop;
mod session;
mod thm2;

use thiserror::Error;

pub use adapters::{
    epistemic_to_exact, exact_to_epistemic, expected_inner, AdapterStep, EpistemicViaExact,
    ExactViaEpistemic,
};
pub use backend::{
    assertions, concepts_up_to, el_pool, prop_pool, ElBackend, ElTheory, LogicBackend, PropBackend,
};
pub use learner::{
    ex_learn, exact_learn, learn_terminology, phase_one_candidates, refinement_candidates,
    Budgeted, LearnerBudget, REFINEMENT_NOTE,
};
pub use oracle::{
    replay, EpistemicOracle, EpistemicState, EqAnswer, ExAnswer, ExactOracle, Oracle, QueryKind,
    QueryRecord, Strategy, Transcript, FINISHED, NO, YES,
};
pub use prop::{parse_prop, parse_prop_theory, PropExpr, MAX_PROP_VARS};
pub use session::{
    run_session, BackendKind, LearnerKind, SessionConfig, SessionReport, SESSION_AGENT,
};
pub use thm2::{adversarial_prop_oracle, run_thm2, strong_target, weak_example, Thm2Counts};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LearningError {
    #[error("candidate pool exhausted: {0}")]
    PoolExhausted(String),
    #[error("query budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("protocol violation: {0}")]
    Protocol(String),
    #[error("invalid input: {0}")]
    Input(String),
}
