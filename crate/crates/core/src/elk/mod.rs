//! Satisfiability of ELK formulas: the polynomial procedure for the
//! conjunctive fragment, its witness construction, and the procedure for
//! arbitrary Boolean combinations.

mod conjunctive;
mod full;
mod witness;

use serde::Serialize;
use thiserror::Error;

use crate::el::ElError;
use crate::semantics::PointedElk;
use crate::syntax::{AgentWord, ConjunctiveElk, KLiteralBlock};

pub use conjunctive::{conjunctive_sat, conjunctive_sat_witnessed};
pub use full::{elk_sat, elk_sat_witnessed};
pub use witness::witness_model;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElkError {
    #[error("formula is not satisfiable")]
    NotSatisfiable,
    #[error("outside the conjunctive fragment: {0}")]
    Fragment(String),
    #[error(transparent)]
    El(#[from] ElError),
    #[error("witness does not satisfy the formula: {0}")]
    WitnessCheckFailed(String),
}

/// A conjunctive formula whose agent words have no adjacent repetitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatConjunctiveElk(ConjunctiveElk);

impl FlatConjunctiveElk {
    pub fn get(&self) -> &ConjunctiveElk {
        &self.0
    }

    pub fn into_inner(self) -> ConjunctiveElk {
        self.0
    }
}

/// Which of the two unsatisfiability conditions fired.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailingCheck {
    pub condition: u8,
    /// Agent word of the offending negative conjunct (condition 2 only).
    #[serde(serialize_with = "ser_opt_word")]
    pub sigma: Option<AgentWord>,
    /// Condition 1: the pooled literal set. Condition 2: the body `ω` of
    /// the negative conjunct.
    #[serde(serialize_with = "crate::syntax::ser_literals")]
    pub body: Vec<crate::syntax::ElLiteral>,
    /// Condition 2: the pooled positive bodies `ψ`.
    #[serde(serialize_with = "crate::syntax::ser_literals")]
    pub psi: Vec<crate::syntax::ElLiteral>,
}

fn ser_opt_word<S: serde::Serializer>(w: &Option<AgentWord>, s: S) -> Result<S::Ok, S::Error> {
    match w {
        Some(w) => s.collect_seq(w.agents()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SatVerdict {
    #[serde(rename = "sat")]
    pub satisfiable: bool,
    pub witness: Option<PointedElk>,
    pub failing_check: Option<FailingCheck>,
}

impl SatVerdict {
    pub(crate) fn sat() -> Self {
        SatVerdict {
            satisfiable: true,
            witness: None,
            failing_check: None,
        }
    }

    pub(crate) fn unsat(check: Option<FailingCheck>) -> Self {
        SatVerdict {
            satisfiable: false,
            witness: None,
            failing_check: check,
        }
    }
}

/// Removes adjacent repetitions of an agent.
pub fn flatten_word(w: &AgentWord) -> AgentWord {
    let mut out: Vec<String> = Vec::with_capacity(w.len());
    for a in w.agents() {
        if out.last() != Some(a) {
            out.push(a.clone());
        }
    }
    AgentWord(out)
}

/// Flattens every agent word; bodies are untouched.
pub fn flatten(phi: &ConjunctiveElk) -> FlatConjunctiveElk {
    let block = |b: &KLiteralBlock| KLiteralBlock::new(flatten_word(&b.sigma), b.body.clone());
    FlatConjunctiveElk(ConjunctiveElk {
        omega0: phi.omega0.clone(),
        positives: phi.positives.iter().map(block).collect(),
        negatives: phi.negatives.iter().map(block).collect(),
    })
}

/// Whether `short` is obtained from `long` by deleting letters.
pub fn is_subword(short: &AgentWord, long: &AgentWord) -> bool {
    let mut it = long.agents().iter();
    short.agents().iter().all(|a| it.any(|b| b == a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, to_conjunctive};

    fn w(s: &str) -> AgentWord {
        AgentWord::new(s.chars().map(|c| c.to_string()))
    }

    #[test]
    fn flattening() {
        assert_eq!(flatten_word(&w("12232")), w("1232"));
        assert_eq!(flatten_word(&w("121")), w("121"));
        let phi = to_conjunctive(&parse_formula("K[1] K[1] (A <= B)").unwrap()).unwrap();
        assert_eq!(flatten(&phi).get().positives[0].sigma, w("1"));
    }

    #[test]
    fn subwords() {
        assert!(is_subword(&w("12"), &w("132")));
        assert!(!is_subword(&w("21"), &w("12")));
        assert!(is_subword(&AgentWord::empty(), &w("12")));
        assert!(!is_subword(&w("1"), &AgentWord::empty()));
    }
}
