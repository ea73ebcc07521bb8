use crate::syntax::{Concept, ElAxiom, ElLiteral};

use super::completion::CompletionState;
use super::normalize::{normalize, normalize_with_stem};
use super::tau::{tau, tau_set, FreshIndividuals, Gci};

/// A saturated base set of literals that answers further consistency and
/// entailment queries by extending a copy of its completion state.
#[derive(Clone, Debug)]
pub struct ElReasoner {
    state: CompletionState,
}

impl ElReasoner {
    pub fn new(literals: &[ElLiteral]) -> Self {
        let mut state = CompletionState::new(&normalize(&tau_set(literals)));
        state.saturate();
        ElReasoner { state }
    }

    pub fn from_axioms(axioms: &[ElAxiom]) -> Self {
        let lits: Vec<ElLiteral> = axioms.iter().map(|a| a.clone().positive()).collect();
        Self::new(&lits)
    }

    pub fn is_consistent(&self) -> bool {
        !self.state.has_clash()
    }

    /// Consistency of the base together with `extra`.
    pub fn consistent_with(&self, extra: &[Gci]) -> bool {
        if !self.is_consistent() {
            return false;
        }
        if extra.is_empty() {
            return true;
        }
        let mut st = self.state.clone();
        st.add_axioms(&normalize_with_stem(extra, "Q").axioms);
        st.saturate();
        !st.has_clash()
    }

    pub fn consistent_with_literals(&self, extra: &[ElLiteral]) -> bool {
        let mut fresh = FreshIndividuals::with_stem("q");
        let gcis: Vec<Gci> = extra.iter().flat_map(|l| tau(l, &mut fresh)).collect();
        self.consistent_with(&gcis)
    }

    pub fn entails(&self, ax: &ElAxiom) -> bool {
        !self.consistent_with_literals(&[ax.clone().negative()])
    }

    /// Whether `a` belongs to `c` in every model of the base.
    pub fn entails_instance(&self, c: &Concept, a: &str) -> bool {
        !self.consistent_with(&[Gci::new(
            Concept::conj(Concept::nominal(a), c.clone()),
            Concept::Bottom,
        )])
    }
}

/// Satisfiability of a conjunction of EL literals. The empty conjunction is
/// satisfiable.
pub fn literals_sat(literals: &[ElLiteral]) -> bool {
    ElReasoner::new(literals).is_consistent()
}

/// `O ⊨ ax`, decided as unsatisfiability of `O ∪ {¬ax}`.
pub fn entails(ontology: &[ElAxiom], ax: &ElAxiom) -> bool {
    let mut lits: Vec<ElLiteral> = ontology.iter().map(|a| a.clone().positive()).collect();
    lits.push(ax.clone().negative());
    !literals_sat(&lits)
}

/// `O ⊨ C(a)` for an arbitrary concept `C`.
pub fn entails_instance(ontology: &[ElAxiom], c: &Concept, a: &str) -> bool {
    ElReasoner::from_axioms(ontology).entails_instance(c, a)
}
