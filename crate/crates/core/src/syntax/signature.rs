use std::collections::BTreeSet;

use serde::Serialize;

use super::{
    AgentWord, Concept, ConjunctiveElk, ElAxiom, ElFormula, ElLiteral, ElkFormula,
};

/// Symbols occurring in a syntax tree, in sorted order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub concepts: BTreeSet<String>,
    pub roles: BTreeSet<String>,
    pub individuals: BTreeSet<String>,
    pub agents: BTreeSet<String>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn merge(&mut self, other: &Signature) {
        self.concepts.extend(other.concepts.iter().cloned());
        self.roles.extend(other.roles.iter().cloned());
        self.individuals.extend(other.individuals.iter().cloned());
        self.agents.extend(other.agents.iter().cloned());
    }

    pub fn is_subset(&self, other: &Signature) -> bool {
        self.concepts.is_subset(&other.concepts)
            && self.roles.is_subset(&other.roles)
            && self.individuals.is_subset(&other.individuals)
            && self.agents.is_subset(&other.agents)
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
            && self.roles.is_empty()
            && self.individuals.is_empty()
            && self.agents.is_empty()
    }

    /// Number of concept, role and individual names.
    pub fn symbol_count(&self) -> usize {
        self.concepts.len() + self.roles.len() + self.individuals.len()
    }
}

pub trait HasSignature {
    fn collect_signature(&self, sig: &mut Signature);

    fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        self.collect_signature(&mut sig);
        sig
    }
}

impl HasSignature for Concept {
    fn collect_signature(&self, sig: &mut Signature) {
        match self {
            Concept::Top | Concept::Bottom => {}
            Concept::Name(n) => {
                sig.concepts.insert(n.clone());
            }
            Concept::Nominal(a) => {
                sig.individuals.insert(a.clone());
            }
            Concept::Conj(l, r) => {
                l.collect_signature(sig);
                r.collect_signature(sig);
            }
            Concept::Exists(role, c) => {
                sig.roles.insert(role.clone());
                c.collect_signature(sig);
            }
        }
    }
}

impl HasSignature for ElAxiom {
    fn collect_signature(&self, sig: &mut Signature) {
        match self {
            ElAxiom::Inclusion { lhs, rhs } => {
                lhs.collect_signature(sig);
                rhs.collect_signature(sig);
            }
            ElAxiom::ConceptAssertion {
                concept,
                individual,
            } => {
                sig.concepts.insert(concept.clone());
                sig.individuals.insert(individual.clone());
            }
            ElAxiom::RoleAssertion {
                role,
                subject,
                object,
            } => {
                sig.roles.insert(role.clone());
                sig.individuals.insert(subject.clone());
                sig.individuals.insert(object.clone());
            }
        }
    }
}

impl HasSignature for ElLiteral {
    fn collect_signature(&self, sig: &mut Signature) {
        self.axiom.collect_signature(sig);
    }
}

impl HasSignature for ElFormula {
    fn collect_signature(&self, sig: &mut Signature) {
        match self {
            ElFormula::Lit(a) => a.collect_signature(sig),
            ElFormula::Not(x) => x.collect_signature(sig),
            ElFormula::And(l, r) => {
                l.collect_signature(sig);
                r.collect_signature(sig);
            }
        }
    }
}

impl HasSignature for AgentWord {
    fn collect_signature(&self, sig: &mut Signature) {
        sig.agents.extend(self.0.iter().cloned());
    }
}

impl HasSignature for ElkFormula {
    fn collect_signature(&self, sig: &mut Signature) {
        match self {
            ElkFormula::Ax { prefix, body } => {
                prefix.collect_signature(sig);
                body.collect_signature(sig);
            }
            ElkFormula::Not(x) => x.collect_signature(sig),
            ElkFormula::And(l, r) => {
                l.collect_signature(sig);
                r.collect_signature(sig);
            }
        }
    }
}

impl HasSignature for ConjunctiveElk {
    fn collect_signature(&self, sig: &mut Signature) {
        self.omega0.collect_signature(sig);
        for block in self.positives.iter().chain(&self.negatives) {
            block.sigma.collect_signature(sig);
            block.body.collect_signature(sig);
        }
    }
}

impl<T: HasSignature> HasSignature for [T] {
    fn collect_signature(&self, sig: &mut Signature) {
        for x in self {
            x.collect_signature(sig);
        }
    }
}

impl<T: HasSignature> HasSignature for Vec<T> {
    fn collect_signature(&self, sig: &mut Signature) {
        self.as_slice().collect_signature(sig);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_ontology;

    #[test]
    fn top_has_empty_signature() {
        assert!(Concept::Top.signature().is_empty());
    }

    #[test]
    fn nominal_filler_counts_as_individual() {
        let sig = Concept::exists("r", Concept::nominal("a")).signature();
        assert_eq!(sig.roles.iter().collect::<Vec<_>>(), ["r"]);
        assert_eq!(sig.individuals.iter().collect::<Vec<_>>(), ["a"]);
        assert!(sig.concepts.is_empty());
    }

    #[test]
    fn brazilian_music_individuals() {
        let o = parse_ontology(
            "BrazilianSinger(Caetano)\nBossaNova <= BrazilianMusicStyle\nViolaBuriti <= some madeFrom . Buriti",
        )
        .unwrap();
        let sig = o.signature();
        assert!(sig.individuals.contains("Caetano"));
        assert!(sig.roles.contains("madeFrom"));
        assert_eq!(sig.concepts.len(), 5);
    }
}
