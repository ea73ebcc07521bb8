use std::fmt;

use crate::syntax::{Concept, ElAxiom, ElLiteral, RESERVED_PREFIX};

/// General concept inclusion over EL extended with nominals and `Bottom`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gci {
    pub lhs: Concept,
    pub rhs: Concept,
}

impl Gci {
    pub fn new(lhs: Concept, rhs: Concept) -> Self {
        Gci { lhs, rhs }
    }
}

impl fmt::Display for Gci {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", self.lhs, self.rhs)
    }
}

/// Generator for `__f<k>` individuals, numbered from 1 per top-level call.
#[derive(Debug)]
pub struct FreshIndividuals {
    stem: &'static str,
    next: usize,
}

impl Default for FreshIndividuals {
    fn default() -> Self {
        Self::new()
    }
}

impl FreshIndividuals {
    pub fn new() -> Self {
        FreshIndividuals { stem: "f", next: 0 }
    }

    /// Generator with a different stem, for names that must not clash with
    /// those of [`FreshIndividuals::new`].
    pub(crate) fn with_stem(stem: &'static str) -> Self {
        FreshIndividuals { stem, next: 0 }
    }

    pub fn fresh(&mut self) -> String {
        self.next += 1;
        format!("{RESERVED_PREFIX}{}{}", self.stem, self.next)
    }
}

/// Translation of a single EL literal into EL++ inclusions.
pub fn tau(lit: &ElLiteral, fresh: &mut FreshIndividuals) -> Vec<Gci> {
    use Concept::{Bottom, Nominal};
    match (&lit.axiom, lit.positive) {
        (ElAxiom::ConceptAssertion { concept, individual }, true) => {
            vec![Gci::new(Nominal(individual.clone()), Concept::name(concept))]
        }
        (ElAxiom::ConceptAssertion { concept, individual }, false) => vec![Gci::new(
            Concept::conj(Nominal(individual.clone()), Concept::name(concept)),
            Bottom,
        )],
        (ElAxiom::Inclusion { lhs, rhs }, true) => vec![Gci::new(lhs.clone(), rhs.clone())],
        (ElAxiom::Inclusion { lhs, rhs }, false) => {
            let f = fresh.fresh();
            vec![
                Gci::new(Nominal(f.clone()), lhs.clone()),
                Gci::new(Concept::conj(Nominal(f), rhs.clone()), Bottom),
            ]
        }
        (ElAxiom::RoleAssertion { role, subject, object }, true) => vec![Gci::new(
            Nominal(subject.clone()),
            Concept::exists(role, Nominal(object.clone())),
        )],
        (ElAxiom::RoleAssertion { role, subject, object }, false) => vec![Gci::new(
            Concept::conj(
                Nominal(subject.clone()),
                Concept::exists(role, Nominal(object.clone())),
            ),
            Bottom,
        )],
    }
}

/// Union of [`tau`] over `lits`, with a distinct fresh individual for every
/// negated inclusion.
pub fn tau_set(lits: &[ElLiteral]) -> Vec<Gci> {
    let mut fresh = FreshIndividuals::new();
    let mut out: Vec<Gci> = Vec::new();
    for lit in lits {
        for g in tau(lit, &mut fresh) {
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out
}
