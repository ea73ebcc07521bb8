//! Abstract syntax for EL concepts, axioms and formulas, and for their
//! epistemic extension with `K[i]` prefixes.
//!
//! Names are plain strings. Two concept constructors, [`Concept::Nominal`]
//! and [`Concept::Bottom`], only exist inside the EL++ reduction used by the
//! reasoner; the parser refuses them in user input.

mod conjunctive;
mod parser;
mod printer;
mod signature;

use std::fmt;

pub use conjunctive::{to_conjunctive, ConjunctiveElk, KLiteralBlock};
pub(crate) use conjunctive::ser_literals;
pub use parser::{
    parse_axiom, parse_concept, parse_formula, parse_formula_file, parse_ontology, SyntaxError,
};
pub use signature::{HasSignature, Signature};

/// Prefix reserved for names generated by the reasoner (fresh individuals,
/// normalization concepts). The parser rejects user names that start with it.
pub const RESERVED_PREFIX: &str = "__";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Concept {
    Top,
    Name(String),
    Conj(Box<Concept>, Box<Concept>),
    Exists(String, Box<Concept>),
    /// `{a}`; reasoner-internal.
    Nominal(String),
    /// `⊥`; reasoner-internal.
    Bottom,
}

impl Concept {
    pub fn name(name: impl Into<String>) -> Self {
        Concept::Name(name.into())
    }

    pub fn nominal(individual: impl Into<String>) -> Self {
        Concept::Nominal(individual.into())
    }

    pub fn conj(lhs: Concept, rhs: Concept) -> Self {
        Concept::Conj(Box::new(lhs), Box::new(rhs))
    }

    pub fn exists(role: impl Into<String>, filler: Concept) -> Self {
        Concept::Exists(role.into(), Box::new(filler))
    }

    /// Left-nested conjunction of `parts`; `Top` when empty.
    pub fn conj_all<I: IntoIterator<Item = Concept>>(parts: I) -> Self {
        parts
            .into_iter()
            .reduce(Concept::conj)
            .unwrap_or(Concept::Top)
    }

    /// Node count of the concept tree.
    pub fn size(&self) -> usize {
        match self {
            Concept::Top | Concept::Bottom | Concept::Name(_) | Concept::Nominal(_) => 1,
            Concept::Conj(l, r) => 1 + l.size() + r.size(),
            Concept::Exists(_, c) => 1 + c.size(),
        }
    }

    /// `Top`, `Bottom`, a concept name or a nominal.
    pub fn is_basic(&self) -> bool {
        matches!(
            self,
            Concept::Top | Concept::Bottom | Concept::Name(_) | Concept::Nominal(_)
        )
    }

    /// True if the concept uses neither nominals nor `Bottom`.
    pub fn is_plain_el(&self) -> bool {
        match self {
            Concept::Top | Concept::Name(_) => true,
            Concept::Nominal(_) | Concept::Bottom => false,
            Concept::Conj(l, r) => l.is_plain_el() && r.is_plain_el(),
            Concept::Exists(_, c) => c.is_plain_el(),
        }
    }

    /// All subconcepts, pre-order, the concept itself first.
    pub fn subconcepts(&self) -> Vec<&Concept> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(c) = stack.pop() {
            out.push(c);
            match c {
                Concept::Conj(l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
                Concept::Exists(_, f) => stack.push(f),
                _ => {}
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElAxiom {
    Inclusion { lhs: Concept, rhs: Concept },
    ConceptAssertion { concept: String, individual: String },
    RoleAssertion { role: String, subject: String, object: String },
}

impl ElAxiom {
    pub fn inclusion(lhs: Concept, rhs: Concept) -> Self {
        ElAxiom::Inclusion { lhs, rhs }
    }

    pub fn concept_assertion(concept: impl Into<String>, individual: impl Into<String>) -> Self {
        ElAxiom::ConceptAssertion {
            concept: concept.into(),
            individual: individual.into(),
        }
    }

    pub fn role_assertion(
        role: impl Into<String>,
        subject: impl Into<String>,
        object: impl Into<String>,
    ) -> Self {
        ElAxiom::RoleAssertion {
            role: role.into(),
            subject: subject.into(),
            object: object.into(),
        }
    }

    /// Length of the axiom counting every name and constructor as one.
    pub fn size(&self) -> usize {
        match self {
            ElAxiom::Inclusion { lhs, rhs } => 1 + lhs.size() + rhs.size(),
            ElAxiom::ConceptAssertion { .. } => 2,
            ElAxiom::RoleAssertion { .. } => 3,
        }
    }

    pub fn is_inclusion(&self) -> bool {
        matches!(self, ElAxiom::Inclusion { .. })
    }

    pub fn positive(self) -> ElLiteral {
        ElLiteral::new(self, true)
    }

    pub fn negative(self) -> ElLiteral {
        ElLiteral::new(self, false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElLiteral {
    pub axiom: ElAxiom,
    pub positive: bool,
}

impl ElLiteral {
    pub fn new(axiom: ElAxiom, positive: bool) -> Self {
        ElLiteral { axiom, positive }
    }

    pub fn negated(&self) -> Self {
        ElLiteral::new(self.axiom.clone(), !self.positive)
    }

    /// The literal as a formula: `a` or `!a`.
    pub fn to_formula(&self) -> ElFormula {
        let lit = ElFormula::Lit(self.axiom.clone());
        if self.positive {
            lit
        } else {
            ElFormula::not(lit)
        }
    }
}

/// Boolean combination of EL axioms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElFormula {
    Lit(ElAxiom),
    Not(Box<ElFormula>),
    And(Box<ElFormula>, Box<ElFormula>),
}

impl ElFormula {
    pub fn not(inner: ElFormula) -> Self {
        ElFormula::Not(Box::new(inner))
    }

    pub fn and(lhs: ElFormula, rhs: ElFormula) -> Self {
        ElFormula::And(Box::new(lhs), Box::new(rhs))
    }

    /// Left-nested conjunction; `None` when `parts` is empty.
    pub fn and_all<I: IntoIterator<Item = ElFormula>>(parts: I) -> Option<Self> {
        parts.into_iter().reduce(ElFormula::and)
    }

    /// Conjunction of literals. The empty conjunction is rendered as the
    /// tautology `Top <= Top`.
    pub fn from_literals(lits: &[ElLiteral]) -> Self {
        ElFormula::and_all(lits.iter().map(ElLiteral::to_formula))
            .unwrap_or_else(|| ElFormula::Lit(ElAxiom::inclusion(Concept::Top, Concept::Top)))
    }

    /// Distinct axioms in first-occurrence order.
    pub fn axioms(&self) -> Vec<&ElAxiom> {
        let mut out: Vec<&ElAxiom> = Vec::new();
        self.visit_axioms(&mut |a| {
            if !out.contains(&a) {
                out.push(a);
            }
        });
        out
    }

    fn visit_axioms<'a>(&'a self, f: &mut impl FnMut(&'a ElAxiom)) {
        match self {
            ElFormula::Lit(a) => f(a),
            ElFormula::Not(x) => x.visit_axioms(f),
            ElFormula::And(l, r) => {
                l.visit_axioms(f);
                r.visit_axioms(f);
            }
        }
    }

    /// If the formula is a conjunction of literals, those literals in order.
    pub fn as_literals(&self) -> Option<Vec<ElLiteral>> {
        let mut out = Vec::new();
        self.collect_literals(&mut out).then_some(out)
    }

    fn collect_literals(&self, out: &mut Vec<ElLiteral>) -> bool {
        match self {
            ElFormula::Lit(a) => {
                out.push(a.clone().positive());
                true
            }
            ElFormula::Not(inner) => match inner.as_ref() {
                ElFormula::Lit(a) => {
                    out.push(a.clone().negative());
                    true
                }
                _ => false,
            },
            ElFormula::And(l, r) => l.collect_literals(out) && r.collect_literals(out),
        }
    }

    /// Truth value under an assignment of the axioms.
    pub fn eval_with(&self, value: &mut impl FnMut(&ElAxiom) -> bool) -> bool {
        match self {
            ElFormula::Lit(a) => value(a),
            ElFormula::Not(x) => !x.eval_with(value),
            ElFormula::And(l, r) => l.eval_with(value) && r.eval_with(value),
        }
    }
}

/// Sequence of agents prefixing an axiom, `K[a1] ... K[ak]`. The empty word
/// is a valid value and denotes no prefix at all.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AgentWord(pub Vec<String>);

impl AgentWord {
    pub fn empty() -> Self {
        AgentWord(Vec::new())
    }

    pub fn new<I, S>(agents: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        AgentWord(agents.into_iter().map(Into::into).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn agents(&self) -> &[String] {
        &self.0
    }

    pub fn prefix(&self, len: usize) -> AgentWord {
        AgentWord(self.0[..len].to_vec())
    }
}

impl fmt::Display for AgentWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "K[{a}]")?;
        }
        Ok(())
    }
}

/// Formula of the epistemic extension. Negation only appears above a
/// K-prefix or inside the EL body, never between two K operators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElkFormula {
    Ax { prefix: AgentWord, body: ElFormula },
    Not(Box<ElkFormula>),
    And(Box<ElkFormula>, Box<ElkFormula>),
}

impl ElkFormula {
    /// Unprefixed EL axiom.
    pub fn axiom(axiom: ElAxiom) -> Self {
        ElkFormula::Ax {
            prefix: AgentWord::empty(),
            body: ElFormula::Lit(axiom),
        }
    }

    pub fn known(prefix: AgentWord, body: ElFormula) -> Self {
        ElkFormula::Ax { prefix, body }
    }

    pub fn not(inner: ElkFormula) -> Self {
        ElkFormula::Not(Box::new(inner))
    }

    pub fn and(lhs: ElkFormula, rhs: ElkFormula) -> Self {
        ElkFormula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn and_all<I: IntoIterator<Item = ElkFormula>>(parts: I) -> Option<Self> {
        parts.into_iter().reduce(ElkFormula::and)
    }

    /// Distinct `(prefix, body)` atoms in first-occurrence order.
    pub fn atoms(&self) -> Vec<(&AgentWord, &ElFormula)> {
        let mut out: Vec<(&AgentWord, &ElFormula)> = Vec::new();
        self.visit_atoms(&mut |p, b| {
            if !out.iter().any(|(q, c)| *q == p && *c == b) {
                out.push((p, b));
            }
        });
        out
    }

    fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a AgentWord, &'a ElFormula)) {
        match self {
            ElkFormula::Ax { prefix, body } => f(prefix, body),
            ElkFormula::Not(x) => x.visit_atoms(f),
            ElkFormula::And(l, r) => {
                l.visit_atoms(f);
                r.visit_atoms(f);
            }
        }
    }

    /// Distinct EL axioms occurring anywhere, first-occurrence order.
    pub fn el_axioms(&self) -> Vec<&ElAxiom> {
        let mut out: Vec<&ElAxiom> = Vec::new();
        for (_, body) in self.atoms() {
            for a in body.axioms() {
                if !out.contains(&a) {
                    out.push(a);
                }
            }
        }
        out
    }

    /// Truth value under an assignment of the atoms.
    pub fn eval_with(&self, value: &mut impl FnMut(&AgentWord, &ElFormula) -> bool) -> bool {
        match self {
            ElkFormula::Ax { prefix, body } => value(prefix, body),
            ElkFormula::Not(x) => !x.eval_with(value),
            ElkFormula::And(l, r) => l.eval_with(value) && r.eval_with(value),
        }
    }
}
