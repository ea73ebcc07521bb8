use std::collections::BTreeSet;
use std::fmt;

use crate::el::ElReasoner;
use crate::syntax::{parse_axiom, Concept, ElAxiom, Signature};

use super::prop::{parse_prop, Column, PropExpr, TruthTable};
use super::LearningError;

/// The logic a learning framework is built over.
pub trait LogicBackend {
    type Example: Clone + Ord + fmt::Display + fmt::Debug;
    /// A theory prepared for repeated entailment tests.
    type Theory: Clone;

    fn compile(&self, axioms: &[Self::Example]) -> Self::Theory;
    fn extend(&self, theory: &mut Self::Theory, x: &Self::Example);
    fn entails(&self, theory: &Self::Theory, x: &Self::Example) -> bool;
    fn size(&self, x: &Self::Example) -> usize;
    fn parse_example(&self, text: &str) -> Result<Self::Example, LearningError>;

    fn entails_all(&self, theory: &Self::Theory, xs: &[Self::Example]) -> bool {
        xs.iter().all(|x| self.entails(theory, x))
    }

    fn equivalent(&self, a: &[Self::Example], b: &[Self::Example]) -> bool {
        self.entails_all(&self.compile(a), b) && self.entails_all(&self.compile(b), a)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ElBackend;

#[derive(Clone, Debug)]
pub struct ElTheory {
    axioms: Vec<ElAxiom>,
    reasoner: ElReasoner,
}

impl LogicBackend for ElBackend {
    type Example = ElAxiom;
    type Theory = ElTheory;

    fn compile(&self, axioms: &[ElAxiom]) -> ElTheory {
        ElTheory {
            axioms: axioms.to_vec(),
            reasoner: ElReasoner::from_axioms(axioms),
        }
    }

    fn extend(&self, theory: &mut ElTheory, x: &ElAxiom) {
        theory.axioms.push(x.clone());
        theory.reasoner = ElReasoner::from_axioms(&theory.axioms);
    }

    fn entails(&self, theory: &ElTheory, x: &ElAxiom) -> bool {
        theory.axioms.contains(x) || theory.reasoner.entails(x)
    }

    fn size(&self, x: &ElAxiom) -> usize {
        x.size()
    }

    fn parse_example(&self, text: &str) -> Result<ElAxiom, LearningError> {
        parse_axiom(text).map_err(|e| LearningError::Input(e.to_string()))
    }
}

/// Propositional backend over a fixed variable set.
pub struct PropBackend {
    table: TruthTable,
}

impl PropBackend {
    pub fn new(vars: BTreeSet<String>) -> Result<Self, LearningError> {
        Ok(PropBackend {
            table: TruthTable::new(vars.into_iter().collect())?,
        })
    }

    /// Backend over the variables of `formulas`.
    pub fn covering<'a>(formulas: impl IntoIterator<Item = &'a PropExpr>) -> Result<Self, LearningError> {
        let mut vars = BTreeSet::new();
        for f in formulas {
            f.vars(&mut vars);
        }
        Self::new(vars)
    }
}

impl LogicBackend for PropBackend {
    type Example = PropExpr;
    type Theory = Column;

    fn compile(&self, axioms: &[PropExpr]) -> Column {
        let mut c = self.table.ones();
        for a in axioms {
            self.table.meet(&mut c, a);
        }
        c
    }

    fn extend(&self, theory: &mut Column, x: &PropExpr) {
        self.table.meet(theory, x);
    }

    fn entails(&self, theory: &Column, x: &PropExpr) -> bool {
        self.table.implies(theory, x)
    }

    fn size(&self, x: &PropExpr) -> usize {
        x.size()
    }

    fn parse_example(&self, text: &str) -> Result<PropExpr, LearningError> {
        parse_prop(text)
    }
}

/// EL concepts over the concept and role names of `sig` with at most
/// `bound` nodes. Conjunctions are kept with the smaller operand first.
pub fn concepts_up_to(sig: &Signature, bound: usize) -> Vec<Concept> {
    let mut by_size: Vec<Vec<Concept>> = vec![Vec::new(); bound + 1];
    if bound == 0 {
        return Vec::new();
    }
    by_size[1].push(Concept::Top);
    by_size[1].extend(sig.concepts.iter().map(Concept::name));
    for size in 2..=bound {
        let mut level = Vec::new();
        for r in &sig.roles {
            for c in &by_size[size - 1] {
                level.push(Concept::exists(r.clone(), c.clone()));
            }
        }
        for left in 1..size - 1 {
            let right = size - 1 - left;
            for l in &by_size[left] {
                for r in &by_size[right] {
                    if l < r && *l != Concept::Top && *r != Concept::Top {
                        level.push(Concept::conj(l.clone(), r.clone()));
                    }
                }
            }
        }
        by_size[size] = level;
    }
    by_size.into_iter().flatten().collect()
}

/// Every assertion over the signature.
pub fn assertions(sig: &Signature) -> Vec<ElAxiom> {
    let mut out = Vec::new();
    for a in &sig.individuals {
        for c in &sig.concepts {
            out.push(ElAxiom::concept_assertion(c.clone(), a.clone()));
        }
        for r in &sig.roles {
            for b in &sig.individuals {
                out.push(ElAxiom::role_assertion(r.clone(), a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Assertions and inclusions with a concept name on one side and a concept
/// of at most `bound` nodes on the other.
pub fn el_pool(sig: &Signature, bound: usize) -> Vec<ElAxiom> {
    let mut out: BTreeSet<ElAxiom> = assertions(sig).into_iter().collect();
    let concepts = concepts_up_to(sig, bound);
    for a in &sig.concepts {
        let name = Concept::name(a.clone());
        for c in &concepts {
            if *c != name {
                out.insert(ElAxiom::inclusion(name.clone(), c.clone()));
                out.insert(ElAxiom::inclusion(c.clone(), name.clone()));
            }
        }
    }
    out.into_iter().collect()
}

/// Implications `v1 & … & vk -> h` with `k <= bound` distinct body
/// variables taken in order and `h` not among them.
pub fn prop_pool(vars: &BTreeSet<String>, bound: usize) -> Vec<PropExpr> {
    let vars: Vec<&String> = vars.iter().collect();
    let mut bodies: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier = bodies.clone();
    for _ in 0..bound {
        let mut next = Vec::new();
        for b in &frontier {
            let start = b.last().map_or(0, |&i| i + 1);
            for i in start..vars.len() {
                let mut nb = b.clone();
                nb.push(i);
                next.push(nb);
            }
        }
        bodies.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = Vec::new();
    for body in bodies.iter().filter(|b| !b.is_empty()) {
        let lhs = PropExpr::and_all(body.iter().map(|&i| PropExpr::var(vars[i].clone()))).unwrap();
        for (h, v) in vars.iter().enumerate() {
            if !body.contains(&h) {
                out.push(PropExpr::implies(lhs.clone(), PropExpr::var((*v).clone())));
            }
        }
    }
    out
}
