use std::collections::BTreeSet;

use serde::Serialize;

use crate::el::ElReasoner;
use crate::syntax::{Concept, ElAxiom, HasSignature, Signature};

use super::backend::{assertions, LogicBackend};
use super::oracle::{EpistemicOracle, EqAnswer, ExAnswer, ExactOracle};
use super::LearningError;

pub const REFINEMENT_NOTE: &str = "refinement probe";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LearnerBudget {
    pub symbols: usize,
    pub largest_concept: usize,
    /// `2 · largest_concept · symbols + 2`.
    pub exponent: usize,
    /// `None` for no limit.
    pub max_queries: Option<usize>,
}

impl LearnerBudget {
    pub fn new(symbols: usize, largest_concept: usize, max_queries: Option<usize>) -> Self {
        LearnerBudget {
            symbols,
            largest_concept,
            exponent: 2 * largest_concept * symbols + 2,
            max_queries,
        }
    }

    /// Budget derived from a target terminology.
    pub fn for_target(target: &[ElAxiom], max_queries: Option<usize>) -> Self {
        let mut sig = Signature::new();
        let mut largest = 0;
        for ax in target {
            sig.merge(&ax.signature());
            if let ElAxiom::Inclusion { lhs, rhs } = ax {
                largest = largest.max(lhs.size()).max(rhs.size());
            }
        }
        Self::new(sig.symbol_count(), largest, max_queries)
    }
}

/// Counts the queries passing through and refuses once `limit` is used up.
pub struct Budgeted<'a, O: ?Sized> {
    inner: &'a mut O,
    used: usize,
    limit: usize,
}

impl<'a, O: ?Sized> Budgeted<'a, O> {
    pub fn new(inner: &'a mut O, limit: usize) -> Self {
        Budgeted {
            inner,
            used: 0,
            limit,
        }
    }

    pub fn used(&self) -> usize {
        self.used
    }

    fn spend(&mut self) -> Result<(), LearningError> {
        if self.used >= self.limit {
            return Err(LearningError::BudgetExceeded(self.limit));
        }
        self.used += 1;
        Ok(())
    }
}

impl<E, O: ExactOracle<E> + ?Sized> ExactOracle<E> for Budgeted<'_, O> {
    fn mem(&mut self, x: &E) -> Result<bool, LearningError> {
        self.spend()?;
        self.inner.mem(x)
    }

    fn eq(&mut self, h: &[E]) -> Result<EqAnswer<E>, LearningError> {
        self.spend()?;
        self.inner.eq(h)
    }

    fn annotate(&mut self, note: Option<&str>) {
        self.inner.annotate(note)
    }
}

impl<E, O: EpistemicOracle<E> + ?Sized> EpistemicOracle<E> for Budgeted<'_, O> {
    fn kmem(&mut self, x: &E, agent: &str) -> Result<bool, LearningError> {
        self.spend()?;
        self.inner.kmem(x, agent)
    }

    fn ex(&mut self, agent: &str) -> Result<ExAnswer<E>, LearningError> {
        self.spend()?;
        self.inner.ex(agent)
    }

    fn annotate(&mut self, note: Option<&str>) {
        self.inner.annotate(note)
    }
}

/// Every assertion over `sig` and every inclusion `A ⊑ B` between distinct
/// concept names of `sig`.
pub fn phase_one_candidates(sig: &Signature) -> Vec<ElAxiom> {
    let mut out = assertions(sig);
    for a in &sig.concepts {
        for b in &sig.concepts {
            if a != b {
                out.push(ElAxiom::inclusion(Concept::name(a.clone()), Concept::name(b.clone())));
            }
        }
    }
    out
}

/// Named-form inclusions between concept names of `sig` and subconcepts of
/// the example, smallest first.
pub fn refinement_candidates(sig: &Signature, example: &ElAxiom) -> Vec<ElAxiom> {
    let ElAxiom::Inclusion { lhs, rhs } = example else {
        return Vec::new();
    };
    let mut out = BTreeSet::new();
    for a in &sig.concepts {
        let name = Concept::name(a.clone());
        for d in rhs.subconcepts() {
            if *d != name && *d != Concept::Top {
                out.insert(ElAxiom::inclusion(name.clone(), d.clone()));
            }
        }
        for c in lhs.subconcepts() {
            if *c != name {
                out.insert(ElAxiom::inclusion(c.clone(), name.clone()));
            }
        }
    }
    let mut out: Vec<ElAxiom> = out.into_iter().collect();
    out.sort_by_key(|x| (x.size(), x.to_string()));
    out
}

struct Hypothesis {
    axioms: Vec<ElAxiom>,
    reasoner: ElReasoner,
}

impl Hypothesis {
    fn new() -> Self {
        Hypothesis {
            axioms: Vec::new(),
            reasoner: ElReasoner::from_axioms(&[]),
        }
    }

    fn entails(&self, x: &ElAxiom) -> bool {
        self.axioms.contains(x) || self.reasoner.entails(x)
    }

    fn add(&mut self, x: ElAxiom) {
        if !self.axioms.contains(&x) {
            self.axioms.push(x);
            self.reasoner = ElReasoner::from_axioms(&self.axioms);
        }
    }
}

/// Learner for EL terminologies from K-membership and example queries.
///
/// Phase 1 asks about every assertion and atomic inclusion over `sig`.
/// Phase 2 asks for examples until told it is finished; for each example
/// `C ⊑ D` it probes the named-form inclusions between names of `sig` and
/// subconcepts of `C` and `D`, then keeps the example itself.
///
/// The hypothesis is returned in the order axioms were added.
pub fn learn_terminology(
    oracle: &mut dyn EpistemicOracle<ElAxiom>,
    agent: &str,
    sig: &Signature,
) -> Result<Vec<ElAxiom>, LearningError> {
    let mut h = Hypothesis::new();
    for x in phase_one_candidates(sig) {
        if oracle.kmem(&x, agent)? {
            h.add(x);
        }
    }
    while let ExAnswer::Example(example) = oracle.ex(agent)? {
        oracle.annotate(Some(REFINEMENT_NOTE));
        for x in refinement_candidates(sig, &example) {
            if h.entails(&x) {
                continue;
            }
            if oracle.kmem(&x, agent)? {
                h.add(x);
            }
        }
        oracle.annotate(None);
        h.add(example);
    }
    Ok(h.axioms)
}

/// Exact learner: membership queries on `seeds`, then equivalence queries,
/// adding every positive counterexample.
pub fn exact_learn<B: LogicBackend>(
    backend: &B,
    oracle: &mut dyn ExactOracle<B::Example>,
    seeds: &[B::Example],
) -> Result<Vec<B::Example>, LearningError> {
    let mut h: Vec<B::Example> = Vec::new();
    for x in seeds {
        if oracle.mem(x)? && !h.contains(x) {
            h.push(x.clone());
        }
    }
    let mut theory = backend.compile(&h);
    loop {
        match oracle.eq(&h)? {
            EqAnswer::Yes => return Ok(h),
            EqAnswer::Counterexample(x) => {
                if backend.entails(&theory, &x) {
                    return Err(LearningError::Protocol(format!(
                        "negative counterexample {x} to a hypothesis built from positive examples"
                    )));
                }
                backend.extend(&mut theory, &x);
                h.push(x);
            }
        }
    }
}

/// Asks only example queries and keeps every example.
pub fn ex_learn<E>(oracle: &mut dyn EpistemicOracle<E>, agent: &str) -> Result<Vec<E>, LearningError> {
    let mut h = Vec::new();
    while let ExAnswer::Example(x) = oracle.ex(agent)? {
        h.push(x);
    }
    Ok(h)
}
