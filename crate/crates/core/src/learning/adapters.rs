use std::collections::BTreeMap;

use serde::Serialize;

use super::oracle::{EpistemicOracle, EqAnswer, ExAnswer, ExactOracle, QueryKind};
use super::LearningError;

/// One query of the wrapped learner and the queries it was translated to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdapterStep {
    pub outer: QueryKind,
    pub inner: Vec<QueryKind>,
}

/// Exact-learning interface on top of an epistemic oracle: `mem` is a
/// K-membership query; `eq(h)` asks `kmem` for every axiom of `h` and then
/// one example query, reading "you finished" as yes.
pub struct ExactViaEpistemic<'a, E> {
    inner: &'a mut dyn EpistemicOracle<E>,
    agent: String,
    pub log: Vec<AdapterStep>,
}

impl<'a, E> ExactViaEpistemic<'a, E> {
    pub fn new(inner: &'a mut dyn EpistemicOracle<E>, agent: &str) -> Self {
        ExactViaEpistemic {
            inner,
            agent: agent.to_string(),
            log: Vec::new(),
        }
    }
}

impl<E: Clone> ExactOracle<E> for ExactViaEpistemic<'_, E> {
    fn mem(&mut self, x: &E) -> Result<bool, LearningError> {
        self.log.push(AdapterStep {
            outer: QueryKind::Mem,
            inner: vec![QueryKind::Kmem],
        });
        self.inner.kmem(x, &self.agent)
    }

    fn eq(&mut self, h: &[E]) -> Result<EqAnswer<E>, LearningError> {
        let mut step = AdapterStep {
            outer: QueryKind::Eq,
            inner: Vec::new(),
        };
        for x in h {
            step.inner.push(QueryKind::Kmem);
            if !self.inner.kmem(x, &self.agent)? {
                self.log.push(step);
                return Ok(EqAnswer::Counterexample(x.clone()));
            }
        }
        step.inner.push(QueryKind::Ex);
        let answer = self.inner.ex(&self.agent);
        self.log.push(step);
        Ok(match answer? {
            ExAnswer::Finished => EqAnswer::Yes,
            ExAnswer::Example(x) => EqAnswer::Counterexample(x),
        })
    }

    fn annotate(&mut self, note: Option<&str>) {
        self.inner.annotate(note)
    }
}

/// Epistemic interface on top of an exact oracle. Keeps, per agent, the
/// set `s` of examples communicated so far; `ex` is an equivalence query on
/// `s`, and `kmem` a membership query that adds to `s` on yes.
pub struct EpistemicViaExact<'a, E> {
    inner: &'a mut dyn ExactOracle<E>,
    pub told: BTreeMap<String, Vec<E>>,
    pub log: Vec<AdapterStep>,
}

impl<'a, E> EpistemicViaExact<'a, E> {
    pub fn new(inner: &'a mut dyn ExactOracle<E>) -> Self {
        EpistemicViaExact {
            inner,
            told: BTreeMap::new(),
            log: Vec::new(),
        }
    }
}

impl<E: Clone + PartialEq> EpistemicOracle<E> for EpistemicViaExact<'_, E> {
    fn kmem(&mut self, x: &E, agent: &str) -> Result<bool, LearningError> {
        self.log.push(AdapterStep {
            outer: QueryKind::Kmem,
            inner: vec![QueryKind::Mem],
        });
        let yes = self.inner.mem(x)?;
        if yes {
            let s = self.told.entry(agent.to_string()).or_default();
            if !s.contains(x) {
                s.push(x.clone());
            }
        }
        Ok(yes)
    }

    fn ex(&mut self, agent: &str) -> Result<ExAnswer<E>, LearningError> {
        self.log.push(AdapterStep {
            outer: QueryKind::Ex,
            inner: vec![QueryKind::Eq],
        });
        let s = self.told.entry(agent.to_string()).or_default().clone();
        match self.inner.eq(&s)? {
            EqAnswer::Yes => Ok(ExAnswer::Finished),
            EqAnswer::Counterexample(x) => {
                self.told.get_mut(agent).unwrap().push(x.clone());
                Ok(ExAnswer::Example(x))
            }
        }
    }

    fn annotate(&mut self, note: Option<&str>) {
        self.inner.annotate(note)
    }
}

/// Runs an exact learner against an epistemic oracle.
pub fn exact_to_epistemic<E: Clone>(
    learner: impl FnOnce(&mut dyn ExactOracle<E>) -> Result<Vec<E>, LearningError>,
    oracle: &mut dyn EpistemicOracle<E>,
    agent: &str,
) -> Result<(Vec<E>, Vec<AdapterStep>), LearningError> {
    let mut adapter = ExactViaEpistemic::new(oracle, agent);
    let h = learner(&mut adapter)?;
    Ok((h, adapter.log))
}

/// Runs an epistemic learner against an exact oracle.
pub fn epistemic_to_exact<E: Clone + PartialEq>(
    learner: impl FnOnce(&mut dyn EpistemicOracle<E>) -> Result<Vec<E>, LearningError>,
    oracle: &mut dyn ExactOracle<E>,
) -> Result<(Vec<E>, Vec<AdapterStep>), LearningError> {
    let mut adapter = EpistemicViaExact::new(oracle);
    let h = learner(&mut adapter)?;
    Ok((h, adapter.log))
}

/// Inner query kinds in the order the adapter issued them.
pub fn expected_inner(log: &[AdapterStep]) -> Vec<QueryKind> {
    log.iter().flat_map(|s| s.inner.iter().copied()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learning::backend::ElBackend;
    use crate::learning::learner::{ex_learn, exact_learn};
    use crate::learning::oracle::{Oracle, Strategy};
    use crate::syntax::{parse_axiom, ElAxiom};

    fn oracle(target: &[&str]) -> Oracle<ElBackend> {
        let t: Vec<ElAxiom> = target.iter().map(|s| parse_axiom(s).unwrap()).collect();
        Oracle::new(ElBackend, t, Vec::new(), Strategy::SmallestFirst, 0)
    }

    #[test]
    fn exact_run_with_correct_hypothesis() {
        let mut o = oracle(&["A <= B"]);
        let seeds = vec![parse_axiom("A <= B").unwrap()];
        let (h, log) =
            exact_to_epistemic(|x| exact_learn(&ElBackend, x, &seeds), &mut o, "1").unwrap();
        assert_eq!(h, seeds);
        assert_eq!(log.last().unwrap().inner, vec![QueryKind::Kmem, QueryKind::Ex]);
        assert_eq!(o.transcript().entries.last().unwrap().answer, "you finished");
        assert_eq!(o.transcript().kinds(), expected_inner(&log));
    }

    #[test]
    fn empty_hypothesis_gets_positive_counterexample() {
        let mut o = oracle(&["A <= B"]);
        let (h, log) = exact_to_epistemic(|x| exact_learn(&ElBackend, x, &[]), &mut o, "1").unwrap();
        assert_eq!(log[0].inner, vec![QueryKind::Ex]);
        assert_eq!(h, vec![parse_axiom("A <= B").unwrap()]);
    }

    #[test]
    fn epistemic_learner_through_equivalence_queries() {
        let mut o = oracle(&["A <= B"]);
        let (h, log) = epistemic_to_exact(|x| ex_learn(x, "1"), &mut o).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(log.len(), 2);
        let t = o.transcript();
        assert_eq!(t.entries[0].input, Vec::<String>::new());
        assert_eq!(t.entries[0].answer, "A <= B");
        assert_eq!(t.entries[1].input, vec!["A <= B".to_string()]);
        assert_eq!(t.entries[1].answer, "yes");
    }
}
