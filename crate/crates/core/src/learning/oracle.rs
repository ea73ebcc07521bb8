use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::backend::LogicBackend;
use super::LearningError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Smallest eligible example first, ties broken by text.
    #[default]
    SmallestFirst,
    LargestFirst,
    /// Largest first, ties broken by a seeded shuffle.
    Adversarial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QueryKind {
    Mem,
    Eq,
    Kmem,
    Ex,
}

impl QueryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            QueryKind::Mem => "mem",
            QueryKind::Eq => "eq",
            QueryKind::Kmem => "kmem",
            QueryKind::Ex => "ex",
        }
    }
}

pub const YES: &str = "yes";
pub const NO: &str = "no";
pub const FINISHED: &str = "you finished";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub k: usize,
    pub kind: QueryKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agent: Option<String>,
    pub input: Vec<String>,
    pub answer: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub entries: Vec<QueryRecord>,
    pub counts: BTreeMap<String, usize>,
    pub hypothesis: Vec<String>,
}

impl Transcript {
    pub fn count(&self, kind: QueryKind) -> usize {
        self.counts.get(kind.as_str()).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.entries.len()
    }

    pub fn kinds(&self) -> Vec<QueryKind> {
        self.entries.iter().map(|e| e.kind).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqAnswer<E> {
    Yes,
    Counterexample(E),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExAnswer<E> {
    Example(E),
    Finished,
}

/// Membership and equivalence queries.
pub trait ExactOracle<E> {
    fn mem(&mut self, x: &E) -> Result<bool, LearningError>;
    fn eq(&mut self, h: &[E]) -> Result<EqAnswer<E>, LearningError>;
    /// Label attached to the following queries in the transcript.
    fn annotate(&mut self, _note: Option<&str>) {}
}

/// K-membership and example queries.
pub trait EpistemicOracle<E> {
    fn kmem(&mut self, x: &E, agent: &str) -> Result<bool, LearningError>;
    fn ex(&mut self, agent: &str) -> Result<ExAnswer<E>, LearningError>;
    fn annotate(&mut self, _note: Option<&str>) {}
}

/// Target plus, per agent, the examples `x` for which `K_j x` has been
/// recorded, and the number of oracle calls so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpistemicState<E: Ord> {
    pub target: Vec<E>,
    pub told: BTreeMap<String, BTreeSet<E>>,
    pub k: usize,
}

/// Answers all four kinds of query for one target over a bounded pool of
/// candidate examples, logging every call.
pub struct Oracle<B: LogicBackend> {
    backend: B,
    state: EpistemicState<B::Example>,
    target_theory: B::Theory,
    told_theory: BTreeMap<String, B::Theory>,
    pool: Vec<B::Example>,
    /// `target ⊨ pool[i]`, computed on first use.
    positive: Vec<Option<bool>>,
    /// Pool entries already known to follow from `told(j)`.
    known: BTreeMap<String, Vec<bool>>,
    note: Option<String>,
    transcript: Transcript,
}

impl<B: LogicBackend> Oracle<B> {
    /// The pool is extended by the target axioms, deduplicated and ordered
    /// by `strategy`.
    pub fn new(
        backend: B,
        target: Vec<B::Example>,
        pool: Vec<B::Example>,
        strategy: Strategy,
        seed: u64,
    ) -> Self {
        let mut set: BTreeSet<B::Example> = pool.into_iter().collect();
        set.extend(target.iter().cloned());
        let mut keyed: Vec<(usize, String, B::Example)> = set
            .into_iter()
            .map(|x| (backend.size(&x), x.to_string(), x))
            .collect();
        match strategy {
            Strategy::SmallestFirst => keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1))),
            Strategy::LargestFirst => {
                keyed.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)))
            }
            Strategy::Adversarial => {
                keyed.sort_by(|a, b| a.1.cmp(&b.1));
                keyed.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                keyed.sort_by_key(|a| std::cmp::Reverse(a.0));
            }
        }
        let pool: Vec<B::Example> = keyed.into_iter().map(|(_, _, x)| x).collect();
        let target_theory = backend.compile(&target);
        let positive = vec![None; pool.len()];
        Oracle {
            backend,
            state: EpistemicState {
                target,
                told: BTreeMap::new(),
                k: 0,
            },
            target_theory,
            told_theory: BTreeMap::new(),
            pool,
            positive,
            known: BTreeMap::new(),
            note: None,
            transcript: Transcript::default(),
        }
    }

    pub fn backend(&self) -> &B {
        &self.backend
    }

    pub fn state(&self) -> &EpistemicState<B::Example> {
        &self.state
    }

    pub fn pool(&self) -> &[B::Example] {
        &self.pool
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn into_transcript(self) -> Transcript {
        self.transcript
    }

    pub fn told(&self, agent: &str) -> Vec<B::Example> {
        self.state
            .told
            .get(agent)
            .map(|s| s.iter().cloned().collect())
            .unwrap_or_default()
    }

    fn record(&mut self, kind: QueryKind, agent: Option<&str>, input: Vec<String>, answer: String) {
        self.state.k += 1;
        *self.transcript.counts.entry(kind.as_str().into()).or_insert(0) += 1;
        self.transcript.entries.push(QueryRecord {
            k: self.state.k,
            kind,
            agent: agent.map(str::to_string),
            input,
            answer,
            note: self.note.clone(),
        });
    }

    fn is_positive(&mut self, i: usize) -> bool {
        match self.positive[i] {
            Some(b) => b,
            None => {
                let b = self.backend.entails(&self.target_theory, &self.pool[i]);
                self.positive[i] = Some(b);
                b
            }
        }
    }

    fn tell(&mut self, agent: &str, x: &B::Example) {
        let told = self.state.told.entry(agent.to_string()).or_default();
        if told.insert(x.clone()) {
            let th = self
                .told_theory
                .entry(agent.to_string())
                .or_insert_with(|| self.backend.compile(&[]));
            self.backend.extend(th, x);
        }
    }

    /// `l^1 ∧ told ⊨ K_j x`, decided as `told(j) ⊨ x`.
    pub fn epistemic_entails_k(&self, agent: &str, x: &B::Example) -> bool {
        if self.state.told.get(agent).is_some_and(|t| t.contains(x)) {
            return true;
        }
        match self.told_theory.get(agent) {
            Some(th) => self.backend.entails(th, x),
            None => self.backend.entails(&self.backend.compile(&[]), x),
        }
    }

    fn told_is_complete(&self, agent: &str) -> bool {
        match self.told_theory.get(agent) {
            Some(th) => self.backend.entails_all(th, &self.state.target),
            None => self
                .backend
                .entails_all(&self.backend.compile(&[]), &self.state.target),
        }
    }
}

impl<B: LogicBackend> ExactOracle<B::Example> for Oracle<B> {
    fn mem(&mut self, x: &B::Example) -> Result<bool, LearningError> {
        let yes = self.backend.entails(&self.target_theory, x);
        self.record(QueryKind::Mem, None, vec![x.to_string()], answer(yes));
        Ok(yes)
    }

    fn eq(&mut self, h: &[B::Example]) -> Result<EqAnswer<B::Example>, LearningError> {
        let input: Vec<String> = h.iter().map(|x| x.to_string()).collect();
        let h_theory = self.backend.compile(h);
        let sound = h.iter().find(|x| !self.backend.entails(&self.target_theory, x));
        let complete = self.backend.entails_all(&h_theory, &self.state.target);
        if sound.is_none() && complete {
            self.record(QueryKind::Eq, None, input, YES.into());
            return Ok(EqAnswer::Yes);
        }
        let sound = sound.cloned();
        let found = (0..self.pool.len())
            .find(|&i| self.is_positive(i) != self.backend.entails(&h_theory, &self.pool[i]))
            .map(|i| self.pool[i].clone())
            .or(sound);
        match found {
            Some(x) => {
                self.record(QueryKind::Eq, None, input, x.to_string());
                Ok(EqAnswer::Counterexample(x))
            }
            None => Err(LearningError::PoolExhausted(format!(
                "no counterexample to the hypothesis in a pool of {}",
                self.pool.len()
            ))),
        }
    }

    fn annotate(&mut self, note: Option<&str>) {
        self.note = note.map(str::to_string);
    }
}

impl<B: LogicBackend> EpistemicOracle<B::Example> for Oracle<B> {
    fn kmem(&mut self, x: &B::Example, agent: &str) -> Result<bool, LearningError> {
        let yes = self.backend.entails(&self.target_theory, x);
        if yes {
            self.tell(agent, x);
        }
        self.record(QueryKind::Kmem, Some(agent), vec![x.to_string()], answer(yes));
        Ok(yes)
    }

    fn ex(&mut self, agent: &str) -> Result<ExAnswer<B::Example>, LearningError> {
        let n = self.pool.len();
        let mut known = self.known.remove(agent).unwrap_or_else(|| vec![false; n]);
        let mut found = None;
        for i in 0..n {
            if known[i] || !self.is_positive(i) {
                continue;
            }
            if self.epistemic_entails_k(agent, &self.pool[i]) {
                known[i] = true;
            } else {
                found = Some(i);
                break;
            }
        }
        self.known.insert(agent.to_string(), known);
        match found {
            Some(i) => {
                let x = self.pool[i].clone();
                self.tell(agent, &x);
                self.record(QueryKind::Ex, Some(agent), Vec::new(), x.to_string());
                Ok(ExAnswer::Example(x))
            }
            None if self.told_is_complete(agent) => {
                self.record(QueryKind::Ex, Some(agent), Vec::new(), FINISHED.into());
                Ok(ExAnswer::Finished)
            }
            None => Err(LearningError::PoolExhausted(format!(
                "told({agent}) is weaker than the target but no pool example is left"
            ))),
        }
    }

    fn annotate(&mut self, note: Option<&str>) {
        self.note = note.map(str::to_string);
    }
}

fn answer(yes: bool) -> String {
    if yes { YES } else { NO }.to_string()
}

/// Re-issues the queries of `t` against `oracle` and reports whether every
/// answer comes out the same.
pub fn replay<B: LogicBackend>(oracle: &mut Oracle<B>, t: &Transcript) -> Result<bool, LearningError> {
    for e in &t.entries {
        let parse = |s: &String| oracle.backend.parse_example(s);
        let got = match e.kind {
            QueryKind::Mem => answer(ExactOracle::mem(oracle, &parse(&e.input[0])?)?),
            QueryKind::Kmem => {
                let x = parse(&e.input[0])?;
                let agent = e.agent.clone().unwrap_or_default();
                answer(oracle.kmem(&x, &agent)?)
            }
            QueryKind::Eq => {
                let h = e.input.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
                match oracle.eq(&h)? {
                    EqAnswer::Yes => YES.to_string(),
                    EqAnswer::Counterexample(x) => x.to_string(),
                }
            }
            QueryKind::Ex => match oracle.ex(&e.agent.clone().unwrap_or_default())? {
                ExAnswer::Example(x) => x.to_string(),
                ExAnswer::Finished => FINISHED.to_string(),
            },
        };
        if got != e.answer {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learning::backend::{ElBackend, LogicBackend};
    use crate::syntax::{parse_axiom, ElAxiom};

    fn ax(t: &str) -> ElAxiom {
        parse_axiom(t).unwrap()
    }

    fn oracle(target: &[&str], pool: &[&str]) -> Oracle<ElBackend> {
        Oracle::new(
            ElBackend,
            target.iter().map(|t| ax(t)).collect(),
            pool.iter().map(|t| ax(t)).collect(),
            Strategy::SmallestFirst,
            0,
        )
    }

    #[test]
    fn kmem_updates_told_only_on_yes() {
        let mut o = oracle(&["A <= B"], &[]);
        assert!(!o.kmem(&ax("B <= A"), "1").unwrap());
        assert!(o.told("1").is_empty());
        assert!(o.kmem(&ax("A <= B"), "1").unwrap());
        assert!(o.kmem(&ax("A <= B"), "1").unwrap());
        assert_eq!(o.told("1"), vec![ax("A <= B")]);
        assert_eq!(o.state().k, 3);
    }

    #[test]
    fn ex_returns_fresh_examples_then_finishes() {
        let mut o = oracle(&["A <= B", "B <= C"], &["A <= C"]);
        let mut seen: Vec<ElAxiom> = Vec::new();
        while let ExAnswer::Example(x) = o.ex("1").unwrap() {
            assert!(!ElBackend.equivalent(&seen, &[seen.clone(), vec![x.clone()]].concat()));
            seen.push(x);
        }
        assert_eq!(seen.len(), 3);
    }

    #[test]
    fn ex_skips_what_told_entails() {
        let mut o = oracle(&["A <= B", "B <= C", "A <= C"], &[]);
        o.kmem(&ax("A <= B"), "1").unwrap();
        o.kmem(&ax("B <= C"), "1").unwrap();
        assert!(o.epistemic_entails_k("1", &ax("A <= C")));
        assert_eq!(o.ex("1").unwrap(), ExAnswer::Finished);
    }

    #[test]
    fn eq_counterexamples() {
        let mut o = oracle(&["A <= B", "B <= C"], &[]);
        assert_eq!(o.eq(&[ax("A <= B"), ax("B <= C")]).unwrap(), EqAnswer::Yes);
        assert_eq!(o.eq(&[ax("A <= B")]).unwrap(), EqAnswer::Counterexample(ax("B <= C")));
        let bad = ax("C <= A");
        assert_eq!(
            o.eq(&[ax("A <= B"), ax("B <= C"), bad.clone()]).unwrap(),
            EqAnswer::Counterexample(bad)
        );
    }

    #[test]
    fn exhausted_pool_is_an_error() {
        let mut o = oracle(&["A <= B"], &[]);
        o.state.target.push(ax("B <= A"));
        o.ex("1").unwrap();
        assert!(matches!(o.ex("1"), Err(LearningError::PoolExhausted(_))));
    }

    #[test]
    fn transcript_replays() {
        let mut o = oracle(&["A <= B", "B <= C"], &["A <= C"]);
        o.kmem(&ax("A <= C"), "1").unwrap();
        o.eq(&[]).unwrap();
        while o.ex("1").unwrap() != ExAnswer::Finished {}
        let t = o.transcript().clone();
        let mut fresh = oracle(&["A <= B", "B <= C"], &["A <= C"]);
        assert!(replay(&mut fresh, &t).unwrap());
    }
}
