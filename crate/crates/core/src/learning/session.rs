use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::syntax::{parse_ontology, HasSignature, Signature};

use super::adapters::{epistemic_to_exact, exact_to_epistemic, AdapterStep};
use super::backend::{el_pool, prop_pool, ElBackend, LogicBackend, PropBackend};
use super::learner::{
    ex_learn, exact_learn, learn_terminology, phase_one_candidates, Budgeted, LearnerBudget,
};
use super::oracle::{Oracle, QueryKind, QueryRecord, Strategy, FINISHED, YES};
use super::prop::parse_prop_theory;
use super::LearningError;

pub const SESSION_AGENT: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    El,
    Prop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LearnerKind {
    /// Terminology learner from K-membership and example queries.
    Alg3,
    /// Exact learner talking to the oracle directly.
    Exact,
    /// Exact learner behind the exact-to-epistemic adapter.
    ExactWrapped,
    /// Epistemic learner behind the epistemic-to-exact adapter.
    EpistemicWrapped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    pub backend: BackendKind,
    pub target_file: PathBuf,
    pub learner: LearnerKind,
    #[serde(default)]
    pub oracle_strategy: Strategy,
    #[serde(default = "default_pool_bound")]
    pub pool_bound: usize,
    #[serde(default)]
    pub budget: Option<usize>,
    #[serde(default)]
    pub seed: u64,
}

fn default_pool_bound() -> usize {
    2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SessionReport {
    pub backend: BackendKind,
    pub learner: LearnerKind,
    pub oracle_strategy: Strategy,
    pub seed: u64,
    pub pool_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<LearnerBudget>,
    pub hypothesis: Vec<String>,
    /// Target entails the hypothesis and the hypothesis entails the target.
    pub equivalent: bool,
    /// Every hypothesis axiom, in the order added, follows from the target.
    pub sound: bool,
    /// The last oracle answer was "you finished" or an equivalence yes.
    pub finished: bool,
    pub counts: BTreeMap<String, usize>,
    pub adapter: Vec<AdapterStep>,
    pub transcript: Vec<QueryRecord>,
}

/// Runs one learning session on a target given as text.
pub fn run_session(cfg: &SessionConfig, target_text: &str) -> Result<SessionReport, LearningError> {
    let limit = cfg.budget.unwrap_or(usize::MAX);
    match cfg.backend {
        BackendKind::El => {
            let target =
                parse_ontology(target_text).map_err(|e| LearningError::Input(e.to_string()))?;
            let mut sig = Signature::new();
            for ax in &target {
                sig.merge(&ax.signature());
            }
            let pool = el_pool(&sig, cfg.pool_bound);
            let seeds = phase_one_candidates(&sig);
            let budget = LearnerBudget::for_target(&target, cfg.budget);
            let mut report = drive(ElBackend, target, pool, cfg, |oracle| {
                let mut b = Budgeted::new(oracle, limit);
                match cfg.learner {
                    LearnerKind::Alg3 => Ok((learn_terminology(&mut b, SESSION_AGENT, &sig)?, Vec::new())),
                    LearnerKind::Exact => Ok((exact_learn(&ElBackend, &mut b, &seeds)?, Vec::new())),
                    LearnerKind::ExactWrapped => exact_to_epistemic(
                        |x| exact_learn(&ElBackend, x, &seeds),
                        &mut b,
                        SESSION_AGENT,
                    ),
                    LearnerKind::EpistemicWrapped => epistemic_to_exact(
                        |x| learn_terminology(x, SESSION_AGENT, &sig),
                        &mut b,
                    ),
                }
            })?;
            report.budget = Some(budget);
            Ok(report)
        }
        BackendKind::Prop => {
            let target = parse_prop_theory(target_text)?;
            if cfg.learner == LearnerKind::Alg3 {
                return Err(LearningError::Input(
                    "the alg3 learner needs the el backend".into(),
                ));
            }
            let backend = PropBackend::covering(&target)?;
            let mut vars = std::collections::BTreeSet::new();
            for f in &target {
                f.vars(&mut vars);
            }
            let pool = prop_pool(&vars, cfg.pool_bound);
            drive(backend, target, pool, cfg, |oracle| {
                let mut b = Budgeted::new(oracle, limit);
                let backend = PropBackend::new(vars.clone())?;
                match cfg.learner {
                    LearnerKind::Alg3 => unreachable!(),
                    LearnerKind::Exact => Ok((exact_learn(&backend, &mut b, &[])?, Vec::new())),
                    LearnerKind::ExactWrapped => exact_to_epistemic(
                        |x| exact_learn(&backend, x, &[]),
                        &mut b,
                        SESSION_AGENT,
                    ),
                    LearnerKind::EpistemicWrapped => {
                        epistemic_to_exact(|x| ex_learn(x, SESSION_AGENT), &mut b)
                    }
                }
            })
        }
    }
}

type Learned<E> = (Vec<E>, Vec<AdapterStep>);

fn drive<B: LogicBackend>(
    backend: B,
    target: Vec<B::Example>,
    pool: Vec<B::Example>,
    cfg: &SessionConfig,
    learn: impl FnOnce(&mut Oracle<B>) -> Result<Learned<B::Example>, LearningError>,
) -> Result<SessionReport, LearningError> {
    let mut oracle = Oracle::new(backend, target.clone(), pool, cfg.oracle_strategy, cfg.seed);
    let (h, adapter) = learn(&mut oracle)?;
    let b = oracle.backend();
    let target_theory = b.compile(&target);
    let equivalent = b.equivalent(&h, &target);
    let sound = h.iter().all(|x| b.entails(&target_theory, x));
    let pool_size = oracle.pool().len();
    let mut transcript = oracle.into_transcript();
    transcript.hypothesis = h.iter().map(|x| x.to_string()).collect();
    let finished = transcript.entries.last().is_some_and(|e| {
        (e.kind == QueryKind::Ex && e.answer == FINISHED) || (e.kind == QueryKind::Eq && e.answer == YES)
    });
    Ok(SessionReport {
        backend: cfg.backend,
        learner: cfg.learner,
        oracle_strategy: cfg.oracle_strategy,
        seed: cfg.seed,
        pool_size,
        budget: None,
        hypothesis: transcript.hypothesis,
        equivalent,
        sound,
        finished,
        counts: transcript.counts,
        adapter,
        transcript: transcript.entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(learner: LearnerKind, backend: BackendKind) -> SessionConfig {
        SessionConfig {
            backend,
            target_file: "target.txt".into(),
            learner,
            oracle_strategy: Strategy::SmallestFirst,
            pool_bound: 2,
            budget: None,
            seed: 1,
        }
    }

    const TBOX: &str = "A <= B\nB <= some r . C\nC & D <= A\n";

    #[test]
    fn every_el_learner_reaches_the_target() {
        for l in [
            LearnerKind::Alg3,
            LearnerKind::Exact,
            LearnerKind::ExactWrapped,
            LearnerKind::EpistemicWrapped,
        ] {
            let r = run_session(&cfg(l, BackendKind::El), TBOX).unwrap();
            assert!(r.equivalent && r.sound && r.finished, "{l:?}");
        }
    }

    #[test]
    fn prop_sessions() {
        let t = "p -> q\nq & r -> s\n";
        for l in [LearnerKind::Exact, LearnerKind::ExactWrapped, LearnerKind::EpistemicWrapped] {
            let r = run_session(&cfg(l, BackendKind::Prop), t).unwrap();
            assert!(r.equivalent && r.finished, "{l:?}");
        }
        assert!(run_session(&cfg(LearnerKind::Alg3, BackendKind::Prop), t).is_err());
    }

    #[test]
    fn zero_budget() {
        let mut c = cfg(LearnerKind::Alg3, BackendKind::El);
        c.budget = Some(0);
        assert_eq!(run_session(&c, TBOX), Err(LearningError::BudgetExceeded(0)));
    }

    #[test]
    fn config_json() {
        let c: SessionConfig = serde_json::from_str(
            r#"{"backend":"el","target_file":"t.txt","learner":"exact-wrapped",
                "oracle_strategy":"adversarial","pool_bound":3,"budget":100,"seed":4}"#,
        )
        .unwrap();
        assert_eq!(c.learner, LearnerKind::ExactWrapped);
        assert_eq!(c.oracle_strategy, Strategy::Adversarial);
        assert!(serde_json::from_str::<SessionConfig>(r#"{"backend":"el"}"#).is_err());
    }
}
