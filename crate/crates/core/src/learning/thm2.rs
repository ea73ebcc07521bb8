use serde::Serialize;

use super::backend::{LogicBackend, PropBackend};
use super::learner::ex_learn;
use super::oracle::{EqAnswer, ExactOracle, Oracle, QueryKind, Strategy};
use super::prop::PropExpr;
use super::LearningError;

pub const AGENT: &str = "1";

/// `p -> q`, the only formula of the class.
pub fn strong_target() -> PropExpr {
    PropExpr::implies(PropExpr::var("p"), PropExpr::var("q"))
}

/// Variable `p^bit_j`.
pub fn bit_var(bit: u8, j: usize) -> String {
    format!("p{bit}_{j}")
}

/// `p & p^{b1}_1 & … & p^{bn}_n -> q` for the bits of `pattern`.
pub fn weak_example(n: usize, pattern: usize) -> PropExpr {
    let body = std::iter::once(PropExpr::var("p")).chain(
        (1..=n).map(|j| PropExpr::var(bit_var(((pattern >> (j - 1)) & 1) as u8, j))),
    );
    PropExpr::implies(PropExpr::and_all(body).unwrap(), PropExpr::var("q"))
}

/// Backend, target and pool for parameter `n`: the pool holds all `2^n`
/// weak examples.
pub fn framework(n: usize) -> Result<(PropBackend, Vec<PropExpr>, Vec<PropExpr>), LearningError> {
    if !(1..=10).contains(&n) {
        return Err(LearningError::Input(format!("n must be between 1 and 10, got {n}")));
    }
    let pool: Vec<PropExpr> = (0..1usize << n).map(|b| weak_example(n, b)).collect();
    let target = vec![strong_target()];
    let backend = PropBackend::covering(pool.iter().chain(&target))?;
    Ok((backend, target, pool))
}

/// Oracle that hands out weak examples, each with a fresh bit pattern,
/// before it hands out `p -> q`.
pub fn adversarial_prop_oracle(n: usize, seed: u64) -> Result<Oracle<PropBackend>, LearningError> {
    let (backend, target, pool) = framework(n)?;
    Ok(Oracle::new(backend, target, pool, Strategy::Adversarial, seed))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thm2Counts {
    pub n: usize,
    pub ex_queries: usize,
    pub eq_queries: usize,
}

/// Example-query-only learning against the adversarial oracle, and the
/// equivalence route proposing the single formula of the class.
pub fn run_thm2(n: usize, seed: u64) -> Result<Thm2Counts, LearningError> {
    let mut ex_oracle = adversarial_prop_oracle(n, seed)?;
    let h = ex_learn(&mut ex_oracle, AGENT)?;
    if !ex_oracle.backend().equivalent(&h, &[strong_target()]) {
        return Err(LearningError::Protocol("example-only run ended inequivalent".into()));
    }
    let mut eq_oracle = adversarial_prop_oracle(n, seed)?;
    if eq_oracle.eq(&[strong_target()])? != EqAnswer::Yes {
        return Err(LearningError::Protocol("target hypothesis rejected".into()));
    }
    Ok(Thm2Counts {
        n,
        ex_queries: ex_oracle.transcript().count(QueryKind::Ex),
        eq_queries: eq_oracle.transcript().count(QueryKind::Eq),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learning::oracle::{EpistemicOracle, ExAnswer};

    #[test]
    fn weak_examples_come_first() {
        let mut o = adversarial_prop_oracle(2, 7).unwrap();
        let mut seen = Vec::new();
        for _ in 0..4 {
            match o.ex(AGENT).unwrap() {
                ExAnswer::Example(x) => {
                    assert_ne!(x, strong_target());
                    assert!(!seen.contains(&x));
                    seen.push(x);
                }
                ExAnswer::Finished => panic!("finished early"),
            }
        }
        assert_eq!(o.ex(AGENT).unwrap(), ExAnswer::Example(strong_target()));
        assert_eq!(o.ex(AGENT).unwrap(), ExAnswer::Finished);
    }

    #[test]
    fn weak_examples_do_not_entail_target() {
        let (backend, target, pool) = framework(3).unwrap();
        let th = backend.compile(&pool);
        assert!(!backend.entails(&th, &target[0]));
        let single = backend.compile(&[target[0].clone()]);
        assert!(backend.entails_all(&single, &pool));
    }

    #[test]
    fn counts() {
        for n in 1..=4 {
            let c = run_thm2(n, 0).unwrap();
            assert_eq!(c.ex_queries, (1 << n) + 2);
            assert_eq!(c.eq_queries, 1);
        }
    }
}
