mod common;

use proptest::prelude::*;

use common::{atom_depth, negative_depth, strategies, Gen};
use elkat::el::literals_sat;
use elkat::elk::{
    conjunctive_sat, conjunctive_sat_witnessed, elk_sat, elk_sat_witnessed, flatten, witness_model,
    ElkError,
};
use elkat::semantics::{check_elk, BruteForceOracle, BruteVerdict};
use elkat::syntax::{parse_axiom, parse_formula, AgentWord, ConjunctiveElk, ElkFormula, KLiteralBlock};

fn sat(c: &ConjunctiveElk) -> bool {
    conjunctive_sat(c).unwrap().satisfiable
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn flattening_preserves_sat(c in strategies::conjunctive()) {
        prop_assert_eq!(sat(&c), sat(flatten(&c).get()));
    }

    #[test]
    fn flattening_is_idempotent(c in strategies::conjunctive()) {
        let once = flatten(&c).into_inner();
        prop_assert_eq!(flatten(&once).into_inner(), once);
    }

    #[test]
    fn sat_verdicts_come_with_models(c in strategies::conjunctive()) {
        let v = conjunctive_sat_witnessed(&c, None).unwrap();
        if v.satisfiable {
            let phi = c.render().unwrap();
            prop_assert!(check_elk(v.witness.as_ref().unwrap(), &phi).unwrap());
            let raw = witness_model(&flatten(&c)).unwrap();
            prop_assert!(check_elk(&raw, &phi).unwrap());
        } else {
            prop_assert!(v.witness.is_none());
        }
    }

    #[test]
    fn unsat_diagnostics_are_genuine(c in strategies::conjunctive()) {
        let v = conjunctive_sat(&c).unwrap();
        if v.satisfiable {
            prop_assert!(v.failing_check.is_none());
            return Ok(());
        }
        let check = v.failing_check.expect("unsat verdicts explain themselves");
        match check.condition {
            1 => prop_assert!(!literals_sat(&check.body)),
            2 => {
                prop_assert!(check.sigma.is_some());
                for beta in &check.body {
                    let mut lits = check.psi.clone();
                    lits.push(beta.negated());
                    prop_assert!(!literals_sat(&lits), "{} is consistent with psi", beta.negated());
                }
            }
            other => prop_assert!(false, "unknown condition {}", other),
        }
    }

    #[test]
    fn full_procedure_agrees_on_conjunctive_inputs(c in strategies::conjunctive()) {
        let phi = c.render().unwrap();
        prop_assert_eq!(elk_sat(&phi).satisfiable, sat(&c));
    }

    #[test]
    fn positive_conjuncts_never_help(c in strategies::conjunctive(), w in strategies::word(1), l in strategies::literal()) {
        let mut more = c.clone();
        more.positives.push(KLiteralBlock::new(w, vec![l]));
        if !sat(&c) {
            prop_assert!(!sat(&more));
        }
    }

    #[test]
    fn dropping_negative_conjuncts_never_hurts(c in strategies::conjunctive()) {
        let mut fewer = c.clone();
        fewer.negatives.clear();
        if sat(&c) {
            prop_assert!(sat(&fewer));
        }
    }

    #[test]
    fn general_sat_verdicts_come_with_models(seed in any::<u64>()) {
        let phi = Gen::corpus(seed).general_elk(4, 2);
        let v = elk_sat_witnessed(&phi).unwrap();
        prop_assert_eq!(v.satisfiable, elk_sat(&phi).satisfiable);
        if let Some(m) = &v.witness {
            prop_assert!(check_elk(m, &phi).unwrap());
        }
    }

    #[test]
    fn negation_splits_the_space(seed in any::<u64>()) {
        let phi = Gen::corpus(seed).general_elk(3, 2);
        prop_assert!(elk_sat(&phi).satisfiable || elk_sat(&ElkFormula::not(phi)).satisfiable);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn conjunctive_agrees_with_brute_force(seed in any::<u64>()) {
        let c = Gen::corpus(seed).conjunctive(3, 3);
        let phi = c.render().unwrap();
        let verdict = BruteForceOracle::new(3).elk_sat(&phi, 1 + negative_depth(&c));
        match verdict {
            BruteVerdict::Sat(_) => prop_assert!(sat(&c)),
            BruteVerdict::NoModelWithinBounds => prop_assert!(!sat(&c), "oracle inconclusive on {}", phi),
        }
    }

    #[test]
    fn general_agrees_with_brute_force(seed in any::<u64>()) {
        let phi = Gen::corpus(seed).general_elk(3, 2);
        prop_assume!(atom_depth(&phi) <= 4);
        let verdict = BruteForceOracle::new(3).elk_sat(&phi, 1 + atom_depth(&phi));
        prop_assert_eq!(verdict.is_sat(), elk_sat(&phi).satisfiable, "{}", phi);
    }
}

#[test]
fn unprefixed_negated_conjunction_is_outside_the_fragment() {
    let c = ConjunctiveElk {
        omega0: Vec::new(),
        positives: Vec::new(),
        negatives: vec![KLiteralBlock::new(
            AgentWord::empty(),
            vec![
                parse_axiom("A <= B").unwrap().positive(),
                parse_axiom("B <= A").unwrap().positive(),
            ],
        )],
    };
    assert!(matches!(conjunctive_sat(&c), Err(ElkError::Fragment(_))));
}

#[test]
fn nested_knowledge_implies_outer_knowledge() {
    let f = |t: &str| elk_sat(&parse_formula(t).unwrap()).satisfiable;
    assert!(!f("K[1] K[2] (A <= B) && !K[1] (A <= B)"));
    assert!(!f("K[1] K[2] (A <= B) && !K[2] (A <= B)"));
    assert!(!f("K[1] (A <= B) && !K[1] K[1] (A <= B)"));
    assert!(f("K[1] (A <= B) && !K[2] (A <= B)"));
    assert!(f("K[1] (A <= B) && !K[1] K[2] (A <= B)"));
}
