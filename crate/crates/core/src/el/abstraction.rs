use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{ElAxiom, ElFormula, ElLiteral};

use super::reasoning::literals_sat;

/// Propositional formula over variables `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PropFormula {
    Var(usize),
    Not(Box<PropFormula>),
    And(Box<PropFormula>, Box<PropFormula>),
}

impl PropFormula {
    pub fn eval(&self, value: &impl Fn(usize) -> bool) -> bool {
        match self {
            PropFormula::Var(v) => value(*v),
            PropFormula::Not(f) => !f.eval(value),
            PropFormula::And(l, r) => l.eval(value) && r.eval(value),
        }
    }

    /// Three-valued evaluation under a partial assignment.
    pub fn eval_partial(&self, value: &[Option<bool>]) -> Option<bool> {
        match self {
            PropFormula::Var(v) => value[*v],
            PropFormula::Not(f) => f.eval_partial(value).map(|b| !b),
            PropFormula::And(l, r) => match (l.eval_partial(value), r.eval_partial(value)) {
                (Some(false), _) | (_, Some(false)) => Some(false),
                (Some(true), Some(true)) => Some(true),
                _ => None,
            },
        }
    }
}

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropFormula::Var(v) => write!(f, "p{v}"),
            PropFormula::Not(inner) => match inner.as_ref() {
                PropFormula::And(..) => write!(f, "!({inner})"),
                _ => write!(f, "!{inner}"),
            },
            PropFormula::And(l, r) => write!(f, "{l} & {r}"),
        }
    }
}

/// Variable `i` stands for `axioms[i]`; variables are numbered in order of
/// first occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropAbstraction {
    pub axioms: Vec<ElAxiom>,
    pub skeleton: PropFormula,
}

impl PropAbstraction {
    pub fn variable_of(&self, ax: &ElAxiom) -> Option<usize> {
        self.axioms.iter().position(|a| a == ax)
    }

    pub fn num_vars(&self) -> usize {
        self.axioms.len()
    }

    /// `Φ_M`: axioms of `M` positively, all others negated.
    pub fn literals(&self, m: &BTreeSet<usize>) -> Vec<ElLiteral> {
        self.axioms
            .iter()
            .enumerate()
            .map(|(i, a)| ElLiteral::new(a.clone(), m.contains(&i)))
            .collect()
    }
}

pub fn prop_abstraction(alpha: &ElFormula) -> PropAbstraction {
    fn go(f: &ElFormula, axioms: &mut Vec<ElAxiom>) -> PropFormula {
        match f {
            ElFormula::Lit(a) => {
                let v = match axioms.iter().position(|x| x == a) {
                    Some(v) => v,
                    None => {
                        axioms.push(a.clone());
                        axioms.len() - 1
                    }
                };
                PropFormula::Var(v)
            }
            ElFormula::Not(inner) => PropFormula::Not(Box::new(go(inner, axioms))),
            ElFormula::And(l, r) => {
                let l = go(l, axioms);
                PropFormula::And(Box::new(l), Box::new(go(r, axioms)))
            }
        }
    }
    let mut axioms = Vec::new();
    let skeleton = go(alpha, &mut axioms);
    PropAbstraction { axioms, skeleton }
}

/// Whether `Φ_M` is satisfiable.
pub fn m_consistent(m: &BTreeSet<usize>, alpha: &ElFormula) -> bool {
    literals_sat(&prop_abstraction(alpha).literals(m))
}

/// Backtracking over `n` variables, true branch first. `prune` sees the
/// partial assignment after each decision and may reject it.
pub fn search_assignments(
    skeleton: &PropFormula,
    n: usize,
    prune: &mut impl FnMut(&[Option<bool>]) -> bool,
) -> Option<Vec<bool>> {
    fn go(
        skeleton: &PropFormula,
        cur: &mut Vec<Option<bool>>,
        i: usize,
        prune: &mut impl FnMut(&[Option<bool>]) -> bool,
    ) -> bool {
        if skeleton.eval_partial(cur) == Some(false) {
            return false;
        }
        if i == cur.len() {
            return skeleton.eval_partial(cur) == Some(true);
        }
        for b in [true, false] {
            cur[i] = Some(b);
            if !prune(cur) && go(skeleton, cur, i + 1, prune) {
                return true;
            }
        }
        cur[i] = None;
        false
    }
    let mut cur = vec![None; n];
    go(skeleton, &mut cur, 0, prune).then(|| cur.into_iter().map(|b| b.unwrap()).collect())
}

/// A propositional model `M` of the abstraction with `Φ_M` satisfiable.
pub fn el_formula_model(alpha: &ElFormula) -> Option<BTreeSet<usize>> {
    let abs = prop_abstraction(alpha);
    let found = search_assignments(&abs.skeleton, abs.num_vars(), &mut |partial| {
        let lits: Vec<ElLiteral> = partial
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.map(|b| ElLiteral::new(abs.axioms[i].clone(), b)))
            .collect();
        !literals_sat(&lits)
    })?;
    Some(found.iter().enumerate().filter_map(|(i, b)| b.then_some(i)).collect())
}

pub fn el_formula_sat(alpha: &ElFormula) -> bool {
    el_formula_model(alpha).is_some()
}
