use std::collections::HashMap;

use crate::el::{el_formula_sat, search_assignments, PropFormula};
use crate::syntax::{AgentWord, ElFormula, ElkFormula, HasSignature};

use super::witness::{build, pool, verify, Requirements};
use super::{flatten_word, ElkError, SatVerdict};

struct Abstraction {
    atoms: Vec<(AgentWord, ElFormula)>,
    skeleton: PropFormula,
}

fn abstract_atoms(phi: &ElkFormula) -> Abstraction {
    fn go(f: &ElkFormula, atoms: &mut Vec<(AgentWord, ElFormula)>) -> PropFormula {
        match f {
            ElkFormula::Ax { prefix, body } => {
                let key = (flatten_word(prefix), body.clone());
                let v = match atoms.iter().position(|a| *a == key) {
                    Some(v) => v,
                    None => {
                        atoms.push(key);
                        atoms.len() - 1
                    }
                };
                PropFormula::Var(v)
            }
            ElkFormula::Not(inner) => PropFormula::Not(Box::new(go(inner, atoms))),
            ElkFormula::And(l, r) => {
                let l = go(l, atoms);
                PropFormula::And(Box::new(l), Box::new(go(r, atoms)))
            }
        }
    }
    let mut atoms = Vec::new();
    let skeleton = go(phi, &mut atoms);
    Abstraction { atoms, skeleton }
}

fn requirements(atoms: &[(AgentWord, ElFormula)], value: &[Option<bool>]) -> Requirements {
    let mut req = Requirements {
        point: Vec::new(),
        positives: Vec::new(),
        negatives: Vec::new(),
    };
    for ((sigma, body), v) in atoms.iter().zip(value) {
        match (v, sigma.is_empty()) {
            (None, _) => {}
            (Some(true), true) => req.point.push(body.clone()),
            (Some(false), true) => req.point.push(ElFormula::not(body.clone())),
            (Some(true), false) => req.positives.push((sigma.clone(), body.clone())),
            (Some(false), false) => req.negatives.push((sigma.clone(), body.clone())),
        }
    }
    req
}

struct Checker {
    cache: HashMap<Vec<ElFormula>, bool>,
}

impl Checker {
    fn sat(&mut self, mut parts: Vec<ElFormula>) -> bool {
        parts.sort();
        parts.dedup();
        if let Some(&b) = self.cache.get(&parts) {
            return b;
        }
        let b = match ElFormula::and_all(parts.clone()) {
            Some(f) => el_formula_sat(&f),
            None => true,
        };
        self.cache.insert(parts, b);
        b
    }

    /// Both conditions for the literals fixed so far. Adding positives or
    /// negatives only makes them harder to meet, so a failure is final.
    fn passes(&mut self, req: &Requirements) -> bool {
        let all: Vec<ElFormula> = req
            .point
            .iter()
            .cloned()
            .chain(req.positives.iter().map(|(_, b)| b.clone()))
            .collect();
        if !self.sat(all) {
            return false;
        }
        req.negatives.iter().all(|(sigma, omega)| {
            let mut parts: Vec<ElFormula> = pool(&req.positives, sigma).into_iter().cloned().collect();
            parts.push(ElFormula::not(omega.clone()));
            self.sat(parts)
        })
    }
}

fn decide(phi: &ElkFormula) -> (Abstraction, Option<Vec<bool>>) {
    let abs = abstract_atoms(phi);
    let mut checker = Checker {
        cache: HashMap::new(),
    };
    let found = search_assignments(&abs.skeleton, abs.atoms.len(), &mut |partial| {
        !checker.passes(&requirements(&abs.atoms, partial))
    });
    (abs, found)
}

/// Satisfiability of an arbitrary ELK formula: search over truth values of
/// its distinct (flattened) K-atoms, accepting an assignment when the
/// induced conjunction of atoms and negated atoms meets both conditions of
/// the conjunctive procedure, with EL formula bodies.
pub fn elk_sat(phi: &ElkFormula) -> SatVerdict {
    match decide(phi).1 {
        Some(_) => SatVerdict::sat(),
        None => SatVerdict::unsat(None),
    }
}

/// [`elk_sat`] plus a checked witness when satisfiable.
pub fn elk_sat_witnessed(phi: &ElkFormula) -> Result<SatVerdict, ElkError> {
    let (abs, found) = decide(phi);
    let Some(assignment) = found else {
        return Ok(SatVerdict::unsat(None));
    };
    let value: Vec<Option<bool>> = assignment.into_iter().map(Some).collect();
    let model = build(&requirements(&abs.atoms, &value), &phi.signature())?;
    verify(&model, phi)?;
    let mut v = SatVerdict::sat();
    v.witness = Some(model);
    Ok(v)
}
