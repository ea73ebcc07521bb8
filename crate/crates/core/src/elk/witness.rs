use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::el::{el_formula_model, witness_el_model_over};
use crate::semantics::{
    check_elk, equivalence_closure, ElInterpretation, ElkInterpretation, PointedElk,
};
use crate::syntax::{
    AgentWord, Concept, ElAxiom, ElFormula, ElkFormula, KLiteralBlock, Signature,
};

use super::{conjunctive_sat_witnessed, is_subword, ElkError, FlatConjunctiveElk};

/// What the model has to satisfy: EL formulas at the point, and `K_σ ω` /
/// `¬K_σ ω` pairs with flattened, non-empty `σ`.
pub(crate) struct Requirements {
    pub point: Vec<ElFormula>,
    pub positives: Vec<(AgentWord, ElFormula)>,
    pub negatives: Vec<(AgentWord, ElFormula)>,
}

/// Bodies of positive conjuncts whose word contains `sigma` as a subword.
pub(crate) fn pool<'a>(positives: &'a [(AgentWord, ElFormula)], sigma: &AgentWord) -> Vec<&'a ElFormula> {
    positives
        .iter()
        .filter(|(s, _)| is_subword(sigma, s))
        .map(|(_, b)| b)
        .collect()
}

fn conj(parts: Vec<ElFormula>) -> ElFormula {
    ElFormula::and_all(parts)
        .unwrap_or_else(|| ElFormula::Lit(ElAxiom::inclusion(Concept::Top, Concept::Top)))
}

struct WorldBuilder<'a> {
    sig: &'a Signature,
    cache: HashMap<ElFormula, ElInterpretation>,
}

impl WorldBuilder<'_> {
    fn world(&mut self, alpha: ElFormula) -> Result<ElInterpretation, ElkError> {
        if let Some(i) = self.cache.get(&alpha) {
            return Ok(i.clone());
        }
        let m = el_formula_model(&alpha).ok_or(ElkError::NotSatisfiable)?;
        let i = witness_el_model_over(&alpha, &m, self.sig)?;
        self.cache.insert(alpha, i.clone());
        Ok(i)
    }
}

/// World `J0` satisfies the point requirements and every positive body. For
/// a negative `¬K_σ ω` with `σ = a1…ak`, a chain `J1 … Jk` is attached to
/// `J0`, with `(J(i-1), Ji)` in the relation of `ai`; `Ji` satisfies the
/// bodies pooled for `a1…ai`, and `Jk` also satisfies `¬ω`. Relations are
/// then closed under equivalence.
pub(crate) fn build(req: &Requirements, sig: &Signature) -> Result<PointedElk, ElkError> {
    let mut builder = WorldBuilder {
        sig,
        cache: HashMap::new(),
    };
    let root_parts: Vec<ElFormula> = req
        .point
        .iter()
        .cloned()
        .chain(req.positives.iter().map(|(_, b)| b.clone()))
        .collect();
    let mut worlds = vec![builder.world(conj(root_parts))?];
    let mut edges: BTreeMap<String, BTreeSet<(usize, usize)>> =
        sig.agents.iter().map(|a| (a.clone(), BTreeSet::new())).collect();
    for (sigma, omega) in &req.negatives {
        let mut prev = 0;
        for i in 1..=sigma.len() {
            let mut parts: Vec<ElFormula> = pool(&req.positives, &sigma.prefix(i))
                .into_iter()
                .cloned()
                .collect();
            if i == sigma.len() {
                parts.push(ElFormula::not(omega.clone()));
            }
            worlds.push(builder.world(conj(parts))?);
            let cur = worlds.len() - 1;
            edges
                .entry(sigma.agents()[i - 1].clone())
                .or_default()
                .insert((prev, cur));
            prev = cur;
        }
    }
    let n = worlds.len();
    let relations = edges
        .into_iter()
        .map(|(a, e)| (a, equivalence_closure(&e, n)))
        .collect();
    Ok(PointedElk::new(ElkInterpretation { worlds, relations }, 0))
}

pub(crate) fn verify(model: &PointedElk, phi: &ElkFormula) -> Result<(), ElkError> {
    match check_elk(model, phi) {
        Ok(true) => Ok(()),
        Ok(false) => Err(ElkError::WitnessCheckFailed(phi.to_string())),
        Err(e) => Err(ElkError::WitnessCheckFailed(e.to_string())),
    }
}

pub(crate) fn requirements_of(flat: &FlatConjunctiveElk) -> Result<Requirements, ElkError> {
    let phi = flat.get();
    let block = |b: &KLiteralBlock| (b.sigma.clone(), ElFormula::from_literals(&b.body));
    let mut point: Vec<ElFormula> = phi.omega0.iter().map(|l| l.to_formula()).collect();
    let mut positives = Vec::new();
    for b in &phi.positives {
        if b.sigma.is_empty() {
            point.extend(b.body.iter().map(|l| l.to_formula()));
        } else if !positives.contains(&block(b)) {
            positives.push(block(b));
        }
    }
    let mut negatives = Vec::new();
    for b in &phi.negatives {
        if b.sigma.is_empty() {
            match b.body.as_slice() {
                [l] => point.push(l.negated().to_formula()),
                _ => {
                    return Err(ElkError::Fragment(format!(
                        "negated conjunction without a K-prefix: {}",
                        ElFormula::from_literals(&b.body)
                    )))
                }
            }
        } else if !negatives.contains(&block(b)) {
            negatives.push(block(b));
        }
    }
    Ok(Requirements {
        point,
        positives,
        negatives,
    })
}

/// Pointed model of a satisfiable flattened conjunctive formula, checked
/// against the formula before it is returned.
pub fn witness_model(phi: &FlatConjunctiveElk) -> Result<PointedElk, ElkError> {
    conjunctive_sat_witnessed(phi.get(), None)?
        .witness
        .ok_or(ElkError::NotSatisfiable)
}
