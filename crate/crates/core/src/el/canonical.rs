use std::collections::{BTreeMap, BTreeSet};

use crate::semantics::{check_el, ElInterpretation};
use crate::syntax::{Concept, ElAxiom, ElFormula, HasSignature, Signature, RESERVED_PREFIX};

use super::abstraction::prop_abstraction;
use super::normalize::normalize_el;
use super::reasoning::{literals_sat, ElReasoner};
use super::ElError;

const ROOT_CONCEPT: &str = "__Root";
const ROOT_INDIVIDUAL: &str = "__root";

fn element_of_concept(name: Option<&str>) -> String {
    format!("c:{}", name.unwrap_or("Top"))
}

/// Canonical model of `ontology`: its individuals plus one element `c:A`
/// per concept name `A` and `c:Top`, with every membership decided by
/// entailment.
pub fn canonical_model(ontology: &[ElAxiom]) -> ElInterpretation {
    canonical_model_over(ontology, &Signature::default())
}

/// [`canonical_model`] with the individuals and concept names of `extra`
/// added to the signature.
pub fn canonical_model_over(ontology: &[ElAxiom], extra: &Signature) -> ElInterpretation {
    let (normal, _) = normalize_el(ontology);
    let reasoner = ElReasoner::from_axioms(&normal);
    let mut given = Signature::new();
    for ax in ontology {
        given.merge(&ax.signature());
    }
    given.merge(extra);
    let mut sig = normal.signature();
    sig.merge(extra);

    let mut out = ElInterpretation::default();
    let mut ind_el = BTreeMap::new();
    for a in &sig.individuals {
        ind_el.insert(a.clone(), out.add_element(a.clone()));
    }
    let names: Vec<Option<&str>> = std::iter::once(None)
        .chain(sig.concepts.iter().map(|c| Some(c.as_str())))
        .collect();
    let concept_of = |n: Option<&str>| n.map_or(Concept::Top, Concept::name);
    let mut c_el = Vec::new();
    for &n in &names {
        c_el.push(out.add_element(element_of_concept(n)));
    }

    for a in &sig.concepts {
        let mut ext = BTreeSet::new();
        for (ind, &d) in &ind_el {
            if reasoner.entails(&ElAxiom::concept_assertion(a, ind)) {
                ext.insert(d);
            }
        }
        for (k, &b) in names.iter().enumerate() {
            if reasoner.entails(&ElAxiom::inclusion(concept_of(b), Concept::name(a))) {
                ext.insert(c_el[k]);
            }
        }
        out.concepts.insert(a.clone(), ext);
    }
    for r in &sig.roles {
        let mut ext = BTreeSet::new();
        for ax in &normal {
            if let ElAxiom::RoleAssertion { role, subject, object } = ax {
                if role == r {
                    ext.insert((ind_el[subject], ind_el[object]));
                }
            }
        }
        for (k, &b) in names.iter().enumerate() {
            let filler = Concept::exists(r, concept_of(b));
            for (ind, &d) in &ind_el {
                if reasoner.entails_instance(&filler, ind) {
                    ext.insert((d, c_el[k]));
                }
            }
            for (j, &a) in names.iter().enumerate() {
                if reasoner.entails(&ElAxiom::inclusion(concept_of(a), filler.clone())) {
                    ext.insert((c_el[j], c_el[k]));
                }
            }
        }
        out.roles.insert(r.clone(), ext);
    }
    out.individuals = ind_el;
    out.concepts
        .retain(|c, _| !c.starts_with(RESERVED_PREFIX) || given.concepts.contains(c));
    out
}

/// Canonical model of `ontology` extended so that `c` is non-empty; returns
/// the element standing for the root of `c`.
pub fn canonical_model_of_concept(c: &Concept, ontology: &[ElAxiom]) -> (ElInterpretation, usize) {
    let mut o = ontology.to_vec();
    o.push(ElAxiom::inclusion(Concept::name(ROOT_CONCEPT), c.clone()));
    o.push(ElAxiom::inclusion(c.clone(), Concept::name(ROOT_CONCEPT)));
    o.push(ElAxiom::concept_assertion(ROOT_CONCEPT, ROOT_INDIVIDUAL));
    let mut i = canonical_model(&o);
    i.concepts.remove(ROOT_CONCEPT);
    i.individuals.remove(ROOT_INDIVIDUAL);
    let root = i
        .domain
        .iter()
        .position(|d| d == ROOT_INDIVIDUAL)
        .expect("root element");
    (i, root)
}

/// Model of `alpha` from an M-consistent propositional model `m` of its
/// abstraction: the canonical model of the axioms in `m`, disjointly joined
/// with the canonical model of `C` for every inclusion `C <= D` outside `m`.
pub fn witness_el_model(alpha: &ElFormula, m: &BTreeSet<usize>) -> Result<ElInterpretation, ElError> {
    witness_el_model_over(alpha, m, &Signature::default())
}

/// [`witness_el_model`] whose canonical part also interprets the symbols of
/// `extra`.
pub fn witness_el_model_over(
    alpha: &ElFormula,
    m: &BTreeSet<usize>,
    extra: &Signature,
) -> Result<ElInterpretation, ElError> {
    let abs = prop_abstraction(alpha);
    if m.iter().any(|&v| v >= abs.num_vars()) {
        return Err(ElError::InvalidWitnessInput(
            "variable outside the abstraction".into(),
        ));
    }
    if !literals_sat(&abs.literals(m)) {
        return Err(ElError::InvalidWitnessInput(
            "the induced literal set is unsatisfiable".into(),
        ));
    }
    let positives: Vec<ElAxiom> = m.iter().map(|&v| abs.axioms[v].clone()).collect();
    let mut sig = alpha.signature();
    sig.merge(extra);
    let mut out = canonical_model_over(&positives, &sig);
    let mut part = 0;
    for (v, ax) in abs.axioms.iter().enumerate() {
        if let (false, ElAxiom::Inclusion { lhs, .. }) = (m.contains(&v), ax) {
            part += 1;
            let (i, _) = canonical_model_of_concept(lhs, &positives);
            out.absorb(&i, &format!("{part}."));
        }
    }
    match check_el(&out, alpha) {
        Ok(true) => Ok(out),
        Ok(false) => Err(ElError::WitnessCheckFailed(alpha.to_string())),
        Err(e) => Err(ElError::WitnessCheckFailed(e.to_string())),
    }
}
