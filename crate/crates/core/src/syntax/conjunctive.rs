use serde::Serialize;

use super::{AgentWord, ElFormula, ElLiteral, ElkFormula, SyntaxError};

/// `K_sigma` applied to a conjunction of EL literals. An empty body is `Top`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KLiteralBlock {
    #[serde(serialize_with = "ser_word")]
    pub sigma: AgentWord,
    #[serde(serialize_with = "ser_literals")]
    pub body: Vec<ElLiteral>,
}

impl KLiteralBlock {
    pub fn new(sigma: AgentWord, body: Vec<ElLiteral>) -> Self {
        KLiteralBlock { sigma, body }
    }
}

pub(crate) fn ser_word<S: serde::Serializer>(w: &AgentWord, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(w.agents())
}

pub(crate) fn ser_literals<S: serde::Serializer>(
    lits: &[ElLiteral],
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq(lits.iter().map(|l| l.to_string()))
}

/// Normal form `omega0 && K_s1 w1 && ... && !K_sm wm` of the conjunctive
/// fragment: negation only on EL axioms or on whole K-prefixed literal
/// conjunctions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConjunctiveElk {
    pub omega0: Vec<ElLiteral>,
    pub positives: Vec<KLiteralBlock>,
    pub negatives: Vec<KLiteralBlock>,
}

impl ConjunctiveElk {
    /// Inverse of [`to_conjunctive`] for values with non-empty bodies and at
    /// least one conjunct.
    pub fn render(&self) -> Option<ElkFormula> {
        let omega0 = self.omega0.iter().map(|l| {
            let ax = ElkFormula::axiom(l.axiom.clone());
            if l.positive {
                ax
            } else {
                ElkFormula::not(ax)
            }
        });
        let block = |b: &KLiteralBlock| {
            ElkFormula::known(b.sigma.clone(), ElFormula::from_literals(&b.body))
        };
        let positives = self.positives.iter().map(block);
        let negatives = self.negatives.iter().map(|b| ElkFormula::not(block(b)));
        ElkFormula::and_all(omega0.chain(positives).chain(negatives))
    }
}

/// Splits a formula of the conjunctive fragment into its normal form.
///
/// Conjunctions are flattened in left-to-right order. A negated unprefixed
/// axiom lands in `omega0` as a negative literal.
pub fn to_conjunctive(phi: &ElkFormula) -> Result<ConjunctiveElk, SyntaxError> {
    let mut out = ConjunctiveElk::default();
    let mut conjuncts = Vec::new();
    flatten_and(phi, &mut conjuncts);
    for c in conjuncts {
        match c {
            ElkFormula::Ax { prefix, body } => {
                let lits = literal_body(body, c)?;
                if prefix.is_empty() {
                    out.omega0.extend(lits);
                } else {
                    out.positives.push(KLiteralBlock::new(prefix.clone(), lits));
                }
            }
            ElkFormula::Not(inner) => match inner.as_ref() {
                ElkFormula::Ax { prefix, body } if prefix.is_empty() => match body {
                    ElFormula::Lit(a) => out.omega0.push(a.clone().negative()),
                    _ => {
                        return Err(SyntaxError::Fragment(format!(
                            "negation of a compound EL formula: {c}"
                        )))
                    }
                },
                ElkFormula::Ax { prefix, body } => {
                    let lits = literal_body(body, c)?;
                    out.negatives.push(KLiteralBlock::new(prefix.clone(), lits));
                }
                _ => {
                    return Err(SyntaxError::Fragment(format!(
                        "negation must apply to an EL axiom or a K-prefixed literal conjunction: {c}"
                    )))
                }
            },
            ElkFormula::And(..) => unreachable!("flattened"),
        }
    }
    Ok(out)
}

fn flatten_and<'a>(phi: &'a ElkFormula, out: &mut Vec<&'a ElkFormula>) {
    match phi {
        ElkFormula::And(l, r) => {
            flatten_and(l, out);
            flatten_and(r, out);
        }
        other => out.push(other),
    }
}

fn literal_body(body: &ElFormula, ctx: &ElkFormula) -> Result<Vec<ElLiteral>, SyntaxError> {
    body.as_literals().ok_or_else(|| {
        SyntaxError::Fragment(format!(
            "body is not a conjunction of EL literals: {ctx}"
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, Concept, ElAxiom};

    fn incl(a: &str, b: &str) -> ElAxiom {
        ElAxiom::inclusion(Concept::name(a), Concept::name(b))
    }

    #[test]
    fn mixed_conjunct_kinds() {
        let phi = parse_formula("A(a) && K[1] (A <= B) && !K[2] (B <= C)").unwrap();
        let c = to_conjunctive(&phi).unwrap();
        assert_eq!(c.omega0, vec![ElAxiom::concept_assertion("A", "a").positive()]);
        assert_eq!(
            c.positives,
            vec![KLiteralBlock::new(AgentWord::new(["1"]), vec![incl("A", "B").positive()])]
        );
        assert_eq!(
            c.negatives,
            vec![KLiteralBlock::new(AgentWord::new(["2"]), vec![incl("B", "C").positive()])]
        );
    }

    #[test]
    fn alternation_is_outside_the_fragment() {
        // Not expressible as an AST, so it already fails while parsing.
        let err = parse_formula("!K[1] (!K[2] (A <= B))").unwrap_err();
        assert!(matches!(err, SyntaxError::Fragment(_)));
    }

    #[test]
    fn negated_conjunction_is_outside_the_fragment() {
        let phi = parse_formula("!(A(a) && B(a))").unwrap();
        assert!(matches!(to_conjunctive(&phi), Err(SyntaxError::Fragment(_))));
        let psi = parse_formula("K[1] (!(A(a) && B(a)))").unwrap();
        assert!(matches!(to_conjunctive(&psi), Err(SyntaxError::Fragment(_))));
        let dbl = parse_formula("!!A(a)").unwrap();
        assert!(matches!(to_conjunctive(&dbl), Err(SyntaxError::Fragment(_))));
    }

    #[test]
    fn lone_negated_inclusion() {
        let phi = parse_formula("!(A <= B)").unwrap();
        let c = to_conjunctive(&phi).unwrap();
        assert_eq!(c.omega0, vec![incl("A", "B").negative()]);
        assert!(c.positives.is_empty() && c.negatives.is_empty());
    }

    #[test]
    fn render_inverts_normalization() {
        let c = ConjunctiveElk {
            omega0: vec![incl("A", "B").negative()],
            positives: vec![KLiteralBlock::new(
                AgentWord::new(["1", "2"]),
                vec![incl("A", "B").positive(), ElAxiom::concept_assertion("A", "a").negative()],
            )],
            negatives: vec![KLiteralBlock::new(AgentWord::new(["2"]), vec![incl("B", "A").positive()])],
        };
        let text = c.render().unwrap().to_string();
        assert_eq!(to_conjunctive(&parse_formula(&text).unwrap()).unwrap(), c);
    }
}
