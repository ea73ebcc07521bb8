use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::syntax::{Concept, ElAxiom, ElFormula};

use super::SemanticsError;

/// Finite first-order interpretation. Elements are indices into `domain`,
/// whose entries are the labels used in JSON.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ElInterpretationJson", into = "ElInterpretationJson")]
pub struct ElInterpretation {
    pub domain: Vec<String>,
    pub concepts: BTreeMap<String, BTreeSet<usize>>,
    pub roles: BTreeMap<String, BTreeSet<(usize, usize)>>,
    pub individuals: BTreeMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElInterpretationJson {
    domain: Vec<String>,
    #[serde(default)]
    concepts: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    roles: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default)]
    individuals: BTreeMap<String, String>,
}

impl From<ElInterpretation> for ElInterpretationJson {
    fn from(i: ElInterpretation) -> Self {
        let label = |d: &usize| i.domain[*d].clone();
        ElInterpretationJson {
            concepts: i
                .concepts
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(label).collect()))
                .collect(),
            roles: i
                .roles
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(|(d, e)| (label(d), label(e))).collect()))
                .collect(),
            individuals: i.individuals.iter().map(|(k, d)| (k.clone(), label(d))).collect(),
            domain: i.domain,
        }
    }
}

impl TryFrom<ElInterpretationJson> for ElInterpretation {
    type Error = SemanticsError;

    fn try_from(j: ElInterpretationJson) -> Result<Self, Self::Error> {
        let mut index = BTreeMap::new();
        for (i, d) in j.domain.iter().enumerate() {
            if index.insert(d.clone(), i).is_some() {
                return Err(SemanticsError::MalformedStructure(format!(
                    "duplicate domain element {d:?}"
                )));
            }
        }
        let look = |d: &String| {
            index.get(d).copied().ok_or_else(|| {
                SemanticsError::MalformedStructure(format!("element {d:?} not in domain"))
            })
        };
        let mut out = ElInterpretation {
            domain: j.domain.clone(),
            ..Default::default()
        };
        for (c, ext) in &j.concepts {
            let set = ext.iter().map(look).collect::<Result<_, _>>()?;
            out.concepts.insert(c.clone(), set);
        }
        for (r, ext) in &j.roles {
            let set = ext
                .iter()
                .map(|(d, e)| Ok((look(d)?, look(e)?)))
                .collect::<Result<_, SemanticsError>>()?;
            out.roles.insert(r.clone(), set);
        }
        for (a, d) in &j.individuals {
            out.individuals.insert(a.clone(), look(d)?);
        }
        Ok(out)
    }
}

impl ElInterpretation {
    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    /// Adds an element and returns its index.
    pub fn add_element(&mut self, label: impl Into<String>) -> usize {
        self.domain.push(label.into());
        self.domain.len() - 1
    }

    fn individual(&self, a: &str) -> Result<usize, SemanticsError> {
        self.individuals
            .get(a)
            .copied()
            .ok_or_else(|| SemanticsError::UnmappedIndividual(a.to_string()))
    }

    /// Disjoint union; labels of `other` get `prefix` prepended and its
    /// individual names are dropped.
    pub fn absorb(&mut self, other: &ElInterpretation, prefix: &str) {
        let offset = self.domain.len();
        self.domain
            .extend(other.domain.iter().map(|d| format!("{prefix}{d}")));
        for (c, ext) in &other.concepts {
            self.concepts
                .entry(c.clone())
                .or_default()
                .extend(ext.iter().map(|d| d + offset));
        }
        for (r, ext) in &other.roles {
            self.roles
                .entry(r.clone())
                .or_default()
                .extend(ext.iter().map(|(d, e)| (d + offset, e + offset)));
        }
    }

    fn eval_mask(&self, c: &Concept) -> Result<Vec<bool>, SemanticsError> {
        let n = self.domain.len();
        Ok(match c {
            Concept::Top => vec![true; n],
            Concept::Bottom => vec![false; n],
            Concept::Name(a) => {
                let mut v = vec![false; n];
                if let Some(ext) = self.concepts.get(a) {
                    for &d in ext {
                        v[d] = true;
                    }
                }
                v
            }
            Concept::Nominal(a) => {
                let mut v = vec![false; n];
                v[self.individual(a)?] = true;
                v
            }
            Concept::Conj(l, r) => {
                let (l, r) = (self.eval_mask(l)?, self.eval_mask(r)?);
                l.iter().zip(&r).map(|(x, y)| *x && *y).collect()
            }
            Concept::Exists(role, filler) => {
                let f = self.eval_mask(filler)?;
                let mut v = vec![false; n];
                if let Some(ext) = self.roles.get(role) {
                    for &(d, e) in ext {
                        if f[e] {
                            v[d] = true;
                        }
                    }
                }
                v
            }
        })
    }

    pub fn satisfies_axiom(&self, ax: &ElAxiom) -> Result<bool, SemanticsError> {
        Ok(match ax {
            ElAxiom::Inclusion { lhs, rhs } => {
                let (l, r) = (self.eval_mask(lhs)?, self.eval_mask(rhs)?);
                l.iter().zip(&r).all(|(x, y)| !*x || *y)
            }
            ElAxiom::ConceptAssertion { concept, individual } => {
                let d = self.individual(individual)?;
                self.concepts.get(concept).is_some_and(|e| e.contains(&d))
            }
            ElAxiom::RoleAssertion { role, subject, object } => {
                let (d, e) = (self.individual(subject)?, self.individual(object)?);
                self.roles.get(role).is_some_and(|x| x.contains(&(d, e)))
            }
        })
    }
}

/// Extension of `c` in `i`. Unmapped concept and role names are empty.
pub fn eval_concept(i: &ElInterpretation, c: &Concept) -> Result<BTreeSet<usize>, SemanticsError> {
    Ok(i
        .eval_mask(c)?
        .into_iter()
        .enumerate()
        .filter_map(|(d, b)| b.then_some(d))
        .collect())
}

/// Whether `i` satisfies the EL formula `alpha`.
pub fn check_el(i: &ElInterpretation, alpha: &ElFormula) -> Result<bool, SemanticsError> {
    Ok(match alpha {
        ElFormula::Lit(ax) => i.satisfies_axiom(ax)?,
        ElFormula::Not(inner) => !check_el(i, inner)?,
        ElFormula::And(l, r) => check_el(i, l)? && check_el(i, r)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;
    use crate::syntax::ElkFormula;

    fn small() -> ElInterpretation {
        let mut i = ElInterpretation::default();
        let d0 = i.add_element("x");
        let d1 = i.add_element("y");
        i.concepts.insert("A".into(), BTreeSet::from([d0]));
        i.concepts.insert("B".into(), BTreeSet::from([d0, d1]));
        i.individuals.insert("a".into(), d0);
        i
    }

    fn el(text: &str) -> ElFormula {
        match parse_formula(text).unwrap() {
            ElkFormula::Ax { body, .. } => body,
            ElkFormula::Not(inner) => match *inner {
                ElkFormula::Ax { body, .. } => ElFormula::not(body),
                _ => unreachable!(),
            },
            _ => unreachable!(),
        }
    }

    #[test]
    fn extensions() {
        let i = small();
        assert_eq!(eval_concept(&i, &Concept::Top).unwrap(), BTreeSet::from([0, 1]));
        let ab = Concept::conj(Concept::name("A"), Concept::name("B"));
        assert_eq!(eval_concept(&i, &ab).unwrap(), BTreeSet::from([0]));
        let ex = Concept::exists("r", Concept::name("A"));
        assert!(eval_concept(&i, &ex).unwrap().is_empty());
    }

    #[test]
    fn formulas() {
        let i = small();
        assert!(check_el(&i, &el("A(a)")).unwrap());
        assert!(!check_el(&i, &el("!A(a)")).unwrap());
        assert!(check_el(&i, &el("A <= B")).unwrap());
        assert!(!check_el(&i, &el("B <= A")).unwrap());
        assert!(matches!(
            check_el(&i, &el("A(b)")),
            Err(SemanticsError::UnmappedIndividual(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let mut i = small();
        i.roles.insert("r".into(), BTreeSet::from([(0, 1)]));
        let text = serde_json::to_string(&i).unwrap();
        assert_eq!(
            text,
            r#"{"domain":["x","y"],"concepts":{"A":["x"],"B":["x","y"]},"roles":{"r":[["x","y"]]},"individuals":{"a":"x"}}"#
        );
        let back: ElInterpretation = serde_json::from_str(&text).unwrap();
        assert_eq!(back, i);
        assert!(serde_json::from_str::<ElInterpretation>(r#"{"domain":["x"],"individuals":{"a":"z"}}"#).is_err());
    }
}
