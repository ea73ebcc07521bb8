//! Canonical text rendering. The output of every `Display` impl here parses
//! back to the same tree, except for unprefixed compound EL bodies (see
//! [`ElkFormula`]) and the reasoner-internal constructors.

use std::fmt::{self, Display, Formatter};

use super::{Concept, ElAxiom, ElFormula, ElLiteral, ElkFormula};

impl Display for Concept {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Concept::Top => f.write_str("Top"),
            Concept::Bottom => f.write_str("Bottom"),
            Concept::Name(n) => f.write_str(n),
            Concept::Nominal(a) => write!(f, "{{{a}}}"),
            Concept::Conj(l, r) => {
                write!(f, "{l} & ")?;
                write_concept_unit(f, r)
            }
            Concept::Exists(role, filler) => {
                write!(f, "some {role} . ")?;
                write_concept_unit(f, filler)
            }
        }
    }
}

fn write_concept_unit(f: &mut Formatter<'_>, c: &Concept) -> fmt::Result {
    match c {
        Concept::Conj(..) => write!(f, "({c})"),
        _ => write!(f, "{c}"),
    }
}

impl Display for ElAxiom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            ElAxiom::Inclusion { lhs, rhs } => write!(f, "{lhs} <= {rhs}"),
            ElAxiom::ConceptAssertion {
                concept,
                individual,
            } => write!(f, "{concept}({individual})"),
            ElAxiom::RoleAssertion {
                role,
                subject,
                object,
            } => write!(f, "{role}({subject}, {object})"),
        }
    }
}

impl Display for ElLiteral {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.axiom)
        } else {
            write_negated_axiom(f, &self.axiom)
        }
    }
}

fn write_negated_axiom(f: &mut Formatter<'_>, axiom: &ElAxiom) -> fmt::Result {
    match axiom {
        ElAxiom::Inclusion { .. } => write!(f, "!({axiom})"),
        _ => write!(f, "!{axiom}"),
    }
}

impl Display for ElFormula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            ElFormula::And(l, r) => {
                write!(f, "{l} && ")?;
                write_el_unit(f, r)
            }
            _ => write_el_unit(f, self),
        }
    }
}

fn write_el_unit(f: &mut Formatter<'_>, x: &ElFormula) -> fmt::Result {
    match x {
        ElFormula::Lit(a) => write!(f, "{a}"),
        ElFormula::Not(inner) => match inner.as_ref() {
            ElFormula::Lit(a) => write_negated_axiom(f, a),
            other => {
                f.write_str("!")?;
                write_el_unit(f, other)
            }
        },
        ElFormula::And(..) => write!(f, "({x})"),
    }
}

impl Display for ElkFormula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            ElkFormula::And(l, r) => {
                write!(f, "{l} && ")?;
                write_elk_unit(f, r)
            }
            _ => write_elk_unit(f, self),
        }
    }
}

fn write_elk_unit(f: &mut Formatter<'_>, x: &ElkFormula) -> fmt::Result {
    match x {
        ElkFormula::Ax { prefix, body } => {
            if prefix.is_empty() {
                // An unprefixed body is printed as plain EL text; compound
                // bodies come back as ELK-level connectives.
                return match body {
                    ElFormula::And(..) => write!(f, "({body})"),
                    _ => write_el_unit(f, body),
                };
            }
            for agent in prefix.agents() {
                write!(f, "K[{agent}] ")?;
            }
            match body {
                ElFormula::Lit(a) => write!(f, "{a}"),
                _ => write!(f, "({body})"),
            }
        }
        ElkFormula::Not(inner) => {
            f.write_str("!")?;
            match inner.as_ref() {
                ElkFormula::Ax {
                    prefix,
                    body: ElFormula::Lit(a @ ElAxiom::Inclusion { .. }),
                } if prefix.is_empty() => write!(f, "({a})"),
                other => write_elk_unit(f, other),
            }
        }
        ElkFormula::And(..) => write!(f, "({x})"),
    }
}
