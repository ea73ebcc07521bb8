use std::collections::BTreeMap;
use std::fmt;

use crate::syntax::{Concept, ElAxiom, RESERVED_PREFIX};

use super::tau::Gci;

/// Atomic operand of a normalized inclusion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basic {
    Top,
    Bottom,
    Name(String),
    Nominal(String),
}

impl Basic {
    fn from_concept(c: &Concept) -> Option<Basic> {
        match c {
            Concept::Top => Some(Basic::Top),
            Concept::Bottom => Some(Basic::Bottom),
            Concept::Name(n) => Some(Basic::Name(n.clone())),
            Concept::Nominal(a) => Some(Basic::Nominal(a.clone())),
            _ => None,
        }
    }

    pub fn to_concept(&self) -> Concept {
        match self {
            Basic::Top => Concept::Top,
            Basic::Bottom => Concept::Bottom,
            Basic::Name(n) => Concept::Name(n.clone()),
            Basic::Nominal(a) => Concept::Nominal(a.clone()),
        }
    }
}

impl fmt::Display for Basic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_concept())
    }
}

/// The four normal forms of EL++ inclusions handled by completion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalAxiom {
    /// `A ⊑ B`
    Sub(Basic, Basic),
    /// `A1 ⊓ A2 ⊑ B`
    ConjSub(Basic, Basic, Basic),
    /// `A ⊑ ∃r.B`
    SubExists(Basic, String, Basic),
    /// `∃r.A ⊑ B`
    ExistsSub(String, Basic, Basic),
}

impl NormalAxiom {
    pub fn to_gci(&self) -> Gci {
        match self {
            NormalAxiom::Sub(a, b) => Gci::new(a.to_concept(), b.to_concept()),
            NormalAxiom::ConjSub(a1, a2, b) => Gci::new(
                Concept::conj(a1.to_concept(), a2.to_concept()),
                b.to_concept(),
            ),
            NormalAxiom::SubExists(a, r, b) => {
                Gci::new(a.to_concept(), Concept::exists(r, b.to_concept()))
            }
            NormalAxiom::ExistsSub(r, a, b) => {
                Gci::new(Concept::exists(r, a.to_concept()), b.to_concept())
            }
        }
    }

    /// Plain EL inclusion, if no nominal or `Bottom` occurs.
    pub fn to_el_axiom(&self) -> Option<ElAxiom> {
        let g = self.to_gci();
        (g.lhs.is_plain_el() && g.rhs.is_plain_el()).then(|| ElAxiom::inclusion(g.lhs, g.rhs))
    }
}

impl fmt::Display for NormalAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_gci())
    }
}

/// Normal-form inclusions plus a record of every introduced name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalizedOntology {
    pub axioms: Vec<NormalAxiom>,
    /// Fresh concept name -> the subconcept it abbreviates.
    pub fresh_map: BTreeMap<String, String>,
}

struct Normalizer {
    stem: &'static str,
    next: usize,
    out: NormalizedOntology,
}

impl Normalizer {
    fn new(stem: &'static str) -> Self {
        Normalizer {
            stem,
            next: 0,
            out: NormalizedOntology::default(),
        }
    }

    fn fresh(&mut self, origin: &Concept) -> Basic {
        self.next += 1;
        let name = format!("{RESERVED_PREFIX}{}{}", self.stem, self.next);
        self.out.fresh_map.insert(name.clone(), origin.to_string());
        Basic::Name(name)
    }

    fn emit(&mut self, ax: NormalAxiom) {
        if !self.out.axioms.contains(&ax) {
            self.out.axioms.push(ax);
        }
    }

    /// Replaces a complex left-hand operand by a fresh name `X` with `c ⊑ X`.
    fn lhs_operand(&mut self, c: &Concept) -> Basic {
        match Basic::from_concept(c) {
            Some(b) => b,
            None => {
                let x = self.fresh(c);
                self.inclusion(c, &x.to_concept());
                x
            }
        }
    }

    fn inclusion(&mut self, lhs: &Concept, rhs: &Concept) {
        if matches!(rhs, Concept::Top) || contains_bottom_conjunct(lhs) {
            return;
        }
        match lhs {
            Concept::Conj(l, r) => {
                let a1 = self.lhs_operand(l);
                let a2 = self.lhs_operand(r);
                let b = self.rhs_basic(rhs);
                self.emit(NormalAxiom::ConjSub(a1, a2, b));
            }
            Concept::Exists(role, filler) => {
                let a = self.lhs_operand(filler);
                let b = self.rhs_basic(rhs);
                self.emit(NormalAxiom::ExistsSub(role.clone(), a, b));
            }
            _ => {
                let a = Basic::from_concept(lhs).expect("basic");
                self.basic_lhs(a, rhs);
            }
        }
    }

    /// Right-hand side for a complex left-hand side: must be basic, so a
    /// complex one is named first.
    fn rhs_basic(&mut self, rhs: &Concept) -> Basic {
        match Basic::from_concept(rhs) {
            Some(b) => b,
            None => {
                let z = self.fresh(rhs);
                self.basic_lhs(z.clone(), rhs);
                z
            }
        }
    }

    fn basic_lhs(&mut self, a: Basic, rhs: &Concept) {
        match rhs {
            Concept::Top => {}
            Concept::Conj(l, r) => {
                self.basic_lhs(a.clone(), l);
                self.basic_lhs(a, r);
            }
            Concept::Exists(role, filler) => match Basic::from_concept(filler) {
                Some(b) => self.emit(NormalAxiom::SubExists(a, role.clone(), b)),
                None => {
                    let x = self.fresh(filler);
                    self.emit(NormalAxiom::SubExists(a, role.clone(), x.clone()));
                    self.basic_lhs(x, filler);
                }
            },
            _ => {
                let b = Basic::from_concept(rhs).expect("basic");
                if a != b {
                    self.emit(NormalAxiom::Sub(a, b));
                }
            }
        }
    }
}

fn contains_bottom_conjunct(c: &Concept) -> bool {
    match c {
        Concept::Bottom => true,
        Concept::Conj(l, r) => contains_bottom_conjunct(l) || contains_bottom_conjunct(r),
        Concept::Exists(_, f) => contains_bottom_conjunct(f),
        _ => false,
    }
}

/// Structural transformation into normal form. Fresh names `__N<k>` are
/// numbered from 1 in left-to-right traversal order.
pub fn normalize(gcis: &[Gci]) -> NormalizedOntology {
    normalize_with_stem(gcis, "N")
}

pub(crate) fn normalize_with_stem(gcis: &[Gci], stem: &'static str) -> NormalizedOntology {
    let mut n = Normalizer::new(stem);
    for g in gcis {
        n.inclusion(&g.lhs, &g.rhs);
    }
    n.out
}

/// Normal form of a set of EL axioms as EL axioms: inclusions are split into
/// `A1 ⊓ A2 ⊑ B`, `∃r.A ⊑ B`, `A ⊑ ∃r.B` and `A ⊑ B`; assertions pass through.
pub fn normalize_el(axioms: &[ElAxiom]) -> (Vec<ElAxiom>, BTreeMap<String, String>) {
    let mut n = Normalizer::new("N");
    let mut out = Vec::new();
    for ax in axioms {
        match ax {
            ElAxiom::Inclusion { lhs, rhs } => {
                let before = n.out.axioms.len();
                n.inclusion(lhs, rhs);
                for na in &n.out.axioms[before..] {
                    out.push(na.to_el_axiom().expect("plain EL input"));
                }
            }
            other => {
                if !out.contains(other) {
                    out.push(other.clone());
                }
            }
        }
    }
    (out, n.out.fresh_map)
}
