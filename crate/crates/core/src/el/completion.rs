//! Completion-rule saturation for normalized EL++ ontologies (concept names,
//! nominals, `Top`, `Bottom`; no role inclusions or concrete domains).
//!
//! Rules, for basic concepts `C, D, E` and roles `r`:
//!
//! 1. `D ∈ S(C)`, `D ⊑ E` ⟹ `E ∈ S(C)`
//! 2. `D1, D2 ∈ S(C)`, `D1 ⊓ D2 ⊑ E` ⟹ `E ∈ S(C)`
//! 3. `D ∈ S(C)`, `D ⊑ ∃r.E` ⟹ `(C, E) ∈ R(r)`
//! 4. `(C, D) ∈ R(r)`, `D' ∈ S(D)`, `∃r.D' ⊑ E` ⟹ `E ∈ S(C)`
//! 5. `(C, D) ∈ R(r)`, `⊥ ∈ S(D)` ⟹ `⊥ ∈ S(C)`
//! 6. `{a} ∈ S(C) ∩ S(D)`, `C ⇝ D` ⟹ `S(D) ⊆ S(C)`
//!
//! where `C ⇝ D` holds when `D` is reachable along `R` edges from `C` or
//! from some nominal.

use std::collections::{BTreeSet, HashMap};

use super::normalize::{Basic, NormalAxiom, NormalizedOntology};

#[derive(Clone, Debug)]
pub struct CompletionState {
    basics: Vec<Basic>,
    index: HashMap<Basic, usize>,
    roles: Vec<String>,
    top: usize,
    bottom: usize,
    nominals: Vec<usize>,
    /// `S(C)` for every basic concept `C`.
    subsumers: Vec<BTreeSet<usize>>,
    /// `R(r)` for every role.
    edges: Vec<BTreeSet<(usize, usize)>>,
    sub: Vec<Vec<usize>>,
    conj: Vec<Vec<(usize, usize)>>,
    sub_exists: Vec<Vec<(usize, usize)>>,
    exists_sub: HashMap<(usize, usize), Vec<usize>>,
    clash: bool,
}

impl CompletionState {
    /// Initial state: `S(C) = {C, ⊤}`, empty role edges.
    pub fn new(ontology: &NormalizedOntology) -> Self {
        let mut st = CompletionState {
            basics: Vec::new(),
            index: HashMap::new(),
            roles: Vec::new(),
            top: 0,
            bottom: 0,
            nominals: Vec::new(),
            subsumers: Vec::new(),
            edges: Vec::new(),
            sub: Vec::new(),
            conj: Vec::new(),
            sub_exists: Vec::new(),
            exists_sub: HashMap::new(),
            clash: false,
        };
        st.top = st.intern(&Basic::Top);
        st.bottom = st.intern(&Basic::Bottom);
        st.add_axioms(&ontology.axioms);
        st
    }

    /// Registers further axioms. Rules stay monotone, so saturating again
    /// from an already saturated state reaches the fixpoint of the union.
    pub fn add_axioms(&mut self, axioms: &[NormalAxiom]) {
        for ax in axioms {
            match ax {
                NormalAxiom::Sub(a, b) => {
                    let (a, b) = (self.intern(a), self.intern(b));
                    self.sub[a].push(b);
                }
                NormalAxiom::ConjSub(a1, a2, b) => {
                    let (a1, a2, b) = (self.intern(a1), self.intern(a2), self.intern(b));
                    self.conj[a1].push((a2, b));
                    self.conj[a2].push((a1, b));
                }
                NormalAxiom::SubExists(a, r, b) => {
                    let (a, r, b) = (self.intern(a), self.role(r), self.intern(b));
                    self.sub_exists[a].push((r, b));
                }
                NormalAxiom::ExistsSub(r, a, b) => {
                    let (r, a, b) = (self.role(r), self.intern(a), self.intern(b));
                    self.exists_sub.entry((r, a)).or_default().push(b);
                }
            }
        }
    }

    fn intern(&mut self, b: &Basic) -> usize {
        if let Some(&i) = self.index.get(b) {
            return i;
        }
        let i = self.basics.len();
        self.basics.push(b.clone());
        self.index.insert(b.clone(), i);
        let mut init = BTreeSet::from([i]);
        if self.basics.len() > 1 || *b == Basic::Top {
            init.insert(self.top);
        }
        self.subsumers.push(init);
        self.sub.push(Vec::new());
        self.conj.push(Vec::new());
        self.sub_exists.push(Vec::new());
        if matches!(b, Basic::Nominal(_)) {
            self.nominals.push(i);
        }
        i
    }

    fn role(&mut self, r: &str) -> usize {
        match self.roles.iter().position(|x| x == r) {
            Some(i) => i,
            None => {
                self.roles.push(r.to_string());
                self.edges.push(BTreeSet::new());
                self.roles.len() - 1
            }
        }
    }

    /// Applies the rules until none is applicable. Returns whether anything
    /// changed.
    pub fn saturate(&mut self) -> bool {
        let mut changed_any = false;
        loop {
            let mut changed = false;
            for c in 0..self.basics.len() {
                changed |= self.apply_local(c);
            }
            changed |= self.apply_edges();
            changed |= self.apply_nominal_merge();
            if !changed {
                break;
            }
            changed_any = true;
        }
        self.clash = self.subsumers[self.top].contains(&self.bottom)
            || self
                .nominals
                .iter()
                .any(|&n| self.subsumers[n].contains(&self.bottom));
        changed_any
    }

    /// Rules 1–3 at one concept.
    fn apply_local(&mut self, c: usize) -> bool {
        let mut changed = false;
        let mut frontier: Vec<usize> = self.subsumers[c].iter().copied().collect();
        while let Some(d) = frontier.pop() {
            for &e in &self.sub[d] {
                if self.subsumers[c].insert(e) {
                    frontier.push(e);
                    changed = true;
                }
            }
            for &(other, e) in &self.conj[d] {
                if self.subsumers[c].contains(&other) && self.subsumers[c].insert(e) {
                    frontier.push(e);
                    changed = true;
                }
            }
            for &(r, e) in &self.sub_exists[d] {
                changed |= self.edges[r].insert((c, e));
            }
        }
        changed
    }

    /// Rules 4 and 5.
    fn apply_edges(&mut self) -> bool {
        let mut changed = false;
        for r in 0..self.edges.len() {
            let pairs: Vec<(usize, usize)> = self.edges[r].iter().copied().collect();
            for (c, d) in pairs {
                let mut add = Vec::new();
                for &d2 in &self.subsumers[d] {
                    if let Some(es) = self.exists_sub.get(&(r, d2)) {
                        add.extend(es.iter().copied());
                    }
                }
                if self.subsumers[d].contains(&self.bottom) {
                    add.push(self.bottom);
                }
                for e in add {
                    changed |= self.subsumers[c].insert(e);
                }
            }
        }
        changed
    }

    /// Rule 6.
    fn apply_nominal_merge(&mut self) -> bool {
        if self.nominals.is_empty() {
            return false;
        }
        let from_nominals = self.reachable(&self.nominals.clone());
        let mut changed = false;
        for &o in &self.nominals.clone() {
            let holders: Vec<usize> = (0..self.basics.len())
                .filter(|&c| self.subsumers[c].contains(&o))
                .collect();
            if holders.len() < 2 {
                continue;
            }
            for &c in &holders {
                let mut reach = self.reachable(&[c]);
                reach.extend(from_nominals.iter().copied());
                for &d in &holders {
                    if d != c && reach.contains(&d) {
                        let extra: Vec<usize> = self.subsumers[d]
                            .difference(&self.subsumers[c])
                            .copied()
                            .collect();
                        changed |= !extra.is_empty();
                        self.subsumers[c].extend(extra);
                    }
                }
            }
        }
        changed
    }

    fn reachable(&self, start: &[usize]) -> BTreeSet<usize> {
        let mut seen: BTreeSet<usize> = start.iter().copied().collect();
        let mut stack: Vec<usize> = start.to_vec();
        while let Some(c) = stack.pop() {
            for rel in &self.edges {
                for &(x, y) in rel.range((c, 0)..=(c, usize::MAX)) {
                    debug_assert_eq!(x, c);
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        seen
    }

    /// True when saturation derived `⊥` for `⊤` or for some nominal.
    pub fn has_clash(&self) -> bool {
        self.clash
    }

    /// `S(b)` after saturation, or `None` if `b` does not occur.
    pub fn subsumers_of(&self, b: &Basic) -> Option<Vec<Basic>> {
        let i = *self.index.get(b)?;
        Some(
            self.subsumers[i]
                .iter()
                .map(|&j| self.basics[j].clone())
                .collect(),
        )
    }

    /// `R(r)` as pairs of basic concepts.
    pub fn role_edges(&self, role: &str) -> Vec<(Basic, Basic)> {
        match self.roles.iter().position(|x| x == role) {
            Some(r) => self.edges[r]
                .iter()
                .map(|&(c, d)| (self.basics[c].clone(), self.basics[d].clone()))
                .collect(),
            None => Vec::new(),
        }
    }
}

/// Whether a normalized EL++ ontology has a model.
pub fn elpp_consistent(ontology: &NormalizedOntology) -> bool {
    let mut st = CompletionState::new(ontology);
    st.saturate();
    !st.has_clash()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::el::normalize::normalize;
    use crate::el::tau::{tau_set, Gci};
    use crate::syntax::{Concept, ElAxiom};

    fn incl(a: &str, b: &str) -> ElAxiom {
        ElAxiom::inclusion(Concept::name(a), Concept::name(b))
    }

    #[test]
    fn immediate_clash() {
        let o = normalize(&[
            Gci::new(Concept::nominal("a"), Concept::name("A")),
            Gci::new(
                Concept::conj(Concept::nominal("a"), Concept::name("A")),
                Concept::Bottom,
            ),
        ]);
        assert!(!elpp_consistent(&o));
    }

    #[test]
    fn empty_ontology_is_consistent() {
        assert!(elpp_consistent(&NormalizedOntology::default()));
    }

    #[test]
    fn transitivity_forces_clash() {
        let lits = [
            incl("A", "B").positive(),
            incl("B", "C").positive(),
            incl("A", "C").negative(),
        ];
        assert!(!elpp_consistent(&normalize(&tau_set(&lits))));
    }

    #[test]
    fn bottom_propagates_along_edges() {
        let o = normalize(&[
            Gci::new(Concept::Top, Concept::exists("r", Concept::name("A"))),
            Gci::new(Concept::name("A"), Concept::Bottom),
        ]);
        assert!(!elpp_consistent(&o));
    }

    #[test]
    fn saturated_state_is_a_fixpoint() {
        let lits = [
            incl("A", "B").positive(),
            ElAxiom::concept_assertion("A", "a").positive(),
            ElAxiom::role_assertion("r", "a", "b").positive(),
        ];
        let o = normalize(&tau_set(&lits));
        let mut st = CompletionState::new(&o);
        assert!(st.saturate());
        let snapshot = (st.subsumers.clone(), st.edges.clone());
        assert!(!st.saturate());
        assert_eq!((st.subsumers.clone(), st.edges.clone()), snapshot);
        let s_a = st.subsumers_of(&Basic::Nominal("a".into())).unwrap();
        assert!(s_a.contains(&Basic::Name("B".into())));
        assert!(s_a.contains(&Basic::Top));
        assert_eq!(
            st.role_edges("r"),
            vec![(Basic::Nominal("a".into()), Basic::Nominal("b".into()))]
        );
    }
}
