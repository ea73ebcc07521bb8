//! Seeded generators for test corpora.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use elkat::syntax::{
    AgentWord, Concept, ConjunctiveElk, ElAxiom, ElFormula, ElLiteral, ElkFormula, KLiteralBlock,
};

pub struct Gen {
    pub rng: ChaCha8Rng,
    pub concepts: Vec<String>,
    pub roles: Vec<String>,
    pub individuals: Vec<String>,
    pub agents: Vec<String>,
}

fn strs(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

impl Gen {
    pub fn new(seed: u64, concepts: &[&str], roles: &[&str], individuals: &[&str], agents: &[&str]) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            concepts: strs(concepts),
            roles: strs(roles),
            individuals: strs(individuals),
            agents: strs(agents),
        }
    }

    /// Two concept names, one role, one individual, two agents.
    pub fn corpus(seed: u64) -> Self {
        Gen::new(seed, &["A", "B"], &["r"], &["a"], &["1", "2"])
    }

    fn pick(&mut self, xs: &[String]) -> String {
        xs.choose(&mut self.rng).unwrap().clone()
    }

    pub fn concept_name(&mut self) -> String {
        let cs = self.concepts.clone();
        self.pick(&cs)
    }

    /// Random concept with at most `size` nodes.
    pub fn concept(&mut self, size: usize) -> Concept {
        let roll = self.rng.gen_range(0..10);
        if size < 2 || roll < 5 {
            return if roll == 0 { Concept::Top } else { Concept::name(self.concept_name()) };
        }
        if roll < 7 && size >= 3 {
            let left = self.rng.gen_range(1..=size - 2);
            let l = self.concept(left);
            let r = self.concept(size - 1 - left);
            return Concept::conj(l, r);
        }
        let roles = self.roles.clone();
        let r = self.pick(&roles);
        Concept::exists(r, self.concept(size - 1))
    }

    pub fn axiom(&mut self, concept_size: usize) -> ElAxiom {
        let inds = self.individuals.clone();
        match self.rng.gen_range(0..6) {
            0..=2 => {
                let lhs = self.concept(concept_size);
                ElAxiom::inclusion(lhs, self.concept(concept_size))
            }
            3 | 4 => {
                let c = self.concept_name();
                ElAxiom::concept_assertion(c, self.pick(&inds))
            }
            _ => {
                let roles = self.roles.clone();
                let r = self.pick(&roles);
                let a = self.pick(&inds);
                ElAxiom::role_assertion(r, a, self.pick(&inds))
            }
        }
    }

    pub fn literal(&mut self, concept_size: usize) -> ElLiteral {
        let ax = self.axiom(concept_size);
        ElLiteral::new(ax, self.rng.gen_bool(0.6))
    }

    pub fn literals(&mut self, max: usize, concept_size: usize) -> Vec<ElLiteral> {
        let n = self.rng.gen_range(1..=max);
        (0..n).map(|_| self.literal(concept_size)).collect()
    }

    pub fn word(&mut self, max_len: usize) -> AgentWord {
        let n = self.rng.gen_range(1..=max_len);
        let agents = self.agents.clone();
        AgentWord((0..n).map(|_| self.pick(&agents)).collect())
    }

    /// Conjunctive instance: K-depth at most `max_depth`, bodies of at most
    /// two literals, total depth of negative conjuncts at most `neg_budget`.
    pub fn conjunctive(&mut self, max_depth: usize, neg_budget: usize) -> ConjunctiveElk {
        let mut phi = ConjunctiveElk::default();
        let n0 = self.rng.gen_range(0..=2);
        for _ in 0..n0 {
            let l = self.literal(2);
            phi.omega0.push(l);
        }
        let np = self.rng.gen_range(0..=3);
        for _ in 0..np {
            let sigma = self.word(max_depth);
            let body = self.literals(2, 2);
            phi.positives.push(KLiteralBlock::new(sigma, body));
        }
        let nn = self.rng.gen_range(0..=2);
        let mut budget = neg_budget;
        for _ in 0..nn {
            if budget == 0 {
                break;
            }
            let sigma = self.word(max_depth.min(budget));
            budget -= sigma.len();
            let body = self.literals(2, 2);
            phi.negatives.push(KLiteralBlock::new(sigma, body));
        }
        if phi.omega0.is_empty() && phi.positives.is_empty() && phi.negatives.is_empty() {
            let l = self.literal(2);
            phi.omega0.push(l);
        }
        phi
    }

    pub fn el_formula(&mut self, size: usize) -> ElFormula {
        if size <= 1 || self.rng.gen_bool(0.4) {
            let l = self.literal(2);
            return l.to_formula();
        }
        if self.rng.gen_bool(0.3) {
            return ElFormula::not(self.el_formula(size - 1));
        }
        let left = self.rng.gen_range(1..size);
        let l = self.el_formula(left);
        ElFormula::and(l, self.el_formula(size - left))
    }

    /// Boolean combination of K-atoms with small EL formula bodies.
    pub fn general_elk(&mut self, size: usize, max_depth: usize) -> ElkFormula {
        if size <= 1 || self.rng.gen_bool(0.3) {
            let prefix = if self.rng.gen_bool(0.2) {
                AgentWord::empty()
            } else {
                self.word(max_depth)
            };
            let body = self.el_formula(2);
            return ElkFormula::known(prefix, body);
        }
        if self.rng.gen_bool(0.35) {
            return ElkFormula::not(self.general_elk(size - 1, max_depth));
        }
        let left = self.rng.gen_range(1..size);
        let l = self.general_elk(left, max_depth);
        ElkFormula::and(l, self.general_elk(size - left, max_depth))
    }

    /// Axiom already in one of the normal forms.
    pub fn normal_axiom(&mut self) -> ElAxiom {
        let name = |g: &mut Gen| {
            if g.rng.gen_bool(0.15) {
                Concept::Top
            } else {
                Concept::name(g.concept_name())
            }
        };
        let roles = self.roles.clone();
        let inds = self.individuals.clone();
        match self.rng.gen_range(0..6) {
            0 => ElAxiom::inclusion(name(self), name(self)),
            1 => ElAxiom::inclusion(Concept::conj(name(self), name(self)), name(self)),
            2 => {
                let r = self.pick(&roles);
                ElAxiom::inclusion(Concept::exists(r, name(self)), name(self))
            }
            3 => {
                let r = self.pick(&roles);
                ElAxiom::inclusion(name(self), Concept::exists(r, name(self)))
            }
            4 => ElAxiom::concept_assertion(self.concept_name(), self.pick(&inds)),
            _ => {
                let r = self.pick(&roles);
                let a = self.pick(&inds);
                ElAxiom::role_assertion(r, a, self.pick(&inds))
            }
        }
    }
}

/// Total raw K-depth of the negative conjuncts.
pub fn negative_depth(phi: &ConjunctiveElk) -> usize {
    phi.negatives.iter().map(|b| b.sigma.len()).sum()
}

/// Total raw K-depth of all atoms.
pub fn atom_depth(phi: &ElkFormula) -> usize {
    phi.atoms().iter().map(|(w, _)| w.len()).sum()
}

/// Generator for a random named-form EL terminology: every inclusion has a
/// concept name on the left or on the right.
pub fn terminology(g: &mut Gen, max_axioms: usize, max_size: usize) -> Vec<ElAxiom> {
    let n = g.rng.gen_range(1..=max_axioms);
    let mut out: Vec<ElAxiom> = Vec::new();
    while out.len() < n {
        let name = Concept::name(g.concept_name());
        let size = g.rng.gen_range(1..=max_size);
        let other = g.concept(size);
        if other == name || other == Concept::Top {
            continue;
        }
        let ax = if g.rng.gen_bool(0.5) {
            ElAxiom::inclusion(name, other)
        } else {
            ElAxiom::inclusion(other, name)
        };
        if !out.contains(&ax) {
            out.push(ax);
        }
    }
    out
}

pub mod strategies {
    use proptest::prelude::*;

    use elkat::syntax::{
        AgentWord, Concept, ConjunctiveElk, ElAxiom, ElFormula, ElLiteral, ElkFormula,
        KLiteralBlock,
    };

    fn pick(xs: &'static [&'static str]) -> impl Strategy<Value = String> {
        prop::sample::select(xs).prop_map(String::from)
    }

    pub fn concept() -> BoxedStrategy<Concept> {
        let leaf = prop_oneof![Just(Concept::Top), pick(&["A", "B", "C"]).prop_map(Concept::Name)];
        leaf.prop_recursive(3, 10, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Concept::conj(l, r)),
                (pick(&["r", "s"]), inner).prop_map(|(r, c)| Concept::exists(r, c)),
            ]
        })
        .boxed()
    }

    pub fn axiom() -> BoxedStrategy<ElAxiom> {
        prop_oneof![
            3 => (concept(), concept()).prop_map(|(l, r)| ElAxiom::inclusion(l, r)),
            1 => (pick(&["A", "B"]), pick(&["a", "b"])).prop_map(|(c, a)| ElAxiom::concept_assertion(c, a)),
            1 => (pick(&["r"]), pick(&["a", "b"]), pick(&["a", "b"]))
                .prop_map(|(r, a, b)| ElAxiom::role_assertion(r, a, b)),
        ]
        .boxed()
    }

    pub fn literal() -> BoxedStrategy<ElLiteral> {
        (axiom(), any::<bool>()).prop_map(|(a, p)| ElLiteral::new(a, p)).boxed()
    }

    pub fn el_formula() -> BoxedStrategy<ElFormula> {
        axiom()
            .prop_map(ElFormula::Lit)
            .prop_recursive(3, 8, 2, |inner| {
                prop_oneof![
                    inner.clone().prop_map(ElFormula::not),
                    (inner.clone(), inner).prop_map(|(l, r)| ElFormula::and(l, r)),
                ]
            })
            .boxed()
    }

    pub fn word(min: usize) -> BoxedStrategy<AgentWord> {
        prop::collection::vec(pick(&["1", "2"]), min..=3)
            .prop_map(AgentWord)
            .boxed()
    }

    /// Unprefixed atoms carry a single axiom; Boolean structure above them
    /// is expressed at the epistemic level, which is how the parser reads it.
    pub fn elk_formula() -> BoxedStrategy<ElkFormula> {
        let atom = prop_oneof![
            axiom().prop_map(ElkFormula::axiom),
            (word(1), el_formula()).prop_map(|(w, b)| ElkFormula::known(w, b)),
        ];
        atom
            .prop_recursive(3, 8, 2, |inner| {
                prop_oneof![
                    inner.clone().prop_map(ElkFormula::not),
                    (inner.clone(), inner).prop_map(|(l, r)| ElkFormula::and(l, r)),
                ]
            })
            .boxed()
    }

    fn block() -> BoxedStrategy<KLiteralBlock> {
        (word(1), prop::collection::vec(literal(), 1..=2))
            .prop_map(|(w, b)| KLiteralBlock::new(w, b))
            .boxed()
    }

    /// Conjunctive formulas with non-empty words and bodies and at least
    /// one conjunct.
    pub fn conjunctive() -> BoxedStrategy<ConjunctiveElk> {
        (
            prop::collection::vec(literal(), 0..=2),
            prop::collection::vec(block(), 0..=2),
            prop::collection::vec(block(), 0..=2),
        )
            .prop_filter("at least one conjunct", |(o, p, n)| {
                !(o.is_empty() && p.is_empty() && n.is_empty())
            })
            .prop_map(|(omega0, positives, negatives)| ConjunctiveElk {
                omega0,
                positives,
                negatives,
            })
            .boxed()
    }
}

pub mod learning {
    use elkat::learning::{EqAnswer, ExactOracle, LearningError};
    use elkat::syntax::ElAxiom;

    /// Records the inputs of every exact query passing through.
    pub struct Recorder<'a> {
        pub inner: &'a mut dyn ExactOracle<ElAxiom>,
        pub mems: Vec<ElAxiom>,
        pub eqs: Vec<Vec<ElAxiom>>,
    }

    impl<'a> Recorder<'a> {
        pub fn new(inner: &'a mut dyn ExactOracle<ElAxiom>) -> Self {
            Recorder {
                inner,
                mems: Vec::new(),
                eqs: Vec::new(),
            }
        }

        /// Total size of all inputs; an empty hypothesis counts as 1.
        pub fn input_size(&self) -> usize {
            let mem: usize = self.mems.iter().map(|x| x.size()).sum();
            let eq: usize = self
                .eqs
                .iter()
                .map(|h| h.iter().map(|x| x.size()).sum::<usize>().max(1))
                .sum();
            mem + eq
        }

        /// Epistemic queries the exact-to-epistemic translation may spend.
        pub fn translation_bound(&self) -> usize {
            self.mems.len() + self.eqs.iter().map(|h| h.len() + 1).sum::<usize>()
        }
    }

    impl ExactOracle<ElAxiom> for Recorder<'_> {
        fn mem(&mut self, x: &ElAxiom) -> Result<bool, LearningError> {
            self.mems.push(x.clone());
            self.inner.mem(x)
        }

        fn eq(&mut self, h: &[ElAxiom]) -> Result<EqAnswer<ElAxiom>, LearningError> {
            self.eqs.push(h.to_vec());
            self.inner.eq(h)
        }
    }
}
