//! Exhaustive bounded model search, used as ground truth in tests.
//!
//! EL interpretations are enumerated once per signature as bitmasks (domain
//! at most 4). Individuals are mapped in restricted-growth order, which
//! skips interpretations that differ only by a permutation of elements.
//! For ELK, a world only matters through the truth values it gives to the
//! EL axioms of the formula, so worlds are drawn from the set of realizable
//! truth vectors ("types") rather than from raw interpretations.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::rc::Rc;

use crate::syntax::{AgentWord, ElAxiom, ElFormula, ElkFormula, HasSignature, Signature};

use super::{check_el, check_elk, ElInterpretation, ElkInterpretation, PointedElk};

const MAX_DOMAIN: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteBounds {
    pub max_worlds: usize,
    pub max_domain: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteVerdict {
    Sat(PointedElk),
    NoModelWithinBounds,
}

impl BruteVerdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, BruteVerdict::Sat(_))
    }
}

/// Every EL interpretation over a fixed signature with at most `max_domain`
/// elements, plus a cache of per-axiom truth tables.
pub struct ElModelSpace {
    concepts: Vec<String>,
    roles: Vec<String>,
    individuals: Vec<String>,
    sizes: Vec<u8>,
    concept_ext: Vec<u8>,
    role_ext: Vec<u16>,
    ind_map: Vec<u8>,
    cache: HashMap<ElAxiom, Rc<Vec<u64>>>,
}

fn rgs(len: usize, n: usize) -> Vec<Vec<u8>> {
    fn go(cur: &mut Vec<u8>, len: usize, n: usize, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let next = cur.iter().map(|&x| x + 1).max().unwrap_or(0) as usize;
        for v in 0..=next.min(n - 1) {
            cur.push(v as u8);
            go(cur, len, n, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), len, n, &mut out);
    out
}

fn spread_role_bits(bits: usize, n: usize) -> u16 {
    let mut out = 0u16;
    for d in 0..n {
        for e in 0..n {
            if bits >> (d * n + e) & 1 == 1 {
                out |= 1 << (d * 4 + e);
            }
        }
    }
    out
}

impl ElModelSpace {
    pub fn new(sig: &Signature, max_domain: usize) -> Self {
        assert!(
            (1..=MAX_DOMAIN).contains(&max_domain),
            "domain bound must be between 1 and {MAX_DOMAIN}"
        );
        let mut s = ElModelSpace {
            concepts: sig.concepts.iter().cloned().collect(),
            roles: sig.roles.iter().cloned().collect(),
            individuals: sig.individuals.iter().cloned().collect(),
            sizes: Vec::new(),
            concept_ext: Vec::new(),
            role_ext: Vec::new(),
            ind_map: Vec::new(),
            cache: HashMap::new(),
        };
        let (nc, nr) = (s.concepts.len(), s.roles.len());
        for n in 1..=max_domain {
            let ind_maps = rgs(s.individuals.len(), n);
            let c_count = 1usize << (n * nc);
            let r_count = 1usize << (n * n * nr);
            for cbits in 0..c_count {
                for rbits in 0..r_count {
                    for im in &ind_maps {
                        s.sizes.push(n as u8);
                        for k in 0..nc {
                            s.concept_ext.push(((cbits >> (k * n)) & ((1 << n) - 1)) as u8);
                        }
                        for k in 0..nr {
                            let chunk = (rbits >> (k * n * n)) & ((1 << (n * n)) - 1);
                            s.role_ext.push(spread_role_bits(chunk, n));
                        }
                        s.ind_map.extend_from_slice(im);
                    }
                }
            }
        }
        s
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    fn concept_mask(&self, m: usize, c: &crate::syntax::Concept) -> u8 {
        use crate::syntax::Concept;
        let n = self.sizes[m] as usize;
        match c {
            Concept::Top => ((1u16 << n) - 1) as u8,
            Concept::Bottom => 0,
            Concept::Name(a) => match self.concepts.iter().position(|x| x == a) {
                Some(k) => self.concept_ext[m * self.concepts.len() + k],
                None => 0,
            },
            Concept::Nominal(a) => 1 << self.individual(m, a),
            Concept::Conj(l, r) => self.concept_mask(m, l) & self.concept_mask(m, r),
            Concept::Exists(role, filler) => {
                let f = self.concept_mask(m, filler) as u16;
                let Some(k) = self.roles.iter().position(|x| x == role) else {
                    return 0;
                };
                let rel = self.role_ext[m * self.roles.len() + k];
                (0..n)
                    .filter(|d| (rel >> (d * 4)) & f != 0)
                    .fold(0u8, |acc, d| acc | 1 << d)
            }
        }
    }

    fn individual(&self, m: usize, a: &str) -> usize {
        let k = self
            .individuals
            .iter()
            .position(|x| x == a)
            .unwrap_or_else(|| panic!("individual {a} outside the model space signature"));
        self.ind_map[m * self.individuals.len() + k] as usize
    }

    fn holds(&self, m: usize, ax: &ElAxiom) -> bool {
        match ax {
            ElAxiom::Inclusion { lhs, rhs } => {
                self.concept_mask(m, lhs) & !self.concept_mask(m, rhs) == 0
            }
            ElAxiom::ConceptAssertion { concept, individual } => {
                let d = self.individual(m, individual);
                self.concept_mask(m, &crate::syntax::Concept::name(concept)) >> d & 1 == 1
            }
            ElAxiom::RoleAssertion { role, subject, object } => {
                let (d, e) = (self.individual(m, subject), self.individual(m, object));
                match self.roles.iter().position(|x| x == role) {
                    Some(k) => self.role_ext[m * self.roles.len() + k] >> (d * 4 + e) & 1 == 1,
                    None => false,
                }
            }
        }
    }

    /// Truth table of `ax` over all interpretations, as a bitset.
    pub fn truth_bits(&mut self, ax: &ElAxiom) -> Rc<Vec<u64>> {
        if let Some(b) = self.cache.get(ax) {
            return b.clone();
        }
        let mut bits = vec![0u64; self.len().div_ceil(64)];
        for m in 0..self.len() {
            if self.holds(m, ax) {
                bits[m / 64] |= 1 << (m % 64);
            }
        }
        let bits = Rc::new(bits);
        self.cache.insert(ax.clone(), bits.clone());
        bits
    }

    /// The `m`-th interpretation, with elements labelled `d0`, `d1`, ….
    pub fn interpretation(&self, m: usize) -> ElInterpretation {
        let n = self.sizes[m] as usize;
        let mut out = ElInterpretation {
            domain: (0..n).map(|d| format!("d{d}")).collect(),
            ..Default::default()
        };
        for (k, c) in self.concepts.iter().enumerate() {
            let mask = self.concept_ext[m * self.concepts.len() + k];
            out.concepts
                .insert(c.clone(), (0..n).filter(|d| mask >> d & 1 == 1).collect());
        }
        for (k, r) in self.roles.iter().enumerate() {
            let rel = self.role_ext[m * self.roles.len() + k];
            let pairs = (0..n)
                .flat_map(|d| (0..n).map(move |e| (d, e)))
                .filter(|(d, e)| rel >> (d * 4 + e) & 1 == 1)
                .collect();
            out.roles.insert(r.clone(), pairs);
        }
        for (k, a) in self.individuals.iter().enumerate() {
            out.individuals
                .insert(a.clone(), self.ind_map[m * self.individuals.len() + k] as usize);
        }
        out
    }
}

type SigKey = (Vec<String>, Vec<String>, Vec<String>);

fn sig_key(sig: &Signature) -> SigKey {
    (
        sig.concepts.iter().cloned().collect(),
        sig.roles.iter().cloned().collect(),
        sig.individuals.iter().cloned().collect(),
    )
}

/// Reusable oracle; model spaces and truth tables are cached per signature.
pub struct BruteForceOracle {
    max_domain: usize,
    spaces: HashMap<SigKey, ElModelSpace>,
}

fn distinct_axioms<'a>(it: impl IntoIterator<Item = &'a ElAxiom>) -> Vec<ElAxiom> {
    let mut out: Vec<ElAxiom> = Vec::new();
    for ax in it {
        if !out.contains(ax) {
            out.push(ax.clone());
        }
    }
    out
}

/// Types realizable in the space: truth vector over `axioms` mapped to the
/// first interpretation realizing it.
fn realizable_types(space: &mut ElModelSpace, axioms: &[ElAxiom]) -> Vec<(u64, usize)> {
    assert!(axioms.len() <= 64, "too many distinct axioms for the oracle");
    let tables: Vec<Rc<Vec<u64>>> = axioms.iter().map(|a| space.truth_bits(a)).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for m in 0..space.len() {
        let key = tables
            .iter()
            .enumerate()
            .fold(0u64, |acc, (k, t)| acc | ((t[m / 64] >> (m % 64)) & 1) << k);
        if seen.insert(key) {
            out.push((key, m));
        }
    }
    out
}

fn eval_el_on_type(alpha: &ElFormula, axioms: &[ElAxiom], key: u64) -> bool {
    alpha.eval_with(&mut |ax| {
        let k = axioms.iter().position(|a| a == ax).expect("axiom indexed");
        key >> k & 1 == 1
    })
}

impl BruteForceOracle {
    pub fn new(max_domain: usize) -> Self {
        BruteForceOracle {
            max_domain,
            spaces: HashMap::new(),
        }
    }

    fn space(&mut self, sig: &Signature) -> &mut ElModelSpace {
        let max_domain = self.max_domain;
        self.spaces
            .entry(sig_key(sig))
            .or_insert_with(|| ElModelSpace::new(sig, max_domain))
    }

    /// First interpretation (in enumeration order) satisfying `alpha`.
    pub fn el_sat(&mut self, alpha: &ElFormula) -> Option<ElInterpretation> {
        let axioms = distinct_axioms(alpha.axioms());
        let space = self.space(&alpha.signature());
        let types = realizable_types(space, &axioms);
        let (_, m) = *types
            .iter()
            .find(|(key, _)| eval_el_on_type(alpha, &axioms, *key))?;
        let i = space.interpretation(m);
        debug_assert!(check_el(&i, alpha).unwrap_or(false));
        Some(i)
    }

    pub fn elk_sat(&mut self, phi: &ElkFormula, max_worlds: usize) -> BruteVerdict {
        let sig = phi.signature();
        let agents: Vec<String> = sig.agents.iter().cloned().collect();
        let atoms: Vec<(AgentWord, ElFormula)> = {
            let mut v: Vec<(AgentWord, ElFormula)> = Vec::new();
            for (w, b) in phi.atoms() {
                if !v.iter().any(|(x, y)| x == w && y == b) {
                    v.push((w.clone(), b.clone()));
                }
            }
            v
        };
        assert!(atoms.len() <= 20, "too many distinct ELK atoms for the oracle");
        let axioms = distinct_axioms(phi.el_axioms());
        let space = self.space(&sig);
        let types = realizable_types(space, &axioms);
        let atom_truth: Vec<Vec<bool>> = atoms
            .iter()
            .map(|(_, b)| types.iter().map(|(k, _)| eval_el_on_type(b, &axioms, *k)).collect())
            .collect();
        let assignments: Vec<u64> = (0..1u64 << atoms.len())
            .filter(|&v| {
                phi.eval_with(&mut |w, b| {
                    let k = atoms.iter().position(|(x, y)| x == w && y == b).unwrap();
                    v >> k & 1 == 1
                })
            })
            .collect();
        if assignments.is_empty() {
            return BruteVerdict::NoModelWithinBounds;
        }
        let mut search = KripkeSearch {
            atom_truth: &atom_truth,
            n_types: types.len(),
            realizable: HashMap::new(),
        };
        for w in 1..=max_worlds.max(1) {
            let parts = rgs(w, w);
            let mut tried: HashSet<Vec<u32>> = HashSet::new();
            let mut tuple = vec![0usize; agents.len()];
            loop {
                let partitions: Vec<&Vec<u8>> = tuple.iter().map(|&i| &parts[i]).collect();
                if connected(&partitions, w) {
                    let reach: Vec<u32> = atoms
                        .iter()
                        .map(|(sigma, _)| reach_mask(sigma, &agents, &partitions))
                        .collect();
                    if tried.insert(reach.clone()) {
                        if let Some(world_types) = search.solve(&reach, &assignments, w) {
                            let model = build_model(space, &types, &world_types, &agents, &partitions);
                            assert!(
                                check_elk(&model, phi).unwrap_or(false),
                                "brute-force model fails to check"
                            );
                            return BruteVerdict::Sat(model);
                        }
                    }
                }
                if !advance(&mut tuple, parts.len()) {
                    break;
                }
            }
        }
        BruteVerdict::NoModelWithinBounds
    }
}

fn advance(tuple: &mut [usize], base: usize) -> bool {
    for i in (0..tuple.len()).rev() {
        tuple[i] += 1;
        if tuple[i] < base {
            return true;
        }
        tuple[i] = 0;
    }
    false
}

fn block_closure(mask: u32, partition: &[u8]) -> u32 {
    let mut out = 0u32;
    for (i, &b) in partition.iter().enumerate() {
        if mask >> i & 1 == 1 {
            for (j, &c) in partition.iter().enumerate() {
                if c == b {
                    out |= 1 << j;
                }
            }
        }
    }
    out
}

fn connected(partitions: &[&Vec<u8>], w: usize) -> bool {
    let mut mask = 1u32;
    loop {
        let next = partitions.iter().fold(mask, |m, p| m | block_closure(m, p));
        if next == mask {
            return mask.count_ones() as usize == w;
        }
        mask = next;
    }
}

fn reach_mask(sigma: &AgentWord, agents: &[String], partitions: &[&Vec<u8>]) -> u32 {
    let mut mask = 1u32;
    for a in sigma.agents() {
        let k = agents.iter().position(|x| x == a).expect("agent in signature");
        mask = block_closure(mask, partitions[k]);
    }
    mask
}

struct KripkeSearch<'a> {
    atom_truth: &'a [Vec<bool>],
    n_types: usize,
    realizable: HashMap<(u64, u64), Option<usize>>,
}

impl KripkeSearch<'_> {
    /// A type making every atom in `must` true and every atom in `refute`
    /// false.
    fn realize(&mut self, must: u64, refute: u64) -> Option<usize> {
        if let Some(r) = self.realizable.get(&(must, refute)) {
            return *r;
        }
        let truth = self.atom_truth;
        let ok = |t: usize, set: u64, want: bool| {
            (0..truth.len()).all(|a| set >> a & 1 == 0 || truth[a][t] == want)
        };
        let r = (0..self.n_types).find(|&t| ok(t, must, true) && ok(t, refute, false));
        self.realizable.insert((must, refute), r);
        r
    }

    fn solve(&mut self, reach: &[u32], assignments: &[u64], w: usize) -> Option<Vec<usize>> {
        for &v in assignments {
            let must: Vec<u64> = (0..w)
                .map(|x| {
                    (0..reach.len())
                        .filter(|&a| v >> a & 1 == 1 && reach[a] >> x & 1 == 1)
                        .fold(0u64, |acc, a| acc | 1 << a)
                })
                .collect();
            if (0..w).any(|x| self.realize(must[x], 0).is_none()) {
                continue;
            }
            let falses: Vec<usize> = (0..reach.len()).filter(|&a| v >> a & 1 == 0).collect();
            let mut refute = vec![0u64; w];
            if self.place(&falses, reach, &must, &mut refute) {
                return Some(
                    (0..w)
                        .map(|x| self.realize(must[x], refute[x]).expect("placed"))
                        .collect(),
                );
            }
        }
        None
    }

    fn place(&mut self, falses: &[usize], reach: &[u32], must: &[u64], refute: &mut [u64]) -> bool {
        let Some((&a, rest)) = falses.split_first() else {
            return true;
        };
        for x in 0..must.len() {
            if reach[a] >> x & 1 == 0 {
                continue;
            }
            let before = refute[x];
            refute[x] |= 1 << a;
            if self.realize(must[x], refute[x]).is_some() && self.place(rest, reach, must, refute) {
                return true;
            }
            refute[x] = before;
        }
        false
    }
}

fn build_model(
    space: &ElModelSpace,
    types: &[(u64, usize)],
    world_types: &[usize],
    agents: &[String],
    partitions: &[&Vec<u8>],
) -> PointedElk {
    let worlds = world_types
        .iter()
        .map(|&t| space.interpretation(types[t].1))
        .collect();
    let relations: BTreeMap<String, BTreeSet<(usize, usize)>> = agents
        .iter()
        .zip(partitions)
        .map(|(a, p)| {
            let pairs = (0..p.len())
                .flat_map(|i| (0..p.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] == p[j])
                .collect();
            (a.clone(), pairs)
        })
        .collect();
    PointedElk::new(ElkInterpretation { worlds, relations }, 0)
}

/// Bounded search for an EL model of `alpha` over its own signature.
pub fn brute_force_el_sat(alpha: &ElFormula, max_domain: usize) -> Option<ElInterpretation> {
    BruteForceOracle::new(max_domain).el_sat(alpha)
}

/// Bounded search for a pointed Kripke model of `phi` over its own
/// signature. Worlds are tried in ascending count; for each count, agent
/// partitions in restricted-growth order.
pub fn brute_force_elk_sat(phi: &ElkFormula, bounds: BruteBounds) -> BruteVerdict {
    BruteForceOracle::new(bounds.max_domain).elk_sat(phi, bounds.max_worlds)
}
