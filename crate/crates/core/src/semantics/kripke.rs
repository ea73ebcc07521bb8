use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::syntax::{AgentWord, ElkFormula};

use super::{check_el, ElInterpretation, SemanticsError};

pub type WorldRelation = BTreeSet<(usize, usize)>;

/// Worlds plus one accessibility relation per agent. Agents without an entry
/// get the identity relation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElkInterpretation {
    pub worlds: Vec<ElInterpretation>,
    #[serde(default)]
    pub relations: BTreeMap<String, WorldRelation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedElk {
    #[serde(flatten)]
    pub structure: ElkInterpretation,
    pub point: usize,
}

impl ElkInterpretation {
    /// Checks that every relation is an equivalence relation over the worlds.
    pub fn validate(&self) -> Result<(), SemanticsError> {
        let n = self.worlds.len();
        for (agent, rel) in &self.relations {
            let bad = |msg: &str| {
                Err(SemanticsError::MalformedStructure(format!(
                    "relation of agent {agent} {msg}"
                )))
            };
            if rel.iter().any(|&(i, j)| i >= n || j >= n) {
                return bad("refers to a missing world");
            }
            if (0..n).any(|i| !rel.contains(&(i, i))) {
                return bad("is not reflexive");
            }
            if rel.iter().any(|&(i, j)| !rel.contains(&(j, i))) {
                return bad("is not symmetric");
            }
            for &(i, j) in rel {
                for &(_, k) in rel.range((j, 0)..=(j, usize::MAX)) {
                    if !rel.contains(&(i, k)) {
                        return bad("is not transitive");
                    }
                }
            }
        }
        Ok(())
    }

    fn successors(&self, agent: &str, from: &BTreeSet<usize>) -> BTreeSet<usize> {
        match self.relations.get(agent) {
            None => from.clone(),
            Some(rel) => from
                .iter()
                .flat_map(|&i| rel.range((i, 0)..=(i, usize::MAX)).map(|&(_, j)| j))
                .collect(),
        }
    }

    /// Worlds reachable from `start` along `R_sigma`.
    pub fn reachable(&self, start: usize, sigma: &AgentWord) -> BTreeSet<usize> {
        let mut cur = BTreeSet::from([start]);
        for a in sigma.agents() {
            cur = self.successors(a, &cur);
        }
        cur
    }
}

impl PointedElk {
    pub fn new(structure: ElkInterpretation, point: usize) -> Self {
        PointedElk { structure, point }
    }
}

/// `R_sigma = R_a1 ∘ … ∘ R_ak`; the empty word gives the identity.
pub fn compose_relation(structure: &ElkInterpretation, sigma: &AgentWord) -> WorldRelation {
    (0..structure.worlds.len())
        .flat_map(|i| structure.reachable(i, sigma).into_iter().map(move |j| (i, j)))
        .collect()
}

/// Smallest equivalence relation over `0..n` containing `pairs`.
pub fn equivalence_closure(pairs: &WorldRelation, n: usize) -> WorldRelation {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for &(i, j) in pairs {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if roots[i] == roots[j] {
                out.insert((i, j));
            }
        }
    }
    out
}

/// Whether the pointed structure satisfies `phi`.
pub fn check_elk(p: &PointedElk, phi: &ElkFormula) -> Result<bool, SemanticsError> {
    p.structure.validate()?;
    if p.point >= p.structure.worlds.len() {
        return Err(SemanticsError::MalformedStructure(format!(
            "point {} out of range",
            p.point
        )));
    }
    eval_at(&p.structure, p.point, phi)
}

fn eval_at(s: &ElkInterpretation, w: usize, phi: &ElkFormula) -> Result<bool, SemanticsError> {
    Ok(match phi {
        ElkFormula::Ax { prefix, body } => {
            for v in s.reachable(w, prefix) {
                if !check_el(&s.worlds[v], body)? {
                    return Ok(false);
                }
            }
            true
        }
        ElkFormula::Not(inner) => !eval_at(s, w, inner)?,
        ElkFormula::And(l, r) => eval_at(s, w, l)? && eval_at(s, w, r)?,
    })
}
