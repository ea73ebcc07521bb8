use crate::el::literals_sat;
use crate::syntax::{ConjunctiveElk, ElLiteral, ElkFormula, HasSignature, KLiteralBlock};

use super::witness::{build, requirements_of, verify};
use super::{flatten, is_subword, ElkError, FailingCheck, SatVerdict};

fn push_unique(out: &mut Vec<ElLiteral>, lits: &[ElLiteral]) {
    for l in lits {
        if !out.contains(l) {
            out.push(l.clone());
        }
    }
}

/// Flattened, deduplicated blocks with `ε`-negatives moved into `omega0`.
fn prepare(phi: &ConjunctiveElk) -> Result<ConjunctiveElk, ElkError> {
    let flat = flatten(phi).into_inner();
    let mut out = ConjunctiveElk::default();
    push_unique(&mut out.omega0, &flat.omega0);
    for b in flat.positives {
        if b.sigma.is_empty() {
            push_unique(&mut out.omega0, &b.body);
        } else if !out.positives.contains(&b) {
            out.positives.push(b);
        }
    }
    for b in flat.negatives {
        if b.sigma.is_empty() {
            match b.body.as_slice() {
                [l] => push_unique(&mut out.omega0, &[l.negated()]),
                _ => {
                    return Err(ElkError::Fragment(
                        "negated conjunction without a K-prefix".into(),
                    ))
                }
            }
        } else if !out.negatives.contains(&b) {
            out.negatives.push(b);
        }
    }
    Ok(out)
}

/// `ψ`: the bodies of all positive blocks whose word contains `sigma`.
fn pooled(positives: &[KLiteralBlock], sigma: &crate::syntax::AgentWord) -> Vec<ElLiteral> {
    let mut psi = Vec::new();
    for b in positives {
        if is_subword(sigma, &b.sigma) {
            push_unique(&mut psi, &b.body);
        }
    }
    psi
}

/// Unsatisfiable iff `omega0` together with all positive bodies is not EL
/// satisfiable (condition 1), or some negative `¬K_σ ω` has `ψ ∧ ¬β`
/// unsatisfiable for every literal `β` of `ω` (condition 2).
pub fn conjunctive_sat(phi: &ConjunctiveElk) -> Result<SatVerdict, ElkError> {
    let phi = prepare(phi)?;
    let mut all = phi.omega0.clone();
    for b in &phi.positives {
        push_unique(&mut all, &b.body);
    }
    if !literals_sat(&all) {
        return Ok(SatVerdict::unsat(Some(FailingCheck {
            condition: 1,
            sigma: None,
            body: all,
            psi: Vec::new(),
        })));
    }
    for neg in &phi.negatives {
        let psi = pooled(&phi.positives, &neg.sigma);
        let refutable = neg.body.iter().any(|beta| {
            let mut ms = psi.clone();
            push_unique(&mut ms, &[beta.negated()]);
            literals_sat(&ms)
        });
        if !refutable {
            return Ok(SatVerdict::unsat(Some(FailingCheck {
                condition: 2,
                sigma: Some(neg.sigma.clone()),
                body: neg.body.clone(),
                psi,
            })));
        }
    }
    Ok(SatVerdict::sat())
}

/// [`conjunctive_sat`] plus, when satisfiable, a witness checked against
/// `original` (or against the rendered normal form when `None`).
pub fn conjunctive_sat_witnessed(
    phi: &ConjunctiveElk,
    original: Option<&ElkFormula>,
) -> Result<SatVerdict, ElkError> {
    let mut verdict = conjunctive_sat(phi)?;
    if verdict.satisfiable {
        let prepared = prepare(phi)?;
        let flat = flatten(&prepared);
        let mut sig = prepared.omega0.signature();
        for b in prepared.positives.iter().chain(&prepared.negatives) {
            sig.merge(&b.body.signature());
            sig.agents.extend(b.sigma.agents().iter().cloned());
        }
        if let Some(f) = original {
            sig.merge(&f.signature());
        }
        let model = build(&requirements_of(&flat)?, &sig)?;
        match original {
            Some(f) => verify(&model, f)?,
            None => {
                if let Some(f) = phi.render() {
                    verify(&model, &f)?;
                }
            }
        }
        verdict.witness = Some(model);
    }
    Ok(verdict)
}
