use super::analysis::is_sum_completion;
use super::PosetMap;
use crate::axioms::is_weakly_supplemented;
use crate::completion::{Completion, Method};
use crate::composition::{closure, greatest_sum, sums_of};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::ElementId;

/// The monotone onto map `q: M → S(P)` with `q ∘ e = σ`, for a weakly
/// supplemented `P` and a sum-completion `e: P → M`.
///
/// `e(x) ↦ x`. Any other `m` is a sum of `e(A*)` with `A* = {x | e(x) ≤ m}`;
/// it goes to `s_C` with `C` the closure of `A*` when `A*` has no sum in `P`,
/// and otherwise to the greatest sum of `σ(A*)` in `S(P)`.
pub fn build_quotient(e: &PosetMap, sp: &Completion, limits: &Limits) -> Result<PosetMap> {
    let p = e.source();
    if sp.method() != Method::Sp || sp.base() != p {
        return Err(Error::PreconditionFailed(
            "quotient target must be the sum-completion S(P) of the map's source".into(),
        ));
    }
    if let Some(w) = is_weakly_supplemented(p).witness {
        return Err(Error::PreconditionFailed(format!(
            "source is not weakly supplemented: {} < {} has no disjoint remainder",
            p.label(w[0]),
            p.label(w[1])
        )));
    }
    let report = is_sum_completion(e, limits)?;
    if let Some(v) = report.failures().first() {
        return Err(Error::PreconditionFailed(format!(
            "map is not a sum-completion: {} fails",
            v.property
        )));
    }

    let m = e.target();
    let s = sp.extended();
    let sigma = sp.embed();
    let mut images: Vec<ElementId> = vec![0; m.len()];
    for y in m.elements() {
        let below = p.subset(p.elements().filter(|&x| m.leq(e.apply(x), y)));
        if let Some(x) = p.elements().find(|&x| e.apply(x) == y) {
            images[y] = sigma.apply(x);
            continue;
        }
        if below.is_empty() {
            return Err(Error::InvariantViolation(format!(
                "{} has no part in the image of P",
                m.label(y)
            )));
        }
        images[y] = if sums_of(p, &below)?.solutions.is_empty() {
            let c = closure(p, &below)?;
            sp.provenance()
                .iter()
                .find(|r| r.signature == c)
                .map(|r| r.element)
                .ok_or_else(|| {
                    Error::InvariantViolation(format!(
                        "S(P) has no element for closure {}",
                        p.format_subset(&c)
                    ))
                })?
        } else {
            greatest_sum(s, &sigma.image_of(&below))?.ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "{} in S(P) has no greatest sum",
                    p.format_subset(&below)
                ))
            })?
        };
    }
    let q = PosetMap::new(m.clone(), s.clone(), images)?;
    if !q.is_monotone() {
        return Err(Error::InvariantViolation("quotient is not monotone".into()));
    }
    if !q.is_onto() {
        return Err(Error::InvariantViolation("quotient is not onto".into()));
    }
    if e.then(&q)?.images() != sigma.images() {
        return Err(Error::InvariantViolation("quotient does not commute with the embeddings".into()));
    }
    Ok(q)
}

/// `S(P)` with one more element `t'` above everything, and the embedding of
/// `P` into it. `t'` is a second sum of `P` next to whatever top `S(P)`
/// already has, so the result is a sum-completion that `q` must collapse.
pub fn duplicated_top_fixture(sp: &Completion) -> Result<PosetMap> {
    let s = sp.extended();
    let k = s.len();
    let mut label = String::from("t'");
    while s.index_of(&label).is_some() {
        label.push('\'');
    }
    let m = Poset::from_leq(k + 1, |x, y| y == k || (x < k && s.leq(x, y)))?
        .with_labels(s.labels().iter().cloned().chain([label]))?;
    PosetMap::new(sp.base().clone(), m, sp.embed().images().to_vec())
}
