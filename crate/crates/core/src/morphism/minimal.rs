use super::analysis::{is_fusion_completion, MapProperty};
use super::PosetMap;
use crate::completion::{Completion, Method};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::signature::close_under;
use crate::subset::Subset;
use crate::ElementId;

/// The injective, monotone, fusion-preserving map `g: H(P) → M` with
/// `g ∘ α = e`, for a dense fusion-completion `e: P → M`.
///
/// `g` agrees with `e` on `P` and sends `f_S` to the least-index fusion in
/// `M` of `e({x | 𝖮(x) ⊆ S})`.
pub fn build_minimal_embedding(hp: &Completion, e: &PosetMap, limits: &Limits) -> Result<PosetMap> {
    let p = e.source();
    if hp.method() != Method::Hp || hp.base() != p {
        return Err(Error::PreconditionFailed(
            "minimal embedding needs H(P) of the map's source".into(),
        ));
    }
    let report = is_fusion_completion(e, limits)?;
    if let Some(v) = report.failures().first() {
        return Err(Error::PreconditionFailed(format!(
            "map is not a fusion-completion: {} fails",
            v.property
        )));
    }
    if !report.holds(MapProperty::Dense) {
        return Err(Error::PreconditionFailed("fusion-completion is not dense".into()));
    }

    let h = hp.extended();
    let m = e.target();
    let alpha = hp.embed();
    let mut images: Vec<ElementId> = vec![0; h.len()];
    for x in p.elements() {
        images[alpha.apply(x)] = e.apply(x);
    }
    for r in hp.provenance() {
        let tilde = p.subset(p.elements().filter(|&x| p.overlap_of(x).is_subset(&r.signature)));
        let target_overlap = m.overlap_set(&e.image_of(&tilde));
        images[r.element] = m
            .elements()
            .find(|&y| m.overlap_of(y) == &target_overlap)
            .ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "{} has no fusion in the target",
                    p.format_subset(&tilde)
                ))
            })?;
    }
    let g = PosetMap::new(h.clone(), m.clone(), images)?;
    if !g.is_injective() {
        return Err(Error::InvariantViolation("minimal embedding is not injective".into()));
    }
    if !g.is_monotone() {
        return Err(Error::InvariantViolation("minimal embedding is not monotone".into()));
    }
    if let Some(w) = fusion_preservation_failure(&g, limits)? {
        return Err(Error::InvariantViolation(format!(
            "minimal embedding does not preserve the fusion {} of {}",
            h.label(w.1),
            h.format_subset(&w.0)
        )));
    }
    if alpha.then(&g)?.images() != e.images() {
        return Err(Error::InvariantViolation(
            "minimal embedding does not commute with the embeddings".into(),
        ));
    }
    Ok(g)
}

/// A subset `A` of the source and a fusion `x` of `A` whose image is not a
/// fusion of `g(A)`. Decided over the closure of `(𝖮(A), 𝖮(g(A)))` pairs.
pub(crate) fn fusion_preservation_failure(
    g: &PosetMap,
    limits: &Limits,
) -> Result<Option<(Subset, ElementId)>> {
    let (s, t) = (g.source(), g.target());
    let gens: Vec<(Subset, Subset)> = s
        .elements()
        .map(|x| (s.overlap_of(x).clone(), t.overlap_of(g.apply(x)).clone()))
        .collect();
    let classes = close_under(&gens, |a, b| (&a.0 | &b.0, &a.1 | &b.1), limits.max_signatures)?;
    for ((os, ot), from) in classes {
        if let Some(x) = s
            .elements()
            .find(|&x| s.overlap_of(x) == &os && t.overlap_of(g.apply(x)) != &ot)
        {
            return Ok(Some((s.subset(from), x)));
        }
    }
    Ok(None)
}
