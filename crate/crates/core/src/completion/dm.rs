use super::{inclusion_completion, Completion, Guarantee, Method};
use crate::error::Result;
use crate::poset::Poset;
use crate::signature::close_under;

/// Dedekind–MacNeille completion: the cuts `A = LB(UB(A))` ordered by
/// inclusion, with `x ↦ ↓x`.
///
/// Cuts are exactly the intersections of principal down-sets, plus `P`
/// itself. With `drop_bottom` the empty cut is removed; it is never the
/// image of an element.
pub fn complete_dm(p: &Poset, drop_bottom: bool) -> Result<Completion> {
    let mut gens: Vec<_> = p.elements().map(|x| p.down(x).clone()).collect();
    gens.push(p.full_subset());
    // At most one cut per subset of the carrier, so no cap is needed beyond
    // what the intersection closure itself produces.
    let cuts = close_under(&gens, |a, b| a & b, usize::MAX)?;
    let sets = cuts
        .into_iter()
        .filter(|(c, _)| !(drop_bottom && c.is_empty()))
        .map(|(c, _)| {
            let generator = p.upper_bounds(&c);
            (c, generator)
        })
        .collect();
    let images: Vec<_> = p.elements().map(|x| p.down(x).clone()).collect();
    inclusion_completion(
        Method::Dm,
        p,
        sets,
        &images,
        |s, preimage| match preimage {
            Some(x) => p.label(x).to_string(),
            None => format!("cut{}", p.format_subset(s)),
        },
        Guarantee::JoinCompletion,
    )
}
