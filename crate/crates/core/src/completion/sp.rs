use std::collections::BTreeMap;

use super::{extend_base, Completion, Fresh, Guarantee, Method};
use crate::config::Limits;
use crate::error::Result;
use crate::poset::Poset;
use crate::signature::sum_classes;
use crate::subset::Subset;

/// Adds one element `s_C` per distinct closure `C = Ā` of a sum-less `A`.
///
/// Order: `P` unchanged; `x ⊑ s_C ⇔ x ∈ C`; `s_C ⊑ s_D ⇔ C ⊆ D`;
/// `s_C ⊑ x ⇔ C ⊆ ↓x`.
///
/// Sum-less subsets are found through their `(upper bounds, 𝖮(A))`
/// signatures, which decide both sum existence and the closure.
pub fn complete_sp(p: &Poset, limits: &Limits) -> Result<Completion> {
    limits.check_subsets("S(P)", p.len())?;
    let mut by_closure: BTreeMap<Subset, Subset> = BTreeMap::new();
    for class in sum_classes(p, limits)? {
        if !class.sums.is_empty() {
            continue;
        }
        let closure = p.subset(p.elements().filter(|&x| p.down(x).is_subset(&class.overlap)));
        by_closure
            .entry(closure)
            .and_modify(|g| {
                if class.generator < *g {
                    *g = class.generator.clone();
                }
            })
            .or_insert(class.generator);
    }
    let fresh = by_closure
        .into_iter()
        .map(|(signature, generator)| Fresh {
            generator,
            signature,
        })
        .collect();
    let n = p.len();
    extend_base(
        Method::Sp,
        p,
        "s",
        fresh,
        |fresh, i, j| match (i < n, j < n) {
            (true, true) => p.leq(i, j),
            (true, false) => fresh[j - n].signature.contains(i),
            (false, false) => fresh[i - n].signature.is_subset(&fresh[j - n].signature),
            (false, true) => fresh[i - n].signature.is_subset(p.down(j)),
        },
        Guarantee::SumCompletion,
    )
}
