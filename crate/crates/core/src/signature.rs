//! Signature classes of subsets.
//!
//! Whether `x` is a fusion of `A` depends on `A` only through `𝖮(A)`, and
//! whether `x` is a sum of `A` depends only on the pair
//! `(upper bounds of A, 𝖮(A))`. Both are homomorphic images of union:
//! `𝖮(A ∪ B) = 𝖮(A) ∪ 𝖮(B)` and `UB(A ∪ B) = UB(A) ∩ UB(B)`. Closing the
//! singleton signatures under the matching operation therefore enumerates
//! every signature of every nonempty subset, usually far fewer than `2^n`.

use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::subset::Subset;

/// Closes `gens` under `combine`. Each entry carries the indices of the
/// generators it was built from.
pub(crate) fn close_under<K, F>(gens: &[K], combine: F, cap: usize) -> Result<Vec<(K, Vec<usize>)>>
where
    K: Clone + Eq + Hash,
    F: Fn(&K, &K) -> K,
{
    let mut seen: HashMap<K, usize> = HashMap::new();
    let mut out: Vec<(K, Vec<usize>)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if !seen.contains_key(g) {
            seen.insert(g.clone(), out.len());
            out.push((g.clone(), vec![i]));
        }
    }
    let mut next = 0;
    while next < out.len() {
        for (i, g) in gens.iter().enumerate() {
            let k = combine(&out[next].0, g);
            if seen.contains_key(&k) {
                continue;
            }
            if out.len() >= cap {
                return Err(Error::ResourceLimit {
                    what: "signature closure",
                    size: out.len() + 1,
                    limit: cap,
                });
            }
            let mut from = out[next].1.clone();
            if let Err(pos) = from.binary_search(&i) {
                from.insert(pos, i);
            }
            seen.insert(k.clone(), out.len());
            out.push((k, from));
        }
        next += 1;
    }
    Ok(out)
}

/// All nonempty subsets sharing one overlap set.
#[derive(Debug, Clone)]
pub struct FusionClass {
    pub overlap: Subset,
    /// One subset with this overlap set.
    pub generator: Subset,
    pub fusions: Subset,
}

/// All nonempty subsets sharing one `(upper bounds, overlap set)` pair.
#[derive(Debug, Clone)]
pub struct SumClass {
    pub upper_bounds: Subset,
    pub overlap: Subset,
    pub generator: Subset,
    pub sums: Subset,
}

pub fn fusion_classes(p: &Poset, limits: &Limits) -> Result<Vec<FusionClass>> {
    let gens: Vec<Subset> = p.elements().map(|x| p.overlap_of(x).clone()).collect();
    let classes = close_under(&gens, |a, b| a | b, limits.max_signatures)?;
    Ok(classes
        .into_iter()
        .map(|(overlap, from)| {
            let fusions = p.subset(p.elements().filter(|&x| p.overlap_of(x) == &overlap));
            FusionClass {
                overlap,
                generator: p.subset(from),
                fusions,
            }
        })
        .collect())
}

pub fn sum_classes(p: &Poset, limits: &Limits) -> Result<Vec<SumClass>> {
    let gens: Vec<(Subset, Subset)> = p
        .elements()
        .map(|x| (p.up(x).clone(), p.overlap_of(x).clone()))
        .collect();
    let classes = close_under(
        &gens,
        |(u1, o1), (u2, o2)| (u1 & u2, o1 | o2),
        limits.max_signatures,
    )?;
    Ok(classes
        .into_iter()
        .map(|((upper_bounds, overlap), from)| {
            let sums = p.subset(
                upper_bounds
                    .iter()
                    .filter(|&x| p.down(x).is_subset(&overlap)),
            );
            SumClass {
                upper_bounds,
                overlap,
                generator: p.subset(from),
                sums,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessVerdict {
    pub holds: bool,
    /// Number of signature classes examined.
    pub classes: usize,
    /// A nonempty subset with no fusion (resp. sum), when completeness fails.
    pub witness: Option<Vec<usize>>,
}

/// Every nonempty subset has a fusion.
pub fn fusion_complete(p: &Poset, limits: &Limits) -> Result<CompletenessVerdict> {
    let classes = fusion_classes(p, limits)?;
    let witness = classes
        .iter()
        .find(|c| c.fusions.is_empty())
        .map(|c| c.generator.to_vec());
    Ok(CompletenessVerdict {
        holds: witness.is_none(),
        classes: classes.len(),
        witness,
    })
}

/// Every nonempty subset has a sum.
pub fn sum_complete(p: &Poset, limits: &Limits) -> Result<CompletenessVerdict> {
    let classes = sum_classes(p, limits)?;
    let witness = classes
        .iter()
        .find(|c| c.sums.is_empty())
        .map(|c| c.generator.to_vec());
    Ok(CompletenessVerdict {
        holds: witness.is_none(),
        classes: classes.len(),
        witness,
    })
}
