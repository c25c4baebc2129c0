use super::{inclusion_completion, Completion, Guarantee, Method};
use crate::axioms::is_separative;
use crate::config::Limits;
use crate::error::Result;
use crate::poset::Poset;
use crate::signature::close_under;

/// The family `{𝖮(A) | ∅ ≠ A ⊆ P}` ordered by inclusion, with `x ↦ 𝖮(x)`.
///
/// Built as the union-closure of the `n` generators `𝖮(x)`. The map is an
/// embedding only for separative `P`; otherwise the guarantee is
/// [`Guarantee::NotApplicable`].
pub fn complete_op(p: &Poset, limits: &Limits) -> Result<Completion> {
    let gens: Vec<_> = p.elements().map(|x| p.overlap_of(x).clone()).collect();
    let sets = close_under(&gens, |a, b| a | b, limits.max_signatures)?
        .into_iter()
        .map(|(s, from)| (s, p.subset(from)))
        .collect();
    let guarantee = if is_separative(p).holds {
        Guarantee::FusionCompletion
    } else {
        Guarantee::NotApplicable
    };
    inclusion_completion(
        Method::Op,
        p,
        sets,
        &gens,
        |s, _| format!("O{}", p.format_subset(s)),
        guarantee,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::collections::BTreeSet;

    /// Every distinct `𝖮(A)` by enumerating all nonempty subsets.
    fn brute_overlap_sets(p: &Poset) -> BTreeSet<Vec<usize>> {
        (1u64..(1 << p.len()))
            .map(|m| p.overlap_set(&p.subset_from_mask(m)).to_vec())
            .collect()
    }

    #[test]
    fn antichain_gives_powerset_minus_empty() {
        let p = fixtures::antichain(3);
        let c = complete_op(&p, &Limits::default()).unwrap();
        assert_eq!(c.extended().len(), 7);
        assert_eq!(c.added(), 4);
        assert_eq!(c.guarantee(), Guarantee::FusionCompletion);
        assert_eq!(c.extended().label(0), "O{a}");
        assert_eq!(c.extended().label(6), "O{a,b,c}");
        assert_eq!(c.extended().top(), Some(6));
    }

    #[test]
    fn carrier_matches_enumeration() {
        for p in [fixtures::multcom(), fixtures::counterwscomp(), fixtures::chain(3), fixtures::two_chains(2)] {
            let c = complete_op(&p, &Limits::default()).unwrap();
            let built: BTreeSet<Vec<usize>> = (0..c.extended().len())
                .map(|i| {
                    let m = c.extended();
                    // Recover the set from the embedding: elements of P whose image lies below.
                    p.elements().filter(|&x| m.leq(c.embed().apply(x), i)).collect::<Vec<_>>()
                })
                .map(|below| p.overlap_set(&p.subset(below)).to_vec())
                .collect();
            assert_eq!(built, brute_overlap_sets(&p), "{p:?}");
        }
    }

    #[test]
    fn multcom_collapses() {
        let p = fixtures::multcom();
        let c = complete_op(&p, &Limits::default()).unwrap();
        // {a,b,c}, {d}, and their union.
        assert_eq!(c.extended().len(), 3);
        assert_eq!(c.guarantee(), Guarantee::NotApplicable);
        assert_eq!(c.embed().apply(0), c.embed().apply(1));
        assert_eq!(c.provenance().len(), 1);
        assert_eq!(c.provenance()[0].signature, p.full_subset());
    }

    #[test]
    fn singleton() {
        let c = complete_op(&fixtures::chain(1), &Limits::default()).unwrap();
        assert_eq!(c.extended().len(), 1);
        assert_eq!(c.added(), 0);
    }
}
