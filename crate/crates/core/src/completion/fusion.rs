use std::collections::HashSet;

use super::{extend_base, Completion, Fresh, Guarantee, Method};
use crate::axioms::is_atomic;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::signature::fusion_classes;
use crate::subset::Subset;

/// Adds a pairwise incomparable `f_A` for every fusion-less nonempty `A`,
/// with exactly `↓A` below it.
///
/// Output size is exponential by design, so the carrier is capped at
/// [`Limits::max_fp_n`].
pub fn complete_fp(p: &Poset, limits: &Limits) -> Result<Completion> {
    let n = p.len();
    if n > limits.max_fp_n {
        return Err(Error::ResourceLimit {
            what: "F(P) subset enumeration",
            size: n,
            limit: limits.max_fp_n,
        });
    }
    let singles: HashSet<&Subset> = p.elements().map(|x| p.overlap_of(x)).collect();
    let subsets = 1u64 << n;
    // overlap[m] = 𝖮 of the subset with mask m, built from the mask minus its lowest bit.
    let mut overlap: Vec<Subset> = Vec::with_capacity(subsets as usize);
    overlap.push(p.empty_subset());
    let mut fresh = Vec::new();
    for mask in 1..subsets {
        let low = mask.trailing_zeros() as usize;
        let o = &overlap[(mask & (mask - 1)) as usize] | p.overlap_of(low);
        if !singles.contains(&o) {
            let a = p.subset_from_mask(mask);
            fresh.push(Fresh {
                generator: a.clone(),
                signature: a,
            });
        }
        overlap.push(o);
    }
    drop(overlap);
    extend_base(
        Method::Fp,
        p,
        "f",
        fresh,
        |fresh, i, j| match (i < n, j < n) {
            (true, true) => p.leq(i, j),
            (true, false) => fresh[j - n].signature.iter().any(|a| p.leq(i, a)),
            (false, _) => i == j,
        },
        Guarantee::FusionCompletion,
    )
}

/// Distinct overlap signatures of fusion-less subsets, with one generator each.
fn missing_signatures(p: &Poset, limits: &Limits) -> Result<Vec<Fresh>> {
    limits.check_subsets("fusion signatures", p.len())?;
    Ok(fusion_classes(p, limits)?
        .into_iter()
        .filter(|c| c.fusions.is_empty())
        .map(|c| Fresh {
            generator: c.generator,
            signature: c.overlap,
        })
        .collect())
}

/// Adds one `f_S` per distinct signature `S = 𝖮(A)` of a fusion-less `A`,
/// with `x ≤ f_S ⇔ 𝖮(x) ⊆ S`.
pub fn complete_gp(p: &Poset, limits: &Limits) -> Result<Completion> {
    let fresh = missing_signatures(p, limits)?;
    let n = p.len();
    extend_base(
        Method::Gp,
        p,
        "fO",
        fresh,
        |fresh, i, j| match (i < n, j < n) {
            (true, true) => p.leq(i, j),
            (true, false) => p.overlap_of(i).is_subset(&fresh[j - n].signature),
            (false, _) => i == j,
        },
        Guarantee::FusionCompletion,
    )
}

/// Same carrier as [`complete_gp`], but only atoms `x` with `𝖮(x) ⊆ S` sit
/// below `f_S`.
///
/// Requires `↓A` atomic for every fusion-less `A`. Finite posets always
/// satisfy this; the check fails only if some element has no atom below it.
pub fn complete_hp(p: &Poset, limits: &Limits) -> Result<Completion> {
    let atomic = is_atomic(p);
    if let Some(w) = atomic.witness {
        return Err(Error::PreconditionFailed(format!(
            "H(P) needs an atomic poset; {} has no atom below it",
            p.label(w[0])
        )));
    }
    let fresh = missing_signatures(p, limits)?;
    let n = p.len();
    extend_base(
        Method::Hp,
        p,
        "fO",
        fresh,
        |fresh, i, j| match (i < n, j < n) {
            (true, true) => p.leq(i, j),
            (true, false) => p.is_atom(i) && p.overlap_of(i).is_subset(&fresh[j - n].signature),
            (false, _) => i == j,
        },
        Guarantee::FusionCompletion,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::fusions_of;
    use crate::fixtures;
    use std::collections::BTreeSet;

    fn fusionless(p: &Poset) -> Vec<Subset> {
        (1u64..(1 << p.len()))
            .map(|m| p.subset_from_mask(m))
            .filter(|a| fusions_of(p, a).unwrap().is_empty())
            .collect()
    }

    #[test]
    fn fp_antichain() {
        let p = fixtures::antichain(3);
        let c = complete_fp(&p, &Limits::default()).unwrap();
        assert_eq!(c.added(), 4);
        let m = c.extended();
        let abc = m.index_of("f{a,b,c}").unwrap();
        assert_eq!(m.top(), None);
        // f_{a,b} is not below f_{a,b,c}.
        assert!(!m.leq(m.index_of("f{a,b}").unwrap(), abc));
        assert_eq!(m.down(abc).len(), 4);
    }

    #[test]
    fn fp_multcom_adds_seven() {
        let p = fixtures::multcom();
        let c = complete_fp(&p, &Limits::default()).unwrap();
        assert_eq!(c.added(), 7);
        assert_eq!(c.extended().len(), 11);
        let expected: BTreeSet<Vec<usize>> = fusionless(&p).iter().map(Subset::to_vec).collect();
        let built: BTreeSet<Vec<usize>> = c.provenance().iter().map(|r| r.signature.to_vec()).collect();
        assert_eq!(built, expected);
        // Each is d together with a nonempty part of {a,b,c}.
        assert!(built.iter().all(|a| a.contains(&3) && a.len() >= 2));
    }

    #[test]
    fn fp_chain_adds_nothing() {
        assert_eq!(complete_fp(&fixtures::chain(4), &Limits::default()).unwrap().added(), 0);
    }

    #[test]
    fn fp_respects_bound() {
        let limits = Limits {
            max_fp_n: 3,
            ..Limits::default()
        };
        assert!(matches!(
            complete_fp(&fixtures::antichain(4), &limits),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn gp_multcom_adds_a_top() {
        let p = fixtures::multcom();
        let c = complete_gp(&p, &Limits::default()).unwrap();
        assert_eq!(c.added(), 1);
        assert_eq!(c.extended().top(), Some(4));
        assert_eq!(c.extended().label(4), "fO{a,b,c,d}");
        assert_eq!(c.provenance()[0].signature, p.full_subset());
    }

    #[test]
    fn gp_antichain_adds_four() {
        let c = complete_gp(&fixtures::antichain(3), &Limits::default()).unwrap();
        assert_eq!(c.added(), 4);
    }

    #[test]
    fn gp_signatures_match_enumeration() {
        for p in [fixtures::multcom(), fixtures::counterwscomp(), fixtures::antichain(4), fixtures::two_chains(3)] {
            let c = complete_gp(&p, &Limits::default()).unwrap();
            let expected: BTreeSet<Vec<usize>> = fusionless(&p)
                .iter()
                .map(|a| p.overlap_set(a).to_vec())
                .collect();
            let built: BTreeSet<Vec<usize>> = c.provenance().iter().map(|r| r.signature.to_vec()).collect();
            assert_eq!(built, expected, "{p:?}");
        }
    }

    #[test]
    fn hp_multcom_sits_on_atoms() {
        let p = fixtures::multcom();
        let c = complete_hp(&p, &Limits::default()).unwrap();
        let m = c.extended();
        assert_eq!(c.added(), 1);
        let mut below = m.down(4).clone();
        below.remove(4);
        assert_eq!(below, m.subset([2, 3]));
    }

    #[test]
    fn hp_equals_gp_on_antichains() {
        let p = fixtures::antichain(3);
        let g = complete_gp(&p, &Limits::default()).unwrap();
        let h = complete_hp(&p, &Limits::default()).unwrap();
        assert_eq!(g.extended(), h.extended());
    }

    #[test]
    fn hp_of_a_two_chain_adds_nothing() {
        let c = complete_hp(&fixtures::chain(2), &Limits::default()).unwrap();
        assert_eq!(c.added(), 0);
    }
}
