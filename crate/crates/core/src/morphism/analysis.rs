//! Preservation, reflection and density properties of maps.
//!
//! Fusion and sum verdicts quantify over every nonempty source subset `A`.
//! Each of them depends on `A` only through the tuple
//! `(UB(A), 𝖮(A), UB(f(A)), 𝖮(f(A)))`, which is closed under union of
//! subsets, so the quantification runs over the closure of the singleton
//! tuples instead of over `2^n` subsets.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::PosetMap;
use crate::composition::{fusions_of, is_fusion, is_sum, sums_of};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::signature::{close_under, fusion_complete, sum_complete};
use crate::subset::Subset;
use crate::ElementId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapProperty {
    OrderPreserving,
    OrderReflecting,
    OverlapPreserving,
    OverlapReflecting,
    FusionPreserving,
    FusionReflecting,
    FusionDense,
    SumPreserving,
    SumReflecting,
    SumDense,
    Dense,
    TargetFusionComplete,
    TargetSumComplete,
}

impl fmt::Display for MapProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variants serialize");
        f.write_str(s.as_str().expect("unit variants serialize to strings"))
    }
}

/// A counterexample to one property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Source elements `x, y`.
    Pair { x: ElementId, y: ElementId },
    /// Source subset `A` and source element `x`.
    SubsetElement { subset: Vec<ElementId>, element: ElementId },
    /// A target element that no source subset accounts for.
    Target { element: ElementId },
    /// A nonempty target subset without a fusion (resp. sum).
    TargetSubset { subset: Vec<ElementId> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyVerdict {
    pub property: MapProperty,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl PropertyVerdict {
    fn new(property: MapProperty, witness: Option<Witness>) -> Self {
        PropertyVerdict {
            property,
            holds: witness.is_none(),
            witness,
        }
    }

    /// Re-evaluates the witness against the definition of the property,
    /// using the composition predicates directly and, for density, a scan
    /// over every nonempty source subset.
    pub fn witness_refutes(&self, f: &PosetMap) -> bool {
        let (p, m) = (f.source(), f.target());
        let Some(w) = &self.witness else {
            return false;
        };
        let overlaps = |q: &crate::Poset, u: ElementId, v: ElementId| {
            q.elements().any(|z| q.leq(z, u) && q.leq(z, v))
        };
        match (self.property, w) {
            (MapProperty::OrderPreserving, &Witness::Pair { x, y }) => p.leq(x, y) && !m.leq(f.apply(x), f.apply(y)),
            (MapProperty::OrderReflecting, &Witness::Pair { x, y }) => m.leq(f.apply(x), f.apply(y)) && !p.leq(x, y),
            (MapProperty::OverlapPreserving, &Witness::Pair { x, y }) => {
                overlaps(p, x, y) && !overlaps(m, f.apply(x), f.apply(y))
            }
            (MapProperty::OverlapReflecting, &Witness::Pair { x, y }) => {
                overlaps(m, f.apply(x), f.apply(y)) && !overlaps(p, x, y)
            }
            (prop, Witness::SubsetElement { subset, element }) => {
                let a = p.subset(subset.iter().copied());
                let fa = f.image_of(&a);
                let x = *element;
                let fx = f.apply(x);
                match prop {
                    MapProperty::FusionPreserving => {
                        is_fusion(p, x, &a).unwrap_or(false) && !is_fusion(m, fx, &fa).unwrap_or(true)
                    }
                    MapProperty::FusionReflecting => {
                        is_fusion(m, fx, &fa).unwrap_or(false) && !is_fusion(p, x, &a).unwrap_or(true)
                    }
                    MapProperty::SumPreserving => is_sum(p, x, &a).unwrap_or(false) && !is_sum(m, fx, &fa).unwrap_or(true),
                    MapProperty::SumReflecting => is_sum(m, fx, &fa).unwrap_or(false) && !is_sum(p, x, &a).unwrap_or(true),
                    _ => false,
                }
            }
            (prop, &Witness::Target { element }) => {
                if prop == MapProperty::Dense {
                    return !p.elements().any(|y| m.leq(f.apply(y), element));
                }
                if p.len() >= 64 {
                    return false;
                }
                !(1u64..(1 << p.len())).any(|mask| {
                    let fa = f.image_of(&p.subset_from_mask(mask));
                    match prop {
                        MapProperty::FusionDense => is_fusion(m, element, &fa).unwrap_or(false),
                        MapProperty::SumDense => is_sum(m, element, &fa).unwrap_or(false),
                        _ => true,
                    }
                })
            }
            (prop, Witness::TargetSubset { subset }) => {
                let b = m.subset(subset.iter().copied());
                match prop {
                    MapProperty::TargetFusionComplete => fusions_of(m, &b).map(|s| s.is_empty()).unwrap_or(false),
                    MapProperty::TargetSumComplete => sums_of(m, &b).map(|s| s.solutions.is_empty()).unwrap_or(false),
                    _ => false,
                }
            }
            _ => false,
        }
    }
}

/// Verdicts for a map, plus the subset of properties a contract requires.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapPropertyReport {
    pub verdicts: Vec<PropertyVerdict>,
    /// Properties whose conjunction the report is judged by. Empty for a
    /// plain analysis.
    pub required: Vec<MapProperty>,
}

impl MapPropertyReport {
    pub fn verdict(&self, property: MapProperty) -> Option<&PropertyVerdict> {
        self.verdicts.iter().find(|v| v.property == property)
    }

    /// Whether `property` was evaluated and holds.
    pub fn holds(&self, property: MapProperty) -> bool {
        self.verdict(property).is_some_and(|v| v.holds)
    }

    pub fn is_order_embedding(&self) -> bool {
        self.holds(MapProperty::OrderPreserving) && self.holds(MapProperty::OrderReflecting)
    }

    /// All required properties hold.
    pub fn passes(&self) -> bool {
        self.required.iter().all(|&p| self.holds(p))
    }

    /// Required properties that fail.
    pub fn failures(&self) -> Vec<&PropertyVerdict> {
        self.required
            .iter()
            .filter_map(|&p| self.verdict(p))
            .filter(|v| !v.holds)
            .collect()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Tuple {
    ub_p: Subset,
    o_p: Subset,
    ub_m: Subset,
    o_m: Subset,
}

/// Decides every map property except target completeness.
pub fn analyze_map(f: &PosetMap, limits: &Limits) -> Result<MapPropertyReport> {
    let (p, m) = (f.source(), f.target());
    limits.check_subsets("map analysis", p.len())?;
    let fx = |x: ElementId| f.apply(x);

    let pairs = |holds: &dyn Fn(ElementId, ElementId) -> bool| {
        p.elements()
            .flat_map(|x| p.elements().map(move |y| (x, y)))
            .find(|&(x, y)| !holds(x, y))
            .map(|(x, y)| Witness::Pair { x, y })
    };
    let mut verdicts = vec![
        PropertyVerdict::new(
            MapProperty::OrderPreserving,
            pairs(&|x, y| !p.leq(x, y) || m.leq(fx(x), fx(y))),
        ),
        PropertyVerdict::new(
            MapProperty::OrderReflecting,
            pairs(&|x, y| !m.leq(fx(x), fx(y)) || p.leq(x, y)),
        ),
        PropertyVerdict::new(
            MapProperty::OverlapPreserving,
            pairs(&|x, y| !p.overlaps(x, y) || m.overlaps(fx(x), fx(y))),
        ),
        PropertyVerdict::new(
            MapProperty::OverlapReflecting,
            pairs(&|x, y| !m.overlaps(fx(x), fx(y)) || p.overlaps(x, y)),
        ),
    ];

    let gens: Vec<Tuple> = p
        .elements()
        .map(|x| Tuple {
            ub_p: p.up(x).clone(),
            o_p: p.overlap_of(x).clone(),
            ub_m: m.up(fx(x)).clone(),
            o_m: m.overlap_of(fx(x)).clone(),
        })
        .collect();
    let classes = close_under(
        &gens,
        |a, b| Tuple {
            ub_p: &a.ub_p & &b.ub_p,
            o_p: &a.o_p | &b.o_p,
            ub_m: &a.ub_m & &b.ub_m,
            o_m: &a.o_m | &b.o_m,
        },
        limits.max_signatures,
    )?;

    let fusion_p = |t: &Tuple, x: ElementId| p.overlap_of(x) == &t.o_p;
    let fusion_m = |t: &Tuple, x: ElementId| m.overlap_of(fx(x)) == &t.o_m;
    let sum_p = |t: &Tuple, x: ElementId| t.ub_p.contains(x) && p.down(x).is_subset(&t.o_p);
    let sum_m = |t: &Tuple, x: ElementId| t.ub_m.contains(fx(x)) && m.down(fx(x)).is_subset(&t.o_m);
    let subset_witness = |bad: &dyn Fn(&Tuple, ElementId) -> bool| {
        classes.iter().find_map(|(t, from)| {
            p.elements().find(|&x| bad(t, x)).map(|x| Witness::SubsetElement {
                subset: from.clone(),
                element: x,
            })
        })
    };
    verdicts.push(PropertyVerdict::new(
        MapProperty::FusionPreserving,
        subset_witness(&|t, x| fusion_p(t, x) && !fusion_m(t, x)),
    ));
    verdicts.push(PropertyVerdict::new(
        MapProperty::FusionReflecting,
        subset_witness(&|t, x| fusion_m(t, x) && !fusion_p(t, x)),
    ));

    let reachable_overlaps: HashSet<&Subset> = classes.iter().map(|(t, _)| &t.o_m).collect();
    let fusion_dense = m
        .elements()
        .find(|&y| !reachable_overlaps.contains(m.overlap_of(y)))
        .map(|element| Witness::Target { element });
    verdicts.push(PropertyVerdict::new(MapProperty::FusionDense, fusion_dense));

    verdicts.push(PropertyVerdict::new(
        MapProperty::SumPreserving,
        subset_witness(&|t, x| sum_p(t, x) && !sum_m(t, x)),
    ));
    verdicts.push(PropertyVerdict::new(
        MapProperty::SumReflecting,
        subset_witness(&|t, x| sum_m(t, x) && !sum_p(t, x)),
    ));
    let sum_dense = m
        .elements()
        .find(|&y| {
            !classes
                .iter()
                .any(|(t, _)| t.ub_m.contains(y) && m.down(y).is_subset(&t.o_m))
        })
        .map(|element| Witness::Target { element });
    verdicts.push(PropertyVerdict::new(MapProperty::SumDense, sum_dense));

    let image = f.image();
    let dense = m
        .elements()
        .find(|&y| !m.down(y).intersects(&image))
        .map(|element| Witness::Target { element });
    verdicts.push(PropertyVerdict::new(MapProperty::Dense, dense));

    Ok(MapPropertyReport {
        verdicts,
        required: Vec::new(),
    })
}

fn target_verdict(
    property: MapProperty,
    verdict: crate::signature::CompletenessVerdict,
) -> PropertyVerdict {
    PropertyVerdict::new(
        property,
        verdict.witness.map(|subset| Witness::TargetSubset { subset }),
    )
}

/// `∘`-reflecting, fusion-preserving, fusion-dense order-embedding into a
/// fusion-complete poset.
pub fn is_fusion_completion(f: &PosetMap, limits: &Limits) -> Result<MapPropertyReport> {
    let mut report = analyze_map(f, limits)?;
    report.verdicts.push(target_verdict(
        MapProperty::TargetFusionComplete,
        fusion_complete(f.target(), limits)?,
    ));
    report.required = vec![
        MapProperty::OrderPreserving,
        MapProperty::OrderReflecting,
        MapProperty::OverlapReflecting,
        MapProperty::FusionPreserving,
        MapProperty::FusionDense,
        MapProperty::TargetFusionComplete,
    ];
    Ok(report)
}

/// Sum-dense order-embedding into a sum-complete poset.
pub fn is_sum_completion(f: &PosetMap, limits: &Limits) -> Result<MapPropertyReport> {
    let mut report = analyze_map(f, limits)?;
    report.verdicts.push(target_verdict(
        MapProperty::TargetSumComplete,
        sum_complete(f.target(), limits)?,
    ));
    report.required = vec![
        MapProperty::OrderPreserving,
        MapProperty::OrderReflecting,
        MapProperty::SumDense,
        MapProperty::TargetSumComplete,
    ];
    Ok(report)
}

/// For a dense order-embedding, checks that it is `∘`-reflecting,
/// sum-reflecting and sum-preserving. A failure of any of the three is
/// reported as [`Error::InvariantViolation`].
pub fn dense_embedding_consequences(f: &PosetMap, limits: &Limits) -> Result<MapPropertyReport> {
    let mut report = analyze_map(f, limits)?;
    if !(report.is_order_embedding() && report.holds(MapProperty::Dense)) {
        return Err(Error::PreconditionFailed("map is not a dense order-embedding".into()));
    }
    report.required = vec![
        MapProperty::OverlapReflecting,
        MapProperty::SumReflecting,
        MapProperty::SumPreserving,
    ];
    if let Some(v) = report.failures().first() {
        return Err(Error::InvariantViolation(format!(
            "dense order-embedding is not {}: {:?}",
            v.property, v.witness
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::{complete_fp, complete_gp, complete_op, complete_sp};
    use crate::fixtures;
    use crate::poset::Poset;

    const ALL: [MapProperty; 11] = [
        MapProperty::OrderPreserving,
        MapProperty::OrderReflecting,
        MapProperty::OverlapPreserving,
        MapProperty::OverlapReflecting,
        MapProperty::FusionPreserving,
        MapProperty::FusionReflecting,
        MapProperty::FusionDense,
        MapProperty::SumPreserving,
        MapProperty::SumReflecting,
        MapProperty::SumDense,
        MapProperty::Dense,
    ];

    /// Every property by its definition, over all nonempty source subsets.
    fn brute(f: &PosetMap, prop: MapProperty) -> bool {
        let (p, m) = (f.source(), f.target());
        let fx = |x| f.apply(x);
        let subsets: Vec<Subset> = (1u64..(1 << p.len())).map(|mask| p.subset_from_mask(mask)).collect();
        let all_pairs = |h: &dyn Fn(usize, usize) -> bool| p.elements().all(|x| p.elements().all(|y| h(x, y)));
        let all_subset_elements = |h: &dyn Fn(&Subset, &Subset, usize) -> bool| {
            subsets.iter().all(|a| {
                let fa = f.image_of(a);
                p.elements().all(|x| h(a, &fa, x))
            })
        };
        match prop {
            MapProperty::OrderPreserving => all_pairs(&|x, y| !p.leq(x, y) || m.leq(fx(x), fx(y))),
            MapProperty::OrderReflecting => all_pairs(&|x, y| !m.leq(fx(x), fx(y)) || p.leq(x, y)),
            MapProperty::OverlapPreserving => all_pairs(&|x, y| !p.overlaps(x, y) || m.overlaps(fx(x), fx(y))),
            MapProperty::OverlapReflecting => all_pairs(&|x, y| !m.overlaps(fx(x), fx(y)) || p.overlaps(x, y)),
            MapProperty::FusionPreserving => all_subset_elements(&|a, fa, x| {
                !is_fusion(p, x, a).unwrap() || is_fusion(m, fx(x), fa).unwrap()
            }),
            MapProperty::FusionReflecting => all_subset_elements(&|a, fa, x| {
                !is_fusion(m, fx(x), fa).unwrap() || is_fusion(p, x, a).unwrap()
            }),
            MapProperty::SumPreserving => {
                all_subset_elements(&|a, fa, x| !is_sum(p, x, a).unwrap() || is_sum(m, fx(x), fa).unwrap())
            }
            MapProperty::SumReflecting => {
                all_subset_elements(&|a, fa, x| !is_sum(m, fx(x), fa).unwrap() || is_sum(p, x, a).unwrap())
            }
            MapProperty::FusionDense => m
                .elements()
                .all(|y| subsets.iter().any(|a| is_fusion(m, y, &f.image_of(a)).unwrap())),
            MapProperty::SumDense => m
                .elements()
                .all(|y| subsets.iter().any(|a| is_sum(m, y, &f.image_of(a)).unwrap())),
            MapProperty::Dense => m.elements().all(|y| p.elements().any(|x| m.leq(fx(x), y))),
            _ => unreachable!(),
        }
    }

    fn check_against_brute(f: &PosetMap) {
        let report = analyze_map(f, &Limits::default()).unwrap();
        for prop in ALL {
            let v = report.verdict(prop).unwrap();
            assert_eq!(v.holds, brute(f, prop), "{prop} on {:?} -> {:?}", f.source(), f.target());
            if !v.holds {
                assert!(v.witness_refutes(f), "{prop}: {:?}", v.witness);
            }
        }
    }

    fn sample_maps() -> Vec<PosetMap> {
        let lim = Limits::default();
        let mut maps = Vec::new();
        for p in [fixtures::multcom(), fixtures::counterwscomp(), fixtures::antichain(3), fixtures::chain(3)] {
            maps.push(PosetMap::identity(&p));
            maps.push(complete_op(&p, &lim).unwrap().embed().clone());
            maps.push(complete_sp(&p, &lim).unwrap().embed().clone());
            maps.push(complete_fp(&p, &lim).unwrap().embed().clone());
            maps.push(complete_gp(&p, &lim).unwrap().embed().clone());
        }
        let anti = fixtures::antichain(2);
        maps.push(PosetMap::new(anti, fixtures::chain(1), vec![0, 0]).unwrap());
        // A chain mapped onto a chain with a gap: misses the bottom.
        maps.push(PosetMap::new(fixtures::chain(2), fixtures::chain(3), vec![1, 2]).unwrap());
        // Order-preserving but not reflecting into a chain.
        maps.push(PosetMap::new(fixtures::antichain(2), fixtures::chain(2), vec![0, 1]).unwrap());
        maps
    }

    #[test]
    fn verdicts_agree_with_definitions() {
        for f in sample_maps() {
            check_against_brute(&f);
        }
    }

    #[test]
    fn identity_passes_everything() {
        let p = fixtures::multcom();
        let report = analyze_map(&PosetMap::identity(&p), &Limits::default()).unwrap();
        assert!(report.verdicts.iter().all(|v| v.holds));
    }

    #[test]
    fn collapsing_map_is_not_reflecting() {
        let f = PosetMap::new(fixtures::antichain(2), fixtures::chain(1), vec![0, 0]).unwrap();
        let report = analyze_map(&f, &Limits::default()).unwrap();
        let v = report.verdict(MapProperty::OrderReflecting).unwrap();
        assert_eq!(v.witness, Some(Witness::Pair { x: 0, y: 1 }));
    }

    #[test]
    fn gp_multcom_is_a_fusion_completion() {
        let c = complete_gp(&fixtures::multcom(), &Limits::default()).unwrap();
        let report = is_fusion_completion(c.embed(), &Limits::default()).unwrap();
        assert!(report.passes(), "{:?}", report.failures());
    }

    #[test]
    fn sp_counterexample_is_a_sum_completion() {
        let c = complete_sp(&fixtures::counterwscomp(), &Limits::default()).unwrap();
        let report = is_sum_completion(c.embed(), &Limits::default()).unwrap();
        assert!(report.passes(), "{:?}", report.failures());
    }

    #[test]
    fn op_of_non_separative_is_not_an_embedding() {
        let c = complete_op(&fixtures::multcom(), &Limits::default()).unwrap();
        let report = is_fusion_completion(c.embed(), &Limits::default()).unwrap();
        assert!(!report.passes());
        let v = report.verdict(MapProperty::OrderReflecting).unwrap();
        assert_eq!(v.witness, Some(Witness::Pair { x: 0, y: 1 }));
    }

    #[test]
    fn dense_consequences() {
        let lim = Limits::default();
        let p = fixtures::antichain(2);
        dense_embedding_consequences(complete_fp(&p, &lim).unwrap().embed(), &lim).unwrap();
        dense_embedding_consequences(&PosetMap::identity(&fixtures::multcom()), &lim).unwrap();
        let gap = PosetMap::new(fixtures::chain(2), fixtures::chain(3), vec![1, 2]).unwrap();
        assert!(matches!(
            dense_embedding_consequences(&gap, &lim),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn target_completeness_witness_rechecks() {
        let p: Poset = fixtures::counterwscomp();
        let report = is_sum_completion(&PosetMap::identity(&p), &Limits::default()).unwrap();
        let v = report.verdict(MapProperty::TargetSumComplete).unwrap();
        assert!(!v.holds);
        assert!(v.witness_refutes(&PosetMap::identity(&p)));
    }

    #[test]
    fn source_bound_is_enforced() {
        let limits = Limits {
            max_subset_n: 3,
            ..Limits::default()
        };
        let f = PosetMap::identity(&fixtures::multcom());
        assert!(matches!(analyze_map(&f, &limits), Err(Error::ResourceLimit { .. })));
    }
}
