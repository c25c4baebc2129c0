//! Order-isomorphism search by backtracking with domain propagation.
//!
//! Every source element keeps a domain of target candidates, first cut down
//! by vertex invariants. Assigning `x ↦ y` restricts each other domain to
//! targets that stand in the same relation to `y` as the source element
//! stands to `x`. The next element to assign is the one with the smallest
//! domain.

use super::PosetMap;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::subset::Subset;
use crate::ElementId;

fn invariant(p: &Poset, x: ElementId, atoms: &Subset) -> (usize, usize, usize, usize) {
    (
        p.down(x).len(),
        p.up(x).len(),
        p.down(x).intersection(atoms).len(),
        p.overlap_of(x).len(),
    )
}

pub fn find_isomorphism(p: &Poset, q: &Poset, limits: &Limits) -> Result<Option<PosetMap>> {
    find_isomorphism_fixing(p, q, &[], limits)
}

/// An isomorphism `p → q` that sends each `fixed.0` to `fixed.1`, if any.
pub fn find_isomorphism_fixing(
    p: &Poset,
    q: &Poset,
    fixed: &[(ElementId, ElementId)],
    limits: &Limits,
) -> Result<Option<PosetMap>> {
    let n = p.len();
    for &(x, y) in fixed {
        if x >= n {
            return Err(Error::IndexOutOfRange { index: x, size: n });
        }
        if y >= q.len() {
            return Err(Error::IndexOutOfRange { index: y, size: q.len() });
        }
    }
    if n != q.len() {
        return Ok(None);
    }
    let relations = |r: &Poset| r.elements().map(|x| r.up(x).len()).sum::<usize>();
    if relations(p) != relations(q) {
        return Ok(None);
    }
    let (pa, qa) = (p.atoms(), q.atoms());
    let domains: Vec<Subset> = p
        .elements()
        .map(|x| {
            let inv = invariant(p, x, &pa);
            q.subset(q.elements().filter(|&y| invariant(q, y, &qa) == inv))
        })
        .collect();
    let mut search = Search {
        p,
        q,
        assignment: vec![None; n],
        steps: 0,
        limit: limits.max_search_steps,
    };
    let mut domains = domains;
    for &(x, y) in fixed {
        if !domains[x].contains(y) {
            return Ok(None);
        }
        match search.assign(&domains, x, y) {
            Some(next) => domains = next,
            None => return Ok(None),
        }
    }
    if search.solve(domains)? {
        let images = search.assignment.into_iter().map(|y| y.expect("complete assignment")).collect();
        Ok(Some(PosetMap::new(p.clone(), q.clone(), images)?))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    p: &'a Poset,
    q: &'a Poset,
    assignment: Vec<Option<ElementId>>,
    steps: usize,
    limit: usize,
}

impl Search<'_> {
    /// Records `x ↦ y` and returns the propagated domains, or `None` when
    /// some unassigned element is left without candidates.
    fn assign(&mut self, domains: &[Subset], x: ElementId, y: ElementId) -> Option<Vec<Subset>> {
        let (p, q) = (self.p, self.q);
        let mut next = domains.to_vec();
        next[x] = q.singleton(y);
        for u in p.elements() {
            if u == x {
                continue;
            }
            if let Some(v) = self.assignment[u] {
                if v == y {
                    return None;
                }
                continue;
            }
            let d = &mut next[u];
            d.remove(y);
            if p.leq(u, x) {
                d.intersect_with(q.down(y));
            } else {
                d.difference_with(q.down(y));
            }
            if p.leq(x, u) {
                d.intersect_with(q.up(y));
            } else {
                d.difference_with(q.up(y));
            }
            if d.is_empty() {
                return None;
            }
        }
        self.assignment[x] = Some(y);
        Some(next)
    }

    fn solve(&mut self, domains: Vec<Subset>) -> Result<bool> {
        let next = self
            .p
            .elements()
            .filter(|&x| self.assignment[x].is_none())
            .min_by_key(|&x| domains[x].len());
        let Some(x) = next else {
            return Ok(true);
        };
        for y in domains[x].iter() {
            self.steps += 1;
            if self.steps > self.limit {
                return Err(Error::ResourceLimit {
                    what: "isomorphism search steps",
                    size: self.steps,
                    limit: self.limit,
                });
            }
            if let Some(propagated) = self.assign(&domains, x, y) {
                if self.solve(propagated)? {
                    return Ok(true);
                }
                self.assignment[x] = None;
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::complete_op;
    use crate::fixtures;
    use itertools::Itertools;

    /// Isomorphism by trying every permutation.
    fn brute_isomorphic(p: &Poset, q: &Poset) -> bool {
        p.len() == q.len()
            && (0..q.len()).permutations(p.len()).any(|perm| {
                p.elements()
                    .all(|x| p.elements().all(|y| p.leq(x, y) == q.leq(perm[x], perm[y])))
            })
    }

    fn is_iso(f: &PosetMap) -> bool {
        f.is_injective() && f.is_onto() && f.is_order_embedding()
    }

    #[test]
    fn self_isomorphism() {
        let p = fixtures::multcom();
        let f = find_isomorphism(&p, &p, &Limits::default()).unwrap().unwrap();
        assert!(is_iso(&f));
    }

    #[test]
    fn op_of_antichain_is_the_powerset() {
        let lim = Limits::default();
        let op = complete_op(&fixtures::antichain(3), &lim).unwrap();
        let f = find_isomorphism(op.extended(), &fixtures::powerset_minus_empty(3), &lim)
            .unwrap()
            .unwrap();
        assert!(is_iso(&f));
    }

    #[test]
    fn chain_and_antichain_differ() {
        let lim = Limits::default();
        assert!(find_isomorphism(&fixtures::chain(3), &fixtures::antichain(3), &lim)
            .unwrap()
            .is_none());
    }

    #[test]
    fn fixed_pairs_are_respected() {
        let lim = Limits::default();
        let p = fixtures::antichain(3);
        let f = find_isomorphism_fixing(&p, &p, &[(0, 2)], &lim).unwrap().unwrap();
        assert_eq!(f.apply(0), 2);
        // In a chain only the identity exists.
        let c = fixtures::chain(3);
        assert!(find_isomorphism_fixing(&c, &c, &[(0, 1)], &lim).unwrap().is_none());
    }

    #[test]
    fn agrees_with_permutation_search() {
        let lim = Limits::default();
        let shapes = [
            fixtures::multcom(),
            fixtures::counterwscomp(),
            fixtures::chain(4),
            fixtures::antichain(4),
            Poset::from_cover_relations(4, &[(0, 1), (2, 3)]).unwrap(),
            Poset::from_cover_relations(4, &[(0, 1), (0, 2), (0, 3)]).unwrap(),
            Poset::from_cover_relations(4, &[(1, 0), (2, 0), (3, 0)]).unwrap(),
            Poset::from_cover_relations(4, &[(3, 1), (3, 2)]).unwrap(),
        ];
        for p in &shapes {
            for q in &shapes {
                let found = find_isomorphism(p, q, &lim).unwrap();
                assert_eq!(found.is_some(), brute_isomorphic(p, q), "{p:?} vs {q:?}");
                if let Some(f) = found {
                    assert!(is_iso(&f));
                }
            }
        }
    }

    #[test]
    fn step_cap() {
        let lim = Limits {
            max_search_steps: 1,
            ..Limits::default()
        };
        let p = fixtures::antichain(4);
        assert!(matches!(
            find_isomorphism(&p, &p, &lim),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
