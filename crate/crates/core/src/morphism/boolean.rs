use serde::Serialize;

use crate::composition::{join_of, meet_of};
use crate::error::Result;
use crate::poset::Poset;
use crate::ElementId;

/// One named check with an optional counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<ElementId>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

impl Check {
    pub(crate) fn new(name: &'static str, witness: Option<Vec<ElementId>>) -> Self {
        Check {
            name,
            holds: witness.is_none(),
            witness,
            note: None,
        }
    }

    pub(crate) fn failed(name: &'static str) -> Self {
        Check {
            name,
            holds: false,
            witness: None,
            note: Some("not evaluated: an earlier check failed"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub checks: Vec<Check>,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Binary join and meet tables, if every pair has both.
pub(crate) struct LatticeOps {
    pub join: Vec<Vec<ElementId>>,
    pub meet: Vec<Vec<ElementId>>,
}

pub(crate) fn lattice_ops(p: &Poset) -> std::result::Result<LatticeOps, Vec<ElementId>> {
    let n = p.len();
    let mut join = vec![vec![0; n]; n];
    let mut meet = vec![vec![0; n]; n];
    for x in 0..n {
        for y in x..n {
            let pair = p.subset([x, y]);
            let j = join_of(p, &pair).ok_or_else(|| vec![x, y])?;
            let m = meet_of(p, &pair).ok_or_else(|| vec![x, y])?;
            join[x][y] = j;
            join[y][x] = j;
            meet[x][y] = m;
            meet[y][x] = m;
        }
    }
    Ok(LatticeOps { join, meet })
}

/// Bounded lattice, distributive, complemented. Finite lattices are
/// complete, so completeness is recorded rather than searched for.
pub fn is_complete_boolean_algebra(p: &Poset) -> PropertyReport {
    let mut checks = Vec::new();
    let bounds = match (p.bottom(), p.top()) {
        (Some(b), Some(t)) => Some((b, t)),
        _ => None,
    };
    checks.push(Check::new("bounded", if bounds.is_some() { None } else { Some(Vec::new()) }));
    let ops = lattice_ops(p);
    checks.push(Check::new("lattice", ops.as_ref().err().cloned()));
    let (Some((bottom, top)), Ok(ops)) = (bounds, ops) else {
        checks.push(Check::failed("distributive"));
        checks.push(Check::failed("complemented"));
        checks.push(Check::failed("complete"));
        return PropertyReport { checks };
    };
    let n = p.len();
    let (j, m) = (&ops.join, &ops.meet);
    let mut distributive = None;
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m[x][j[y][z]] != j[m[x][y]][m[x][z]] {
                    distributive = Some(vec![x, y, z]);
                    break 'outer;
                }
            }
        }
    }
    checks.push(Check::new("distributive", distributive));
    let uncomplemented = (0..n).find(|&x| !(0..n).any(|y| m[x][y] == bottom && j[x][y] == top));
    checks.push(Check::new("complemented", uncomplemented.map(|x| vec![x])));
    checks.push(Check {
        name: "complete",
        holds: true,
        witness: None,
        note: Some("finite lattices are complete"),
    });
    PropertyReport { checks }
}

/// `p` with a new least element `bot` appended at index `p.len()`.
pub fn with_bottom(p: &Poset) -> Result<Poset> {
    let n = p.len();
    let mut label = String::from("bot");
    while p.index_of(&label).is_some() {
        label.push('\'');
    }
    let labels: Vec<String> = p.labels().iter().cloned().chain([label]).collect();
    Poset::from_leq(n + 1, |x, y| x == n || (y < n && x < n && p.leq(x, y)) || (x == y))?.with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn two_element_lattice() {
        assert!(is_complete_boolean_algebra(&fixtures::chain(2)).holds());
        assert!(is_complete_boolean_algebra(&fixtures::chain(1)).holds());
    }

    #[test]
    fn three_chain_is_not_complemented() {
        let r = is_complete_boolean_algebra(&fixtures::chain(3));
        assert!(r.check("distributive").unwrap().holds);
        assert_eq!(r.check("complemented").unwrap().witness, Some(vec![1]));
        assert!(!r.holds());
    }

    #[test]
    fn powerset_with_bottom_is_boolean() {
        let p = with_bottom(&fixtures::powerset_minus_empty(3)).unwrap();
        assert_eq!(p.len(), 8);
        assert_eq!(p.bottom(), Some(7));
        assert!(is_complete_boolean_algebra(&p).holds());
        assert!(!is_complete_boolean_algebra(&fixtures::powerset_minus_empty(3)).holds());
    }

    #[test]
    fn diamond_m3_is_not_distributive() {
        // bottom 0, atoms 1 2 3, top 4
        let p = Poset::from_cover_relations(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        let r = is_complete_boolean_algebra(&p);
        assert!(r.check("lattice").unwrap().holds);
        assert!(!r.check("distributive").unwrap().holds);
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let r = is_complete_boolean_algebra(&fixtures::antichain(2));
        assert!(!r.check("bounded").unwrap().holds);
        assert_eq!(r.check("lattice").unwrap().witness, Some(vec![0, 1]));
    }
}
