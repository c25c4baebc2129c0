use super::boolean::{lattice_ops, Check, PropertyReport};
use super::PosetMap;
use crate::composition::{join_of, meet_of};
use crate::config::Limits;
use crate::error::Result;

/// Checks that `f` is a join-completion preserving every existing join and
/// meet: the target is a complete lattice, the image is join-dense, and for
/// every subset `A` of the source (the empty one included) whose join or
/// meet exists, `f` carries it to the join or meet of `f(A)`.
pub fn join_completion_report(f: &PosetMap, limits: &Limits) -> Result<PropertyReport> {
    let (p, m) = (f.source(), f.target());
    limits.check_subsets("join preservation", p.len())?;
    let mut checks = Vec::new();

    let bounded = m.bottom().is_some() && m.top().is_some();
    let lattice = lattice_ops(m).err();
    let complete = if !bounded {
        Some(Vec::new())
    } else {
        lattice
    };
    checks.push(Check {
        note: Some("finite bounded lattices are complete"),
        ..Check::new("complete_lattice", complete)
    });

    checks.push(Check::new(
        "order_embedding",
        (!f.is_order_embedding()).then(Vec::new),
    ));

    // y is the join of the images below it.
    let image = f.image();
    let join_dense = m.elements().find(|&y| {
        let below = m.down(y).intersection(&image);
        join_of(m, &below) != Some(y)
    });
    checks.push(Check::new("join_dense", join_dense.map(|y| vec![y])));

    let mut join_bad = None;
    let mut meet_bad = None;
    for mask in 0u64..(1 << p.len()) {
        let a = p.subset_from_mask(mask);
        let fa = f.image_of(&a);
        if join_bad.is_none() {
            if let Some(j) = join_of(p, &a) {
                if join_of(m, &fa) != Some(f.apply(j)) {
                    join_bad = Some(a.to_vec());
                }
            }
        }
        if meet_bad.is_none() {
            if let Some(j) = meet_of(p, &a) {
                if meet_of(m, &fa) != Some(f.apply(j)) {
                    meet_bad = Some(a.to_vec());
                }
            }
        }
    }
    checks.push(Check::new("join_preserving", join_bad));
    checks.push(Check::new("meet_preserving", meet_bad));
    Ok(PropertyReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::complete_dm;
    use crate::fixtures;
    use crate::morphism::{with_bottom, PosetMap};

    #[test]
    fn dm_of_antichain() {
        let c = complete_dm(&fixtures::antichain(3), false).unwrap();
        let r = join_completion_report(c.embed(), &Limits::default()).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn powerset_with_bottom_is_a_join_completion_of_the_antichain() {
        let anti = fixtures::antichain(3);
        let target = with_bottom(&fixtures::powerset_minus_empty(3)).unwrap();
        // Singletons {a}, {b}, {c} sit at indices 0, 1, 3 (masks 1, 2, 4).
        let f = PosetMap::new(anti, target, vec![0, 1, 3]).unwrap();
        let r = join_completion_report(&f, &Limits::default()).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn missing_top_is_reported() {
        let p = fixtures::antichain(2);
        let r = join_completion_report(&PosetMap::identity(&p), &Limits::default()).unwrap();
        assert!(!r.check("complete_lattice").unwrap().holds);
    }
}
