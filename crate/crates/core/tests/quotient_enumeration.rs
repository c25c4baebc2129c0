//! Every sum-completion of a small weakly supplemented poset maps onto S(P):
//! enumerate all maps that commute with the embeddings and confirm that the
//! constructed quotient is one of the monotone, onto ones.

use mereo::axioms::is_weakly_supplemented;
use mereo::completion::complete_sp;
use mereo::morphism::{build_quotient, duplicated_top_fixture};
use mereo::{fixtures, Limits, Poset, PosetMap};

fn commuting_monotone_onto(e: &PosetMap, sigma: &PosetMap) -> Vec<Vec<usize>> {
    let (m, s) = (e.target(), sigma.target());
    let mut fixed: Vec<Option<usize>> = vec![None; m.len()];
    for x in e.source().elements() {
        fixed[e.apply(x)] = Some(sigma.apply(x));
    }
    let free: Vec<usize> = m.elements().filter(|&i| fixed[i].is_none()).collect();
    let mut found = Vec::new();
    let total = s.len().pow(free.len() as u32);
    for code in 0..total {
        let mut images: Vec<usize> = fixed.iter().map(|f| f.unwrap_or(0)).collect();
        let mut c = code;
        for &i in &free {
            images[i] = c % s.len();
            c /= s.len();
        }
        let monotone = m
            .elements()
            .all(|i| m.elements().all(|j| !m.leq(i, j) || s.leq(images[i], images[j])));
        let onto = s.elements().all(|y| images.contains(&y));
        if monotone && onto {
            found.push(images);
        }
    }
    found
}

fn small_weakly_supplemented() -> Vec<Poset> {
    [
        fixtures::chain(2),
        fixtures::chain(3),
        fixtures::antichain(2),
        fixtures::antichain(3),
        fixtures::counterwscomp(),
        fixtures::two_chains(2),
        fixtures::powerset_minus_empty(2),
    ]
    .into_iter()
    .filter(|p| is_weakly_supplemented(p).holds)
    .collect()
}

#[test]
fn constructed_quotients_are_among_the_enumerated_ones() {
    let limits = Limits::default();
    let mut checked = 0;
    for p in small_weakly_supplemented() {
        let sp = complete_sp(&p, &limits).unwrap();
        if sp.extended().len() > 8 {
            continue;
        }
        for e in [sp.embed().clone(), duplicated_top_fixture(&sp).unwrap()] {
            let maps = commuting_monotone_onto(&e, sp.embed());
            assert!(!maps.is_empty(), "{p:?}");
            let q = build_quotient(&e, &sp, &limits).unwrap();
            assert!(maps.contains(&q.images().to_vec()), "{p:?}: {:?}", q.images());
            checked += 1;
        }
    }
    // antichains of 2 and 3, counterwscomp and the 3-element powerset.
    assert_eq!(checked, 8);
}

#[test]
fn the_identity_is_the_only_quotient_of_sp_onto_itself_for_antichains() {
    let sp = complete_sp(&fixtures::antichain(2), &Limits::default()).unwrap();
    let maps = commuting_monotone_onto(sp.embed(), sp.embed());
    assert_eq!(maps, vec![(0..sp.extended().len()).collect::<Vec<_>>()]);
}
