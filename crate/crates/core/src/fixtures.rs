//! Small named posets used throughout the tests, the CLI and the docs.

use crate::poset::Poset;

fn letters(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("e{i}")
            }
        })
        .collect()
}

/// `0 < 1 < .. < n-1`
pub fn chain(n: usize) -> Poset {
    let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Poset::from_cover_relations(n, &covers).expect("chains are posets")
}

/// `n` pairwise incomparable elements labelled `a, b, c, ..`.
pub fn antichain(n: usize) -> Poset {
    Poset::from_cover_relations(n, &[])
        .and_then(|p| p.with_labels(letters(n)))
        .expect("antichains are posets")
}

/// Four elements `a b c d` whose only proper parthoods are `c ≤ a` and `c ≤ b`.
pub fn multcom() -> Poset {
    Poset::from_cover_relations(4, &[(2, 0), (2, 1)])
        .and_then(|p| p.with_labels(letters(4)))
        .expect("fixture is a poset")
}

/// Four elements `a b c d` with both `c` and `d` below both `a` and `b`.
///
/// Weakly supplemented, but no sum-completion of it is.
pub fn counterwscomp() -> Poset {
    Poset::from_cover_relations(4, &[(2, 0), (3, 0), (2, 1), (3, 1)])
        .and_then(|p| p.with_labels(letters(4)))
        .expect("fixture is a poset")
}

/// Finite truncation of two descending chains `a0 > a1 > ..` and `b0 > b1 > ..`,
/// each of length `k`.
pub fn two_chains(k: usize) -> Poset {
    let mut covers = Vec::new();
    for i in 1..k {
        covers.push((i, i - 1));
        covers.push((k + i, k + i - 1));
    }
    let labels = (0..k)
        .map(|i| format!("a{i}"))
        .chain((0..k).map(|i| format!("b{i}")));
    Poset::from_cover_relations(2 * k, &covers)
        .and_then(|p| p.with_labels(labels))
        .expect("fixture is a poset")
}

/// Nonempty subsets of an `n`-element set ordered by inclusion.
pub fn powerset_minus_empty(n: usize) -> Poset {
    assert!(n < 16);
    let masks: Vec<u32> = (1..(1u32 << n)).collect();
    let names = letters(n);
    let labels = masks.iter().map(|&m| {
        let members: Vec<&str> = (0..n)
            .filter(|i| m & (1 << i) != 0)
            .map(|i| names[i].as_str())
            .collect();
        format!("{{{}}}", members.join(","))
    });
    Poset::from_leq(masks.len(), |i, j| masks[i] & !masks[j] == 0)
        .and_then(|p| p.with_labels(labels))
        .expect("inclusion is a partial order")
}
