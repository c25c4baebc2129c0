//! Poset corpora: every poset up to isomorphism for small `n`, plus seeded
//! random posets.

use std::collections::BTreeMap;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Largest size for which [`posets_up_to_iso`] is offered. Canonical forms
/// are minimised over all `n!` relabellings.
pub const MAX_EXHAUSTIVE_N: usize = 6;

/// Relation matrix packed row-major into bits, after relabelling by `perm`.
fn code(p: &Poset, perm: &[usize]) -> u64 {
    let n = p.len();
    let mut c = 0u64;
    for i in 0..n {
        for j in 0..n {
            if p.leq(perm[i], perm[j]) {
                c |= 1 << (i * n + j);
            }
        }
    }
    c
}

fn canonical_code(p: &Poset) -> u64 {
    (0..p.len())
        .permutations(p.len())
        .map(|perm| code(p, &perm))
        .min()
        .unwrap_or(0)
}

fn from_code(n: usize, c: u64) -> Poset {
    Poset::from_leq(n, |i, j| c & (1 << (i * n + j)) != 0).expect("codes come from posets")
}

/// One representative of every isomorphism class of `n`-element posets,
/// ordered by canonical code.
///
/// Every `(n+1)`-element poset arises from an `n`-element one by adding a
/// maximal element above some down-set, which is how the classes are grown.
pub fn posets_up_to_iso(n: usize) -> Result<Vec<Poset>> {
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::ResourceLimit {
            what: "exhaustive poset generation",
            size: n,
            limit: MAX_EXHAUSTIVE_N,
        });
    }
    let mut level: Vec<Poset> = vec![from_code(0, 0)];
    for k in 0..n {
        let mut next: BTreeMap<u64, ()> = BTreeMap::new();
        for p in &level {
            for mask in 0u64..(1 << k) {
                let d = p.subset_from_mask(mask);
                if p.down_set(&d) != d {
                    continue;
                }
                let q = Poset::from_leq(k + 1, |i, j| {
                    if j == k {
                        i == k || d.contains(i)
                    } else {
                        i != k && p.leq(i, j)
                    }
                })
                .expect("adding a maximal element keeps a partial order");
                next.insert(canonical_code(&q), ());
            }
        }
        level = next.into_keys().map(|c| from_code(k + 1, c)).collect();
    }
    Ok(level)
}

/// A random `n`-element poset: each pair `i < j` of a random linear
/// extension is related with a density drawn per poset, then closed.
pub fn random_poset(n: usize, rng: &mut impl Rng) -> Poset {
    let density: f64 = rng.gen_range(0.1..0.6);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut covers = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(density) {
                covers.push((order[i], order[j]));
            }
        }
    }
    Poset::from_cover_relations(n, &covers).expect("edges follow a linear order")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    /// Every poset up to isomorphism with `1..=exhaustive_n` elements.
    pub exhaustive_n: usize,
    /// Sizes of random posets.
    pub random_sizes: Vec<usize>,
    pub random_per_size: usize,
    pub seed: u64,
}

impl CorpusSpec {
    /// Exhaustive up to `min(max_n, 5)`, random for the sizes above that.
    pub fn up_to(max_n: usize, random_per_size: usize, seed: u64) -> CorpusSpec {
        let exhaustive_n = max_n.min(5);
        CorpusSpec {
            exhaustive_n,
            random_sizes: ((exhaustive_n + 1)..=max_n).collect(),
            random_per_size,
            seed,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub poset: Poset,
}

pub fn build_corpus(spec: &CorpusSpec) -> Result<Vec<CorpusEntry>> {
    let mut entries = Vec::new();
    for n in 1..=spec.exhaustive_n {
        for (i, poset) in posets_up_to_iso(n)?.into_iter().enumerate() {
            entries.push(CorpusEntry {
                name: format!("iso{n}-{i}"),
                poset,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for &n in &spec.random_sizes {
        for i in 0..spec.random_per_size {
            entries.push(CorpusEntry {
                name: format!("rand{n}-{i}"),
                poset: random_poset(n, &mut rng),
            });
        }
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_the_known_sequence() {
        // Unlabelled posets: 1, 1, 2, 5, 16, 63, 318.
        let counts: Vec<usize> = (0..=5).map(|n| posets_up_to_iso(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn representatives_are_pairwise_non_isomorphic() {
        let reps = posets_up_to_iso(4).unwrap();
        let codes: Vec<u64> = reps.iter().map(canonical_code).collect();
        assert!(codes.iter().all_unique());
    }

    #[test]
    fn random_posets_are_reproducible() {
        let a = build_corpus(&CorpusSpec::up_to(7, 5, 42)).unwrap();
        let b = build_corpus(&CorpusSpec::up_to(7, 5, 42)).unwrap();
        assert_eq!(a.len(), 87 + 10);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.name, y.name);
            assert_eq!(x.poset, y.poset);
        }
    }

    #[test]
    fn spec_splits_sizes() {
        let s = CorpusSpec::up_to(3, 1, 0);
        assert_eq!(s.exhaustive_n, 3);
        assert!(s.random_sizes.is_empty());
    }
}
