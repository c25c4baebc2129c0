//! Finite posets and the primitive parthood vocabulary.
//!
//! Every element keeps three precomputed rows: its principal down-set `↓x`,
//! its principal up-set `↑x`, and its overlap set `𝖮(x) = ↑↓x`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{PosetId, Subset};
use crate::ElementId;

#[derive(Clone)]
pub struct Poset {
    id: PosetId,
    labels: Vec<String>,
    down: Vec<Subset>,
    up: Vec<Subset>,
    overlap: Vec<Subset>,
}

impl Poset {
    /// Reflexive-transitive closure of `covers` over `0..n`.
    ///
    /// The pairs are read as `lower ≤ upper`; they need not be covers in the
    /// Hasse sense, any generating set of the order works.
    pub fn from_cover_relations(n: usize, covers: &[(ElementId, ElementId)]) -> Result<Poset> {
        let id = PosetId::fresh();
        let mut up: Vec<Subset> = (0..n).map(|x| Subset::empty(id, n).with(x)).collect();
        for &(lo, hi) in covers {
            for index in [lo, hi] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, size: n });
                }
            }
            up[lo].insert(hi);
        }
        // Warshall over rows: if k ∈ ↑i then ↑k ⊆ ↑i.
        for k in 0..n {
            let row = up[k].clone();
            for row_i in up.iter_mut() {
                if row_i.contains(k) {
                    row_i.union_with(&row);
                }
            }
        }
        for x in 0..n {
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    return Err(Error::CycleDetected(x.min(y), x.max(y)));
                }
            }
        }
        Ok(Self::from_up_rows(id, default_labels(n), up))
    }

    /// Builds a poset from an explicit `≤` predicate, which must already be a
    /// partial order. Nothing is closed: a non-transitive input is an error.
    pub fn from_leq(n: usize, leq: impl Fn(ElementId, ElementId) -> bool) -> Result<Poset> {
        let id = PosetId::fresh();
        let mut up: Vec<Subset> = (0..n).map(|_| Subset::empty(id, n)).collect();
        for (x, row) in up.iter_mut().enumerate() {
            for y in 0..n {
                if leq(x, y) {
                    row.insert(y);
                }
            }
        }
        for x in 0..n {
            if !up[x].contains(x) {
                return Err(Error::NotPartialOrder(format!("{x} ≤ {x} fails")));
            }
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    return Err(Error::CycleDetected(x.min(y), x.max(y)));
                }
                if !up[y].is_subset(&up[x]) {
                    let z = up[y].difference(&up[x]).first().unwrap();
                    return Err(Error::NotPartialOrder(format!(
                        "{x} ≤ {y} ≤ {z} but {x} ≰ {z}"
                    )));
                }
            }
        }
        Ok(Self::from_up_rows(id, default_labels(n), up))
    }

    fn from_up_rows(id: PosetId, labels: Vec<String>, up: Vec<Subset>) -> Poset {
        let n = up.len();
        let mut down: Vec<Subset> = (0..n).map(|_| Subset::empty(id, n)).collect();
        for (x, row) in up.iter().enumerate() {
            for y in row.iter() {
                down[y].insert(x);
            }
        }
        let overlap = down
            .iter()
            .map(|d| {
                let mut o = Subset::empty(id, n);
                for z in d.iter() {
                    o.union_with(&up[z]);
                }
                o
            })
            .collect();
        Poset {
            id,
            labels,
            down,
            up,
            overlap,
        }
    }

    /// Replaces the display labels. Labels must be unique.
    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Result<Poset> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.len() {
            return Err(Error::Config(format!(
                "{} labels supplied for {} elements",
                labels.len(),
                self.len()
            )));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn id(&self) -> PosetId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.len()
    }

    pub fn label(&self, x: ElementId) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<ElementId> {
        self.labels.iter().position(|l| l == label)
    }

    /// Resolves a list of labels into a subset.
    pub fn subset_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        let mut s = self.empty_subset();
        for l in labels {
            let l = l.as_ref();
            let x = self.index_of(l).ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            s.insert(x);
        }
        Ok(s)
    }

    pub fn format_subset(&self, s: &Subset) -> String {
        let names: Vec<&str> = s.iter().map(|x| self.label(x)).collect();
        format!("{{{}}}", names.join(","))
    }

    // ---- subsets -------------------------------------------------------

    pub fn empty_subset(&self) -> Subset {
        Subset::empty(self.id, self.len())
    }

    pub fn full_subset(&self) -> Subset {
        Subset::full(self.id, self.len())
    }

    pub fn singleton(&self, x: ElementId) -> Subset {
        self.empty_subset().with(x)
    }

    pub fn subset(&self, xs: impl IntoIterator<Item = ElementId>) -> Subset {
        let mut s = self.empty_subset();
        for x in xs {
            s.insert(x);
        }
        s
    }

    pub(crate) fn subset_from_mask(&self, mask: u64) -> Subset {
        Subset::from_mask(self.id, self.len(), mask)
    }

    pub(crate) fn check(&self, s: &Subset) {
        debug_assert_eq!(s.home(), self.id, "subset does not belong to this poset");
        debug_assert_eq!(s.universe(), self.len());
    }

    // ---- order vocabulary ------------------------------------------------

    pub fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.up[x].contains(y)
    }

    /// Proper part: `x ≤ y` and `x ≠ y`.
    pub fn lt(&self, x: ElementId, y: ElementId) -> bool {
        x != y && self.leq(x, y)
    }

    /// `x ∘ y`: some `z` lies below both.
    pub fn overlaps(&self, x: ElementId, y: ElementId) -> bool {
        self.overlap[x].contains(y)
    }

    /// `x ≀ y`.
    pub fn disjoint(&self, x: ElementId, y: ElementId) -> bool {
        !self.overlaps(x, y)
    }

    pub fn comparable(&self, x: ElementId, y: ElementId) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `↓x`
    pub fn down(&self, x: ElementId) -> &Subset {
        &self.down[x]
    }

    /// `↑x`
    pub fn up(&self, x: ElementId) -> &Subset {
        &self.up[x]
    }

    /// `𝖮(x)`
    pub fn overlap_of(&self, x: ElementId) -> &Subset {
        &self.overlap[x]
    }

    /// `↓A`, the union of the principal down-sets of the members of `a`.
    pub fn down_set(&self, a: &Subset) -> Subset {
        self.check(a);
        let mut s = self.empty_subset();
        for x in a.iter() {
            s.union_with(&self.down[x]);
        }
        s
    }

    /// `↑A`
    pub fn up_set(&self, a: &Subset) -> Subset {
        self.check(a);
        let mut s = self.empty_subset();
        for x in a.iter() {
            s.union_with(&self.up[x]);
        }
        s
    }

    /// `𝖮(A)`: every element overlapping some member of `a`.
    pub fn overlap_set(&self, a: &Subset) -> Subset {
        self.check(a);
        let mut s = self.empty_subset();
        for x in a.iter() {
            s.union_with(&self.overlap[x]);
        }
        s
    }

    /// Elements with no proper part.
    pub fn atoms(&self) -> Subset {
        self.subset(self.elements().filter(|&x| self.down[x].len() == 1))
    }

    pub fn is_atom(&self, x: ElementId) -> bool {
        self.down[x].len() == 1
    }

    /// Upper bounds of `a`; the whole carrier when `a` is empty.
    pub fn upper_bounds(&self, a: &Subset) -> Subset {
        self.check(a);
        let mut s = self.full_subset();
        for x in a.iter() {
            s.intersect_with(&self.up[x]);
        }
        s
    }

    /// Lower bounds of `a`; the whole carrier when `a` is empty.
    pub fn lower_bounds(&self, a: &Subset) -> Subset {
        self.check(a);
        let mut s = self.full_subset();
        for x in a.iter() {
            s.intersect_with(&self.down[x]);
        }
        s
    }

    /// Minimal members of `a`.
    pub fn minimal(&self, a: &Subset) -> Subset {
        self.check(a);
        self.subset(a.iter().filter(|&x| !self.down[x].difference(&self.singleton(x)).intersects(a)))
    }

    /// Maximal members of `a`.
    pub fn maximal(&self, a: &Subset) -> Subset {
        self.check(a);
        self.subset(a.iter().filter(|&x| !self.up[x].difference(&self.singleton(x)).intersects(a)))
    }

    /// The least member of `a`, if `a` has one.
    pub fn least(&self, a: &Subset) -> Option<ElementId> {
        self.check(a);
        a.iter().find(|&x| a.is_subset(&self.up[x]))
    }

    /// The greatest member of `a`, if `a` has one.
    pub fn greatest(&self, a: &Subset) -> Option<ElementId> {
        self.check(a);
        a.iter().find(|&x| a.is_subset(&self.down[x]))
    }

    pub fn bottom(&self) -> Option<ElementId> {
        self.least(&self.full_subset())
    }

    pub fn top(&self) -> Option<ElementId> {
        self.greatest(&self.full_subset())
    }

    /// Hasse diagram edges `(lower, upper)`, sorted.
    pub fn covers(&self) -> Vec<(ElementId, ElementId)> {
        let mut edges = Vec::new();
        for y in self.elements() {
            let mut strict = self.down[y].clone();
            strict.remove(y);
            for x in self.maximal(&strict).iter() {
                edges.push((x, y));
            }
        }
        edges.sort_unstable();
        edges
    }

    /// The sub-poset on `keep`, together with the kept original indices.
    pub fn restrict(&self, keep: &Subset) -> (Poset, Vec<ElementId>) {
        self.check(keep);
        let index: Vec<ElementId> = keep.to_vec();
        let sub = Poset::from_leq(index.len(), |i, j| self.leq(index[i], index[j]))
            .expect("restriction of a partial order is a partial order");
        let sub = sub
            .with_labels(index.iter().map(|&x| self.labels[x].clone()))
            .expect("labels stay unique");
        (sub, index)
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(x, y)| format!("{}<{}", self.label(x), self.label(y)))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.labels)
            .field("covers", &covers)
            .finish()
    }
}
