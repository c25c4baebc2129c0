//! Maps between posets and the contracts they can satisfy.

mod analysis;
mod boolean;
mod iso;
mod join;
mod minimal;
mod quotient;

pub use analysis::{
    analyze_map, dense_embedding_consequences, is_fusion_completion, is_sum_completion,
    MapProperty, MapPropertyReport, PropertyVerdict, Witness,
};
pub use boolean::{is_complete_boolean_algebra, with_bottom, Check, PropertyReport};
pub use iso::{find_isomorphism, find_isomorphism_fixing};
pub use join::join_completion_report;
pub use minimal::build_minimal_embedding;
pub use quotient::{build_quotient, duplicated_top_fixture};

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::subset::Subset;
use crate::ElementId;

/// A total function between the carriers of two posets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetMap {
    source: Poset,
    target: Poset,
    images: Vec<ElementId>,
}

impl PosetMap {
    pub fn new(source: Poset, target: Poset, images: Vec<ElementId>) -> Result<PosetMap> {
        if images.len() != source.len() {
            return Err(Error::PreconditionFailed(format!(
                "map assigns {} images to {} source elements",
                images.len(),
                source.len()
            )));
        }
        if let Some(&index) = images.iter().find(|&&y| y >= target.len()) {
            return Err(Error::IndexOutOfRange {
                index,
                size: target.len(),
            });
        }
        Ok(PosetMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(p: &Poset) -> PosetMap {
        PosetMap {
            source: p.clone(),
            target: p.clone(),
            images: p.elements().collect(),
        }
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn apply(&self, x: ElementId) -> ElementId {
        self.images[x]
    }

    pub fn images(&self) -> &[ElementId] {
        &self.images
    }

    /// `f(P)` as a subset of the target.
    pub fn image(&self) -> Subset {
        self.target.subset(self.images.iter().copied())
    }

    /// `f(A)`
    pub fn image_of(&self, a: &Subset) -> Subset {
        self.source.check(a);
        self.target.subset(a.iter().map(|x| self.images[x]))
    }

    /// `f⁻¹(B)`
    pub fn preimage(&self, b: &Subset) -> Subset {
        self.target.check(b);
        self.source
            .subset(self.source.elements().filter(|&x| b.contains(self.images[x])))
    }

    /// `outer ∘ self`. The target of `self` must equal the source of `outer`.
    pub fn then(&self, outer: &PosetMap) -> Result<PosetMap> {
        if self.target != outer.source {
            return Err(Error::PreconditionFailed(
                "composed maps do not share the middle poset".into(),
            ));
        }
        Ok(PosetMap {
            source: self.source.clone(),
            target: outer.target.clone(),
            images: self.images.iter().map(|&y| outer.images[y]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.target.empty_subset();
        for &y in &self.images {
            if seen.contains(y) {
                return false;
            }
            seen.insert(y);
        }
        true
    }

    pub fn is_onto(&self) -> bool {
        self.image().len() == self.target.len()
    }

    /// `x ≤ y ⇒ f(x) ≤ f(y)`
    pub fn is_monotone(&self) -> bool {
        self.source.elements().all(|x| {
            self.source
                .up(x)
                .iter()
                .all(|y| self.target.leq(self.images[x], self.images[y]))
        })
    }

    /// `f(x) ≤ f(y) ⇒ x ≤ y`
    pub fn is_order_reflecting(&self) -> bool {
        let s = &self.source;
        s.elements()
            .all(|x| s.elements().all(|y| !self.target.leq(self.images[x], self.images[y]) || s.leq(x, y)))
    }

    pub fn is_order_embedding(&self) -> bool {
        self.is_monotone() && self.is_order_reflecting()
    }
}
