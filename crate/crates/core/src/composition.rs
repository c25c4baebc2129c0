//! Fusions, sums, enclosure and joins of subsets.
//!
//! `x` is a fusion of `A` when `𝖮(x) = 𝖮(A)`. `A` encloses `x` (`x ≺ A`) when
//! every part of `x` overlaps a member of `A`, i.e. `↓x ⊆ 𝖮(A)`. `x` is a sum
//! of `A` when it is an upper bound of `A` enclosed by `A`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::subset::Subset;
use crate::ElementId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompositionKind {
    Fusion,
    Sum,
    Join,
    MinimalUpperBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionAnswer {
    pub kind: CompositionKind,
    pub solutions: Subset,
    /// The maximum of `solutions`, when there is one.
    pub greatest: Option<ElementId>,
}

/// A nonempty subject subset together with its overlap set.
#[derive(Debug, Clone)]
pub struct CompositionQuery<'p> {
    poset: &'p Poset,
    subject: Subset,
    overlap: Subset,
}

impl<'p> CompositionQuery<'p> {
    pub fn new(poset: &'p Poset, subject: Subset) -> Result<Self> {
        poset.check(&subject);
        if subject.is_empty() {
            return Err(Error::EmptySubset);
        }
        let overlap = poset.overlap_set(&subject);
        Ok(CompositionQuery {
            poset,
            subject,
            overlap,
        })
    }

    pub fn subject(&self) -> &Subset {
        &self.subject
    }

    /// `𝖮(A)`
    pub fn overlap(&self) -> &Subset {
        &self.overlap
    }

    pub fn is_fusion(&self, x: ElementId) -> bool {
        self.poset.overlap_of(x) == &self.overlap
    }

    pub fn fusions(&self) -> Subset {
        self.poset
            .subset(self.poset.elements().filter(|&x| self.is_fusion(x)))
    }

    /// `x ≺ A`
    pub fn encloses(&self, x: ElementId) -> bool {
        self.poset.down(x).is_subset(&self.overlap)
    }

    /// `Ā`: every element enclosed by `A`.
    pub fn closure(&self) -> Subset {
        self.poset
            .subset(self.poset.elements().filter(|&x| self.encloses(x)))
    }

    pub fn is_sum(&self, x: ElementId) -> bool {
        self.subject.is_subset(self.poset.down(x)) && self.encloses(x)
    }

    pub fn sums(&self) -> CompositionAnswer {
        let solutions = self
            .poset
            .subset(self.poset.elements().filter(|&x| self.is_sum(x)));
        let greatest = self.poset.greatest(&solutions);
        CompositionAnswer {
            kind: CompositionKind::Sum,
            solutions,
            greatest,
        }
    }

    pub fn fusion_answer(&self) -> CompositionAnswer {
        let solutions = self.fusions();
        let greatest = self.poset.greatest(&solutions);
        CompositionAnswer {
            kind: CompositionKind::Fusion,
            solutions,
            greatest,
        }
    }

    pub fn greatest_sum(&self) -> Option<ElementId> {
        self.sums().greatest
    }
}

pub fn is_fusion(p: &Poset, x: ElementId, a: &Subset) -> Result<bool> {
    Ok(CompositionQuery::new(p, a.clone())?.is_fusion(x))
}

/// All fusions of `a`. May be empty, may have several members.
pub fn fusions_of(p: &Poset, a: &Subset) -> Result<Subset> {
    Ok(CompositionQuery::new(p, a.clone())?.fusions())
}

pub fn encloses(p: &Poset, x: ElementId, a: &Subset) -> Result<bool> {
    Ok(CompositionQuery::new(p, a.clone())?.encloses(x))
}

pub fn closure(p: &Poset, a: &Subset) -> Result<Subset> {
    Ok(CompositionQuery::new(p, a.clone())?.closure())
}

pub fn is_sum(p: &Poset, x: ElementId, a: &Subset) -> Result<bool> {
    Ok(CompositionQuery::new(p, a.clone())?.is_sum(x))
}

pub fn sums_of(p: &Poset, a: &Subset) -> Result<CompositionAnswer> {
    Ok(CompositionQuery::new(p, a.clone())?.sums())
}

pub fn greatest_sum(p: &Poset, a: &Subset) -> Result<Option<ElementId>> {
    Ok(CompositionQuery::new(p, a.clone())?.greatest_sum())
}

/// Least upper bound. The join of the empty set is the bottom, if any.
pub fn join_of(p: &Poset, a: &Subset) -> Option<ElementId> {
    p.least(&p.upper_bounds(a))
}

/// Greatest lower bound. The meet of the empty set is the top, if any.
pub fn meet_of(p: &Poset, a: &Subset) -> Option<ElementId> {
    p.greatest(&p.lower_bounds(a))
}

pub fn minimal_upper_bounds(p: &Poset, a: &Subset) -> Subset {
    p.minimal(&p.upper_bounds(a))
}
