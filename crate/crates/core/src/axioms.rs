//! Decision procedures for the supplementation and atomicity axioms.
//!
//! All scans run in index order, so a failing verdict carries the
//! lexicographically least counterexample.

use std::fmt;

use serde::Serialize;

use crate::poset::Poset;
use crate::ElementId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// Strong supplementation.
    Separative,
    WeaklySupplemented,
    Atomic,
    /// `(∀z ≤ x, z ∘ y) ⇒ x ≤ y`
    D2Prime,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Separative => "separative",
            Axiom::WeaklySupplemented => "weakly_supplemented",
            Axiom::Atomic => "atomic",
            Axiom::D2Prime => "d2prime",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub holds: bool,
    /// Present exactly when `holds` is false. `(x, y)` for the two
    /// supplementation axioms and (D.2′), `(x)` for atomicity.
    pub witness: Option<Vec<ElementId>>,
}

impl AxiomVerdict {
    fn from_witness(axiom: Axiom, witness: Option<Vec<ElementId>>) -> Self {
        AxiomVerdict {
            axiom,
            holds: witness.is_none(),
            witness,
        }
    }

    /// Re-evaluates the witness against the quantified definition, by plain
    /// element scans that do not use the precomputed overlap rows.
    pub fn witness_refutes(&self, p: &Poset) -> bool {
        let Some(w) = &self.witness else {
            return false;
        };
        let overlaps = |u: ElementId, v: ElementId| p.elements().any(|z| p.leq(z, u) && p.leq(z, v));
        match (self.axiom, w.as_slice()) {
            (Axiom::Separative, &[x, y]) => {
                !p.leq(x, y) && p.elements().filter(|&z| p.leq(z, x)).all(|z| overlaps(z, y))
            }
            (Axiom::D2Prime, &[x, y]) => {
                p.elements().filter(|&z| p.leq(z, x)).all(|z| overlaps(z, y)) && !p.leq(x, y)
            }
            (Axiom::WeaklySupplemented, &[x, y]) => {
                p.lt(x, y) && !p.elements().any(|z| p.lt(z, y) && !overlaps(z, x))
            }
            (Axiom::Atomic, &[x]) => !p.elements().any(|z| p.leq(z, x) && p.is_atom(z)),
            _ => false,
        }
    }
}

/// Strong supplementation: whenever `x ≰ y` some part of `x` is disjoint from `y`.
pub fn is_separative(p: &Poset) -> AxiomVerdict {
    let witness = pairs(p).find(|&(x, y)| {
        !p.leq(x, y) && p.down(x).iter().all(|z| p.overlaps(z, y))
    });
    AxiomVerdict::from_witness(Axiom::Separative, witness.map(|(x, y)| vec![x, y]))
}

/// Every proper part `x < y` has a remainder `z < y` with `z ≀ x`.
///
/// `z ≠ y` is required explicitly: `y` itself always overlaps `x`, so the
/// proper-part form and the `z ≤ y` form agree, but the scan stays literal.
pub fn is_weakly_supplemented(p: &Poset) -> AxiomVerdict {
    let witness = pairs(p).find(|&(x, y)| {
        p.lt(x, y) && !p.down(y).iter().any(|z| z != y && p.disjoint(z, x))
    });
    AxiomVerdict::from_witness(Axiom::WeaklySupplemented, witness.map(|(x, y)| vec![x, y]))
}

/// Every element has an atom below it. Always true for finite posets.
pub fn is_atomic(p: &Poset) -> AxiomVerdict {
    let atoms = p.atoms();
    let witness = p.elements().find(|&x| !p.down(x).intersects(&atoms));
    AxiomVerdict::from_witness(Axiom::Atomic, witness.map(|x| vec![x]))
}

/// `(∀z ≤ x, z ∘ y) ⇒ x ≤ y`, checked through overlap-set inclusion.
pub fn d2prime_holds(p: &Poset) -> AxiomVerdict {
    let witness = pairs(p).find(|&(x, y)| p.down(x).is_subset(p.overlap_of(y)) && !p.leq(x, y));
    AxiomVerdict::from_witness(Axiom::D2Prime, witness.map(|(x, y)| vec![x, y]))
}

pub fn check_all(p: &Poset) -> Vec<AxiomVerdict> {
    vec![
        is_separative(p),
        is_weakly_supplemented(p),
        is_atomic(p),
        d2prime_holds(p),
    ]
}

fn pairs(p: &Poset) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
    p.elements().flat_map(move |x| p.elements().map(move |y| (x, y)))
}
