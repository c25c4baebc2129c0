//! The six completions of a finite poset.
//!
//! Every construction returns a [`Completion`]: the extended poset `M`, the
//! embedding `e: P → M`, and a provenance record for each element of `M`
//! outside `e(P)`. Elements of `M` are laid out with the images of `P` first
//! (in the order of their first preimage) followed by the new elements sorted
//! by signature.

mod dm;
mod fusion;
mod op;
mod sp;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use dm::complete_dm;
pub use fusion::{complete_fp, complete_gp, complete_hp};
pub use op::complete_op;
pub use sp::complete_sp;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::morphism::PosetMap;
use crate::poset::Poset;
use crate::subset::Subset;
use crate::ElementId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Overlap sets `𝖮P`.
    Op,
    /// Sum-completion `S(P)`.
    Sp,
    /// One new fusion per fusion-less subset, `F(P)`.
    Fp,
    /// One new fusion per overlap signature, `G(P)`.
    Gp,
    /// `G(P)` with new elements placed above atoms only, `H(P)`.
    Hp,
    /// Dedekind–MacNeille cuts.
    Dm,
}

impl Method {
    pub const ALL: [Method; 6] = [Method::Op, Method::Sp, Method::Fp, Method::Gp, Method::Hp, Method::Dm];
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "op" => Ok(Method::Op),
            "sp" => Ok(Method::Sp),
            "fp" => Ok(Method::Fp),
            "gp" => Ok(Method::Gp),
            "hp" => Ok(Method::Hp),
            "dm" => Ok(Method::Dm),
            _ => Err(Error::Config(format!(
                "unknown method `{s}` (expected op, sp, fp, gp, hp or dm)"
            ))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Op => "op",
            Method::Sp => "sp",
            Method::Fp => "fp",
            Method::Gp => "gp",
            Method::Hp => "hp",
            Method::Dm => "dm",
        })
    }
}

/// What the construction promises about its embedding for this input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Guarantee {
    FusionCompletion,
    SumCompletion,
    JoinCompletion,
    /// The construction ran but its theorem does not cover this input.
    NotApplicable,
}

/// Where a new element of the extended poset came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    /// Index in the extended poset.
    pub element: ElementId,
    /// A subset of the base poset that gave rise to the element.
    pub generator: Subset,
    /// The canonical identity of the element, a subset of the base poset:
    /// the closure for S(P), the raw subset for F(P), the overlap set for
    /// G(P), H(P) and 𝖮P, the cut for Dedekind–MacNeille.
    pub signature: Subset,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompletionOptions {
    pub limits: Limits,
    pub drop_bottom: bool,
}

#[derive(Debug, Clone)]
pub struct Completion {
    method: Method,
    embed: PosetMap,
    provenance: Vec<Provenance>,
    guarantee: Guarantee,
}

impl Completion {
    pub fn method(&self) -> Method {
        self.method
    }

    pub fn base(&self) -> &Poset {
        self.embed.source()
    }

    pub fn extended(&self) -> &Poset {
        self.embed.target()
    }

    pub fn embed(&self) -> &PosetMap {
        &self.embed
    }

    pub fn guarantee(&self) -> Guarantee {
        self.guarantee
    }

    /// Provenance records, in increasing element order.
    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn provenance_of(&self, m: ElementId) -> Option<&Provenance> {
        self.provenance.iter().find(|r| r.element == m)
    }

    /// Elements of the extended poset outside the image of the base.
    pub fn new_elements(&self) -> Subset {
        self.extended().full_subset().difference(&self.embed.image())
    }

    pub fn is_new(&self, m: ElementId) -> bool {
        !self.embed.image().contains(m)
    }

    pub fn added(&self) -> usize {
        self.extended().len() - self.embed.image().len()
    }
}

pub fn complete(p: &Poset, method: Method, opts: &CompletionOptions) -> Result<Completion> {
    match method {
        Method::Op => complete_op(p, &opts.limits),
        Method::Sp => complete_sp(p, &opts.limits),
        Method::Fp => complete_fp(p, &opts.limits),
        Method::Gp => complete_gp(p, &opts.limits),
        Method::Hp => complete_hp(p, &opts.limits),
        Method::Dm => complete_dm(p, opts.drop_bottom),
    }
}

/// A new element waiting to be appended after the base carrier.
struct Fresh {
    generator: Subset,
    signature: Subset,
}

/// Builds `P ∪ fresh` with `P` occupying indices `0..n` unchanged.
///
/// `leq` receives indices into the combined carrier. The result is validated
/// as a partial order; a failure there is a bug in the caller's order rules.
fn extend_base(
    method: Method,
    base: &Poset,
    prefix: &str,
    mut fresh: Vec<Fresh>,
    leq: impl Fn(&[Fresh], ElementId, ElementId) -> bool,
    guarantee: Guarantee,
) -> Result<Completion> {
    fresh.sort_by(|a, b| a.signature.cmp(&b.signature));
    let n = base.len();
    let total = n + fresh.len();
    let m = Poset::from_leq(total, |i, j| leq(&fresh, i, j)).map_err(|e| {
        Error::InvariantViolation(format!("{method} order rules do not give a partial order: {e}"))
    })?;
    let labels = base
        .labels()
        .iter()
        .cloned()
        .chain(fresh.iter().map(|f| format!("{prefix}{}", base.format_subset(&f.signature))));
    let m = m.with_labels(disambiguate(labels))?;
    let provenance = fresh
        .into_iter()
        .enumerate()
        .map(|(i, f)| Provenance {
            element: n + i,
            generator: f.generator,
            signature: f.signature,
        })
        .collect();
    let embed = PosetMap::new(base.clone(), m, base.elements().collect())?;
    Ok(Completion {
        method,
        embed,
        provenance,
        guarantee,
    })
}

/// Builds a poset whose elements are subsets of the base ordered by
/// inclusion. `images[x]` is the set assigned to base element `x`; every
/// set in `images` must also occur in `sets`.
fn inclusion_completion(
    method: Method,
    base: &Poset,
    sets: Vec<(Subset, Subset)>,
    images: &[Subset],
    label: impl Fn(&Subset, Option<ElementId>) -> String,
    guarantee: Guarantee,
) -> Result<Completion> {
    // Image sets first, ordered by first preimage.
    let mut order: Vec<Subset> = Vec::new();
    for s in images {
        if !order.contains(s) {
            order.push(s.clone());
        }
    }
    let image_count = order.len();
    let mut rest: Vec<(Subset, Subset)> = sets.into_iter().filter(|(s, _)| !order.contains(s)).collect();
    rest.sort_by(|a, b| a.0.cmp(&b.0));
    rest.dedup_by(|a, b| a.0 == b.0);
    let generators: Vec<Subset> = rest.iter().map(|(_, g)| g.clone()).collect();
    order.extend(rest.into_iter().map(|(s, _)| s));

    let m = Poset::from_leq(order.len(), |i, j| order[i].is_subset(&order[j]))
        .map_err(|e| Error::InvariantViolation(format!("{method}: {e}")))?;
    let labels = order.iter().enumerate().map(|(i, s)| {
        let preimage = (i < image_count).then(|| images.iter().position(|t| t == s).unwrap());
        label(s, preimage)
    });
    let m = m.with_labels(disambiguate(labels))?;
    let assignment = images
        .iter()
        .map(|s| order.iter().position(|t| t == s).unwrap())
        .collect();
    let provenance = generators
        .into_iter()
        .enumerate()
        .map(|(i, generator)| Provenance {
            element: image_count + i,
            generator,
            signature: order[image_count + i].clone(),
        })
        .collect();
    let embed = PosetMap::new(base.clone(), m, assignment)?;
    Ok(Completion {
        method,
        embed,
        provenance,
        guarantee,
    })
}

/// Appends `'` to labels until all are unique.
fn disambiguate(labels: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut seen = HashSet::new();
    labels
        .into_iter()
        .map(|mut l| {
            while !seen.insert(l.clone()) {
                l.push('\'');
            }
            l
        })
        .collect()
}
