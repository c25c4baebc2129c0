//! Finite-poset mereology: parthood, overlap, fusion and sum, the
//! completions that add missing compositions, and exhaustive checkers for
//! the maps between them.
//!
//! ```
//! use mereo::{completion, fixtures, Limits};
//!
//! let p = fixtures::multcom();
//! let g = completion::complete_gp(&p, &Limits::default()).unwrap();
//! assert_eq!(g.added(), 1);
//! assert_eq!(g.extended().top(), Some(4));
//! ```

pub mod axioms;
pub mod completion;
pub mod composition;
pub mod config;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod morphism;
pub mod poset;
pub mod signature;
pub mod subset;
pub mod suite;

/// Dense index of an element, `0..n`.
pub type ElementId = usize;

pub use completion::{complete, Completion, CompletionOptions, Guarantee, Method, Provenance};
pub use config::{Limits, OutputFormat, RunConfig};
pub use error::{Error, Result};
pub use morphism::PosetMap;
pub use poset::Poset;
pub use subset::{PosetId, Subset};
