//! Graphviz rendering of Hasse diagrams.
//!
//! Edges run from lower to upper element with `rankdir=BT`, so parts are
//! drawn below wholes. Covers of the extended poset that come from the
//! order of the base are solid; every other cover is dashed.

use std::fmt::Write as _;

use crate::completion::Completion;
use crate::poset::Poset;
use crate::ElementId;

fn quote(label: &str) -> String {
    let mut out = String::with_capacity(label.len() + 2);
    out.push('"');
    for c in label.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn render(name: &str, p: &Poset, solid: impl Fn(ElementId, ElementId) -> bool) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    out.push_str("  rankdir=BT;\n  node [shape=plaintext];\n");
    for x in p.elements() {
        writeln!(out, "  n{x} [label={}];", quote(p.label(x))).unwrap();
    }
    for (lo, hi) in p.covers() {
        if solid(lo, hi) {
            writeln!(out, "  n{lo} -> n{hi};").unwrap();
        } else {
            writeln!(out, "  n{lo} -> n{hi} [style=dashed];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of a plain poset; every edge is solid.
pub fn poset_dot(p: &Poset, name: &str) -> String {
    render(name, p, |_, _| true)
}

/// Hasse diagram of the extended poset of `c`.
pub fn emit_dot(c: &Completion) -> String {
    let (base, embed) = (c.base(), c.embed());
    let preimages = |m: ElementId| base.elements().filter(move |&x| embed.apply(x) == m);
    render(&c.method().to_string(), c.extended(), |lo, hi| {
        preimages(lo).any(|x| preimages(hi).any(|y| base.leq(x, y)))
    })
}
