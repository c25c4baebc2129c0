//! The `.poset` text format and its structured (JSON) counterpart.
//!
//! ```text
//! mereo-poset 1
//! name multcom
//! relation covers
//! elements a b c d
//! c < a
//! c < b
//! ```
//!
//! `#` starts a comment. Pair lines hold one or more chains such as
//! `c < a < e` or `c<a c<b`; `<=` is accepted wherever `<` is. Under
//! `relation leq` the pairs may include reflexive ones (`a <= a`). The order
//! is always the reflexive-transitive closure of the listed pairs.

use std::fmt::Write as _;

use serde::Serialize;

use crate::completion::Completion;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::ElementId;

pub const FORMAT_NAME: &str = "mereo-poset";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationMode {
    /// Pairs generate the order; none may be reflexive.
    #[default]
    Covers,
    /// Pairs list `≤` directly, reflexive pairs allowed.
    Leq,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProvenanceEntry {
    pub element: String,
    pub generator: Vec<String>,
    pub signature: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetDocument {
    pub version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    pub relation: RelationMode,
    pub elements: Vec<String>,
    /// `(lower, upper)` indices into `elements`.
    pub pairs: Vec<(ElementId, ElementId)>,
    pub provenance: Vec<ProvenanceEntry>,
}

impl PosetDocument {
    /// A covers-mode document listing the Hasse diagram of `p`.
    pub fn from_poset(p: &Poset) -> PosetDocument {
        PosetDocument {
            version: FORMAT_VERSION,
            name: None,
            source: None,
            method: None,
            relation: RelationMode::Covers,
            elements: p.labels().to_vec(),
            pairs: p.covers(),
            provenance: Vec::new(),
        }
    }

    /// The extended poset of `c` with one provenance entry per new element.
    pub fn from_completion(c: &Completion) -> PosetDocument {
        let base = c.base();
        let names = |s: &crate::Subset| s.iter().map(|x| base.label(x).to_string()).collect();
        let mut doc = PosetDocument::from_poset(c.extended());
        doc.method = Some(c.method().to_string());
        doc.provenance = c
            .provenance()
            .iter()
            .map(|r| ProvenanceEntry {
                element: c.extended().label(r.element).to_string(),
                generator: names(&r.generator),
                signature: names(&r.signature),
            })
            .collect();
        doc
    }

    pub fn to_poset(&self) -> Result<Poset> {
        Poset::from_cover_relations(self.elements.len(), &self.pairs)?.with_labels(self.elements.iter().cloned())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{FORMAT_NAME} {}\n", self.version);
        if let Some(name) = &self.name {
            writeln!(out, "name {name}").unwrap();
        }
        if let Some(source) = &self.source {
            writeln!(out, "source {source}").unwrap();
        }
        if let Some(method) = &self.method {
            writeln!(out, "method {method}").unwrap();
        }
        let (mode, op) = match self.relation {
            RelationMode::Covers => ("covers", "<"),
            RelationMode::Leq => ("leq", "<="),
        };
        writeln!(out, "relation {mode}").unwrap();
        writeln!(out, "elements {}", self.elements.join(" ")).unwrap();
        for &(lo, hi) in &self.pairs {
            writeln!(out, "{} {op} {}", self.elements[lo], self.elements[hi]).unwrap();
        }
        for r in &self.provenance {
            writeln!(
                out,
                "provenance {} generator {{{}}} signature {{{}}}",
                r.element,
                r.generator.join(","),
                r.signature.join(",")
            )
            .unwrap();
        }
        out
    }

    /// Versioned JSON tree with labels in place of indices.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Structured<'a> {
            format: &'static str,
            version: u32,
            #[serde(skip_serializing_if = "Option::is_none")]
            name: &'a Option<String>,
            #[serde(skip_serializing_if = "Option::is_none")]
            source: &'a Option<String>,
            #[serde(skip_serializing_if = "Option::is_none")]
            method: &'a Option<String>,
            relation: RelationMode,
            elements: &'a [String],
            pairs: Vec<[&'a str; 2]>,
            provenance: &'a [ProvenanceEntry],
        }
        let s = Structured {
            format: FORMAT_NAME,
            version: self.version,
            name: &self.name,
            source: &self.source,
            method: &self.method,
            relation: self.relation,
            elements: &self.elements,
            pairs: self
                .pairs
                .iter()
                .map(|&(lo, hi)| [self.elements[lo].as_str(), self.elements[hi].as_str()])
                .collect(),
            provenance: &self.provenance,
        };
        serde_json::to_string_pretty(&s).expect("documents serialize")
    }
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    parse_document(text)?.to_poset()
}

/// Covers-mode text for `p`.
pub fn serialize_poset(p: &Poset) -> String {
    PosetDocument::from_poset(p).to_text()
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Debug, PartialEq)]
enum Token<'a> {
    Label(&'a str),
    Less { or_equal: bool },
}

/// Splits a pair line into labels and `<`/`<=`, with 1-based columns.
fn tokenize(line: &str) -> Vec<(usize, Token<'_>)> {
    let mut tokens = Vec::new();
    let mut chars = line.char_indices().peekable();
    while let Some(&(start, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
        } else if ch == '<' {
            chars.next();
            let or_equal = chars.next_if(|&(_, c)| c == '=').is_some();
            tokens.push((start, Token::Less { or_equal }));
        } else {
            let mut end = line.len();
            while let Some(&(i, c)) = chars.peek() {
                if c.is_whitespace() || c == '<' {
                    end = i;
                    break;
                }
                chars.next();
            }
            tokens.push((start, Token::Label(&line[start..end])));
        }
    }
    tokens
        .into_iter()
        .map(|(byte, t)| (line[..byte].chars().count() + 1, t))
        .collect()
}

fn parse_set(text: &str, line: usize, column: usize) -> Result<Vec<String>> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| parse_error(line, column, format!("expected `{{..}}`, found `{text}`")))?;
    Ok(inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect())
}

pub fn parse_document(text: &str) -> Result<PosetDocument> {
    let mut doc = PosetDocument {
        version: FORMAT_VERSION,
        name: None,
        source: None,
        method: None,
        relation: RelationMode::Covers,
        elements: Vec::new(),
        pairs: Vec::new(),
        provenance: Vec::new(),
    };
    let mut seen_header = false;
    let mut last_line = 0;
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let column_of = |offset: usize| line[..indent + offset].chars().count() + 1;
        let (keyword, rest) = match trimmed.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (trimmed, ""),
        };
        let rest_offset = trimmed.len() - rest.len();

        if !seen_header {
            if keyword != FORMAT_NAME {
                return Err(parse_error(line_no, column_of(0), format!("expected `{FORMAT_NAME} <version>` header")));
            }
            doc.version = rest
                .parse()
                .map_err(|_| parse_error(line_no, column_of(rest_offset), format!("bad version `{rest}`")))?;
            if doc.version != FORMAT_VERSION {
                return Err(parse_error(
                    line_no,
                    column_of(rest_offset),
                    format!("unsupported version {}", doc.version),
                ));
            }
            seen_header = true;
            continue;
        }

        // A pair line whose first label happens to be a keyword.
        let keyword = if rest.starts_with('<') { "" } else { keyword };
        match keyword {
            "name" => doc.name = Some(rest.to_string()),
            "source" => doc.source = Some(rest.to_string()),
            "method" => doc.method = Some(rest.to_string()),
            "relation" => {
                doc.relation = match rest {
                    "covers" => RelationMode::Covers,
                    "leq" => RelationMode::Leq,
                    other => {
                        return Err(parse_error(
                            line_no,
                            column_of(rest_offset),
                            format!("relation must be `covers` or `leq`, found `{other}`"),
                        ))
                    }
                }
            }
            "elements" => {
                for (col, token) in tokenize(rest) {
                    match token {
                        Token::Label(l) => {
                            if doc.elements.iter().any(|e| e == l) {
                                return Err(Error::DuplicateLabel(l.to_string()));
                            }
                            doc.elements.push(l.to_string());
                        }
                        Token::Less { .. } => {
                            return Err(parse_error(
                                line_no,
                                column_of(rest_offset) + col - 1,
                                "`<` is not allowed in an element label",
                            ))
                        }
                    }
                }
            }
            "provenance" => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                match words.as_slice() {
                    [element, "generator", generator, "signature", signature] => {
                        let col = column_of(rest_offset);
                        doc.provenance.push(ProvenanceEntry {
                            element: element.to_string(),
                            generator: parse_set(generator, line_no, col)?,
                            signature: parse_set(signature, line_no, col)?,
                        });
                    }
                    _ => {
                        return Err(parse_error(
                            line_no,
                            column_of(rest_offset),
                            "expected `provenance LABEL generator {..} signature {..}`",
                        ))
                    }
                }
            }
            _ => parse_pairs(&mut doc, line, line_no)?,
        }
    }
    if !seen_header {
        return Err(parse_error(last_line.max(1), 1, format!("missing `{FORMAT_NAME}` header")));
    }
    Ok(doc)
}

fn parse_pairs(doc: &mut PosetDocument, line: &str, line_no: usize) -> Result<()> {
    let tokens = tokenize(line);
    let lookup = |label: &str, col: usize| {
        doc.elements
            .iter()
            .position(|e| e == label)
            .ok_or_else(|| parse_error(line_no, col, format!("unknown element `{label}`")))
    };
    let mut pairs = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let (col, Token::Label(first)) = &tokens[i] else {
            return Err(parse_error(line_no, tokens[i].0, "expected element label before `<`"));
        };
        let mut lower = lookup(first, *col)?;
        i += 1;
        let mut linked = false;
        while let Some((col, Token::Less { or_equal })) = tokens.get(i) {
            let Some((next_col, Token::Label(upper))) = tokens.get(i + 1) else {
                let at = col + if *or_equal { 2 } else { 1 };
                return Err(parse_error(line_no, at, "expected element label after `<`"));
            };
            let upper = lookup(upper, *next_col)?;
            if lower == upper && !(*or_equal && doc.relation == RelationMode::Leq) {
                return Err(parse_error(
                    line_no,
                    *col,
                    format!("`{}` cannot be strictly below itself", doc.elements[lower]),
                ));
            }
            if lower != upper {
                pairs.push((lower, upper));
            }
            lower = upper;
            linked = true;
            i += 2;
        }
        if !linked {
            return Err(parse_error(
                line_no,
                *col,
                format!("expected a pair such as `{first} < x`"),
            ));
        }
    }
    doc.pairs.extend(pairs);
    Ok(())
}
