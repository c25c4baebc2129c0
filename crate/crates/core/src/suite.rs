//! The invariant suite run over a poset corpus.
//!
//! Every check returns human-readable violation strings; an empty list means
//! the check passed. Posets are processed in parallel and reported in corpus
//! order.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::{d2prime_holds, is_atomic, is_separative, is_weakly_supplemented};
use crate::completion::{complete_dm, complete_fp, complete_gp, complete_hp, complete_op, complete_sp, Completion};
use crate::composition::{closure, fusions_of, is_fusion, sums_of};
use crate::config::Limits;
use crate::corpus::{CorpusEntry, CorpusSpec};
use crate::error::Result;
use crate::morphism::{
    analyze_map, build_minimal_embedding, build_quotient, dense_embedding_consequences,
    duplicated_top_fixture, find_isomorphism_fixing, is_complete_boolean_algebra, is_fusion_completion,
    is_sum_completion, join_completion_report, with_bottom, MapProperty, MapPropertyReport,
};
use crate::poset::Poset;
use crate::signature::{sum_classes, sum_complete};
use crate::subset::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteCheck {
    /// Separative ⇔ (D.2′), separative ⇒ weakly supplemented.
    AxiomEquivalence,
    /// The six properties of `A ↦ Ā`.
    ClosureLemma,
    /// S(P), F(P), G(P), H(P) meet their completion contracts.
    CompletionContracts,
    /// 𝖮P of a separative poset: fusion-completion, separative, Boolean
    /// with a bottom added. The fusion formula in 𝖮P for every poset.
    OverlapCompletion,
    /// Sums are fusions; on separative posets they coincide.
    SumsVsFusions,
    /// In weakly supplemented sum-complete posets, sums are suprema.
    SumsAreSuprema,
    /// Dense embedding consequences, the quotient and the minimal embedding.
    MorphismTheorems,
    /// 𝖮P ≅ S(P) over P when both are separative.
    Uniqueness,
    /// Dedekind–MacNeille is a join-completion preserving joins and meets.
    JoinCompletion,
}

impl SuiteCheck {
    pub const ALL: [SuiteCheck; 9] = [
        SuiteCheck::AxiomEquivalence,
        SuiteCheck::ClosureLemma,
        SuiteCheck::CompletionContracts,
        SuiteCheck::OverlapCompletion,
        SuiteCheck::SumsVsFusions,
        SuiteCheck::SumsAreSuprema,
        SuiteCheck::MorphismTheorems,
        SuiteCheck::Uniqueness,
        SuiteCheck::JoinCompletion,
    ];
}

impl fmt::Display for SuiteCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).expect("unit variants serialize");
        f.write_str(v.as_str().expect("unit variants serialize to strings"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: SuiteCheck,
    pub violations: Vec<String>,
    /// Parts of the check that did not apply, with the reason.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetReport {
    pub name: String,
    pub size: usize,
    pub covers: Vec<(usize, usize)>,
    pub outcomes: Vec<CheckOutcome>,
}

impl PosetReport {
    pub fn outcome(&self, check: SuiteCheck) -> &CheckOutcome {
        self.outcomes
            .iter()
            .find(|o| o.check == check)
            .expect("every check runs")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckTotal {
    pub check: SuiteCheck,
    pub posets_with_violations: usize,
    pub violations: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<CorpusSpec>,
    pub totals: Vec<CheckTotal>,
    pub posets: Vec<PosetReport>,
}

impl SuiteReport {
    pub fn total(&self, check: SuiteCheck) -> &CheckTotal {
        self.totals.iter().find(|t| t.check == check).expect("every check is totalled")
    }

    pub fn violations(&self) -> usize {
        self.totals.iter().map(|t| t.violations).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

pub fn run_suite(entries: &[CorpusEntry], limits: &Limits) -> SuiteReport {
    let posets: Vec<PosetReport> = entries
        .par_iter()
        .map(|e| check_poset(&e.name, &e.poset, limits))
        .collect();
    let totals = SuiteCheck::ALL
        .iter()
        .map(|&check| {
            let outcomes = posets.iter().map(|r| r.outcome(check));
            CheckTotal {
                check,
                posets_with_violations: outcomes.clone().filter(|o| !o.violations.is_empty()).count(),
                violations: outcomes.clone().map(|o| o.violations.len()).sum(),
                skipped: outcomes.map(|o| o.skipped.len()).sum(),
            }
        })
        .collect();
    SuiteReport {
        spec: None,
        totals,
        posets,
    }
}

/// The completions every check draws on.
struct Completions {
    op: Completion,
    sp: Completion,
    fp: Completion,
    gp: Completion,
    hp: Completion,
    dm: Completion,
}

impl Completions {
    fn build(p: &Poset, limits: &Limits) -> Result<Completions> {
        Ok(Completions {
            op: complete_op(p, limits)?,
            sp: complete_sp(p, limits)?,
            fp: complete_fp(p, limits)?,
            gp: complete_gp(p, limits)?,
            hp: complete_hp(p, limits)?,
            dm: complete_dm(p, false)?,
        })
    }

    fn all(&self) -> [&Completion; 6] {
        [&self.op, &self.sp, &self.fp, &self.gp, &self.hp, &self.dm]
    }
}

pub fn check_poset(name: &str, p: &Poset, limits: &Limits) -> PosetReport {
    let built = Completions::build(p, limits);
    let outcomes = SuiteCheck::ALL
        .iter()
        .map(|&check| {
            let mut out = Outcome::default();
            match (&built, check) {
                (_, SuiteCheck::AxiomEquivalence) => axiom_equivalence(p, &mut out),
                (_, SuiteCheck::ClosureLemma) => closure_lemma(p, &mut out),
                (Err(e), _) => out.violation(format!("constructing completions failed: {e}")),
                (Ok(c), SuiteCheck::CompletionContracts) => completion_contracts(p, c, limits, &mut out),
                (Ok(c), SuiteCheck::OverlapCompletion) => overlap_completion(p, c, limits, &mut out),
                (Ok(c), SuiteCheck::SumsVsFusions) => sums_vs_fusions(p, c, limits, &mut out),
                (Ok(c), SuiteCheck::SumsAreSuprema) => {
                    for m in std::iter::once(p).chain(c.all().map(Completion::extended)) {
                        match sums_are_suprema(m, true, limits) {
                            Ok(v) => out.violations.extend(v),
                            Err(e) => out.violation(format!("{e}")),
                        }
                    }
                }
                (Ok(c), SuiteCheck::MorphismTheorems) => morphism_theorems(p, c, limits, &mut out),
                (Ok(c), SuiteCheck::Uniqueness) => uniqueness(p, c, limits, &mut out),
                (Ok(c), SuiteCheck::JoinCompletion) => match join_completion_report(c.dm.embed(), limits) {
                    Ok(r) => {
                        for failed in r.checks.iter().filter(|k| !k.holds) {
                            out.violation(format!("Dedekind–MacNeille: {} fails {:?}", failed.name, failed.witness));
                        }
                    }
                    Err(e) => out.violation(format!("{e}")),
                },
            }
            CheckOutcome {
                check,
                violations: out.violations,
                skipped: out.skipped,
            }
        })
        .collect();
    PosetReport {
        name: name.to_string(),
        size: p.len(),
        covers: p.covers(),
        outcomes,
    }
}

#[derive(Default)]
struct Outcome {
    violations: Vec<String>,
    skipped: Vec<String>,
}

impl Outcome {
    fn violation(&mut self, s: String) {
        self.violations.push(s);
    }

    fn expect(&mut self, ok: bool, s: impl FnOnce() -> String) {
        if !ok {
            self.violations.push(s());
        }
    }

    fn contract(&mut self, what: &str, report: Result<MapPropertyReport>) {
        match report {
            Ok(r) => {
                for v in r.failures() {
                    self.violations
                        .push(format!("{what}: {} fails, witness {:?}", v.property, v.witness));
                }
            }
            Err(e) => self.violations.push(format!("{what}: {e}")),
        }
    }
}

fn nonempty_subsets(p: &Poset) -> impl Iterator<Item = Subset> + '_ {
    (1u64..(1 << p.len())).map(move |m| p.subset_from_mask(m))
}

fn axiom_equivalence(p: &Poset, out: &mut Outcome) {
    let sep = is_separative(p);
    let d2 = d2prime_holds(p);
    let ws = is_weakly_supplemented(p);
    out.expect(sep.holds == d2.holds, || {
        format!("separative = {} but (D.2′) = {}", sep.holds, d2.holds)
    });
    out.expect(!sep.holds || ws.holds, || {
        format!("separative but not weakly supplemented, witness {:?}", ws.witness)
    });
    for v in [&sep, &d2, &ws, &is_atomic(p)] {
        out.expect(v.holds || v.witness_refutes(p), || {
            format!("{} witness {:?} does not recheck", v.axiom, v.witness)
        });
    }
}

fn closure_lemma(p: &Poset, out: &mut Outcome) {
    let enclosed = |x: usize, b: &Subset| p.down(x).iter().all(|y| b.iter().any(|z| p.overlaps(y, z)));
    let subsets: Vec<Subset> = nonempty_subsets(p).collect();
    let closures: Vec<Subset> = subsets.iter().map(|a| closure(p, a).expect("nonempty")).collect();
    for (a, abar) in subsets.iter().zip(&closures) {
        let f = |clause: u8| format!("clause {clause} fails for A = {}", p.format_subset(a));
        out.expect(a.is_subset(abar), || f(1));
        out.expect(&p.down_set(abar) == abar, || f(2));
        out.expect(&closure(p, abar).expect("nonempty") == abar, || f(3));
        out.expect(p.elements().all(|x| enclosed(x, abar) == abar.contains(x)), || f(4));
        for (b, bbar) in subsets.iter().zip(&closures) {
            let lhs = abar.is_subset(bbar);
            let rhs = a.iter().all(|x| enclosed(x, b));
            out.expect(lhs == rhs, || format!("{} with B = {}", f(5), p.format_subset(b)));
        }
        let sums_abar = sums_of(p, abar).expect("nonempty").solutions;
        let sums_a = sums_of(p, a).expect("nonempty").solutions;
        out.expect(sums_abar.is_subset(&sums_a), || f(6));
    }
}

fn completion_contracts(p: &Poset, c: &Completions, limits: &Limits, out: &mut Outcome) {
    out.contract("S(P) sum-completion", is_sum_completion(c.sp.embed(), limits));
    out.contract("F(P) fusion-completion", is_fusion_completion(c.fp.embed(), limits));
    out.contract("G(P) fusion-completion", is_fusion_completion(c.gp.embed(), limits));
    if is_atomic(p).holds {
        out.contract("H(P) fusion-completion", is_fusion_completion(c.hp.embed(), limits));
    } else {
        out.skipped.push("H(P): poset is not atomic".into());
    }

    // Recount the new elements by direct enumeration.
    let mut closures = BTreeSet::new();
    let mut fusionless = 0;
    let mut signatures = BTreeSet::new();
    for a in nonempty_subsets(p) {
        if sums_of(p, &a).expect("nonempty").solutions.is_empty() {
            closures.insert(closure(p, &a).expect("nonempty"));
        }
        if fusions_of(p, &a).expect("nonempty").is_empty() {
            fusionless += 1;
            signatures.insert(p.overlap_set(&a));
        }
    }
    out.expect(c.sp.added() == closures.len(), || {
        format!("S(P) adds {} elements, {} distinct closures", c.sp.added(), closures.len())
    });
    out.expect(c.fp.added() == fusionless, || {
        format!("F(P) adds {} elements, {fusionless} fusion-less subsets", c.fp.added())
    });
    for (what, g) in [("G(P)", &c.gp), ("H(P)", &c.hp)] {
        out.expect(g.added() == signatures.len(), || {
            format!("{what} adds {} elements, {} distinct signatures", g.added(), signatures.len())
        });
    }
    for (what, comp, sum) in [("S(P)", &c.sp, true), ("F(P)", &c.fp, false), ("G(P)", &c.gp, false)] {
        for r in comp.provenance() {
            let has = if sum {
                !sums_of(p, &r.generator).map(|a| a.solutions.is_empty()).unwrap_or(false)
            } else {
                !fusions_of(p, &r.generator).map(|s| s.is_empty()).unwrap_or(false)
            };
            out.expect(!has, || {
                format!("{what} generator {} already has a composition", p.format_subset(&r.generator))
            });
        }
    }
}

fn overlap_completion(p: &Poset, c: &Completions, limits: &Limits, out: &mut Outcome) {
    let op = &c.op;
    let m = op.extended();
    // 𝖮(A) is a fusion of {𝖮(x) | x ∈ A}, for every poset.
    for a in nonempty_subsets(p) {
        let target = p.overlap_set(&a);
        let element = m.elements().find(|&i| {
            let below = p.subset(p.elements().filter(|&x| m.leq(op.embed().apply(x), i)));
            p.overlap_set(&below) == target
        });
        match element {
            Some(i) => out.expect(is_fusion(m, i, &op.embed().image_of(&a)).unwrap_or(false), || {
                format!("𝖮({}) is not the fusion of its generators in 𝖮P", p.format_subset(&a))
            }),
            None => out.violation(format!("𝖮({}) missing from 𝖮P", p.format_subset(&a))),
        }
    }
    if !is_separative(p).holds {
        out.skipped.push("𝖮P contract: poset is not separative".into());
        return;
    }
    out.contract("𝖮P fusion-completion", is_fusion_completion(op.embed(), limits));
    let sep = is_separative(m);
    out.expect(sep.holds, || format!("𝖮P is not separative, witness {:?}", sep.witness));
    match with_bottom(m) {
        Ok(b) => {
            let r = is_complete_boolean_algebra(&b);
            for k in r.checks.iter().filter(|k| !k.holds) {
                out.violation(format!("𝖮P + ⊥ is not {}: witness {:?}", k.name, k.witness));
            }
        }
        Err(e) => out.violation(format!("adding a bottom failed: {e}")),
    }
}

fn sums_vs_fusions(p: &Poset, c: &Completions, limits: &Limits, out: &mut Outcome) {
    let separative = is_separative(p).holds;
    for a in nonempty_subsets(p) {
        let sums = sums_of(p, &a).expect("nonempty").solutions;
        let fusions = fusions_of(p, &a).expect("nonempty");
        out.expect(sums.is_subset(&fusions), || {
            format!("a sum of {} is not a fusion", p.format_subset(&a))
        });
        out.expect(!separative || sums == fusions, || {
            format!("separative, but sums and fusions of {} differ", p.format_subset(&a))
        });
    }
    for comp in c.all() {
        let m = comp.extended();
        match sum_classes(m, limits) {
            Ok(classes) => {
                for class in classes {
                    out.expect(class.sums.iter().all(|x| m.overlap_of(x) == &class.overlap), || {
                        format!("{}: a sum of {} is not a fusion", comp.method(), m.format_subset(&class.generator))
                    });
                }
            }
            Err(e) => out.violation(format!("{}: {e}", comp.method())),
        }
    }
}

/// For a sum-complete `m`, every subset whose sums are not exactly its
/// supremum. With `require_weak_supplementation`, posets that are not
/// weakly supplemented are passed over.
pub fn sums_are_suprema(m: &Poset, require_weak_supplementation: bool, limits: &Limits) -> Result<Vec<String>> {
    if !sum_complete(m, limits)?.holds {
        return Ok(Vec::new());
    }
    if require_weak_supplementation && !is_weakly_supplemented(m).holds {
        return Ok(Vec::new());
    }
    let mut violations = Vec::new();
    for class in sum_classes(m, limits)? {
        let sup = m.least(&class.upper_bounds);
        let expected = m.subset(sup);
        if class.sums != expected {
            violations.push(format!(
                "in {:?}: sums of {} are {} but the supremum is {}",
                m.labels(),
                m.format_subset(&class.generator),
                m.format_subset(&class.sums),
                sup.map(|s| m.label(s).to_string()).unwrap_or_else(|| "missing".into())
            ));
        }
    }
    Ok(violations)
}

fn morphism_theorems(p: &Poset, c: &Completions, limits: &Limits, out: &mut Outcome) {
    if let Err(e) = dense_embedding_consequences(c.sp.embed(), limits) {
        out.violation(format!("σ: {e}"));
    }
    for comp in [&c.fp, &c.gp, &c.hp] {
        match analyze_map(comp.embed(), limits) {
            Ok(r) if r.holds(MapProperty::Dense) => {
                if let Err(e) = dense_embedding_consequences(comp.embed(), limits) {
                    out.violation(format!("{}: {e}", comp.method()));
                }
            }
            Ok(_) => out.skipped.push(format!("{}: embedding is not dense", comp.method())),
            Err(e) => out.violation(format!("{}: {e}", comp.method())),
        }
    }
    if is_weakly_supplemented(p).holds {
        if let Err(e) = build_quotient(c.sp.embed(), &c.sp, limits) {
            out.violation(format!("quotient from S(P): {e}"));
        }
        match duplicated_top_fixture(&c.sp).and_then(|e| build_quotient(&e, &c.sp, limits)) {
            Ok(q) => {
                let last = q.source().len() - 1;
                let top = c.sp.extended().top();
                out.expect(Some(q.apply(last)) == top, || {
                    "quotient does not send the duplicated top to the top of S(P)".into()
                });
            }
            Err(e) => out.violation(format!("quotient from duplicated top: {e}")),
        }
    } else {
        out.skipped.push("quotient: poset is not weakly supplemented".into());
    }
    if is_atomic(p).holds {
        for target in [&c.fp, &c.gp] {
            if let Err(e) = build_minimal_embedding(&c.hp, target.embed(), limits) {
                out.violation(format!("minimal embedding into {}: {e}", target.method()));
            }
        }
    } else {
        out.skipped.push("minimal embedding: poset is not atomic".into());
    }
}

fn uniqueness(p: &Poset, c: &Completions, limits: &Limits, out: &mut Outcome) {
    if !is_separative(p).holds {
        return;
    }
    let sp_sep = is_separative(c.sp.extended());
    if let Some(w) = sp_sep.witness {
        let m = c.sp.extended();
        out.skipped.push(format!(
            "S(P) is not separative: {} ≰ {} yet every part of {} overlaps {}",
            m.label(w[0]),
            m.label(w[1]),
            m.label(w[0]),
            m.label(w[1])
        ));
        return;
    }
    let fixed: Vec<(usize, usize)> = p
        .elements()
        .map(|x| (c.op.embed().apply(x), c.sp.embed().apply(x)))
        .collect();
    match find_isomorphism_fixing(c.op.extended(), c.sp.extended(), &fixed, limits) {
        Ok(Some(_)) => {}
        Ok(None) => out.violation("no isomorphism 𝖮P ≅ S(P) fixing P".into()),
        Err(e) => out.violation(format!("isomorphism search: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_pass() {
        for p in [
            fixtures::multcom(),
            fixtures::counterwscomp(),
            fixtures::antichain(3),
            fixtures::chain(3),
            fixtures::two_chains(2),
        ] {
            let r = check_poset("fixture", &p, &Limits::default());
            for o in &r.outcomes {
                assert!(o.violations.is_empty(), "{p:?}: {:?}", o);
            }
        }
    }

    #[test]
    fn literal_suprema_clause_fails_on_a_chain() {
        let v = sums_are_suprema(&fixtures::chain(2), false, &Limits::default()).unwrap();
        assert!(!v.is_empty());
        assert!(sums_are_suprema(&fixtures::chain(2), true, &Limits::default()).unwrap().is_empty());
    }

    #[test]
    fn uniqueness_skip_is_logged() {
        // The 3-antichain is separative and so is S(P); nothing is skipped.
        let r = check_poset("a3", &fixtures::antichain(3), &Limits::default());
        assert!(r.outcome(SuiteCheck::Uniqueness).skipped.is_empty());
    }
}
