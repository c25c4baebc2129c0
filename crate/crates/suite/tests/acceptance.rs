//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! The corpus is every poset with at most five elements up to isomorphism
//! plus 250 seeded random posets each of sizes six and seven.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use mereo::axioms::is_weakly_supplemented;
use mereo::completion::{complete, complete_dm, complete_fp, complete_gp, complete_hp, complete_op, complete_sp};
use mereo::corpus::{build_corpus, CorpusEntry, CorpusSpec};
use mereo::dot::emit_dot;
use mereo::morphism::{find_isomorphism, join_completion_report, with_bottom};
use mereo::suite::{run_suite, sums_are_suprema, SuiteCheck, SuiteReport};
use mereo::{fixtures, CompletionOptions, Limits, Method, PosetMap};

const SEED: u64 = 20_240_601;
const RANDOM_PER_SIZE: usize = 250;

fn corpus_spec() -> CorpusSpec {
    CorpusSpec::up_to(7, RANDOM_PER_SIZE, SEED)
}

struct Run {
    results: Vec<(String, bool)>,
}

impl Run {
    fn record(&mut self, id: &str, what: &str, ok: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        if detail.is_empty() {
            println!("[{tag}] {id} {what}");
        } else {
            println!("[{tag}] {id} {what}: {detail}");
        }
        self.results.push((id.to_string(), ok));
    }

    fn suite(&mut self, id: &str, what: &str, report: &SuiteReport, checks: &[SuiteCheck]) {
        let mut ok = true;
        let mut parts = Vec::new();
        for &check in checks {
            let t = report.total(check);
            ok &= t.violations == 0;
            parts.push(format!("{check} {} violations", t.violations));
            if t.skipped > 0 {
                parts.push(format!("{} skipped", t.skipped));
            }
            if let Some((name, first)) = report.posets.iter().find_map(|r| {
                r.outcome(check).violations.first().map(|v| (r.name.clone(), v.clone()))
            }) {
                parts.push(format!("first: {name}: {first}"));
            }
        }
        self.record(id, what, ok, parts.join(", "));
    }
}

fn fixture_regressions(run: &mut Run) {
    let l = Limits::default();
    let a3 = fixtures::antichain(3);
    let multcom = fixtures::multcom();

    let op = complete_op(&a3, &l).unwrap();
    let pme = fixtures::powerset_minus_empty(3);
    let iso = find_isomorphism(op.extended(), &pme, &l).unwrap();
    run.record(
        "5a",
        "O(3-antichain) has 7 elements, isomorphic to the nonempty subsets of 3",
        op.extended().len() == 7 && iso.is_some(),
        format!("{} elements", op.extended().len()),
    );

    let fp = complete_fp(&a3, &l).unwrap();
    run.record(
        "5b",
        "F(3-antichain) adds 4 elements and f{a,b,c} is not a top",
        fp.added() == 4 && fp.extended().top().is_none(),
        format!("adds {}, top {:?}", fp.added(), fp.extended().top()),
    );

    let gp = complete_gp(&multcom, &l).unwrap();
    run.record("5c", "G(multcom) adds exactly 1 element", gp.added() == 1, format!("adds {}", gp.added()));

    let hp = complete_hp(&multcom, &l).unwrap();
    let m = hp.extended();
    let covered: Vec<&str> = hp
        .new_elements()
        .iter()
        .flat_map(|n| m.covers().into_iter().filter(move |&(_, hi)| hi == n))
        .map(|(lo, _)| m.label(lo))
        .collect();
    run.record(
        "5d",
        "H(multcom) adds one element covering exactly the atoms c, d",
        hp.added() == 1 && covered == ["c", "d"],
        format!("covers {covered:?}"),
    );

    let fpm = complete_fp(&multcom, &l).unwrap();
    run.record("5e", "F(multcom) adds exactly 7 elements", fpm.added() == 7, format!("adds {}", fpm.added()));

    let sp = complete_sp(&fixtures::counterwscomp(), &l).unwrap();
    let ws = is_weakly_supplemented(sp.extended());
    let added_top = sp.added() == 1 && sp.extended().top().is_some_and(|t| sp.is_new(t));
    run.record(
        "5f",
        "S(counterwscomp) adds exactly 1 top and is not weakly supplemented",
        added_top && !ws.holds,
        format!("adds {}, weak supplementation witness {:?}", sp.added(), ws.witness),
    );
}

/// The clause as stated: every sum-complete extended poset, weakly
/// supplemented or not.
fn literal_suprema(run: &mut Run, corpus: &[CorpusEntry]) {
    let l = Limits::default();
    let mut failing = 0;
    let mut checked = 0;
    let mut first = None;
    for e in corpus {
        for method in Method::ALL {
            let c = complete(&e.poset, method, &CompletionOptions::default()).unwrap();
            checked += 1;
            let v = sums_are_suprema(c.extended(), false, &l).unwrap();
            if !v.is_empty() {
                failing += 1;
                first.get_or_insert_with(|| format!("{} {method} {}", e.name, v[0]));
            }
        }
    }
    run.record(
        "6c",
        "in every sum-complete extended poset, sums are exactly suprema",
        failing == 0,
        format!("{failing} of {checked} extended posets fail; first: {}", first.unwrap_or_default()),
    );
}

fn dm_non_uniqueness(run: &mut Run) {
    let l = Limits::default();
    let a3 = fixtures::antichain(3);
    let dm = complete_dm(&a3, false).unwrap();
    let pme = fixtures::powerset_minus_empty(3);
    // A complete lattice needs a least element; the empty join goes there.
    let lattice = with_bottom(&pme).unwrap();
    let singletons: Vec<usize> = a3
        .elements()
        .map(|x| lattice.index_of(&format!("{{{}}}", a3.label(x))).unwrap())
        .collect();
    let into_powerset = PosetMap::new(a3.clone(), lattice.clone(), singletons).unwrap();
    let dm_report = join_completion_report(dm.embed(), &l).unwrap();
    let pme_report = join_completion_report(&into_powerset, &l).unwrap();
    let iso = find_isomorphism(dm.extended(), &lattice, &l).unwrap();
    run.record(
        "9b",
        "3-antichain: DM (5) and nonempty subsets (7) are non-isomorphic join-completions",
        dm.extended().len() == 5 && pme.len() == 7 && dm_report.holds() && pme_report.holds() && iso.is_none(),
        format!(
            "DM {} elements, subsets {} (+ bottom), DM passes {}, subsets pass {}",
            dm.extended().len(),
            pme.len(),
            dm_report.holds(),
            pme_report.holds()
        ),
    );
}

fn goldens_match(run: &mut Run) {
    let l = Limits::default();
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden");
    let cases = [
        ("op_antichain3.dot", complete_op(&fixtures::antichain(3), &l).unwrap()),
        ("fp_antichain3.dot", complete_fp(&fixtures::antichain(3), &l).unwrap()),
        ("fp_multcom.dot", complete_fp(&fixtures::multcom(), &l).unwrap()),
        ("gp_multcom.dot", complete_gp(&fixtures::multcom(), &l).unwrap()),
        ("hp_multcom.dot", complete_hp(&fixtures::multcom(), &l).unwrap()),
        ("sp_counterwscomp.dot", complete_sp(&fixtures::counterwscomp(), &l).unwrap()),
    ];
    let mismatched: Vec<&str> = cases
        .iter()
        .filter(|(name, c)| std::fs::read_to_string(dir.join(name)).ok().as_deref() != Some(emit_dot(c).as_str()))
        .map(|(name, _)| *name)
        .collect();
    run.record(
        "10b",
        "DOT output matches the golden files",
        mismatched.is_empty(),
        if mismatched.is_empty() { String::new() } else { format!("mismatched {mismatched:?}") },
    );
}

fn main() -> ExitCode {
    let start = Instant::now();
    let limits = Limits::default();
    let spec = corpus_spec();
    let corpus = build_corpus(&spec).unwrap();
    let exhaustive = corpus.iter().filter(|e| e.name.starts_with("iso")).count();
    println!(
        "corpus: {} posets ({exhaustive} exhaustive up to n = {}, {} random of sizes {:?}, seed {})",
        corpus.len(),
        spec.exhaustive_n,
        corpus.len() - exhaustive,
        spec.random_sizes,
        spec.seed
    );
    let mut report = run_suite(&corpus, &limits);
    report.spec = Some(spec.clone());
    println!("suite finished in {:.1?}", start.elapsed());

    let mut run = Run { results: Vec::new() };
    run.suite("1", "separative iff (D.2'), separative implies weakly supplemented", &report, &[SuiteCheck::AxiomEquivalence]);
    run.suite("2", "closure lemma, six clauses, all nonempty subsets", &report, &[SuiteCheck::ClosureLemma]);
    run.suite("3", "S(P), F(P), G(P), H(P) meet their completion contracts", &report, &[SuiteCheck::CompletionContracts]);
    run.suite(
        "4",
        "separative P: O(P) is a separative fusion-completion, Boolean with a bottom",
        &report,
        &[SuiteCheck::OverlapCompletion],
    );
    fixture_regressions(&mut run);
    run.suite("6a", "sums are fusions; they coincide on separative posets", &report, &[SuiteCheck::SumsVsFusions]);
    run.suite(
        "6b",
        "in weakly supplemented sum-complete posets, sums are exactly suprema",
        &report,
        &[SuiteCheck::SumsAreSuprema],
    );
    literal_suprema(&mut run, &corpus);
    run.suite(
        "7",
        "dense embedding consequences, quotients onto S(P), minimal embeddings",
        &report,
        &[SuiteCheck::MorphismTheorems],
    );
    run.suite("8", "O(P) and S(P) are isomorphic over P when both are separative", &report, &[SuiteCheck::Uniqueness]);
    run.suite("9a", "Dedekind-MacNeille is a join- and meet-preserving join-completion", &report, &[SuiteCheck::JoinCompletion]);
    dm_non_uniqueness(&mut run);

    let mut again = run_suite(&build_corpus(&spec).unwrap(), &limits);
    again.spec = Some(spec);
    run.record(
        "10a",
        "identical seeds give byte-identical structured output",
        report.to_json() == again.to_json(),
        format!("{} bytes", report.to_json().len()),
    );
    goldens_match(&mut run);

    let failed: Vec<&str> = run.results.iter().filter(|(_, ok)| !ok).map(|(id, _)| id.as_str()).collect();
    println!(
        "{} of {} criteria passed in {:.1?}",
        run.results.len() - failed.len(),
        run.results.len(),
        start.elapsed()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed: {}", failed.join(" "));
        ExitCode::FAILURE
    }
}
