use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use mereo::axioms::check_all;
use mereo::composition::CompositionQuery;
use mereo::corpus::{build_corpus, CorpusSpec};
use mereo::dot::emit_dot;
use mereo::format::{parse_document, PosetDocument};
use mereo::morphism::{
    find_isomorphism, is_fusion_completion, is_sum_completion, join_completion_report, MapPropertyReport, Witness,
};
use mereo::suite::run_suite;
use mereo::{complete, CompletionOptions, Error, Guarantee, Limits, Method, OutputFormat, Poset, RunConfig};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

#[derive(Parser)]
#[command(name = "mereo", version, about = "Build and verify mereological completions of finite posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format: text, structured (JSON) or dot.
    #[arg(long, global = true, default_value = "text")]
    format: OutputFormat,

    /// Largest poset for which subsets are enumerated. Overrides MEREO_MAX_SUBSET_N.
    #[arg(long, global = true)]
    max_subset_n: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the supplementation and atomicity axioms.
    Check { file: PathBuf },
    /// Build a completion and print the extended poset.
    Complete {
        #[arg(long)]
        method: Method,
        file: PathBuf,
        /// Remove the empty cut from the Dedekind–MacNeille completion.
        #[arg(long)]
        drop_bottom: bool,
        /// Also write the Hasse diagram to this path.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Fusions of a subset.
    Fuse {
        file: PathBuf,
        /// Comma-separated element labels.
        #[arg(long, value_delimiter = ',', required = true)]
        of: Vec<String>,
    },
    /// Sums of a subset.
    Sum {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        of: Vec<String>,
    },
    /// Build a completion and check it against its contract.
    Verify {
        #[arg(long)]
        method: Method,
        file: PathBuf,
        #[arg(long)]
        drop_bottom: bool,
    },
    /// Search for an order isomorphism between two posets.
    Iso { left: PathBuf, right: PathBuf },
    /// Run the invariant suite over generated posets.
    Corpus {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random posets per size above the exhaustive range.
        #[arg(long, default_value_t = 50)]
        random_per_size: usize,
    },
}

enum Failure {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    /// The command ran, and what it checked does not hold.
    Violation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::CycleDetected(..)
        | Error::NotPartialOrder(_)
        | Error::DuplicateLabel(_) => EXIT_PARSE,
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        Error::PreconditionFailed(_) | Error::InvariantViolation(_) => EXIT_VIOLATION,
        Error::IndexOutOfRange { .. } | Error::UnknownLabel(_) | Error::EmptySubset | Error::Config(_) => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(EXIT_VIOLATION),
        Err(Failure::Io(path, e)) => {
            eprintln!("mereo: {}: {e}", path.display());
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("mereo: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run_config(common: &Common, method: Option<Method>, drop_bottom: bool, seed: u64) -> Result<RunConfig, Error> {
    let mut limits = Limits::default().with_env_override()?;
    if let Some(n) = common.max_subset_n {
        limits.max_subset_n = n;
    }
    let config = RunConfig {
        method: method.unwrap_or(RunConfig::default().method),
        limits,
        drop_bottom,
        format: common.format,
        seed,
    };
    config.validate()?;
    Ok(config)
}

fn read_poset(path: &Path) -> Result<(PosetDocument, Poset), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    let doc = parse_document(&text)?;
    let poset = doc.to_poset()?;
    Ok((doc, poset))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn labels(p: &Poset, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter().map(|x| p.label(x).to_string()).collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    let common = &cli.common;
    match cli.command {
        Command::Check { file } => {
            let config = run_config(common, None, false, 0)?;
            let (_, p) = read_poset(&file)?;
            let verdicts = check_all(&p);
            if config.format == OutputFormat::Structured {
                let v: Vec<Value> = verdicts
                    .iter()
                    .map(|v| {
                        json!({
                            "axiom": v.axiom.to_string(),
                            "holds": v.holds,
                            "witness": v.witness.as_ref().map(|w| labels(&p, w.iter().copied())),
                        })
                    })
                    .collect();
                print_json(&Value::Array(v));
            } else {
                for v in &verdicts {
                    match &v.witness {
                        None => println!("{}: yes", v.axiom),
                        Some(w) => println!("{}: no (witness {})", v.axiom, labels(&p, w.iter().copied()).join(",")),
                    }
                }
            }
            Ok(())
        }
        Command::Complete {
            method,
            file,
            drop_bottom,
            dot,
        } => {
            let config = run_config(common, Some(method), drop_bottom, 0)?;
            let (doc, p) = read_poset(&file)?;
            let opts = CompletionOptions {
                limits: config.limits.clone(),
                drop_bottom: config.drop_bottom,
            };
            let c = complete(&p, config.method, &opts)?;
            let mut out = PosetDocument::from_completion(&c);
            out.source = doc.name.or_else(|| Some(file.display().to_string()));
            if let Some(path) = dot {
                fs::write(&path, emit_dot(&c)).map_err(|e| Failure::Io(path, e))?;
            }
            match config.format {
                OutputFormat::Text => print!("{}", out.to_text()),
                OutputFormat::Structured => println!("{}", out.to_json()),
                OutputFormat::Dot => print!("{}", emit_dot(&c)),
            }
            Ok(())
        }
        Command::Fuse { file, of } => composition(common, &file, &of, false),
        Command::Sum { file, of } => composition(common, &file, &of, true),
        Command::Verify {
            method,
            file,
            drop_bottom,
        } => {
            let config = run_config(common, Some(method), drop_bottom, 0)?;
            let (_, p) = read_poset(&file)?;
            let opts = CompletionOptions {
                limits: config.limits.clone(),
                drop_bottom: config.drop_bottom,
            };
            let c = complete(&p, config.method, &opts)?;
            verify(&c, &config)
        }
        Command::Iso { left, right } => {
            let config = run_config(common, None, false, 0)?;
            let (_, p) = read_poset(&left)?;
            let (_, q) = read_poset(&right)?;
            let found = find_isomorphism(&p, &q, &config.limits)?;
            if config.format == OutputFormat::Structured {
                let v = found.as_ref().map(|f| {
                    p.elements()
                        .map(|x| json!([p.label(x), q.label(f.apply(x))]))
                        .collect::<Vec<_>>()
                });
                print_json(&json!({ "isomorphism": v }));
            } else {
                match &found {
                    None => println!("none"),
                    Some(f) => {
                        for x in p.elements() {
                            println!("{} -> {}", p.label(x), q.label(f.apply(x)));
                        }
                    }
                }
            }
            Ok(())
        }
        Command::Corpus {
            max_n,
            seed,
            random_per_size,
        } => {
            let config = run_config(common, None, false, seed)?;
            let spec = CorpusSpec::up_to(max_n, random_per_size, config.seed);
            let entries = build_corpus(&spec)?;
            let mut report = run_suite(&entries, &config.limits);
            report.spec = Some(spec);
            if config.format == OutputFormat::Structured {
                println!("{}", report.to_json());
            } else {
                println!("posets: {}", report.posets.len());
                for t in &report.totals {
                    println!(
                        "{}: {} ({} violations in {} posets, {} skipped)",
                        t.check,
                        if t.violations == 0 { "pass" } else { "FAIL" },
                        t.violations,
                        t.posets_with_violations,
                        t.skipped
                    );
                }
                for r in &report.posets {
                    for o in r.outcomes.iter().filter(|o| !o.violations.is_empty()) {
                        for v in &o.violations {
                            println!("  {} {}: {v}", r.name, o.check);
                        }
                    }
                }
            }
            if report.violations() == 0 {
                Ok(())
            } else {
                Err(Failure::Violation)
            }
        }
    }
}

fn composition(common: &Common, file: &Path, of: &[String], sum: bool) -> Result<(), Failure> {
    let config = run_config(common, None, false, 0)?;
    let (_, p) = read_poset(file)?;
    let subject = p.subset_of_labels(of)?;
    let query = CompositionQuery::new(&p, subject)?;
    let answer = if sum { query.sums() } else { query.fusion_answer() };
    let what = if sum { "sums" } else { "fusions" };
    if config.format == OutputFormat::Structured {
        print_json(&json!({
            "subset": labels(&p, query.subject().iter()),
            "kind": answer.kind,
            "solutions": labels(&p, answer.solutions.iter()),
            "greatest": answer.greatest.map(|g| p.label(g).to_string()),
        }));
    } else {
        println!(
            "{what} of {}: {}",
            p.format_subset(query.subject()),
            p.format_subset(&answer.solutions)
        );
        if let Some(g) = answer.greatest {
            println!("greatest: {}", p.label(g));
        }
    }
    Ok(())
}

fn describe(w: &Witness, source: &Poset, target: &Poset) -> String {
    let set = |p: &Poset, xs: &[usize]| format!("{{{}}}", labels(p, xs.iter().copied()).join(","));
    match w {
        Witness::Pair { x, y } => format!("{}, {}", source.label(*x), source.label(*y)),
        Witness::SubsetElement { subset, element } => {
            format!("{} and {}", set(source, subset), source.label(*element))
        }
        Witness::Target { element } => target.label(*element).to_string(),
        Witness::TargetSubset { subset } => set(target, subset),
    }
}

fn print_map_report(r: &MapPropertyReport, source: &Poset, target: &Poset, format: OutputFormat) {
    if format == OutputFormat::Structured {
        print_json(&serde_json::to_value(r).expect("reports serialize"));
        return;
    }
    for v in &r.verdicts {
        let required = if r.required.contains(&v.property) { "" } else { " (informational)" };
        match &v.witness {
            None => println!("{}: pass{required}", v.property),
            Some(w) => println!("{}: FAIL{required} (witness {})", v.property, describe(w, source, target)),
        }
    }
}

fn verify(c: &mereo::Completion, config: &RunConfig) -> Result<(), Failure> {
    let limits = &config.limits;
    let (source, target) = (c.base(), c.extended());
    let passed = match c.guarantee() {
        Guarantee::SumCompletion => {
            let r = is_sum_completion(c.embed(), limits)?;
            print_map_report(&r, source, target, config.format);
            r.passes()
        }
        Guarantee::FusionCompletion => {
            let r = is_fusion_completion(c.embed(), limits)?;
            print_map_report(&r, source, target, config.format);
            r.passes()
        }
        Guarantee::JoinCompletion => {
            let r = join_completion_report(c.embed(), limits)?;
            if config.format == OutputFormat::Structured {
                print_json(&serde_json::to_value(&r).expect("reports serialize"));
            } else {
                for k in &r.checks {
                    println!("{}: {}", k.name, if k.holds { "pass" } else { "FAIL" });
                }
            }
            r.holds()
        }
        Guarantee::NotApplicable => {
            // 𝖮P of a non-separative poset: the map is not an embedding,
            // so report what a fusion-completion would need.
            let r = is_fusion_completion(c.embed(), limits)?;
            print_map_report(&r, source, target, config.format);
            r.passes()
        }
    };
    if passed {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}
