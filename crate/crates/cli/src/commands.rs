use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use semilab::algebra::{enumerate_subsemimodules, Semimodule, Subsemimodule};
use semilab::injectivity::{decide, is_retract, refute_absolute, InjectivityKind};
use semilab::limits::DEFAULT_CAP;
use semilab::matrix::{matrix_demo, DEFAULT_SAMPLES, DEFAULT_SEED};
use semilab::morphism::{hom_monoid, LinearMap};
use semilab::sequence::{classify_pair, dualize_with, ExactnessGrade, SequencePair};
use semilab::{Limits, Report, Verdict};
use thiserror::Error;

use crate::corpus::{self, CorpusError, Ctx, StandardClosure};
use crate::format::{parse_with, FormatError, Workspace};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "semilab", version, about = "Decision procedures for finite semirings and semimodules")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Candidate cap for exhaustive searches.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Worker threads for parallel searches.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Extra object files to load next to the built-in corpus.
    #[arg(long = "file", global = true, value_name = "FILE")]
    pub extra_files: Vec<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse files and check every semiring, semimodule and map in them.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// List the subsemimodules of a semimodule.
    Subs {
        module: String,
        #[arg(long)]
        subtractive: bool,
    },
    /// Enumerate Hom(A, B).
    Hom {
        a: String,
        b: String,
        /// Also print the addition table of the Hom monoid.
        #[arg(long)]
        monoid: bool,
    },
    /// Classify the pair L -f-> M -g-> N.
    Seq {
        f: String,
        g: String,
        /// Classify the Hom(-, I) dual sequence instead.
        #[arg(long, value_name = "I")]
        dualize: Option<String>,
    },
    /// Decide whether I is M-injective of the given kind.
    Inj {
        #[arg(long, value_parser = parse_kind)]
        kind: InjectivityKind,
        i: String,
        m: Option<String>,
        /// Refute against every loaded module of at most this size instead
        /// of a single M.
        #[arg(long, value_name = "N", conflicts_with = "m")]
        corpus_bound: Option<usize>,
    },
    /// Decide whether N is a retract of M.
    Retract { n: String, m: String },
    /// Re-check every pinned verdict of the built-in corpus.
    Corpus,
    /// Replay the sampled computations of the matrix counterexample.
    MatrixDemo {
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn parse_kind(s: &str) -> Result<InjectivityKind, String> {
    s.parse().map_err(|_| format!("expected plain, i or e, got `{s}`"))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format {
        path: String,
        #[source]
        source: FormatError,
    },
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Algebra(#[from] semilab::Error),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Algebra(semilab::Error::SearchCapExceeded { .. })
            | CliError::Corpus(CorpusError::Algebra(semilab::Error::SearchCapExceeded { .. })) => EXIT_CAP,
            CliError::Algebra(semilab::Error::SampleViolation(_)) | CliError::Corpus(CorpusError::Mismatch(_)) => {
                EXIT_FALSE
            }
            _ => EXIT_USAGE,
        }
    }
}

/// What a command printed and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn execute(cli: &Cli) -> Outcome {
    let run = || run(cli);
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(CliError::Usage(format!("cannot start {n} workers: {e}"))),
        },
        None => run(),
    };
    match result {
        Ok(o) => o,
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn workspace(cli: &Cli) -> Result<Workspace, CliError> {
    let mut ws = corpus::builtin();
    for path in &cli.extra_files {
        ws.load(&read(path)?).map_err(|source| CliError::Format {
            path: path.display().to_string(),
            source,
        })?;
    }
    Ok(ws)
}

fn module(ws: &Workspace, name: &str) -> Result<Arc<Semimodule>, CliError> {
    ws.module(name).ok_or_else(|| CliError::Unknown {
        kind: "semimodule",
        name: name.to_string(),
    })
}

fn map<'a>(ws: &'a Workspace, name: &str) -> Result<&'a LinearMap, CliError> {
    ws.map(name).ok_or_else(|| CliError::Unknown {
        kind: "map",
        name: name.to_string(),
    })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let limits = Limits::with_cap(cli.cap);
    let report = match &cli.command {
        Command::Validate { files } => validate(cli, files)?,
        Command::Corpus => return run_corpus(cli, &limits),
        Command::MatrixDemo { samples, seed } => matrix_demo(*samples, *seed)?,
        cmd => {
            let ws = workspace(cli)?;
            match cmd {
                Command::Subs { module: name, subtractive } => subs(&module(&ws, name)?, *subtractive, &limits)?,
                Command::Hom { a, b, monoid } => hom(&module(&ws, a)?, &module(&ws, b)?, *monoid, &limits)?,
                Command::Seq { f, g, dualize } => {
                    let p = SequencePair::new(map(&ws, f)?.clone(), map(&ws, g)?.clone())?;
                    match dualize {
                        None => seq_report(&p),
                        Some(i) => dual_report(&p, &module(&ws, i)?, &limits)?,
                    }
                }
                Command::Inj {
                    kind,
                    i,
                    m,
                    corpus_bound,
                } => {
                    let i = module(&ws, i)?;
                    match (m, corpus_bound) {
                        (Some(m), None) => decide(*kind, &i, &module(&ws, m)?, &limits)?.to_report(),
                        (None, Some(n)) => {
                            let mut cands: Vec<Arc<Semimodule>> = ws
                                .modules
                                .values()
                                .filter(|m| m.same_base(&i) && m.len() <= *n)
                                .cloned()
                                .collect();
                            cands.sort_by(|a, b| (a.len(), a.name()).cmp(&(b.len(), b.name())));
                            refute_absolute(*kind, &i, &cands, &limits)?
                        }
                        _ => return Err(CliError::Usage("inj needs either M or --corpus-bound".into())),
                    }
                }
                Command::Retract { n, m } => is_retract(&module(&ws, n)?, &module(&ws, m)?, &limits)?,
                _ => unreachable!("handled above"),
            }
        }
    };
    let code = if report.holds() { EXIT_TRUE } else { EXIT_FALSE };
    Ok(Outcome {
        code,
        stdout: render(&report, cli.json),
        stderr: String::new(),
    })
}

fn validate(cli: &Cli, files: &[PathBuf]) -> Result<Report, CliError> {
    let mut ws = workspace(cli)?;
    let mut report = Report::boolean(
        "validate",
        files.iter().map(|p| p.display().to_string()).collect(),
        true,
    )
    .cite("semiring and semimodule axioms, and linearity of maps");
    let mut objects = 0u64;
    for path in files {
        let text = read(path)?;
        let file = parse_with(&text, &|r| ws.semiring(r).map(|s| s.len())).map_err(|source| {
            CliError::Format {
                path: path.display().to_string(),
                source,
            }
        })?;
        for (name, result) in ws.add_each(&file) {
            objects += 1;
            match result {
                Ok(()) => report = report.witness(name, vec!["ok".into()]),
                Err(FormatError::Algebra { source, .. }) => {
                    report.verdict = Verdict::Bool(false);
                    let values = match &source {
                        semilab::Error::Axioms(v) => v.iter().map(ToString::to_string).collect(),
                        other => vec![other.to_string()],
                    };
                    report = report.witness(name, values);
                }
                Err(source) => {
                    return Err(CliError::Format {
                        path: path.display().to_string(),
                        source,
                    })
                }
            }
        }
    }
    Ok(report.stat("objects", objects))
}

fn subs(m: &Arc<Semimodule>, subtractive: bool, limits: &Limits) -> Result<Report, CliError> {
    let all = enumerate_subsemimodules(m, subtractive, limits)?;
    let displays: Vec<String> = all.iter().map(Subsemimodule::display).collect();
    let mut r = Report::new(
        "enumerate_subsemimodules",
        vec![m.name().to_string()],
        Verdict::Classes(displays),
    )
    .stat("count", all.len() as u64)
    .cite("subsemimodules contain 0 and are closed under addition and the action; subtractive ones also absorb differences");
    if !subtractive {
        let sub: Vec<String> = all
            .iter()
            .filter(|l| l.is_subtractive())
            .map(Subsemimodule::display)
            .collect();
        r = r.witness("subtractive", sub);
    }
    Ok(r)
}

fn hom(a: &Arc<Semimodule>, b: &Arc<Semimodule>, monoid: bool, limits: &Limits) -> Result<Report, CliError> {
    let h = hom_monoid(a, b, limits)?;
    let tuples: Vec<String> = h.maps.iter().map(LinearMap::image_tuple).collect();
    let mut r = Report::new(
        "enumerate_homs",
        vec![a.name().to_string(), b.name().to_string()],
        Verdict::Classes(tuples.clone()),
    )
    .stat("maps", h.len() as u64)
    .cite("linear maps preserve 0, addition and the action; Hom(A, B) is a monoid under pointwise addition");
    if monoid {
        let m = &h.module;
        for x in m.elements() {
            let row = m.elements().map(|y| m.label(m.add(x, y)).to_string()).collect();
            r = r.witness(format!("{} +", m.label(x)), row);
        }
        r = r.witness("base", vec![m.ring().name().to_string()]);
    }
    Ok(r)
}

fn grade_classes(g: &ExactnessGrade) -> Vec<String> {
    [
        ("chain_complex", g.chain_complex),
        ("proper_exact", g.proper_exact),
        ("semi_exact", g.semi_exact),
        ("quasi_exact", g.quasi_exact),
        ("exact", g.exact),
    ]
    .iter()
    .filter(|(_, b)| *b)
    .map(|(n, _)| n.to_string())
    .collect()
}

fn seq_report(p: &SequencePair) -> Report {
    let grade = classify_pair(p);
    let mut r = Report::boolean(
        "classify_pair",
        vec![
            p.f().source().name().to_string(),
            p.f().target().name().to_string(),
            p.g().target().name().to_string(),
        ],
        grade.exact,
    )
    .witness("grades", grade_classes(&grade))
    .cite("exact means Im f = Ker g with g k-normal; proper, semi and quasi exactness weaken this");
    r.witnesses.extend(grade.witnesses);
    r
}

fn dual_report(p: &SequencePair, i: &Arc<Semimodule>, limits: &Limits) -> Result<Report, CliError> {
    let d = dualize_with(p, i, limits)?;
    let mut r = Report::boolean(
        "dualize",
        vec![
            d.hom_n.module.name().to_string(),
            d.hom_m.module.name().to_string(),
            d.hom_l.module.name().to_string(),
        ],
        d.short_exact(),
    )
    .witness("grades", grade_classes(&d.grade))
    .witness("g*", d.g_star.assignments())
    .witness("f*", d.f_star.assignments())
    .stat("g_star_injective", d.g_star.is_injective() as u64)
    .stat("f_star_surjective", d.f_star.is_surjective() as u64)
    .stat("short_proper_exact", d.short_proper_exact() as u64)
    .stat("g_star_normal", d.g_star_normality.normal as u64)
    .stat("f_star_k_normal", d.f_star_normality.k_normal as u64)
    .cite("0 -> Hom(N,I) -> Hom(M,I) -> Hom(L,I) -> 0 induced by precomposition");
    r.witnesses.extend(d.grade.witnesses);
    Ok(r)
}

fn run_corpus(cli: &Cli, limits: &Limits) -> Result<Outcome, CliError> {
    let ws = workspace(cli)?;
    let ctx = Ctx {
        ws: &ws,
        limits,
        closure: &StandardClosure,
    };
    let outcomes = corpus::run_entries(&ctx)?;
    let ok = outcomes.iter().all(|o| o.pass);
    let stdout = if cli.json {
        serde_json::to_string_pretty(&outcomes).expect("outcomes serialize") + "\n"
    } else {
        let mut s = String::new();
        for o in &outcomes {
            let tag = if o.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{tag} {}: {}", o.entry, o.observed);
            if !o.pass {
                let _ = writeln!(s, "     expected: {}", o.expected);
            }
        }
        s
    };
    let stderr = if ok {
        String::new()
    } else {
        let bad: Vec<_> = outcomes.into_iter().filter(|o| !o.pass).collect();
        format!("error: {}\n", CorpusError::Mismatch(bad))
    };
    Ok(Outcome {
        code: if ok { EXIT_TRUE } else { EXIT_FALSE },
        stdout,
        stderr,
    })
}

pub fn render(r: &Report, json: bool) -> String {
    if json {
        return serde_json::to_string_pretty(r).expect("reports serialize") + "\n";
    }
    let verdict = match &r.verdict {
        Verdict::Bool(b) => b.to_string(),
        Verdict::Classes(c) => c.join(" "),
    };
    let mut s = format!("{}({}): {verdict}\n", r.procedure, r.inputs.join(", "));
    for w in &r.witnesses {
        let _ = writeln!(s, "  {}: {}", w.label, w.values.join(", "));
    }
    if !r.statistics.is_empty() {
        let stats: Vec<String> = r.statistics.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(s, "  [{}]", stats.join(" "));
    }
    if !r.citation.is_empty() {
        let _ = writeln!(s, "  ({})", r.citation);
    }
    s
}
