//! The built-in object corpus and the entries that pin known verdicts.

use std::sync::Arc;

use semilab::algebra::{
    enumerate_subsemimodules, is_divisible, is_ideal_simple, subtractive_closure, zero_sums,
    Semimodule, Subsemimodule,
};
use semilab::injectivity::{decide, decide_by_dualization, is_retract, refute_absolute, InjectivityKind};
use semilab::matrix::{matrix_demo, DEFAULT_SEED};
use semilab::morphism::{enumerate_homs, LinearMap};
use semilab::sequence::{classify_pair, ExactnessGrade, SequencePair};
use semilab::{Limits, Report, Result};
use serde::Serialize;
use thiserror::Error;

use crate::format::Workspace;

pub const CORPUS_TEXT: &str = include_str!("corpus.sl");

/// The built-in semirings, semimodules and maps.
pub fn builtin() -> Workspace {
    let mut w = Workspace::default();
    w.load(CORPUS_TEXT).expect("built-in corpus is valid");
    w
}

/// The subtractive closure used by the subtractivity entries. Swappable so
/// that a faulty routine can be shown to trip the corpus.
pub trait ClosureRoutine: Sync {
    fn close(&self, l: &Subsemimodule) -> Subsemimodule;
}

pub struct StandardClosure;

impl ClosureRoutine for StandardClosure {
    fn close(&self, l: &Subsemimodule) -> Subsemimodule {
        subtractive_closure(l)
    }
}

pub struct Ctx<'a> {
    pub ws: &'a Workspace,
    pub limits: &'a Limits,
    pub closure: &'a dyn ClosureRoutine,
}

impl Ctx<'_> {
    fn module(&self, name: &str) -> Arc<Semimodule> {
        self.ws.module(name).unwrap_or_else(|| panic!("corpus module {name}"))
    }

    fn map(&self, name: &str) -> &LinearMap {
        self.ws.map(name).unwrap_or_else(|| panic!("corpus map {name}"))
    }
}

pub struct CorpusEntry {
    pub name: &'static str,
    pub expected: &'static str,
    pub citation: &'static str,
    pub check: fn(&Ctx<'_>) -> Result<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryOutcome {
    pub entry: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
    pub citation: String,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus mismatch: {}", summary(.0))]
    Mismatch(Vec<EntryOutcome>),
    #[error(transparent)]
    Algebra(#[from] semilab::Error),
}

fn summary(v: &[EntryOutcome]) -> String {
    v.iter()
        .map(|o| format!("{} (expected `{}`, observed `{}`)", o.entry, o.expected, o.observed))
        .collect::<Vec<_>>()
        .join("; ")
}

fn verdict(r: &Report) -> String {
    let mut parts = vec![match &r.verdict {
        semilab::Verdict::Bool(b) => b.to_string(),
        semilab::Verdict::Classes(c) => c.join(" "),
    }];
    parts.extend(r.witnesses.iter().map(|w| format!("{}={}", w.label, w.values.join(","))));
    parts.join("; ")
}

fn grade_flags(g: &ExactnessGrade) -> String {
    [
        ("chain_complex", g.chain_complex),
        ("proper_exact", g.proper_exact),
        ("semi_exact", g.semi_exact),
        ("quasi_exact", g.quasi_exact),
        ("exact", g.exact),
    ]
    .iter()
    .filter(|(_, b)| *b)
    .map(|(n, _)| *n)
    .collect::<Vec<_>>()
    .join(" ")
}

fn subs(c: &Ctx<'_>, name: &str, subtractive: bool) -> Result<String> {
    let m = c.module(name);
    let all = enumerate_subsemimodules(&m, false, c.limits)?;
    Ok(all
        .iter()
        .filter(|l| !subtractive || c.closure.close(l).members() == l.members())
        .map(Subsemimodule::display)
        .collect::<Vec<_>>()
        .join(" "))
}

fn inj(c: &Ctx<'_>, kind: InjectivityKind, i: &str, m: &str) -> Result<String> {
    Ok(verdict(&decide(kind, &c.module(i), &c.module(m), c.limits)?.to_report()))
}

fn homs(c: &Ctx<'_>, a: &str, b: &str) -> Result<String> {
    let maps = enumerate_homs(&c.module(a), &c.module(b), c.limits)?;
    let tuples: Vec<String> = maps.iter().map(LinearMap::image_tuple).collect();
    Ok(tuples.join(" "))
}

fn seq(c: &Ctx<'_>, f: &str, g: &str) -> Result<String> {
    let p = SequencePair::new(c.map(f).clone(), c.map(g).clone())?;
    Ok(grade_flags(&classify_pair(&p)))
}

pub const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        name: "s3-injective",
        expected: "true",
        citation: "S3 is S3-injective",
        check: |c| inj(c, InjectivityKind::Plain, "S3", "S3"),
    },
    CorpusEntry {
        name: "s3-i-injective",
        expected: "true",
        citation: "injective implies i-injective",
        check: |c| inj(c, InjectivityKind::I, "S3", "S3"),
    },
    CorpusEntry {
        name: "s3-e-injective",
        expected: "false; subsemimodule=0,a; h=0->0,1->1,a->a; h'=0->0,1->a,a->a",
        citation: "S3 is not S3-e-injective: id and htilde agree on {0,a} and no maps vanishing on {0,a} reconcile them",
        check: |c| inj(c, InjectivityKind::E, "S3", "S3"),
    },
    CorpusEntry {
        name: "s3-subsemimodules",
        expected: "{0} {0, a} {0, 1, a}",
        citation: "the ideals of S3 are {0}, {0,a} and S3",
        check: |c| subs(c, "S3", false),
    },
    CorpusEntry {
        name: "s3-subtractive",
        expected: "{0} {0, a} {0, 1, a}",
        citation: "every ideal of S3 is subtractive",
        check: |c| subs(c, "S3", true),
    },
    CorpusEntry {
        name: "n2-closure",
        expected: "{0, 1, 2}",
        citation: "in the saturating semiring {0,1,2} the subtractive closure of {0,2} is everything, since 1 + 2 = 2",
        check: |c| {
            let m = c.module("N2");
            let l = Subsemimodule::new(&m, [0, 2])?;
            Ok(c.closure.close(&l).display())
        },
    },
    CorpusEntry {
        name: "n2-subtractive",
        expected: "{0} {0, 1, 2}",
        citation: "{0,2} is an ideal of the saturating semiring {0,1,2} but not a subtractive one",
        check: |c| subs(c, "N2", true),
    },
    CorpusEntry {
        name: "l3-subtractive",
        expected: "{0} {0, m} {0, m, 1}",
        citation: "the down-sets of a chain lattice are subtractive ideals",
        check: |c| subs(c, "L3", true),
    },
    CorpusEntry {
        name: "s3-zero-sums",
        expected: "0",
        citation: "S3 is zerosumfree",
        check: |c| {
            let s = c.ws.semiring("S3").expect("S3");
            Ok(zero_sums(s).iter().map(|&x| s.label(x)).collect::<Vec<_>>().join(","))
        },
    },
    CorpusEntry {
        name: "z2-zero-sums",
        expected: "0,1",
        citation: "every element of Z2 has an additive inverse",
        check: |c| {
            let s = c.ws.semiring("Z2").expect("Z2");
            Ok(zero_sums(s).iter().map(|&x| s.label(x)).collect::<Vec<_>>().join(","))
        },
    },
    CorpusEntry {
        name: "s3-divisible",
        expected: "false; scalar=a; unreached=1",
        citation: "a is not a zero divisor of S3 and a.S3 = {0,a} misses 1",
        check: |c| Ok(verdict(&is_divisible(&c.module("S3")))),
    },
    CorpusEntry {
        name: "s3-ideal-simple",
        expected: "false; subsemimodule=0,a",
        citation: "{0,a} is a proper non-zero ideal of S3",
        check: |c| Ok(verdict(&is_ideal_simple(&c.module("S3"), c.limits)?)),
    },
    CorpusEntry {
        name: "b-ideal-simple",
        expected: "true",
        citation: "the Boolean semiring has no proper non-zero ideal",
        check: |c| Ok(verdict(&is_ideal_simple(&c.module("B"), c.limits)?)),
    },
    CorpusEntry {
        name: "hom-s3-s3",
        expected: "[0,0,0] [0,1,a] [0,a,a]",
        citation: "an S3-endomorphism of S3 is right multiplication by the image of 1",
        check: |c| homs(c, "S3", "S3"),
    },
    CorpusEntry {
        name: "hom-s3a-s3",
        expected: "[0,0] [0,a]",
        citation: "a map {0,a} -> S3 sends a to an element fixed by multiplication with a",
        check: |c| homs(c, "S3a", "S3"),
    },
    CorpusEntry {
        name: "s3-sequence",
        expected: "chain_complex proper_exact semi_exact quasi_exact exact",
        citation: "0 -> {0,a} -> S3 -> S3/{0,a} -> 0 is exact",
        check: |c| seq(c, "iota", "pi"),
    },
    CorpusEntry {
        name: "l3-sequence",
        expected: "chain_complex proper_exact semi_exact quasi_exact exact",
        citation: "a subtractive ideal, its inclusion and the Bourne projection form an exact sequence",
        check: |c| seq(c, "iota_L3m", "pi_L3m"),
    },
    CorpusEntry {
        name: "n2-sequence",
        expected: "chain_complex semi_exact quasi_exact",
        citation: "for the non-subtractive ideal {0,2} the image of the inclusion is not the kernel of the projection, only its subtractive closure",
        check: |c| seq(c, "iota_N2h", "pi_N2h"),
    },
    CorpusEntry {
        name: "dual-routes-s3",
        expected: "plain=true i=true e=false",
        citation: "each injectivity notion is characterised by exactness of the Hom-dualized canonical sequences",
        check: |c| {
            let s3 = c.module("S3");
            let mut parts = Vec::new();
            for kind in [InjectivityKind::Plain, InjectivityKind::I, InjectivityKind::E] {
                let v = decide_by_dualization(kind, &s3, &s3, c.limits)?;
                parts.push(format!("{kind}={v}"));
            }
            Ok(parts.join(" "))
        },
    },
    CorpusEntry {
        name: "b-retract-bxb",
        expected: "true; psi=0->00,1->01; theta=00->0,01->1,10->0,11->1",
        citation: "a factor of a direct product is a retract of it",
        check: |c| Ok(verdict(&is_retract(&c.module("B"), &c.module("BxB"), c.limits)?)),
    },
    CorpusEntry {
        name: "s3-e-refuted",
        expected: "false; module=S3; subsemimodule=0,a; h=0->0,1->1,a->a; h'=0->0,1->a,a->a",
        citation: "a single failing module refutes absolute e-injectivity",
        check: |c| {
            let cands = [c.module("S3a"), c.module("S3q"), c.module("S3")];
            Ok(verdict(&refute_absolute(InjectivityKind::E, &c.module("S3"), &cands, c.limits)?))
        },
    },
    CorpusEntry {
        name: "s3-i-unrefuted",
        expected: "unrefuted",
        citation: "enumeration over finitely many modules can refute but never certify absolute injectivity",
        check: |c| {
            let cands = [c.module("S3a"), c.module("S3q"), c.module("S3")];
            Ok(verdict(&refute_absolute(InjectivityKind::I, &c.module("S3"), &cands, c.limits)?))
        },
    },
    CorpusEntry {
        name: "matrix-demo",
        expected: "true",
        citation: "over 2x2 non-negative rational matrices the regular module is i-injective but N1 is not e-injective",
        check: |_| Ok(matrix_demo(200, DEFAULT_SEED)?.holds().to_string()),
    },
];

pub fn run_entries(ctx: &Ctx<'_>) -> Result<Vec<EntryOutcome>> {
    ENTRIES
        .iter()
        .map(|e| {
            let observed = (e.check)(ctx)?;
            Ok(EntryOutcome {
                entry: e.name.to_string(),
                expected: e.expected.to_string(),
                pass: observed == e.expected,
                observed,
                citation: e.citation.to_string(),
            })
        })
        .collect()
}

/// Runs every entry and fails with the mismatching ones.
pub fn check_corpus(ctx: &Ctx<'_>) -> std::result::Result<Vec<EntryOutcome>, CorpusError> {
    let outcomes = run_entries(ctx)?;
    let bad: Vec<EntryOutcome> = outcomes.iter().filter(|o| !o.pass).cloned().collect();
    if bad.is_empty() {
        Ok(outcomes)
    } else {
        Err(CorpusError::Mismatch(bad))
    }
}
