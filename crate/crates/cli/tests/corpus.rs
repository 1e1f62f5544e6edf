use semilab::algebra::Subsemimodule;
use semilab::Limits;
use semilab_cli::corpus::{builtin, check_corpus, ClosureRoutine, CorpusError, Ctx, StandardClosure, ENTRIES};

/// Returns its input unchanged, so nothing ever grows.
struct NoClosure;

impl ClosureRoutine for NoClosure {
    fn close(&self, l: &Subsemimodule) -> Subsemimodule {
        l.clone()
    }
}

#[test]
fn every_entry_matches() {
    let ws = builtin();
    let limits = Limits::default();
    let ctx = Ctx {
        ws: &ws,
        limits: &limits,
        closure: &StandardClosure,
    };
    let outcomes = check_corpus(&ctx).unwrap();
    assert_eq!(outcomes.len(), ENTRIES.len());
    assert!(outcomes.iter().all(|o| !o.citation.is_empty()));
}

#[test]
fn broken_closure_is_caught() {
    let ws = builtin();
    let limits = Limits::default();
    let ctx = Ctx {
        ws: &ws,
        limits: &limits,
        closure: &NoClosure,
    };
    match check_corpus(&ctx) {
        Err(CorpusError::Mismatch(bad)) => {
            let names: Vec<&str> = bad.iter().map(|o| o.entry.as_str()).collect();
            assert_eq!(names, ["n2-closure", "n2-subtractive"]);
            assert_eq!(bad[0].observed, "{0, 2}");
        }
        other => panic!("expected a mismatch, got {other:?}"),
    }
}

#[test]
fn entry_names_are_unique() {
    let mut names: Vec<&str> = ENTRIES.iter().map(|e| e.name).collect();
    names.sort_unstable();
    names.dedup();
    assert_eq!(names.len(), ENTRIES.len());
}
