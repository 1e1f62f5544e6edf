//! Acceptance suite. Prints one PASS/FAIL line per criterion; the process
//! fails when a criterion fails for any reason other than the documented
//! divisibility counterexample.

use std::collections::{BTreeMap, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::Parser;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semilab::algebra::{
    congruence_closure, direct_product, enumerate_subsemimodules, generated_subsemimodule, is_divisible,
    quotient_by_classes, quotient_semimodule, Semimodule, Subsemimodule,
};
use semilab::injectivity::{decide, decide_by_dualization, is_retract, InjectivityKind};
use semilab::morphism::{
    are_isomorphic, compose, enumerate_homs, enumerate_homs_with, is_i_normal, is_k_normal, is_normal, kernel,
    HomStrategy, LinearMap,
};
use semilab::sequence::{
    canonical_comparison, check_short_exact, classify_pair, dualize_with, zero_on_left, zero_on_right,
    ExactnessGrade, SequencePair,
};
use semilab::Limits;
use semilab_cli::corpus::builtin;
use semilab_cli::format::Workspace;
use semilab_cli::{execute, Cli};

const SEED: u64 = 7;
const TRIPLES: usize = 200;
const MAX_TRIPLE_SIZE: usize = 5;
const PAIRS_PER_TRIPLE: usize = 300;

struct Line {
    pass: bool,
    detail: String,
}

fn line(pass: bool, detail: impl Into<String>) -> Line {
    Line {
        pass,
        detail: detail.into(),
    }
}

fn cli(args: &[&str]) -> semilab_cli::Outcome {
    let mut argv = vec!["semilab"];
    argv.extend_from_slice(args);
    execute(&Cli::parse_from(argv))
}

// ---------------------------------------------------------------------------
// independent oracles

/// Every function `a -> b` that preserves zero, sums and the action.
fn brute_homs(a: &Semimodule, b: &Semimodule) -> Vec<Vec<usize>> {
    let (n, k) = (a.len(), b.len());
    let mut out = Vec::new();
    let mut images = vec![0usize; n];
    loop {
        let linear = images[a.zero()] == b.zero()
            && a.elements().all(|x| {
                a.elements().all(|y| images[a.add(x, y)] == b.add(images[x], images[y]))
                    && a.ring().elements().all(|s| images[a.act(s, x)] == b.act(s, images[x]))
            });
        if linear {
            out.push(images.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            images[i] += 1;
            if images[i] < k {
                break;
            }
            images[i] = 0;
        }
    }
}

fn compose_images(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

fn kernel_set(f: &LinearMap) -> Vec<usize> {
    let z = f.target().zero();
    f.source().elements().filter(|&x| f.apply(x) == z).collect()
}

fn image_set(f: &LinearMap) -> Vec<usize> {
    let mut v: Vec<usize> = f.images().to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Grows `set` by every `m` with `m + l` in the set for some `l` in it.
fn closure_oracle(m: &Semimodule, set: &[usize]) -> Vec<usize> {
    let mut member = vec![false; m.len()];
    for &x in set {
        member[x] = true;
    }
    loop {
        let grow: Vec<usize> = m
            .elements()
            .filter(|&x| !member[x])
            .filter(|&x| m.elements().any(|l| member[l] && member[m.add(x, l)]))
            .collect();
        if grow.is_empty() {
            break;
        }
        for x in grow {
            member[x] = true;
        }
    }
    m.elements().filter(|&x| member[x]).collect()
}

fn k_normal_oracle(f: &LinearMap) -> bool {
    let src = f.source();
    let ker = kernel_set(f);
    src.elements().all(|x| {
        src.elements().all(|y| {
            f.apply(x) != f.apply(y)
                || ker
                    .iter()
                    .any(|&k| ker.iter().any(|&k2| src.add(x, k) == src.add(y, k2)))
        })
    })
}

fn i_normal_oracle(f: &LinearMap) -> bool {
    let im = image_set(f);
    closure_oracle(f.target(), &im) == im
}

struct GradeOracle {
    chain: bool,
    proper: bool,
    semi: bool,
    quasi: bool,
    exact: bool,
}

fn grade_oracle(f: &LinearMap, g: &LinearMap) -> GradeOracle {
    let im = image_set(f);
    let ker = kernel_set(g);
    let closed = closure_oracle(f.target(), &im);
    let kn = k_normal_oracle(g);
    GradeOracle {
        chain: im.iter().all(|&x| g.apply(x) == g.target().zero()),
        proper: im == ker,
        semi: closed == ker,
        quasi: closed == ker && kn,
        exact: im == ker && kn,
    }
}

// ---------------------------------------------------------------------------
// corpus helpers

fn modules_over(ws: &Workspace, ring: &str) -> Vec<Arc<Semimodule>> {
    let base = ws.semiring(ring).expect("corpus ring");
    ws.modules
        .values()
        .filter(|m| m.ring().as_ref() == base.as_ref())
        .cloned()
        .collect()
}

fn corpus_bases(ws: &Workspace) -> Vec<(String, Vec<Arc<Semimodule>>)> {
    ws.semirings
        .keys()
        .map(|r| (r.clone(), modules_over(ws, r)))
        .collect()
}

// ---------------------------------------------------------------------------
// criteria

fn criterion_1() -> Line {
    let plain = cli(&["inj", "--kind", "plain", "S3", "S3"]);
    let i = cli(&["inj", "--kind", "i", "S3", "S3"]);
    let e = cli(&["inj", "--kind", "e", "S3", "S3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&e.stdout).expect("json report");
    let values = |label: &str| -> Vec<String> {
        v["witnesses"]
            .as_array()
            .unwrap()
            .iter()
            .find(|w| w["label"] == label)
            .map(|w| {
                w["values"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|s| s.as_str().unwrap().to_string())
                    .collect()
            })
            .unwrap_or_default()
    };
    let sub = values("subsemimodule");
    let (h, h2) = (values("h"), values("h'"));
    // the two extensions must differ yet agree on every element of the
    // witness subsemimodule
    let on = |maps: &[String], x: &str| maps.iter().find(|p| p.starts_with(&format!("{x}->"))).cloned();
    let agree = sub.iter().all(|x| on(&h, x).is_some() && on(&h, x) == on(&h2, x));
    let pass = plain.code == 0
        && i.code == 0
        && e.code == 1
        && sub == ["0", "a"]
        && agree
        && h != h2;
    line(
        pass,
        format!(
            "plain exit {}, i exit {}, e exit {} with L={{{}}}, h=({}), h'=({})",
            plain.code,
            i.code,
            e.code,
            sub.join(","),
            h.join(" "),
            h2.join(" ")
        ),
    )
}

fn criterion_2() -> Line {
    let ws = builtin();
    let s3 = ws.module("S3").unwrap();
    let subs = enumerate_subsemimodules(&s3, false, &Limits::default()).unwrap();
    let shown: Vec<String> = subs.iter().map(Subsemimodule::display).collect();
    let expected = ["{0}", "{0, a}", "{0, 1, a}"];
    let subtractive = subs
        .iter()
        .all(|l| l.is_subtractive() && closure_oracle(&s3, l.members()) == l.members());
    line(
        shown == expected && subtractive,
        format!("{} (all subtractive: {subtractive})", shown.join(" ")),
    )
}

fn criterion_3() -> Line {
    let ws = builtin();
    let limits = Limits::default();
    let count = |a: &str, b: &str| brute_homs(&ws.module(a).unwrap(), &ws.module(b).unwrap()).len();
    let counts = [count("S3", "S3"), count("S3a", "S3"), count("B", "B")];
    let mut pairs = 0;
    let mut disagreements = Vec::new();
    for (_, mods) in corpus_bases(&ws) {
        for a in &mods {
            for b in &mods {
                pairs += 1;
                let oracle = brute_homs(a, b);
                let lib = |s| -> Vec<Vec<usize>> {
                    enumerate_homs_with(a, b, s, &limits)
                        .unwrap()
                        .iter()
                        .map(|f| f.images().to_vec())
                        .collect()
                };
                let (gen, brute) = (lib(HomStrategy::Generators), lib(HomStrategy::BruteForce));
                if gen != oracle || brute != oracle {
                    disagreements.push(format!("{}->{}", a.name(), b.name()));
                }
            }
        }
    }
    line(
        counts == [3, 2, 2] && disagreements.is_empty(),
        format!(
            "|Hom(S3,S3)|={} |Hom(S3a,S3)|={} |Hom(B,B)|={}; generator and brute-force enumeration match the oracle on {pairs} pairs{}",
            counts[0],
            counts[1],
            counts[2],
            if disagreements.is_empty() {
                String::new()
            } else {
                format!(", disagree on {}", disagreements.join(" "))
            }
        ),
    )
}

/// A random valid semimodule: a generated subsemimodule of a corpus module
/// or a product of two, optionally divided by a random congruence.
fn random_module(rng: &mut ChaCha8Rng, pool: &[Arc<Semimodule>], tag: usize) -> Arc<Semimodule> {
    let limits = Limits::default();
    loop {
        let a = pool.choose(rng).unwrap();
        let base = if rng.gen_bool(0.4) {
            let b = pool.choose(rng).unwrap();
            if a.len() * b.len() > 16 {
                continue;
            }
            direct_product(&[a.clone(), b.clone()], &limits).unwrap().module
        } else {
            a.clone()
        };
        let gens: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..base.len())).collect();
        let (sub, _) = generated_subsemimodule(&base, &gens).materialize(format!("R{tag}"));
        let m = if sub.len() > 1 && rng.gen_bool(0.5) {
            let x = rng.gen_range(0..sub.len());
            let y = rng.gen_range(0..sub.len());
            let classes = congruence_closure(&sub, &[(x, y)]);
            quotient_by_classes(&sub, &classes, format!("R{tag}q")).module
        } else {
            sub
        };
        if m.len() <= MAX_TRIPLE_SIZE {
            return m;
        }
    }
}

#[derive(Default)]
struct Tally {
    checked: BTreeMap<&'static str, u64>,
    violations: BTreeMap<&'static str, u64>,
}

impl Tally {
    fn check(&mut self, clause: &'static str, premise: bool, conclusion: bool) {
        if premise {
            *self.checked.entry(clause).or_default() += 1;
            if !conclusion {
                *self.violations.entry(clause).or_default() += 1;
            }
        }
    }
}

fn normal_clauses(t: &mut Tally, f: &LinearMap, g: &LinearMap) {
    let h = compose(g, f).unwrap();
    let (kf, kg, kh) = (is_k_normal(f), is_k_normal(g), is_k_normal(&h));
    let (i_f, ig, ih) = (is_i_normal(f), is_i_normal(g), is_i_normal(&h));
    let (nf, ng, nh) = (is_normal(f), is_normal(g), is_normal(&h));

    for m in [f, g, &h] {
        t.check("k-normal agrees with oracle", true, is_k_normal(m) == k_normal_oracle(m));
        t.check("i-normal agrees with oracle", true, is_i_normal(m) == i_normal_oracle(m));
        t.check("injective => k-normal", m.is_injective(), is_k_normal(m));
        t.check("surjective => i-normal", m.is_surjective(), is_i_normal(m));
        t.check(
            "kernel subtractive",
            true,
            closure_oracle(m.source(), &kernel_set(m)) == kernel(m).members(),
        );
    }

    let g_inj = g.is_injective();
    t.check("1a: g inj => (f k <=> gf k)", g_inj, kf == kh);
    t.check("1b: g inj, gf i => f i", g_inj && ih, i_f);
    t.check("1b: g inj, gf normal => f normal", g_inj && nh, nf);
    t.check("1c: g inj and i => (f i <=> gf i)", g_inj && ig, i_f == ih);
    t.check("1c: g inj and i => (f normal <=> gf normal)", g_inj && ig, nf == nh);

    let f_surj = f.is_surjective();
    t.check("2a: f surj => (g i <=> gf i)", f_surj, ig == ih);
    t.check("2b: f surj, gf k => g k", f_surj && kh, kg);
    t.check("2b: f surj, gf normal => g normal", f_surj && nh, ng);
    t.check("2c: f surj and k => (g k <=> gf k)", f_surj && kf, kg == kh);
    t.check("2c: f surj and k => (g normal <=> gf normal)", f_surj && kf, ng == nh);
}

fn exactness_clauses(t: &mut Tally, f: &LinearMap, g: &LinearMap, limits: &Limits) {
    let p = SequencePair::new(f.clone(), g.clone()).unwrap();
    let grade: ExactnessGrade = classify_pair(&p);
    let o = grade_oracle(f, g);
    t.check(
        "grades agree with oracle",
        true,
        grade.chain_complex == o.chain
            && grade.proper_exact == o.proper
            && grade.semi_exact == o.semi
            && grade.quasi_exact == o.quasi
            && grade.exact == o.exact,
    );
    t.check("exact => proper-exact", o.exact, o.proper);
    t.check("exact => quasi-exact", o.exact, o.quasi);
    t.check("quasi-exact => semi-exact", o.quasi, o.semi);
    t.check("proper-exact => semi-exact", o.proper, o.semi);
    t.check("proper-exact => chain complex", o.proper, o.chain);
    t.check("exact => f i-normal", o.exact, i_normal_oracle(f));
    t.check("grade lattice consistent", true, grade.is_consistent());

    t.check(
        "exact(1): 0 -> L -> M exact <=> f injective",
        true,
        classify_pair(&zero_on_left(f)).exact == f.is_injective(),
    );
    t.check(
        "exact(2): M -> N -> 0 exact <=> g surjective",
        true,
        classify_pair(&zero_on_right(g)).exact == g.is_surjective(),
    );

    let short = f.is_injective() && g.is_surjective() && o.exact;
    let cmp = canonical_comparison(&p);
    t.check(
        "exact(7): short exact <=> canonical L ~ Ker g and M/L ~ N",
        true,
        short == (cmp.kernel_iso && cmp.cokernel_iso),
    );
    t.check("exact(7): check_short_exact agrees", true, check_short_exact(f, g).unwrap().holds() == short);
    if short {
        let ker = kernel(g);
        let (ker_obj, _) = ker.materialize("Ker");
        let img = generated_subsemimodule(f.target(), f.images());
        let q = quotient_semimodule(&img).module;
        t.check(
            "exact(7): short exact => L ~ Ker g and N ~ M/f(L) by explicit isomorphisms",
            true,
            are_isomorphic(f.source(), &ker_obj, limits).unwrap() && are_isomorphic(g.target(), &q, limits).unwrap(),
        );
        t.check("short exact => f and g normal", true, is_normal(f) && is_normal(g));
    }
}

fn criterion_4() -> Line {
    let ws = builtin();
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let bases: Vec<Vec<Arc<Semimodule>>> = corpus_bases(&ws)
        .into_iter()
        .map(|(_, mods)| mods.into_iter().filter(|m| !m.is_zero_module()).collect())
        .collect();
    let mut t = Tally::default();
    let mut pairs = 0u64;
    for k in 0..TRIPLES {
        let pool = &bases[k % bases.len()];
        let m = random_module(&mut rng, pool, 3 * k);
        let (designated, l, n) = if k % 2 == 0 {
            // a subobject, its inclusion and the Bourne quotient
            let x = rng.gen_range(0..m.len());
            let sub = generated_subsemimodule(&m, &[x]);
            let (l, f) = sub.materialize(format!("R{}", 3 * k + 1));
            let q = quotient_semimodule(&sub);
            (Some((f, q.projection.clone())), l, q.module)
        } else {
            (
                None,
                random_module(&mut rng, pool, 3 * k + 1),
                random_module(&mut rng, pool, 3 * k + 2),
            )
        };
        let fs = enumerate_homs(&l, &m, &limits).unwrap();
        let gs = enumerate_homs(&m, &n, &limits).unwrap();
        let mut all: Vec<(usize, usize)> = (0..fs.len()).flat_map(|a| (0..gs.len()).map(move |b| (a, b))).collect();
        if all.len() > PAIRS_PER_TRIPLE {
            all.shuffle(&mut rng);
            all.truncate(PAIRS_PER_TRIPLE);
        }
        let mut chosen: Vec<(LinearMap, LinearMap)> =
            all.into_iter().map(|(a, b)| (fs[a].clone(), gs[b].clone())).collect();
        if let Some(d) = designated.clone() {
            chosen.push(d);
        }
        for (f, g) in &chosen {
            pairs += 1;
            normal_clauses(&mut t, f, g);
            exactness_clauses(&mut t, f, g, &limits);
        }

        // induced Hom sequence for the designated or a random surjection
        let surj = designated
            .map(|(_, g)| g)
            .or_else(|| gs.iter().find(|g| g.is_surjective()).cloned());
        if let Some(g) = surj {
            let f = fs.choose(&mut rng).unwrap().clone();
            let i = pool.choose(&mut rng).unwrap();
            if is_normal(&g) {
                let d = dualize_with(&SequencePair::new(f, g).unwrap(), i, &limits).unwrap();
                t.check(
                    "ll-exact(1): g surjective normal => 0 -> Hom(N,I) -> Hom(M,I) exact, (g,I) normal",
                    true,
                    d.g_star.is_injective()
                        && classify_pair(&zero_on_left(&d.g_star)).exact
                        && is_normal(&d.g_star),
                );
            }
        }
    }
    let violations: u64 = t.violations.values().sum();
    let checks: u64 = t.checked.values().sum();
    let vacuous: Vec<&str> = [
        "1a: g inj => (f k <=> gf k)",
        "1c: g inj and i => (f normal <=> gf normal)",
        "2b: f surj, gf k => g k",
        "2c: f surj and k => (g normal <=> gf normal)",
        "exact(7): short exact => L ~ Ker g and N ~ M/f(L) by explicit isomorphisms",
        "ll-exact(1): g surjective normal => 0 -> Hom(N,I) -> Hom(M,I) exact, (g,I) normal",
    ]
    .into_iter()
    .filter(|c| t.checked.get(c).copied().unwrap_or(0) == 0)
    .collect();
    let mut detail = format!(
        "{TRIPLES} triples, {pairs} composable pairs, {checks} clause instances, {violations} violations"
    );
    for (c, v) in &t.violations {
        detail.push_str(&format!("; {c}: {v}"));
    }
    if !vacuous.is_empty() {
        detail.push_str(&format!("; never exercised: {}", vacuous.join(", ")));
    }
    line(violations == 0 && vacuous.is_empty(), detail)
}

fn criterion_5() -> Line {
    let ws = builtin();
    let limits = Limits::default();
    let mut t = Tally::default();
    for (_, mods) in corpus_bases(&ws) {
        let mut verdicts: HashMap<(String, String, InjectivityKind), bool> = HashMap::new();
        let mut e = |i: &Arc<Semimodule>, m: &Arc<Semimodule>, kind| -> bool {
            *verdicts
                .entry((i.name().to_string(), m.name().to_string(), kind))
                .or_insert_with(|| decide(kind, i, m, &limits).unwrap().verdict)
        };
        for i in &mods {
            for m in &mods {
                let (p, iv, ev) = (
                    e(i, m, InjectivityKind::Plain),
                    e(i, m, InjectivityKind::I),
                    e(i, m, InjectivityKind::E),
                );
                t.check("union: injective or e-injective => i-injective", p || ev, iv);
                for kind in [InjectivityKind::E, InjectivityKind::I, InjectivityKind::Plain] {
                    let by_restriction = e(i, m, kind);
                    let by_dual = decide_by_dualization(kind, i, m, &limits).unwrap();
                    let clause = match kind {
                        InjectivityKind::E => "e-route agreement",
                        InjectivityKind::I => "i-route agreement",
                        InjectivityKind::Plain => "plain-route agreement",
                    };
                    t.check(clause, true, by_restriction == by_dual);
                }
            }
        }
        for i in &mods {
            for j in &mods {
                let retract = is_retract(i, j, &limits).unwrap().holds();
                for m in &mods {
                    t.check(
                        "retract of e-injective is e-injective",
                        retract && e(j, m, InjectivityKind::E),
                        e(i, m, InjectivityKind::E),
                    );
                }
            }
        }
        for (a, j1) in mods.iter().enumerate() {
            for j2 in &mods[a..] {
                if j1.len() * j2.len() > 12 {
                    continue;
                }
                let prod = direct_product(&[j1.clone(), j2.clone()], &limits).unwrap().module;
                for m in &mods {
                    let whole = decide(InjectivityKind::E, &prod, m, &limits).unwrap().verdict;
                    t.check(
                        "product e-injective <=> factors e-injective",
                        true,
                        whole == (e(j1, m, InjectivityKind::E) && e(j2, m, InjectivityKind::E)),
                    );
                }
            }
        }
        // short exact sequences L -> M -> M/L over subtractive L
        for m in &mods {
            for sub in enumerate_subsemimodules(m, true, &limits).unwrap() {
                let (l, f) = sub.materialize(format!("{}|{}", m.name(), sub.display()));
                let q = quotient_semimodule(&sub);
                let short = check_short_exact(&f, &q.projection).unwrap().holds();
                t.check("subtractive L gives a short exact sequence", true, short);
                for j in &mods {
                    let on_m = e(j, m, InjectivityKind::E);
                    let on_l = decide(InjectivityKind::E, j, &l, &limits).unwrap().verdict;
                    let on_n = decide(InjectivityKind::E, j, &q.module, &limits).unwrap().verdict;
                    t.check("M-e-injective => L- and N-e-injective", short && on_m, on_l && on_n);
                }
            }
        }
    }
    let violations: u64 = t.violations.values().sum();
    let mut detail: Vec<String> = t
        .checked
        .iter()
        .map(|(c, n)| format!("{c}: {}/{n}", n - t.violations.get(c).copied().unwrap_or(0)))
        .collect();
    detail.insert(0, format!("{violations} violations"));
    line(violations == 0, detail.join("; "))
}

fn criterion_6() -> Line {
    let ws = builtin();
    let limits = Limits::default();
    let mut compared = 0;
    let mut disagreements = Vec::new();
    for (_, mods) in corpus_bases(&ws) {
        for m in mods.iter().filter(|m| m.len() <= 4) {
            for i in &mods {
                let hom_m_i = brute_homs(m, i);
                for kind in [InjectivityKind::Plain, InjectivityKind::I] {
                    // every g on every (normal) monomorphism u : K -> M extends
                    let mut oracle = true;
                    'outer: for k in mods.iter().filter(|k| k.len() <= m.len()) {
                        for u in brute_homs(k, m) {
                            let mut sorted = u.clone();
                            sorted.sort_unstable();
                            sorted.dedup();
                            if sorted.len() != u.len() {
                                continue;
                            }
                            if kind == InjectivityKind::I && closure_oracle(m, &sorted) != sorted {
                                continue;
                            }
                            for g in brute_homs(k, i) {
                                if !hom_m_i.iter().any(|h| compose_images(h, &u) == g) {
                                    oracle = false;
                                    break 'outer;
                                }
                            }
                        }
                    }
                    let lib = decide(kind, i, m, &limits).unwrap().verdict;
                    compared += 1;
                    if lib != oracle {
                        disagreements.push(format!("{kind}({},{})", i.name(), m.name()));
                    }
                }
            }
        }
    }
    line(
        disagreements.is_empty(),
        format!(
            "{compared} decisions compared against monomorphism quantification{}",
            if disagreements.is_empty() {
                String::new()
            } else {
                format!(", disagree on {}", disagreements.join(" "))
            }
        ),
    )
}

fn criterion_7() -> (Line, Duration) {
    let start = Instant::now();
    let o = cli(&["matrix-demo", "--samples", "1000", "--seed", "7", "--json"]);
    let elapsed = start.elapsed();
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap_or_default();
    let stat = |k: &str| v["statistics"][k].as_u64().unwrap_or(0);
    let witness = |label: &str| -> Vec<String> {
        v["witnesses"]
            .as_array()
            .into_iter()
            .flatten()
            .find(|w| w["label"] == label)
            .map(|w| {
                w["values"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|s| s.as_str().unwrap().to_string())
                    .collect()
            })
            .unwrap_or_default()
    };
    let zeros = witness("forced-zero");
    let (h1, h2) = (witness("h1(I)"), witness("h2(I)"));
    let covered = ["ideal_samples", "subtractive_premises", "extension_e1", "extension_e2", "extension_nr"]
        .iter()
        .all(|k| stat(k) > 0);
    let pass = o.code == 0
        && covered
        && zeros == ["l", "m", "n", "o", "p", "q", "r", "s"]
        && h1 == ["[[1,1],[0,0]]"]
        && h2 == ["[[0,0],[1,1]]"];
    (
        line(
            pass,
            format!(
                "exit {}, {} ideal samples, {} subtractive premises, extensions {}/{}/{}, forced zeros {}, h1(I)={} h2(I)={}",
                o.code,
                stat("ideal_samples"),
                stat("subtractive_premises"),
                stat("extension_e1"),
                stat("extension_e2"),
                stat("extension_nr"),
                zeros.join(""),
                h1.join(""),
                h2.join("")
            ),
        ),
        elapsed,
    )
}

/// Violations the divisibility criterion is known to produce on the
/// built-in corpus. Each scalar below is not a zero divisor but is not
/// cancellable either (`a . 1 = a . a` in S3, `2 . 1 = 2 . 2` in N2,
/// `m . 1 = m . m` in L3), so `t s |-> t n` is not well defined on `S s`.
const KNOWN_DIVISIBILITY_VIOLATIONS: &[&str] = &[
    "L3 (scalar m misses 1)",
    "L3q (scalar m misses [1])",
    "N2 (scalar 2 misses 1)",
    "S3 (scalar a misses 1)",
    "S3q (scalar a misses [1])",
];

/// Divisibility restricted to scalars `s` with `t s = t' s => t = t'`.
fn divisible_by_cancellable(m: &Semimodule) -> bool {
    let ring = m.ring();
    ring.elements()
        .filter(|&s| {
            ring.elements()
                .all(|t| ring.elements().all(|u| t == u || ring.mul(t, s) != ring.mul(u, s)))
        })
        .all(|s| m.elements().all(|n| m.elements().any(|x| m.act(s, x) == n)))
}

fn criterion_8() -> (Line, bool) {
    let ws = builtin();
    let limits = Limits::default();
    let mut violations = Vec::new();
    let mut cancellable_violations = 0;
    let mut injective = 0;
    for (ring, mods) in corpus_bases(&ws) {
        let regular = ws.module(&ring).unwrap();
        for i in &mods {
            if decide(InjectivityKind::Plain, i, &regular, &limits).unwrap().verdict {
                injective += 1;
                let d = is_divisible(i);
                if !d.holds() {
                    let s = &d.find_witness("scalar").unwrap().values[0];
                    let n = &d.find_witness("unreached").unwrap().values[0];
                    violations.push(format!("{} (scalar {s} misses {n})", i.name()));
                }
                if !divisible_by_cancellable(i) {
                    cancellable_violations += 1;
                }
            }
        }
    }
    let known = violations == KNOWN_DIVISIBILITY_VIOLATIONS;
    let detail = format!(
        "{injective} S-injective corpus modules, {} not divisible: {}{}; with cancellable scalars only: {cancellable_violations} violations",
        violations.len(),
        violations.join(", "),
        if known {
            " [documented: these scalars are not zero divisors but are not cancellable]"
        } else {
            ""
        }
    );
    (line(violations.is_empty(), detail), known)
}

fn main() {
    let mut unexpected = 0;
    let mut emit = |id: u32, title: &str, limit: Option<Duration>, run: &mut dyn FnMut() -> (Line, Duration, bool)| {
        let outcome = catch_unwind(AssertUnwindSafe(|| run()));
        let (l, elapsed, tolerated) = match outcome {
            Ok(v) => v,
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (line(false, format!("panicked: {msg}")), Duration::ZERO, false)
            }
        };
        let in_time = limit.is_none_or(|lim| elapsed <= lim);
        let pass = l.pass && in_time;
        let budget = limit.map_or(String::new(), |lim| format!(", limit {:.0}s", lim.as_secs_f64()));
        println!(
            "{} criterion {id} {title}: {} ({:.2}s{budget})",
            if pass { "PASS" } else { "FAIL" },
            l.detail,
            elapsed.as_secs_f64()
        );
        if !pass && !tolerated {
            unexpected += 1;
        }
    };
    let timed = |f: fn() -> Line| {
        move || {
            let start = Instant::now();
            let l = f();
            (l, start.elapsed(), false)
        }
    };
    let secs = Duration::from_secs;
    emit(1, "S3 injectivity verdicts", Some(secs(1)), &mut timed(criterion_1));
    emit(2, "S3 subobject census", Some(secs(1)), &mut timed(criterion_2));
    emit(3, "Hom census against brute force", Some(secs(1)), &mut timed(criterion_3));
    emit(4, "normality and exactness lemmas on random triples", Some(secs(60)), &mut timed(criterion_4));
    emit(5, "injectivity algebra on corpus pairs", Some(secs(120)), &mut timed(criterion_5));
    emit(6, "inclusion-only quantification against monomorphisms", None, &mut timed(criterion_6));
    emit(7, "matrix counterexample replay", Some(secs(5)), &mut || {
        let (l, d) = criterion_7();
        (l, d, false)
    });
    emit(8, "injective implies divisible", None, &mut || {
        let start = Instant::now();
        let (l, known) = criterion_8();
        (l, start.elapsed(), known)
    });
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
