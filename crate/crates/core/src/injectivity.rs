//! Relative injectivity: plain, i- (along normal monomorphisms) and
//! e-injectivity (restriction maps are normal epimorphisms).

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{enumerate_subsemimodules, quotient_semimodule, Semimodule, Subsemimodule};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::morphism::{compose, enumerate_homs, LinearMap};
use crate::report::{Report, Verdict};
use crate::sequence::{dualize_with, SequencePair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InjectivityKind {
    Plain,
    I,
    E,
}

impl InjectivityKind {
    pub fn name(self) -> &'static str {
        match self {
            InjectivityKind::Plain => "plain",
            InjectivityKind::I => "i",
            InjectivityKind::E => "e",
        }
    }

    /// Only subtractive subobjects (normal monomorphisms) are quantified.
    pub fn normal_only(self) -> bool {
        self != InjectivityKind::Plain
    }
}

impl fmt::Display for InjectivityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for InjectivityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(InjectivityKind::Plain),
            "i" => Ok(InjectivityKind::I),
            "e" => Ok(InjectivityKind::E),
            other => Err(Error::Domain(format!("unknown injectivity kind {other}"))),
        }
    }
}

/// A subsemimodule `L` of `M` as a standalone object with its inclusion.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub sub: Subsemimodule,
    pub object: Arc<Semimodule>,
    pub inclusion: LinearMap,
}

/// Inclusions of all (or all subtractive) subsemimodules, in canonical order.
pub fn enumerate_embeddings(
    m: &Arc<Semimodule>,
    normal_only: bool,
    limits: &Limits,
) -> Result<Vec<Embedding>> {
    Ok(enumerate_subsemimodules(m, normal_only, limits)?
        .into_iter()
        .map(|sub| {
            let (object, inclusion) = sub.materialize(sub.display());
            Embedding {
                sub,
                object,
                inclusion,
            }
        })
        .collect())
}

/// The restriction `rho : Hom(M,I) -> Hom(L,I)`, `h |-> h . iota`.
#[derive(Clone, Debug)]
pub struct RestrictionAnalysis {
    pub embedding: Embedding,
    pub hom_m: Vec<LinearMap>,
    pub hom_l: Vec<LinearMap>,
    /// `restriction[k]` indexes `hom_l`: the restriction of `hom_m[k]`.
    pub restriction: Vec<usize>,
    /// First map in `hom_l` that no map in `hom_m` restricts to.
    pub unextended: Option<usize>,
    /// First pair in `hom_m` with equal restrictions that no two maps
    /// vanishing on `L` can reconcile.
    pub k_witness: Option<(usize, usize)>,
}

impl RestrictionAnalysis {
    pub fn surjective(&self) -> bool {
        self.unextended.is_none()
    }

    pub fn k_normal(&self) -> bool {
        self.k_witness.is_none()
    }

    pub fn to_report(&self, i: &Semimodule) -> Report {
        let m = self.embedding.inclusion.target();
        let inputs = vec![i.name().to_string(), m.name().to_string(), self.embedding.sub.display()];
        let holds = self.surjective() && self.k_normal();
        let mut r = Report::boolean("restriction_analysis", inputs, holds)
            .witness("surjective", vec![self.surjective().to_string()])
            .witness("k-normal", vec![self.k_normal().to_string()])
            .stat("hom_m", self.hom_m.len() as u64)
            .stat("hom_l", self.hom_l.len() as u64)
            .cite("I is normally M-injective along L iff restriction Hom(M,I) -> Hom(L,I) is a normal epimorphism");
        if let Some(g) = self.unextended {
            r = r.witness("unextended", vec![self.hom_l[g].image_tuple()]);
        }
        if let Some((a, b)) = self.k_witness {
            r = r.witness(
                "equal-restrictions",
                vec![self.hom_m[a].image_tuple(), self.hom_m[b].image_tuple()],
            );
        }
        r
    }
}

fn pointwise_sum(i: &Semimodule, a: &LinearMap, b: &LinearMap) -> Vec<usize> {
    a.images()
        .iter()
        .zip(b.images())
        .map(|(&x, &y)| i.add(x, y))
        .collect()
}

fn analyse(
    i: &Arc<Semimodule>,
    hom_m: &[LinearMap],
    embedding: Embedding,
    check_k_normal: bool,
    limits: &Limits,
) -> Result<RestrictionAnalysis> {
    let hom_l = enumerate_homs(&embedding.object, i, limits)?;
    let restriction: Vec<usize> = hom_m
        .iter()
        .map(|h| {
            let r: Vec<usize> = embedding.inclusion.images().iter().map(|&x| h.apply(x)).collect();
            hom_l
                .binary_search_by(|g| g.images().cmp(&r[..]))
                .expect("restriction of a linear map is linear")
        })
        .collect();
    let mut hit = vec![false; hom_l.len()];
    for &k in &restriction {
        hit[k] = true;
    }
    let unextended = hit.iter().position(|&h| !h);

    let mut k_witness = None;
    if check_k_normal {
        let zero_l = hom_l
            .iter()
            .position(LinearMap::is_zero)
            .expect("zero map is linear");
        let kernel: Vec<&LinearMap> = hom_m
            .iter()
            .zip(&restriction)
            .filter(|&(_, &r)| r == zero_l)
            .map(|(h, _)| h)
            .collect();
        'outer: for a in 0..hom_m.len() {
            let mut reach: Option<HashSet<Vec<usize>>> = None;
            for b in a + 1..hom_m.len() {
                if restriction[a] != restriction[b] {
                    continue;
                }
                let reach = reach.get_or_insert_with(|| {
                    kernel.iter().map(|k| pointwise_sum(i, &hom_m[a], k)).collect()
                });
                if !kernel.iter().any(|k| reach.contains(&pointwise_sum(i, &hom_m[b], k))) {
                    k_witness = Some((a, b));
                    break 'outer;
                }
            }
        }
    }
    Ok(RestrictionAnalysis {
        embedding,
        hom_m: hom_m.to_vec(),
        hom_l,
        restriction,
        unextended,
        k_witness,
    })
}

pub fn restriction_analysis(
    i: &Arc<Semimodule>,
    m: &Arc<Semimodule>,
    l: &Subsemimodule,
    limits: &Limits,
) -> Result<RestrictionAnalysis> {
    if !Arc::ptr_eq(l.parent(), m) && l.parent().as_ref() != m.as_ref() {
        return Err(Error::Shape("subsemimodule is not inside M".into()));
    }
    let hom_m = enumerate_homs(m, i, limits)?;
    let (object, inclusion) = l.materialize(l.display());
    let embedding = Embedding {
        sub: l.clone(),
        object,
        inclusion,
    };
    analyse(i, &hom_m, embedding, true, limits)
}

#[derive(Clone, Debug)]
pub enum InjectivityWitness {
    /// `g : L -> I` with no extension to `M`.
    NoExtension { sub: Subsemimodule, g: LinearMap },
    /// Extensions `h, h'` agreeing on `L` that no maps vanishing on `L`
    /// reconcile.
    NotKNormal {
        sub: Subsemimodule,
        h: LinearMap,
        h_prime: LinearMap,
    },
}

#[derive(Clone, Debug)]
pub struct InjectivityReport {
    pub kind: InjectivityKind,
    pub injective: String,
    pub module: String,
    pub verdict: bool,
    pub witness: Option<InjectivityWitness>,
    pub embeddings: u64,
    pub maps: u64,
}

impl InjectivityReport {
    /// Re-runs the failing inner check on the witness; `true` when the
    /// failure reproduces (or there is nothing to replay).
    pub fn replay(&self, i: &Arc<Semimodule>, m: &Arc<Semimodule>, limits: &Limits) -> Result<bool> {
        match &self.witness {
            None => Ok(true),
            Some(InjectivityWitness::NoExtension { sub, g }) => {
                let (_, incl) = sub.materialize(sub.display());
                let homs = enumerate_homs(m, i, limits)?;
                for h in &homs {
                    if compose(h, &incl)?.images() == g.images() {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Some(InjectivityWitness::NotKNormal { sub, h, h_prime }) => {
                let (_, incl) = sub.materialize(sub.display());
                if compose(h, &incl)?.images() != compose(h_prime, &incl)?.images() {
                    return Ok(false);
                }
                let vanishing: Vec<LinearMap> = enumerate_homs(m, i, limits)?
                    .into_iter()
                    .filter(|k| incl.images().iter().all(|&x| k.apply(x) == i.zero()))
                    .collect();
                let reconciled = vanishing.iter().any(|k1| {
                    let left = pointwise_sum(i, h, k1);
                    vanishing.iter().any(|k2| pointwise_sum(i, h_prime, k2) == left)
                });
                Ok(!reconciled)
            }
        }
    }

    pub fn to_report(&self) -> Report {
        let procedure = match self.kind {
            InjectivityKind::Plain => "decide_injective",
            InjectivityKind::I => "decide_i_injective",
            InjectivityKind::E => "decide_e_injective",
        };
        let citation = match self.kind {
            InjectivityKind::Plain => "I is M-injective iff every map from a subsemimodule of M into I extends to M",
            InjectivityKind::I => "I is M-i-injective iff every map from a subtractive subsemimodule of M into I extends to M",
            InjectivityKind::E => "I is M-e-injective iff it is normally M-injective: restriction to every subtractive L is a surjective k-normal map",
        };
        let mut r = Report::boolean(
            procedure,
            vec![self.injective.clone(), self.module.clone()],
            self.verdict,
        )
        .stat("embeddings", self.embeddings)
        .stat("maps", self.maps)
        .cite(citation);
        match &self.witness {
            Some(InjectivityWitness::NoExtension { sub, g }) => {
                r = r
                    .witness("subsemimodule", sub.labels())
                    .witness("unextended", g.assignments());
            }
            Some(InjectivityWitness::NotKNormal { sub, h, h_prime }) => {
                r = r
                    .witness("subsemimodule", sub.labels())
                    .witness("h", h.assignments())
                    .witness("h'", h_prime.assignments());
            }
            None => {}
        }
        r
    }
}

pub fn decide(
    kind: InjectivityKind,
    i: &Arc<Semimodule>,
    m: &Arc<Semimodule>,
    limits: &Limits,
) -> Result<InjectivityReport> {
    if !i.same_base(m) {
        return Err(Error::Shape(format!(
            "{} and {} are over different semirings",
            i.name(),
            m.name()
        )));
    }
    let embeddings = enumerate_embeddings(m, kind.normal_only(), limits)?;
    let hom_m = enumerate_homs(m, i, limits)?;
    let count = embeddings.len() as u64;
    let analyses: Vec<RestrictionAnalysis> = embeddings
        .into_par_iter()
        .map(|e| analyse(i, &hom_m, e, kind == InjectivityKind::E, limits))
        .collect::<Result<_>>()?;
    let maps = hom_m.len() as u64 + analyses.iter().map(|a| a.hom_l.len() as u64).sum::<u64>();
    let witness = analyses.into_iter().find_map(|a| {
        if let Some(g) = a.unextended {
            return Some(InjectivityWitness::NoExtension {
                sub: a.embedding.sub,
                g: a.hom_l[g].clone(),
            });
        }
        a.k_witness.map(|(x, y)| InjectivityWitness::NotKNormal {
            sub: a.embedding.sub,
            h: a.hom_m[x].clone(),
            h_prime: a.hom_m[y].clone(),
        })
    });
    Ok(InjectivityReport {
        kind,
        injective: i.name().to_string(),
        module: m.name().to_string(),
        verdict: witness.is_none(),
        witness,
        embeddings: count,
        maps,
    })
}

pub fn decide_injective(i: &Arc<Semimodule>, m: &Arc<Semimodule>, limits: &Limits) -> Result<InjectivityReport> {
    decide(InjectivityKind::Plain, i, m, limits)
}

pub fn decide_i_injective(i: &Arc<Semimodule>, m: &Arc<Semimodule>, limits: &Limits) -> Result<InjectivityReport> {
    decide(InjectivityKind::I, i, m, limits)
}

pub fn decide_e_injective(i: &Arc<Semimodule>, m: &Arc<Semimodule>, limits: &Limits) -> Result<InjectivityReport> {
    decide(InjectivityKind::E, i, m, limits)
}

/// The same question answered through Hom dualization of the canonical
/// sequences `0 -> L -> M -> M/L -> 0`:
///
/// * `e`: each induced monoid sequence is short exact and `(pi, I)` normal;
/// * `i`: each induced sequence is proper-exact at every term;
/// * `plain`: `(iota, I)` is surjective for every subsemimodule `L`.
pub fn decide_by_dualization(
    kind: InjectivityKind,
    i: &Arc<Semimodule>,
    m: &Arc<Semimodule>,
    limits: &Limits,
) -> Result<bool> {
    for e in enumerate_embeddings(m, kind.normal_only(), limits)? {
        let pi = quotient_semimodule(&e.sub).projection;
        let d = dualize_with(&SequencePair::new(e.inclusion, pi)?, i, limits)?;
        let ok = match kind {
            InjectivityKind::E => d.short_exact() && d.g_star_normality.normal,
            InjectivityKind::I => d.short_proper_exact(),
            InjectivityKind::Plain => d.f_star.is_surjective(),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `N` is a retract of `M`: some `psi : N -> M`, `theta : M -> N` with
/// `theta . psi = id`.
pub fn is_retract(n: &Arc<Semimodule>, m: &Arc<Semimodule>, limits: &Limits) -> Result<Report> {
    let inputs = vec![n.name().to_string(), m.name().to_string()];
    let sections: Vec<LinearMap> = enumerate_homs(n, m, limits)?
        .into_iter()
        .filter(LinearMap::is_injective)
        .collect();
    let retractions = enumerate_homs(m, n, limits)?;
    let pairs = (sections.len() * retractions.len()) as u64;
    let found = sections.iter().find_map(|psi| {
        retractions
            .iter()
            .find(|theta| psi.images().iter().enumerate().all(|(x, &y)| theta.apply(y) == x))
            .map(|theta| (psi, theta))
    });
    let r = Report::boolean("is_retract", inputs, found.is_some())
        .stat("candidate_pairs", pairs)
        .cite("N is a retract of M iff theta . psi = id_N for some psi : N -> M, theta : M -> N");
    Ok(match found {
        Some((psi, theta)) => r
            .witness("psi", psi.assignments())
            .witness("theta", theta.assignments()),
        None => r,
    })
}

/// Refutation-only check of absolute injectivity against a finite list of
/// test modules: `false` with the first failing module, otherwise the
/// verdict class `unrefuted` (never a positive certificate).
pub fn refute_absolute(
    kind: InjectivityKind,
    i: &Arc<Semimodule>,
    candidates: &[Arc<Semimodule>],
    limits: &Limits,
) -> Result<Report> {
    let inputs = vec![i.name().to_string()];
    let citation = "absolute injectivity is only refutable by finite enumeration";
    for (k, m) in candidates.iter().enumerate() {
        let rep = decide(kind, i, m, limits)?;
        if !rep.verdict {
            let mut r = rep.to_report();
            r.procedure = "refute_absolute".into();
            r.inputs = inputs;
            r.witnesses.insert(0, crate::report::Witness::new("module", vec![m.name().to_string()]));
            return Ok(r.stat("modules_checked", k as u64 + 1).cite(citation));
        }
    }
    Ok(
        Report::new("refute_absolute", inputs, Verdict::Classes(vec!["unrefuted".into()]))
            .stat("modules_checked", candidates.len() as u64)
            .cite(citation),
    )
}
