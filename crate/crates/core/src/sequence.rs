//! Exactness grades of `L -f-> M -g-> N` and the contravariant Hom
//! dualization `Hom(N,I) -> Hom(M,I) -> Hom(L,I)`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{subtractive_closure, Semimodule};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::morphism::{
    compose, hom_monoids, image, kernel, k_normal_witness, normality, precomposition, HomMonoid,
    LinearMap, NormalityVerdict,
};
use crate::report::{Report, Witness};

/// `L -f-> M -g-> N`
#[derive(Clone, Debug)]
pub struct SequencePair {
    f: LinearMap,
    g: LinearMap,
}

impl SequencePair {
    pub fn new(f: LinearMap, g: LinearMap) -> Result<Self> {
        if f.target().as_ref() != g.source().as_ref() {
            return Err(Error::Shape(format!(
                "sequence does not compose: {} vs {}",
                f.target().name(),
                g.source().name()
            )));
        }
        Ok(SequencePair { f, g })
    }

    pub fn f(&self) -> &LinearMap {
        &self.f
    }

    pub fn g(&self) -> &LinearMap {
        &self.g
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessGrade {
    pub chain_complex: bool,
    pub proper_exact: bool,
    pub semi_exact: bool,
    pub quasi_exact: bool,
    pub exact: bool,
    /// One entry per failed condition, first counterexample in element order.
    pub witnesses: Vec<Witness>,
}

impl ExactnessGrade {
    /// The implications `exact => proper, quasi`, `quasi => semi`,
    /// `proper => semi, chain`.
    pub fn is_consistent(&self) -> bool {
        (!self.exact || (self.proper_exact && self.quasi_exact))
            && (!self.quasi_exact || self.semi_exact)
            && (!self.proper_exact || (self.semi_exact && self.chain_complex))
    }
}

fn first_difference(m: &Semimodule, a: &[usize], b: &[usize]) -> Option<(usize, bool)> {
    m.elements().find_map(|x| {
        let (ia, ib) = (a.binary_search(&x).is_ok(), b.binary_search(&x).is_ok());
        (ia != ib).then_some((x, ia))
    })
}

pub fn classify_pair(p: &SequencePair) -> ExactnessGrade {
    let (f, g) = (&p.f, &p.g);
    let m = f.target();
    let mut witnesses = Vec::new();

    let nonzero = f
        .source()
        .elements()
        .find(|&l| g.apply(f.apply(l)) != g.target().zero());
    if let Some(l) = nonzero {
        witnesses.push(Witness::new(
            "composite-nonzero",
            vec![f.source().label(l).to_string(), g.target().label(g.apply(f.apply(l))).to_string()],
        ));
    }

    let im = image(f);
    let ker = kernel(g);
    let proper = first_difference(m, im.members(), ker.members());
    if let Some((x, in_image)) = proper {
        let label = if in_image { "image-not-kernel" } else { "kernel-not-image" };
        witnesses.push(Witness::new(label, vec![m.label(x).to_string()]));
    }

    let closure = subtractive_closure(&im);
    let semi = first_difference(m, closure.members(), ker.members());
    if let Some((x, in_closure)) = semi {
        let label = if in_closure { "closure-not-kernel" } else { "kernel-not-closure" };
        witnesses.push(Witness::new(label, vec![m.label(x).to_string()]));
    }

    let k_fail = k_normal_witness(m, g.images(), ker.members());
    if let Some((x, y)) = k_fail {
        witnesses.push(Witness::new(
            "g-not-k-normal",
            vec![m.label(x).to_string(), m.label(y).to_string()],
        ));
    }

    let g_k_normal = k_fail.is_none();
    let proper_exact = proper.is_none();
    let semi_exact = semi.is_none();
    ExactnessGrade {
        chain_complex: nonzero.is_none(),
        proper_exact,
        semi_exact,
        quasi_exact: semi_exact && g_k_normal,
        exact: proper_exact && g_k_normal,
        witnesses,
    }
}

/// Grades of every consecutive pair of a composable chain.
pub fn classify_chain(maps: &[LinearMap]) -> Result<Vec<ExactnessGrade>> {
    maps.windows(2)
        .map(|w| SequencePair::new(w[0].clone(), w[1].clone()).map(|p| classify_pair(&p)))
        .collect()
}

/// `0 -> L -> M` as a pair, with the zero map from the zero module.
pub fn zero_on_left(f: &LinearMap) -> SequencePair {
    let z = Arc::new(Semimodule::zero_module(f.source().ring(), "0"));
    SequencePair {
        f: LinearMap::zero(&z, f.source()),
        g: f.clone(),
    }
}

/// `M -> N -> 0` as a pair, with the zero map to the zero module.
pub fn zero_on_right(g: &LinearMap) -> SequencePair {
    let z = Arc::new(Semimodule::zero_module(g.source().ring(), "0"));
    SequencePair {
        f: g.clone(),
        g: LinearMap::zero(g.target(), &z),
    }
}

/// Whether `0 -> L -> M -> N -> 0` is exact: `f` injective, `f(L) = Ker(g)`,
/// `g` surjective and k-normal. Also records whether both maps come out
/// normal.
pub fn check_short_exact(f: &LinearMap, g: &LinearMap) -> Result<Report> {
    let p = SequencePair::new(f.clone(), g.clone())?;
    let grade = classify_pair(&p);
    let inputs = vec![f.source().name().to_string(), f.target().name().to_string(), g.target().name().to_string()];
    let injective = f.is_injective();
    let surjective = g.is_surjective();
    let holds = injective && surjective && grade.exact;
    let mut r = Report::boolean("check_short_exact", inputs, holds)
        .cite("0 -> L -> M -> N -> 0 is exact iff f is injective, f(L) = Ker(g), g is surjective and k-normal; then f and g are normal");
    if !injective {
        let (x, y) = first_collision(f).expect("non-injective map has a collision");
        r = r.witness("f-not-injective", vec![f.source().label(x).into(), f.source().label(y).into()]);
    }
    if !surjective {
        let n = g
            .target()
            .elements()
            .find(|&n| !g.images().contains(&n))
            .expect("non-surjective map misses an element");
        r = r.witness("g-not-surjective", vec![g.target().label(n).into()]);
    }
    r.witnesses.extend(
        grade
            .witnesses
            .into_iter()
            .filter(|w| w.label != "composite-nonzero" && !w.label.contains("closure")),
    );
    let (nf, ng) = (normality(f), normality(g));
    Ok(r.stat("f_normal", nf.normal as u64).stat("g_normal", ng.normal as u64))
}

fn first_collision(f: &LinearMap) -> Option<(usize, usize)> {
    let src = f.source();
    src.elements()
        .flat_map(|x| (x + 1..src.len()).map(move |y| (x, y)))
        .find(|&(x, y)| f.apply(x) == f.apply(y))
}

/// The canonical comparison maps of a pair: the corestriction `L -> Ker(g)`
/// and the map `M / f(L) -> N` induced by `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalComparison {
    /// `f` is a bijection onto `Ker(g)`.
    pub kernel_iso: bool,
    /// `g` is constant on the classes of `M / f(L)` and the induced map is
    /// bijective.
    pub cokernel_iso: bool,
}

pub fn canonical_comparison(p: &SequencePair) -> CanonicalComparison {
    let (f, g) = (&p.f, &p.g);
    let m = f.target();
    let ker = kernel(g);
    let im = image(f);
    let kernel_iso = f.is_injective() && im.members() == ker.members();

    // g factors through M / f(L) iff it identifies x and x + f(l)
    let factors = m
        .elements()
        .all(|x| im.members().iter().all(|&l| g.apply(m.add(x, l)) == g.apply(x)));
    let cokernel_iso = factors && g.is_surjective() && {
        // injective on classes: g(x) = g(y) forces x ~ y
        k_normal_witness(m, g.images(), im.members()).is_none()
    };
    CanonicalComparison {
        kernel_iso,
        cokernel_iso,
    }
}

/// `Hom(N,I) -(g,I)-> Hom(M,I) -(f,I)-> Hom(L,I)` over one counting base.
#[derive(Clone, Debug)]
pub struct Dualization {
    pub hom_n: HomMonoid,
    pub hom_m: HomMonoid,
    pub hom_l: HomMonoid,
    pub g_star: LinearMap,
    pub f_star: LinearMap,
    pub grade: ExactnessGrade,
    pub g_star_normality: NormalityVerdict,
    pub f_star_normality: NormalityVerdict,
}

impl Dualization {
    /// `0 -> Hom(N,I) -> Hom(M,I)` is exact.
    pub fn left_exact(&self) -> bool {
        self.g_star.is_injective()
    }

    /// `0 -> Hom(N,I) -> Hom(M,I) -> Hom(L,I) -> 0` is exact.
    pub fn short_exact(&self) -> bool {
        self.g_star.is_injective() && self.f_star.is_surjective() && self.grade.exact
    }

    /// The same sequence, proper-exact at every term.
    pub fn short_proper_exact(&self) -> bool {
        self.g_star.is_injective() && self.f_star.is_surjective() && self.grade.proper_exact
    }
}

pub fn dualize_with(p: &SequencePair, i: &Arc<Semimodule>, limits: &Limits) -> Result<Dualization> {
    let (l, m, n) = (p.f.source(), p.f.target(), p.g.target());
    let mut homs = hom_monoids(&[(n, i), (m, i), (l, i)], limits)?;
    let hom_l = homs.pop().expect("three Hom monoids");
    let hom_m = homs.pop().expect("three Hom monoids");
    let hom_n = homs.pop().expect("three Hom monoids");
    let g_star = precomposition(&p.g, &hom_n, &hom_m)?;
    let f_star = precomposition(&p.f, &hom_m, &hom_l)?;
    let grade = classify_pair(&SequencePair::new(g_star.clone(), f_star.clone())?);
    let g_star_normality = normality(&g_star);
    let f_star_normality = normality(&f_star);
    Ok(Dualization {
        hom_n,
        hom_m,
        hom_l,
        g_star,
        f_star,
        grade,
        g_star_normality,
        f_star_normality,
    })
}

/// `g . f = 0`
pub fn is_chain_complex(f: &LinearMap, g: &LinearMap) -> Result<bool> {
    Ok(compose(g, f)?.is_zero())
}
