use std::sync::Arc;

use super::hom::enumerate_homs;
use super::linear::LinearMap;
use crate::algebra::{Semimodule, Semiring};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A map of semirings preserving 0, 1, + and multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiringMorphism {
    source: Arc<Semiring>,
    target: Arc<Semiring>,
    images: Vec<usize>,
}

pub fn check_semiring_morphism(
    source: &Arc<Semiring>,
    target: &Arc<Semiring>,
    images: Vec<usize>,
) -> Result<SemiringMorphism> {
    if images.len() != source.len() || images.iter().any(|&y| y >= target.len()) {
        return Err(Error::Shape("semiring map is not total".into()));
    }
    let g = |x: usize| images[x];
    if g(source.zero()) != target.zero() || g(source.one()) != target.one() {
        return Err(Error::Domain("semiring map does not preserve 0 and 1".into()));
    }
    for a in source.elements() {
        for b in source.elements() {
            if g(source.add(a, b)) != target.add(g(a), g(b)) {
                return Err(Error::Domain(format!(
                    "not additive at ({}, {})",
                    source.label(a),
                    source.label(b)
                )));
            }
            if g(source.mul(a, b)) != target.mul(g(a), g(b)) {
                return Err(Error::Domain(format!(
                    "not multiplicative at ({}, {})",
                    source.label(a),
                    source.label(b)
                )));
            }
        }
    }
    Ok(SemiringMorphism {
        source: source.clone(),
        target: target.clone(),
        images,
    })
}

impl SemiringMorphism {
    pub fn identity(s: &Arc<Semiring>) -> Self {
        SemiringMorphism {
            source: s.clone(),
            target: s.clone(),
            images: s.elements().collect(),
        }
    }

    pub fn source(&self) -> &Arc<Semiring> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Semiring> {
        &self.target
    }

    pub fn apply(&self, t: usize) -> usize {
        self.images[t]
    }
}

/// An S-semimodule seen over T through `gamma`: `t . m = gamma(t) . m`.
pub fn restrict_scalars(gamma: &SemiringMorphism, m: &Semimodule) -> Result<Semimodule> {
    if m.ring().as_ref() != gamma.target.as_ref() {
        return Err(Error::Shape(format!(
            "{} is not over {}",
            m.name(),
            gamma.target.name()
        )));
    }
    let mut act = Vec::with_capacity(gamma.source.len() * m.len());
    for t in gamma.source.elements() {
        for x in m.elements() {
            act.push(m.act(gamma.apply(t), x));
        }
    }
    Semimodule::unchecked(
        format!("{}|{}", m.name(), gamma.source.name()),
        gamma.source.clone(),
        m.labels().to_vec(),
        m.zero(),
        m.add_table().to_vec(),
        act,
    )
}

/// `Hom_T(S, A)` with `S` a left T-semimodule via `gamma`, made into a left
/// S-semimodule by `(s . phi)(x) = phi(x s)`.
#[derive(Clone, Debug)]
pub struct InducedHomModule {
    pub module: Arc<Semimodule>,
    /// `maps[i]` is element `i` of `module`.
    pub maps: Vec<LinearMap>,
}

pub fn induced_hom_module(
    gamma: &SemiringMorphism,
    a: &Arc<Semimodule>,
    limits: &Limits,
) -> Result<InducedHomModule> {
    if a.ring().as_ref() != gamma.source.as_ref() {
        return Err(Error::Shape(format!(
            "{} is not over {}",
            a.name(),
            gamma.source.name()
        )));
    }
    let s = &gamma.target;
    let regular = Semimodule::regular(s);
    let s_over_t = Arc::new(restrict_scalars(gamma, &regular)?);
    let maps = enumerate_homs(&s_over_t, a, limits)?;
    let k = maps.len();
    limits.check(k.saturating_mul(k))?;
    let find = |images: &[usize]| {
        maps.binary_search_by(|h| h.images().cmp(images))
            .expect("Hom_T(S, A) is closed under the induced operations")
    };
    let mut add = Vec::with_capacity(k * k);
    for f in &maps {
        for g in &maps {
            let sum: Vec<usize> = s.elements().map(|x| a.add(f.apply(x), g.apply(x))).collect();
            add.push(find(&sum));
        }
    }
    let mut act = Vec::with_capacity(s.len() * k);
    for r in s.elements() {
        for f in &maps {
            let moved: Vec<usize> = s.elements().map(|x| f.apply(s.mul(x, r))).collect();
            act.push(find(&moved));
        }
    }
    let zero = maps
        .iter()
        .position(LinearMap::is_zero)
        .expect("zero map is linear");
    let labels = maps.iter().map(LinearMap::image_tuple).collect();
    let module = Semimodule::from_flat(
        format!("Hom_{}({},{})", gamma.source.name(), s.name(), a.name()),
        s.clone(),
        labels,
        zero,
        add,
        act,
    )?;
    Ok(InducedHomModule {
        module: Arc::new(module),
        maps,
    })
}
