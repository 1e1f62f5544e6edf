use std::fmt;
use std::sync::Arc;

use crate::algebra::{subtractive_closure, Semimodule, Subsemimodule};
use crate::error::{Error, LinearityLaw, LinearityViolation, Result};

/// An S-linear map between finite semimodules over the same base.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap {
    source: Arc<Semimodule>,
    target: Arc<Semimodule>,
    images: Vec<usize>,
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {} {}",
            self.source.name(),
            self.target.name(),
            self.image_tuple()
        )
    }
}

/// Validates `images` as a linear map, returning the first violation found.
pub fn check_linear(
    source: &Arc<Semimodule>,
    target: &Arc<Semimodule>,
    images: Vec<usize>,
) -> Result<LinearMap> {
    if !source.same_base(target) {
        return Err(Error::Shape(format!(
            "{} and {} are over different semirings",
            source.name(),
            target.name()
        )));
    }
    if images.len() != source.len() {
        return Err(Error::Shape(format!(
            "map assigns {} images, source has {} elements",
            images.len(),
            source.len()
        )));
    }
    if let Some(&bad) = images.iter().find(|&&y| y >= target.len()) {
        return Err(Error::UnknownElement(bad.to_string()));
    }
    if let Some(v) = linearity_violation(source, target, &images) {
        return Err(Error::Linearity(v));
    }
    Ok(LinearMap {
        source: source.clone(),
        target: target.clone(),
        images,
    })
}

fn linearity_violation(
    source: &Semimodule,
    target: &Semimodule,
    f: &[usize],
) -> Option<LinearityViolation> {
    let sl = |x: usize| source.label(x).to_string();
    if f[source.zero()] != target.zero() {
        return Some(LinearityViolation {
            law: LinearityLaw::Zero,
            witness: vec![sl(source.zero())],
        });
    }
    for x in source.elements() {
        for y in source.elements() {
            if f[source.add(x, y)] != target.add(f[x], f[y]) {
                return Some(LinearityViolation {
                    law: LinearityLaw::Additivity,
                    witness: vec![sl(x), sl(y)],
                });
            }
        }
    }
    let ring = source.ring();
    for s in ring.elements() {
        for x in source.elements() {
            if f[source.act(s, x)] != target.act(s, f[x]) {
                return Some(LinearityViolation {
                    law: LinearityLaw::Action,
                    witness: vec![ring.label(s).to_string(), sl(x)],
                });
            }
        }
    }
    None
}

impl LinearMap {
    pub(crate) fn new_unchecked(
        source: Arc<Semimodule>,
        target: Arc<Semimodule>,
        images: Vec<usize>,
    ) -> Self {
        debug_assert!(linearity_violation(&source, &target, &images).is_none());
        LinearMap {
            source,
            target,
            images,
        }
    }

    pub fn identity(m: &Arc<Semimodule>) -> Self {
        LinearMap {
            source: m.clone(),
            target: m.clone(),
            images: m.elements().collect(),
        }
    }

    pub fn zero(source: &Arc<Semimodule>, target: &Arc<Semimodule>) -> Self {
        LinearMap {
            source: source.clone(),
            target: target.clone(),
            images: vec![target.zero(); source.len()],
        }
    }

    pub fn source(&self) -> &Arc<Semimodule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Semimodule> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.images
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &y in &self.images {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|&y| y == self.target.zero())
    }

    /// Image tuple in source element order, e.g. `[0,a,a]`.
    pub fn image_tuple(&self) -> String {
        let parts: Vec<&str> = self.images.iter().map(|&y| self.target.label(y)).collect();
        format!("[{}]", parts.join(","))
    }

    /// `src->dst` pairs in source element order.
    pub fn assignments(&self) -> Vec<String> {
        self.source
            .elements()
            .map(|x| format!("{}->{}", self.source.label(x), self.target.label(self.images[x])))
            .collect()
    }
}

/// `g . f`
pub fn compose(g: &LinearMap, f: &LinearMap) -> Result<LinearMap> {
    if !Arc::ptr_eq(&f.target, &g.source) && f.target != g.source {
        return Err(Error::Shape(format!(
            "cannot compose: {} is not {}",
            f.target.name(),
            g.source.name()
        )));
    }
    Ok(LinearMap {
        source: f.source.clone(),
        target: g.target.clone(),
        images: f.images.iter().map(|&y| g.images[y]).collect(),
    })
}

pub fn kernel(f: &LinearMap) -> Subsemimodule {
    let z = f.target.zero();
    let members = f.source.elements().filter(|&x| f.images[x] == z).collect();
    Subsemimodule::from_closed(f.source.clone(), members)
}

/// The set image `f(L)` with its subtractive flag.
pub fn image(f: &LinearMap) -> Subsemimodule {
    let mut members = f.images.clone();
    members.sort_unstable();
    members.dedup();
    Subsemimodule::from_closed(f.target.clone(), members)
}

/// `x + k = y + k'` for some `k, k'` in `members`.
pub(crate) fn translates_meet(m: &Semimodule, members: &[usize], x: usize, y: usize) -> bool {
    let mut reach = vec![false; m.len()];
    for &k in members {
        reach[m.add(x, k)] = true;
    }
    members.iter().any(|&k| reach[m.add(y, k)])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityVerdict {
    pub k_normal: bool,
    pub i_normal: bool,
    pub normal: bool,
    /// First pair `(m, m')` in canonical order with `f(m) = f(m')` that is
    /// not identified modulo the kernel.
    pub k_witness: Option<(usize, usize)>,
    /// First element of the subtractive closure of the image that is not in
    /// the image.
    pub i_witness: Option<usize>,
}

/// First fibre pair not related by kernel translation, if any.
pub(crate) fn k_normal_witness(
    source: &Semimodule,
    images: &[usize],
    kernel_members: &[usize],
) -> Option<(usize, usize)> {
    for x in source.elements() {
        for y in x + 1..source.len() {
            if images[x] == images[y] && !translates_meet(source, kernel_members, x, y) {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn normality(f: &LinearMap) -> NormalityVerdict {
    let ker = kernel(f);
    let k_witness = k_normal_witness(&f.source, &f.images, ker.members());
    let im = image(f);
    let closure = subtractive_closure(&im);
    let i_witness = closure.members().iter().copied().find(|&x| !im.contains(x));
    let k_normal = k_witness.is_none();
    let i_normal = i_witness.is_none();
    NormalityVerdict {
        k_normal,
        i_normal,
        normal: k_normal && i_normal,
        k_witness,
        i_witness,
    }
}

pub fn is_k_normal(f: &LinearMap) -> bool {
    k_normal_witness(&f.source, &f.images, kernel(f).members()).is_none()
}

pub fn is_i_normal(f: &LinearMap) -> bool {
    image(f).is_subtractive()
}

pub fn is_normal(f: &LinearMap) -> bool {
    is_k_normal(f) && is_i_normal(f)
}
