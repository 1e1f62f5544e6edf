use std::sync::Arc;

use rayon::prelude::*;

use super::linear::LinearMap;
use crate::algebra::{counting_semiring, generated_subsemimodule, Semimodule, Semiring};
use crate::error::{Error, Result};
use crate::limits::{Budget, Limits};

/// How `enumerate_homs_with` explores candidate maps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HomStrategy {
    /// Brute force when `|N|^|M|` is at most [`BRUTE_FORCE_THRESHOLD`],
    /// generator propagation otherwise.
    #[default]
    Auto,
    Generators,
    BruteForce,
}

pub const BRUTE_FORCE_THRESHOLD: usize = 64;

/// Greedy generating set: repeatedly take the first element not yet
/// generated.
pub fn generating_set(m: &Arc<Semimodule>) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = generated_subsemimodule(m, &gens);
    while let Some(x) = m.elements().find(|&x| !span.contains(x)) {
        gens.push(x);
        span = generated_subsemimodule(m, &gens);
    }
    gens
}

pub fn enumerate_homs(
    m: &Arc<Semimodule>,
    n: &Arc<Semimodule>,
    limits: &Limits,
) -> Result<Vec<LinearMap>> {
    enumerate_homs_with(m, n, HomStrategy::Auto, limits)
}

/// All linear maps `M -> N`, sorted lexicographically by image tuple.
pub fn enumerate_homs_with(
    m: &Arc<Semimodule>,
    n: &Arc<Semimodule>,
    strategy: HomStrategy,
    limits: &Limits,
) -> Result<Vec<LinearMap>> {
    if !m.same_base(n) {
        return Err(Error::Shape(format!(
            "{} and {} are over different semirings",
            m.name(),
            n.name()
        )));
    }
    let small = (n.len() as u128)
        .checked_pow(m.len() as u32)
        .is_some_and(|c| c <= BRUTE_FORCE_THRESHOLD as u128);
    let mut tuples = match strategy {
        HomStrategy::BruteForce => brute_force(m, n, limits)?,
        HomStrategy::Auto if small => brute_force(m, n, limits)?,
        _ => by_generators(m, n, limits)?,
    };
    tuples.sort_unstable();
    Ok(tuples
        .into_iter()
        .map(|images| LinearMap::new_unchecked(m.clone(), n.clone(), images))
        .collect())
}

fn is_linear(m: &Semimodule, n: &Semimodule, f: &[usize]) -> bool {
    f[m.zero()] == n.zero()
        && m.elements().all(|x| {
            m.elements().all(|y| f[m.add(x, y)] == n.add(f[x], f[y]))
                && m.ring().elements().all(|s| f[m.act(s, x)] == n.act(s, f[x]))
        })
}

fn brute_force(m: &Semimodule, n: &Semimodule, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let total = (n.len() as u128)
        .checked_pow(m.len() as u32)
        .filter(|&c| c <= limits.cap as u128)
        .ok_or(Error::SearchCapExceeded { cap: limits.cap })?;
    let mut out = Vec::new();
    let mut f = vec![0usize; m.len()];
    for _ in 0..total {
        if is_linear(m, n, &f) {
            out.push(f.clone());
        }
        for slot in f.iter_mut().rev() {
            *slot += 1;
            if *slot < n.len() {
                break;
            }
            *slot = 0;
        }
    }
    Ok(out)
}

/// A partial map whose graph is kept closed under addition and the action.
#[derive(Clone)]
struct Partial {
    img: Vec<Option<usize>>,
    pairs: Vec<(usize, usize)>,
}

impl Partial {
    fn new(m: &Semimodule) -> Self {
        Partial {
            img: vec![None; m.len()],
            pairs: Vec::with_capacity(m.len()),
        }
    }

    /// Adds `x -> y` and everything it forces; `false` on a conflict.
    fn assign(&mut self, m: &Semimodule, n: &Semimodule, x: usize, y: usize) -> bool {
        let mut work = vec![(x, y)];
        while let Some((a, b)) = work.pop() {
            match self.img[a] {
                Some(c) if c != b => return false,
                Some(_) => continue,
                None => {}
            }
            self.img[a] = Some(b);
            self.pairs.push((a, b));
            for s in m.ring().elements() {
                work.push((m.act(s, a), n.act(s, b)));
            }
            for &(c, d) in &self.pairs {
                work.push((m.add(a, c), n.add(b, d)));
            }
        }
        true
    }
}

fn by_generators(m: &Arc<Semimodule>, n: &Arc<Semimodule>, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let gens = generating_set(m);
    let budget = Budget::new(limits);
    let mut root = Partial::new(m);
    let ok = root.assign(m, n, m.zero(), n.zero());
    if !ok {
        return Ok(Vec::new());
    }
    let Some((&first, rest)) = gens.split_first() else {
        return Ok(vec![finish(&root)]);
    };
    let branches: Vec<Result<Vec<Vec<usize>>>> = n
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|y| {
            budget.spend(1)?;
            let mut p = root.clone();
            let mut out = Vec::new();
            if p.assign(m, n, first, y) {
                extend(m, n, rest, p, &budget, &mut out)?;
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for b in branches {
        out.extend(b?);
    }
    Ok(out)
}

fn extend(
    m: &Semimodule,
    n: &Semimodule,
    gens: &[usize],
    partial: Partial,
    budget: &Budget,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let Some((&g, rest)) = gens.split_first() else {
        out.push(finish(&partial));
        return Ok(());
    };
    if partial.img[g].is_some() {
        return extend(m, n, rest, partial, budget, out);
    }
    for y in n.elements() {
        budget.spend(1)?;
        let mut p = partial.clone();
        if p.assign(m, n, g, y) {
            extend(m, n, rest, p, budget, out)?;
        }
    }
    Ok(())
}

fn finish(p: &Partial) -> Vec<usize> {
    p.img
        .iter()
        .map(|y| y.expect("generators span the source"))
        .collect()
}

/// `Hom(M, N)` as a commutative monoid under pointwise addition, presented
/// as a semimodule over a truncated counting semiring. `maps[i]` is the map
/// behind element `i` of `module`.
#[derive(Clone, Debug)]
pub struct HomMonoid {
    pub module: Arc<Semimodule>,
    pub maps: Vec<LinearMap>,
}

impl HomMonoid {
    pub fn index_of(&self, images: &[usize]) -> Option<usize> {
        self.maps
            .binary_search_by(|f| f.images().cmp(images))
            .ok()
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }
}

pub fn hom_monoid(m: &Arc<Semimodule>, n: &Arc<Semimodule>, limits: &Limits) -> Result<HomMonoid> {
    Ok(hom_monoids(&[(m, n)], limits)?.remove(0))
}

/// Several Hom monoids over one shared counting semiring, so that maps
/// between them are linear over a common base.
pub fn hom_monoids(
    pairs: &[(&Arc<Semimodule>, &Arc<Semimodule>)],
    limits: &Limits,
) -> Result<Vec<HomMonoid>> {
    let mut sets = Vec::with_capacity(pairs.len());
    for (m, n) in pairs {
        let maps = enumerate_homs(m, n, limits)?;
        limits.check(maps.len().saturating_mul(maps.len()))?;
        let k = maps.len();
        let mut add = Vec::with_capacity(k * k);
        for f in &maps {
            for g in &maps {
                let sum: Vec<usize> = f
                    .images()
                    .iter()
                    .zip(g.images())
                    .map(|(&a, &b)| n.add(a, b))
                    .collect();
                let idx = maps
                    .binary_search_by(|h| h.images().as_ref().cmp(&sum[..]))
                    .expect("Hom sets are closed under pointwise addition");
                add.push(idx);
            }
        }
        let zero = maps
            .iter()
            .position(LinearMap::is_zero)
            .expect("zero map is linear");
        sets.push((maps, add, zero));
    }
    let (mut index, mut period) = (1usize, 1usize);
    for (maps, add, zero) in &sets {
        for a in 0..maps.len() {
            let (i, p) = index_period(add, maps.len(), *zero, a);
            index = index.max(i);
            period = lcm(period, p);
        }
    }
    let ring = Arc::new(counting_semiring(index, period));
    let mut out = Vec::with_capacity(sets.len());
    for ((m, n), (maps, add, zero)) in pairs.iter().zip(sets) {
        let module = monoid_module(
            format!("Hom({},{})", m.name(), n.name()),
            &ring,
            maps.iter().map(LinearMap::image_tuple).collect(),
            zero,
            add,
        )?;
        out.push(HomMonoid {
            module: Arc::new(module),
            maps,
        });
    }
    Ok(out)
}

/// First repetition in `0, a, 2a, ...`: returns `(index, period)`.
fn index_period(add: &[usize], n: usize, zero: usize, a: usize) -> (usize, usize) {
    let mut seen = vec![usize::MAX; n];
    let mut v = zero;
    let mut k = 0;
    loop {
        if seen[v] != usize::MAX {
            return (seen[v], k - seen[v]);
        }
        seen[v] = k;
        v = add[v * n + a];
        k += 1;
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn monoid_module(
    name: String,
    ring: &Arc<Semiring>,
    labels: Vec<String>,
    zero: usize,
    add: Vec<usize>,
) -> Result<Semimodule> {
    let n = labels.len();
    let mut act = Vec::with_capacity(ring.len() * n);
    for k in ring.elements() {
        for a in 0..n {
            let mut v = zero;
            for _ in 0..k {
                v = add[v * n + a];
            }
            act.push(v);
        }
    }
    Semimodule::from_flat(name, ring.clone(), labels, zero, add, act)
}

/// `(f, I)`: precomposition with `f : A -> B` as a monoid map
/// `Hom(B, I) -> Hom(A, I)`.
pub fn precomposition(f: &LinearMap, from: &HomMonoid, to: &HomMonoid) -> Result<LinearMap> {
    let mut images = Vec::with_capacity(from.len());
    for phi in &from.maps {
        if phi.source().as_ref() != f.target().as_ref() {
            return Err(Error::Shape("precomposition domain mismatch".into()));
        }
        let composed: Vec<usize> = f.images().iter().map(|&x| phi.apply(x)).collect();
        let idx = to
            .index_of(&composed)
            .ok_or_else(|| Error::Shape("precomposition codomain mismatch".into()))?;
        images.push(idx);
    }
    if !from.module.same_base(&to.module) {
        return Err(Error::Shape(
            "Hom monoids do not share a counting semiring".into(),
        ));
    }
    Ok(LinearMap::new_unchecked(
        from.module.clone(),
        to.module.clone(),
        images,
    ))
}
