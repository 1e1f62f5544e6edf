use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::semimodule::Semimodule;
use super::subsemimodule::Subsemimodule;
use crate::morphism::LinearMap;

/// A quotient object together with its canonical surjection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: Arc<Semimodule>,
    pub projection: LinearMap,
}

/// `M / L` under the Bourne congruence `m ~ m'  <=>  m + l = m' + l'`.
///
/// The relation is generated by `x ~ x + l`; it is already a congruence, so
/// no saturation pass is needed. `Ker(projection)` is the subtractive
/// closure of `L`.
pub fn quotient_semimodule(l: &Subsemimodule) -> Quotient {
    let m = l.parent();
    let mut uf = UnionFind::new(m.len());
    for x in m.elements() {
        for &y in l.members() {
            uf.union(x, m.add(x, y));
        }
    }
    let labels: Vec<usize> = m.elements().map(|x| uf.find_mut(x)).collect();
    let name = format!("{}/{}", m.name(), l.display().replace(' ', ""));
    quotient_by_classes(m, &labels, name)
}

/// Least congruence containing `pairs`, as a class label per element.
pub fn congruence_closure(m: &Semimodule, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut uf = UnionFind::new(m.len());
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    // x ~ rep(x) for every x generates the relation; translating each such
    // pair and scaling it until nothing merges yields the congruence.
    loop {
        let mut changed = false;
        for x in m.elements() {
            let r = uf.find_mut(x);
            if r == x {
                continue;
            }
            for z in m.elements() {
                changed |= uf.union(m.add(x, z), m.add(r, z));
            }
            for s in m.ring().elements() {
                changed |= uf.union(m.act(s, x), m.act(s, r));
            }
        }
        if !changed {
            break;
        }
    }
    m.elements().map(|x| uf.find_mut(x)).collect()
}

/// Builds the quotient for a congruence given as arbitrary class labels.
/// Classes are ordered by their least member, which also names them.
pub fn quotient_by_classes(m: &Arc<Semimodule>, class_of: &[usize], name: String) -> Quotient {
    let mut canon = vec![usize::MAX; m.len()];
    let mut reps = Vec::new();
    let mut images = Vec::with_capacity(m.len());
    for x in m.elements() {
        let c = class_of[x];
        if canon[c] == usize::MAX {
            canon[c] = reps.len();
            reps.push(x);
        }
        images.push(canon[c]);
    }
    let k = reps.len();
    let mut add = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            add.push(images[m.add(a, b)]);
        }
    }
    let mut act = Vec::with_capacity(m.ring().len() * k);
    for s in m.ring().elements() {
        for &a in &reps {
            act.push(images[m.act(s, a)]);
        }
    }
    let labels = reps.iter().map(|&r| format!("[{}]", m.label(r))).collect();
    let module = Arc::new(
        Semimodule::unchecked(name, m.ring().clone(), labels, images[m.zero()], add, act)
            .expect("quotient of a valid semimodule by a congruence"),
    );
    let projection = LinearMap::new_unchecked(m.clone(), module.clone(), images);
    Quotient { module, projection }
}
