use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::semimodule::Semimodule;
use crate::error::{Error, Result};
use crate::limits::{Budget, Limits};
use crate::morphism::LinearMap;

/// A subset of a semimodule closed under addition and the action, tagged
/// with whether it equals its subtractive closure.
#[derive(Clone, PartialEq, Eq)]
pub struct Subsemimodule {
    parent: Arc<Semimodule>,
    members: Vec<usize>,
    subtractive: bool,
}

impl fmt::Debug for Subsemimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl Subsemimodule {
    /// Checks that `members` contains zero and is closed.
    pub fn new(parent: &Arc<Semimodule>, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&m| m >= parent.len()) {
            return Err(Error::UnknownElement(bad.to_string()));
        }
        let mask = to_mask(parent.len(), &members);
        if !mask[parent.zero()] {
            return Err(Error::Domain("subset does not contain zero".into()));
        }
        for &a in &members {
            for &b in &members {
                if !mask[parent.add(a, b)] {
                    return Err(Error::Domain(format!(
                        "not closed: {} + {} = {}",
                        parent.label(a),
                        parent.label(b),
                        parent.label(parent.add(a, b))
                    )));
                }
            }
            if let Some(x) = parent.orbit(a).find(|&x| !mask[x]) {
                return Err(Error::Domain(format!(
                    "not closed under the action: {} reaches {}",
                    parent.label(a),
                    parent.label(x)
                )));
            }
        }
        Ok(Self::from_closed(parent.clone(), members))
    }

    /// `members` must be sorted and closed.
    pub(crate) fn from_closed(parent: Arc<Semimodule>, members: Vec<usize>) -> Self {
        let closure = closure_members(&parent, &members);
        let subtractive = closure.len() == members.len();
        Subsemimodule {
            parent,
            members,
            subtractive,
        }
    }

    pub fn whole(parent: &Arc<Semimodule>) -> Self {
        Subsemimodule {
            parent: parent.clone(),
            members: parent.elements().collect(),
            subtractive: true,
        }
    }

    pub fn zero(parent: &Arc<Semimodule>) -> Self {
        Self::from_closed(parent.clone(), vec![parent.zero()])
    }

    pub fn parent(&self) -> &Arc<Semimodule> {
        &self.parent
    }

    /// Member indices in increasing order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: usize) -> bool {
        self.members.binary_search(&m).is_ok()
    }

    pub fn is_subtractive(&self) -> bool {
        self.subtractive
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.len()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn mask(&self) -> Vec<bool> {
        to_mask(self.parent.len(), &self.members)
    }

    pub fn labels(&self) -> Vec<String> {
        self.members
            .iter()
            .map(|&m| self.parent.label(m).to_string())
            .collect()
    }

    /// `{0, a}`-style rendering in parent element order.
    pub fn display(&self) -> String {
        format!("{{{}}}", self.labels().join(", "))
    }

    /// Turns the subset into a standalone semimodule together with its
    /// inclusion into the parent.
    pub fn materialize(&self, name: impl Into<String>) -> (Arc<Semimodule>, LinearMap) {
        let p = &self.parent;
        let pos = |x: usize| self.members.binary_search(&x).expect("closed subset");
        let k = self.members.len();
        let mut add = Vec::with_capacity(k * k);
        for &a in &self.members {
            for &b in &self.members {
                add.push(pos(p.add(a, b)));
            }
        }
        let mut act = Vec::with_capacity(p.ring().len() * k);
        for s in p.ring().elements() {
            for &a in &self.members {
                act.push(pos(p.act(s, a)));
            }
        }
        let sub = Arc::new(
            Semimodule::unchecked(
                name.into(),
                p.ring().clone(),
                self.labels(),
                pos(p.zero()),
                add,
                act,
            )
            .expect("subobject of a valid semimodule"),
        );
        let incl = LinearMap::new_unchecked(sub.clone(), p.clone(), self.members.clone());
        (sub, incl)
    }
}

pub(crate) fn to_mask(n: usize, members: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &m in members {
        mask[m] = true;
    }
    mask
}

fn mask_members(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}

/// Extends a closed mask by `seed`, returning the least closed superset.
fn close_mask(m: &Semimodule, mut mask: Vec<bool>, seed: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut members = mask_members(&mask);
    let mut work: Vec<usize> = seed.into_iter().filter(|&x| !mask[x]).collect();
    if !mask[m.zero()] {
        work.push(m.zero());
    }
    while let Some(x) = work.pop() {
        if mask[x] {
            continue;
        }
        mask[x] = true;
        members.push(x);
        for &y in &members {
            let z = m.add(x, y);
            if !mask[z] {
                work.push(z);
            }
        }
        for z in m.orbit(x) {
            if !mask[z] {
                work.push(z);
            }
        }
    }
    mask
}

/// The least subsemimodule containing `seed` and zero.
pub fn generated_subsemimodule(m: &Arc<Semimodule>, seed: &[usize]) -> Subsemimodule {
    let mask = close_mask(m, vec![false; m.len()], seed.iter().copied());
    Subsemimodule::from_closed(m.clone(), mask_members(&mask))
}

/// `{ m | m + l = l' for some l, l' in L }` for a closed `members` set.
fn closure_members(m: &Semimodule, members: &[usize]) -> Vec<usize> {
    let mask = to_mask(m.len(), members);
    m.elements()
        .filter(|&x| members.iter().any(|&l| mask[m.add(x, l)]))
        .collect()
}

pub fn subtractive_closure(l: &Subsemimodule) -> Subsemimodule {
    let members = closure_members(l.parent(), l.members());
    Subsemimodule {
        parent: l.parent.clone(),
        members,
        subtractive: true,
    }
}

/// All subsemimodules in canonical order (by size, then member list),
/// optionally restricted to subtractive ones.
///
/// Closed sets are discovered by closing each known set with one more
/// element; every closed set is reachable that way from `{0}`.
pub fn enumerate_subsemimodules(
    m: &Arc<Semimodule>,
    subtractive_only: bool,
    limits: &Limits,
) -> Result<Vec<Subsemimodule>> {
    let budget = Budget::new(limits);
    let bottom = close_mask(m, vec![false; m.len()], []);
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut frontier = vec![bottom.clone()];
    seen.insert(bottom);
    while let Some(mask) = frontier.pop() {
        for x in m.elements().filter(|&x| !mask[x]) {
            budget.spend(1)?;
            let next = close_mask(m, mask.clone(), [x]);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let mut out: Vec<Subsemimodule> = seen
        .into_iter()
        .map(|mask| Subsemimodule::from_closed(m.clone(), mask_members(&mask)))
        .filter(|l| !subtractive_only || l.is_subtractive())
        .collect();
    out.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Semiring;

    fn s3() -> Arc<Semimodule> {
        let s = Semiring::new(
            "S3",
            vec!["0".into(), "1".into(), "a".into()],
            0,
            1,
            vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 2]],
            vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]],
        )
        .unwrap();
        Arc::new(Semimodule::regular(&Arc::new(s)))
    }

    fn saturating() -> Arc<Semimodule> {
        let s = Semiring::new(
            "N2",
            vec!["0".into(), "1".into(), "2".into()],
            0,
            1,
            vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]],
            vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]],
        )
        .unwrap();
        Arc::new(Semimodule::regular(&Arc::new(s)))
    }

    #[test]
    fn generated_examples() {
        let m = s3();
        assert_eq!(generated_subsemimodule(&m, &[2]).members(), &[0, 2]);
        assert_eq!(generated_subsemimodule(&m, &[]).members(), &[0]);
        assert_eq!(generated_subsemimodule(&m, &[1]).members(), &[0, 1, 2]);
    }

    #[test]
    fn ideals_of_three_element_semiring() {
        let m = s3();
        let subs = enumerate_subsemimodules(&m, false, &Limits::default()).unwrap();
        let members: Vec<_> = subs.iter().map(|l| l.members().to_vec()).collect();
        assert_eq!(members, vec![vec![0], vec![0, 2], vec![0, 1, 2]]);
        assert!(subs.iter().all(Subsemimodule::is_subtractive));
    }

    #[test]
    fn closure_in_saturating_truncation() {
        let m = saturating();
        let l = Subsemimodule::new(&m, [0, 2]).unwrap();
        assert!(!l.is_subtractive());
        assert_eq!(subtractive_closure(&l).members(), &[0, 1, 2]);
        let subs = enumerate_subsemimodules(&m, true, &Limits::default()).unwrap();
        let members: Vec<_> = subs.iter().map(|l| l.members().to_vec()).collect();
        assert_eq!(members, vec![vec![0], vec![0, 1, 2]]);
    }

    #[test]
    fn zero_closure_in_zerosumfree() {
        let m = s3();
        let z = Subsemimodule::zero(&m);
        assert_eq!(subtractive_closure(&z).members(), &[0]);
        let a = Subsemimodule::new(&m, [0, 2]).unwrap();
        assert_eq!(subtractive_closure(&a).members(), &[0, 2]);
    }

    #[test]
    fn rejects_non_closed_subset() {
        let m = s3();
        assert!(Subsemimodule::new(&m, [0, 1]).is_err());
        assert!(Subsemimodule::new(&m, [2]).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let m = s3();
        let err = enumerate_subsemimodules(&m, false, &Limits::with_cap(1)).unwrap_err();
        assert_eq!(err, Error::SearchCapExceeded { cap: 1 });
    }

    #[test]
    fn materialized_inclusion_is_linear() {
        let m = s3();
        let l = Subsemimodule::new(&m, [0, 2]).unwrap();
        let (sub, incl) = l.materialize("S3a");
        assert_eq!(sub.labels(), &["0".to_string(), "a".to_string()]);
        crate::morphism::check_linear(&sub, &m, incl.images().to_vec()).unwrap();
    }
}
