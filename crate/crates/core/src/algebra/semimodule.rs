use std::fmt;
use std::sync::Arc;

use super::semiring::{label_index, resolve_table, Semiring};
use crate::error::{AxiomViolation, Error, Law, Result};

/// Semimodule tables with element labels. `act` has one row per element of
/// the base semiring, in the semiring's declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSemimodule {
    pub name: String,
    pub elements: Vec<String>,
    pub zero: String,
    pub add: Vec<Vec<String>>,
    pub act: Vec<Vec<String>>,
}

/// A validated finite left semimodule over a shared base semiring.
#[derive(Clone, PartialEq, Eq)]
pub struct Semimodule {
    name: String,
    ring: Arc<Semiring>,
    labels: Vec<String>,
    zero: usize,
    add: Vec<usize>,
    /// `act[s * n + m] = s . m`
    act: Vec<usize>,
}

impl fmt::Debug for Semimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Semimodule({} over {}, {{{}}})",
            self.name,
            self.ring.name(),
            self.labels.join(",")
        )
    }
}

pub fn validate_semimodule(ring: &Arc<Semiring>, raw: &RawSemimodule) -> Result<Semimodule> {
    if raw.elements.is_empty() {
        return Err(Error::Shape("empty carrier".into()));
    }
    let index = label_index(&raw.elements)?;
    let zero = *index
        .get(raw.zero.as_str())
        .ok_or_else(|| Error::UnknownElement(raw.zero.clone()))?;
    let mut closure = Vec::new();
    let add = resolve_table("add", &raw.add, &raw.elements, &raw.elements, &index, &mut closure)?;
    let act = resolve_table(
        "act",
        &raw.act,
        ring.labels(),
        &raw.elements,
        &index,
        &mut closure,
    )?;
    if !closure.is_empty() {
        return Err(Error::Axioms(closure));
    }
    Semimodule::from_flat(raw.name.clone(), ring.clone(), raw.elements.clone(), zero, add, act)
}

impl Semimodule {
    /// Builds and validates a semimodule from index tables given row by row.
    pub fn new(
        name: impl Into<String>,
        ring: Arc<Semiring>,
        labels: Vec<String>,
        zero: usize,
        add: Vec<Vec<usize>>,
        act: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = labels.len();
        if add.len() != n || add.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("add table is not {n}x{n}")));
        }
        if act.len() != ring.len() || act.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!(
                "act table is not {}x{n}",
                ring.len()
            )));
        }
        Self::from_flat(name.into(), ring, labels, zero, add.concat(), act.concat())
    }

    pub(crate) fn from_flat(
        name: String,
        ring: Arc<Semiring>,
        labels: Vec<String>,
        zero: usize,
        add: Vec<usize>,
        act: Vec<usize>,
    ) -> Result<Self> {
        let m = Self::shaped(name, ring, labels, zero, add, act)?;
        let v = m.violations();
        if v.is_empty() {
            Ok(m)
        } else {
            Err(Error::Axioms(v))
        }
    }

    /// Shape-checked but law-unchecked construction for internally derived
    /// objects (quotients, products, subobjects) whose laws are inherited.
    pub(crate) fn unchecked(
        name: String,
        ring: Arc<Semiring>,
        labels: Vec<String>,
        zero: usize,
        add: Vec<usize>,
        act: Vec<usize>,
    ) -> Result<Self> {
        let m = Self::shaped(name, ring, labels, zero, add, act)?;
        debug_assert!(m.violations().is_empty(), "{:?}", m.violations());
        Ok(m)
    }

    fn shaped(
        name: String,
        ring: Arc<Semiring>,
        labels: Vec<String>,
        zero: usize,
        add: Vec<usize>,
        act: Vec<usize>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Shape("empty carrier".into()));
        }
        label_index(&labels)?;
        if zero >= n {
            return Err(Error::Shape("zero out of range".into()));
        }
        if add.len() != n * n || act.len() != ring.len() * n {
            return Err(Error::Shape("table size mismatch".into()));
        }
        if let Some(&bad) = add.iter().chain(act.iter()).find(|&&e| e >= n) {
            return Err(Error::Axioms(vec![AxiomViolation {
                law: Law::Closure,
                witness: vec![bad.to_string()],
            }]));
        }
        let m = Semimodule {
            name,
            ring,
            labels,
            zero,
            add,
            act,
        };
        Ok(m)
    }

    fn violations(&self) -> Vec<AxiomViolation> {
        let n = self.len();
        let r = &*self.ring;
        let z = self.zero;
        let mut out: Vec<AxiomViolation> = Vec::new();
        let mut report = |law: Law, w: Vec<String>| {
            if !out.iter().any(|v| v.law == law) {
                out.push(AxiomViolation { law, witness: w });
            }
        };
        let l = |i: usize| self.labels[i].clone();
        let sl = |i: usize| r.label(i).to_string();
        for a in 0..n {
            if self.add(z, a) != a || self.add(a, z) != a {
                report(Law::AddIdentity, vec![l(a)]);
            }
            if self.act(r.one(), a) != a {
                report(Law::ActionIdentity, vec![l(a)]);
            }
            if self.act(r.zero(), a) != z {
                report(Law::ActionZeroScalar, vec![l(a)]);
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    report(Law::AddCommutativity, vec![l(a), l(b)]);
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        report(Law::AddAssociativity, vec![l(a), l(b), l(c)]);
                    }
                }
                for s in r.elements() {
                    if self.act(s, self.add(a, b)) != self.add(self.act(s, a), self.act(s, b)) {
                        report(Law::ActionOverModuleSum, vec![sl(s), l(a), l(b)]);
                    }
                }
            }
        }
        for s in r.elements() {
            if self.act(s, z) != z {
                report(Law::ActionZeroVector, vec![sl(s)]);
            }
            for t in r.elements() {
                for a in 0..n {
                    if self.act(r.add(s, t), a) != self.add(self.act(s, a), self.act(t, a)) {
                        report(Law::ActionOverScalarSum, vec![sl(s), sl(t), l(a)]);
                    }
                    if self.act(r.mul(s, t), a) != self.act(s, self.act(t, a)) {
                        report(Law::ActionAssociativity, vec![sl(s), sl(t), l(a)]);
                    }
                }
            }
        }
        out
    }

    /// The base semiring acting on itself by left multiplication.
    pub fn regular(ring: &Arc<Semiring>) -> Semimodule {
        let n = ring.len();
        let add = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| ring.add(a, b))
            .collect();
        let act = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| ring.mul(a, b))
            .collect();
        Semimodule {
            name: ring.name().to_string(),
            ring: ring.clone(),
            labels: ring.labels().to_vec(),
            zero: ring.zero(),
            add,
            act,
        }
    }

    pub fn zero_module(ring: &Arc<Semiring>, name: impl Into<String>) -> Semimodule {
        Semimodule {
            name: name.into(),
            ring: ring.clone(),
            labels: vec!["0".into()],
            zero: 0,
            add: vec![0],
            act: vec![0; ring.len()],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn ring(&self) -> &Arc<Semiring> {
        &self.ring
    }

    pub fn same_base(&self, other: &Semimodule) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_zero_module(&self) -> bool {
        self.labels.len() == 1
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.labels.len() + b]
    }

    #[inline]
    pub fn act(&self, s: usize, m: usize) -> usize {
        self.act[s * self.labels.len() + m]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.labels.len()
    }

    pub fn add_table(&self) -> &[usize] {
        &self.add
    }

    /// `{ s.m | s in S }` for each m, used by closure computations.
    pub(crate) fn orbit(&self, m: usize) -> impl Iterator<Item = usize> + '_ {
        self.ring.elements().map(move |s| self.act(s, m))
    }
}

/// `K+(M)`: elements `m` with `m + x = m + y  =>  x = y`.
pub fn cancellative_subset(m: &Semimodule) -> Vec<usize> {
    m.elements()
        .filter(|&a| {
            let mut seen = vec![false; m.len()];
            m.elements().all(|x| !std::mem::replace(&mut seen[m.add(a, x)], true))
        })
        .collect()
}

pub fn is_cancellative(m: &Semimodule) -> bool {
    cancellative_subset(m).len() == m.len()
}
