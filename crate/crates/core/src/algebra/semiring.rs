use std::collections::HashMap;
use std::fmt;

use crate::error::{AxiomViolation, Error, Law, Result};

/// Semiring tables as they come out of a parser: element labels everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSemiring {
    pub name: String,
    pub elements: Vec<String>,
    pub zero: String,
    pub one: String,
    pub add: Vec<Vec<String>>,
    pub mul: Vec<Vec<String>>,
}

/// A validated finite semiring. Elements are dense indices in declaration
/// order; the zero need not be index 0.
#[derive(Clone, PartialEq, Eq)]
pub struct Semiring {
    name: String,
    labels: Vec<String>,
    zero: usize,
    one: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl fmt::Debug for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Semiring({}, {{{}}})", self.name, self.labels.join(","))
    }
}

pub(crate) fn label_index(labels: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(Error::DuplicateElement(l.clone()));
        }
    }
    Ok(index)
}

/// Resolves a square label table. Entries outside the carrier become closure
/// violations rather than hard errors.
pub(crate) fn resolve_table(
    what: &str,
    table: &[Vec<String>],
    rows: &[String],
    cols: &[String],
    index: &HashMap<&str, usize>,
    closure: &mut Vec<AxiomViolation>,
) -> Result<Vec<usize>> {
    if table.len() != rows.len() {
        return Err(Error::Shape(format!(
            "{what} table has {} rows, expected {}",
            table.len(),
            rows.len()
        )));
    }
    let mut out = Vec::with_capacity(rows.len() * cols.len());
    for (r, row) in table.iter().enumerate() {
        if row.len() != cols.len() {
            return Err(Error::Shape(format!(
                "{what} table row {} has {} entries, expected {}",
                r + 1,
                row.len(),
                cols.len()
            )));
        }
        for (c, entry) in row.iter().enumerate() {
            match index.get(entry.as_str()) {
                Some(&i) => out.push(i),
                None => {
                    closure.push(AxiomViolation {
                        law: Law::Closure,
                        witness: vec![
                            format!("{what}({}, {}) = {entry}", rows[r], cols[c]),
                        ],
                    });
                    out.push(usize::MAX);
                }
            }
        }
    }
    Ok(out)
}

/// Validates raw semiring tables, reporting every violated law with the first
/// witness found for it.
pub fn validate_semiring(raw: &RawSemiring) -> Result<Semiring> {
    if raw.elements.is_empty() {
        return Err(Error::Shape("empty carrier".into()));
    }
    let index = label_index(&raw.elements)?;
    let zero = *index
        .get(raw.zero.as_str())
        .ok_or_else(|| Error::UnknownElement(raw.zero.clone()))?;
    let one = *index
        .get(raw.one.as_str())
        .ok_or_else(|| Error::UnknownElement(raw.one.clone()))?;
    let mut closure = Vec::new();
    let add = resolve_table("add", &raw.add, &raw.elements, &raw.elements, &index, &mut closure)?;
    let mul = resolve_table("mul", &raw.mul, &raw.elements, &raw.elements, &index, &mut closure)?;
    if !closure.is_empty() {
        return Err(Error::Axioms(closure));
    }
    Semiring::from_flat(raw.name.clone(), raw.elements.clone(), zero, one, add, mul)
}

impl Semiring {
    /// Builds and validates a semiring from index tables given row by row.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        zero: usize,
        one: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = labels.len();
        for (what, t) in [("add", &add), ("mul", &mul)] {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                return Err(Error::Shape(format!("{what} table is not {n}x{n}")));
            }
        }
        Self::from_flat(
            name.into(),
            labels,
            zero,
            one,
            add.concat(),
            mul.concat(),
        )
    }

    pub(crate) fn from_flat(
        name: String,
        labels: Vec<String>,
        zero: usize,
        one: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Shape("empty carrier".into()));
        }
        label_index(&labels)?;
        if zero >= n || one >= n {
            return Err(Error::Shape("zero or one out of range".into()));
        }
        if add.len() != n * n || mul.len() != n * n {
            return Err(Error::Shape(format!("tables must be {n}x{n}")));
        }
        if let Some(&bad) = add.iter().chain(mul.iter()).find(|&&e| e >= n) {
            return Err(Error::Axioms(vec![AxiomViolation {
                law: Law::Closure,
                witness: vec![bad.to_string()],
            }]));
        }
        let s = Semiring {
            name,
            labels,
            zero,
            one,
            add,
            mul,
        };
        let violations = s.violations();
        if violations.is_empty() {
            Ok(s)
        } else {
            Err(Error::Axioms(violations))
        }
    }

    fn violations(&self) -> Vec<AxiomViolation> {
        let n = self.len();
        let (z, o) = (self.zero, self.one);
        let mut out = Vec::new();
        let mut report = |law: Law, w: &[usize]| {
            if !out.iter().any(|v: &AxiomViolation| v.law == law) {
                out.push(AxiomViolation {
                    law,
                    witness: w.iter().map(|&i| self.labels[i].clone()).collect(),
                });
            }
        };
        if z == o {
            report(Law::ZeroNeOne, &[z]);
        }
        for a in 0..n {
            if self.add(z, a) != a || self.add(a, z) != a {
                report(Law::AddIdentity, &[a]);
            }
            if self.mul(o, a) != a || self.mul(a, o) != a {
                report(Law::MulIdentity, &[a]);
            }
            if self.mul(z, a) != z || self.mul(a, z) != z {
                report(Law::Absorption, &[a]);
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    report(Law::AddCommutativity, &[a, b]);
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        report(Law::AddAssociativity, &[a, b, c]);
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        report(Law::MulAssociativity, &[a, b, c]);
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        report(Law::LeftDistributivity, &[a, b, c]);
                    }
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        report(Law::RightDistributivity, &[a, b, c]);
                    }
                }
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.labels.len() + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.labels.len() + b]
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

    /// `s` is a zero divisor when `s = 0` or `st = 0` or `ts = 0` for some
    /// non-zero `t`.
    pub fn is_zero_divisor(&self, s: usize) -> bool {
        s == self.zero
            || self
                .elements()
                .filter(|&t| t != self.zero)
                .any(|t| self.mul(s, t) == self.zero || self.mul(t, s) == self.zero)
    }

    pub fn is_additively_idempotent(&self) -> bool {
        self.elements().all(|a| self.add(a, a) == a)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// `V(S)`: the elements with an additive inverse.
pub fn zero_sums(s: &Semiring) -> Vec<usize> {
    s.elements()
        .filter(|&a| s.elements().any(|t| s.add(a, t) == s.zero()))
        .collect()
}

pub fn is_zerosumfree(s: &Semiring) -> bool {
    zero_sums(s) == vec![s.zero()]
}

/// The truncated counting semiring `Z+ / (t = t + p)` with elements
/// `0, 1, ..., t + p - 1`. Any finite commutative monoid is a semimodule over
/// it once `t` and `p` bound the index and period of every element.
pub fn counting_semiring(index: usize, period: usize) -> Semiring {
    let index = index.max(1);
    let period = period.max(1);
    let n = index + period;
    let reduce = |v: usize| {
        if v < n {
            v
        } else {
            index + (v - index) % period
        }
    };
    let labels = (0..n).map(|i| i.to_string()).collect();
    let add = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| reduce(a + b))
        .collect();
    let mul = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| reduce(a * b))
        .collect();
    Semiring {
        name: format!("Zplus_t{index}_p{period}"),
        labels,
        zero: 0,
        one: 1,
        add,
        mul,
    }
}
