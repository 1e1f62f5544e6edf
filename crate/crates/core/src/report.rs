//! Serializable verdicts shared by every decision procedure.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Verdict {
    Bool(bool),
    Classes(Vec<String>),
}

/// A labelled tuple of elements or maps that replays a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub values: Vec<String>,
}

impl Witness {
    pub fn new(label: impl Into<String>, values: Vec<String>) -> Self {
        Witness {
            label: label.into(),
            values,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub procedure: String,
    pub inputs: Vec<String>,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub statistics: BTreeMap<String, u64>,
    pub citation: String,
}

impl Report {
    pub fn new(procedure: impl Into<String>, inputs: Vec<String>, verdict: Verdict) -> Self {
        Report {
            procedure: procedure.into(),
            inputs,
            verdict,
            witnesses: Vec::new(),
            statistics: BTreeMap::new(),
            citation: String::new(),
        }
    }

    pub fn boolean(procedure: impl Into<String>, inputs: Vec<String>, holds: bool) -> Self {
        Self::new(procedure, inputs, Verdict::Bool(holds))
    }

    pub fn witness(mut self, label: impl Into<String>, values: Vec<String>) -> Self {
        self.witnesses.push(Witness::new(label, values));
        self
    }

    pub fn stat(mut self, key: impl Into<String>, value: u64) -> Self {
        self.statistics.insert(key.into(), value);
        self
    }

    pub fn cite(mut self, citation: impl Into<String>) -> Self {
        self.citation = citation.into();
        self
    }

    /// `true` for a positive boolean verdict; classification verdicts count
    /// as holding.
    pub fn holds(&self) -> bool {
        match &self.verdict {
            Verdict::Bool(b) => *b,
            Verdict::Classes(_) => true,
        }
    }

    pub fn find_witness(&self, label: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.label == label)
    }
}
