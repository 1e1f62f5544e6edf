use std::fmt;

use thiserror::Error;

/// Named algebraic law, used to label axiom violations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    Closure,
    AddAssociativity,
    AddCommutativity,
    AddIdentity,
    MulAssociativity,
    MulIdentity,
    ZeroNeOne,
    Absorption,
    LeftDistributivity,
    RightDistributivity,
    ActionOverModuleSum,
    ActionOverScalarSum,
    ActionAssociativity,
    ActionIdentity,
    ActionZeroScalar,
    ActionZeroVector,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::Closure => "closure",
            Law::AddAssociativity => "add-associativity",
            Law::AddCommutativity => "add-commutativity",
            Law::AddIdentity => "add-identity",
            Law::MulAssociativity => "mul-associativity",
            Law::MulIdentity => "mul-identity",
            Law::ZeroNeOne => "zero-ne-one",
            Law::Absorption => "absorption",
            Law::LeftDistributivity => "left-distributivity",
            Law::RightDistributivity => "right-distributivity",
            Law::ActionOverModuleSum => "action-over-module-sum",
            Law::ActionOverScalarSum => "action-over-scalar-sum",
            Law::ActionAssociativity => "action-associativity",
            Law::ActionIdentity => "action-identity",
            Law::ActionZeroScalar => "action-zero-scalar",
            Law::ActionZeroVector => "action-zero-vector",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failed law together with the element tuple that breaks it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub law: Law,
    pub witness: Vec<String>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (witness: {})", self.law, self.witness.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearityLaw {
    Zero,
    Additivity,
    Action,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearityViolation {
    pub law: LinearityLaw,
    /// Human readable element tuple, e.g. `["a", "1"]` for `f(a*1) != a*f(1)`.
    pub witness: Vec<String>,
}

impl fmt::Display for LinearityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let law = match self.law {
            LinearityLaw::Zero => "zero",
            LinearityLaw::Additivity => "additivity",
            LinearityLaw::Action => "action",
        };
        write!(f, "{law} (witness: {})", self.witness.join(", "))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("axiom violations: {}", join_violations(.0))]
    Axioms(Vec<AxiomViolation>),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("linearity violation: {0}")]
    Linearity(LinearityViolation),
    #[error("search cap of {cap} candidates exceeded")]
    SearchCapExceeded { cap: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("domain error: {0}")]
    Domain(String),
    /// A sampled instance contradicts an identity that must hold.
    #[error("sample violation: {0}")]
    SampleViolation(String),
}

fn join_violations(v: &[AxiomViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

impl Error {
    /// Violations carried by an `Axioms` error, empty otherwise.
    pub fn violations(&self) -> &[AxiomViolation] {
        match self {
            Error::Axioms(v) => v,
            _ => &[],
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
