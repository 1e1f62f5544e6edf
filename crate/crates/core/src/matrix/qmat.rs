use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A 2x2 matrix over the non-negative rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMat([BigRational; 4]);

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QMat {
    /// `[[a, b], [c, d]]`; rejects negative entries.
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Result<Self> {
        let m = QMat([a, b, c, d]);
        if let Some(e) = m.0.iter().find(|e| e.is_negative()) {
            return Err(Error::Domain(format!("negative entry {e}")));
        }
        Ok(m)
    }

    /// Integer entries, for fixtures.
    pub fn ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        QMat::new(qi(a), qi(b), qi(c), qi(d)).expect("non-negative fixture")
    }

    pub fn zero() -> Self {
        QMat::ints(0, 0, 0, 0)
    }

    pub fn identity() -> Self {
        QMat::ints(1, 0, 0, 1)
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigRational {
        &self.0[2 * row + col]
    }

    pub fn entries(&self) -> &[BigRational; 4] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &QMat) -> QMat {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &other.0;
        QMat([a + e, b + f, c + g, d + h])
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &other.0;
        QMat([
            a * e + b * g,
            a * f + b * h,
            c * e + d * g,
            c * f + d * h,
        ])
    }

    pub fn scale(&self, k: &BigRational) -> QMat {
        let [a, b, c, d] = &self.0;
        QMat([k * a, k * b, k * c, k * d])
    }
}

impl fmt::Display for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatOp {
    Add,
    Mul,
}

pub fn mat_op(op: MatOp, a: &QMat, b: &QMat) -> QMat {
    match op {
        MatOp::Add => a.add(b),
        MatOp::Mul => a.mul(b),
    }
}
