#![allow(dead_code)]

use std::sync::Arc;

use semilab::algebra::{direct_product, quotient_semimodule, Semimodule, Semiring, Subsemimodule};
use semilab::morphism::LinearMap;
use semilab::Limits;

fn labels(ls: &[&str]) -> Vec<String> {
    ls.iter().map(|s| s.to_string()).collect()
}

fn ring(name: &str, ls: &[&str], add: impl Fn(usize, usize) -> usize, mul: impl Fn(usize, usize) -> usize) -> Arc<Semiring> {
    let n = ls.len();
    let t = |op: &dyn Fn(usize, usize) -> usize| (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
    Arc::new(Semiring::new(name, labels(ls), 0, 1, t(&add), t(&mul)).unwrap())
}

pub fn boolean() -> Arc<Semiring> {
    ring("B", &["0", "1"], |a, b| a | b, |a, b| a & b)
}

/// `{0, 1, a}` with `1` absorbing under addition and `a` idempotent.
pub fn s3() -> Arc<Semiring> {
    ring(
        "S3",
        &["0", "1", "a"],
        |a, b| match (a, b) {
            (0, x) | (x, 0) => x,
            (2, 2) => 2,
            _ => 1,
        },
        |a, b| match (a, b) {
            (0, _) | (_, 0) => 0,
            (1, 1) => 1,
            _ => 2,
        },
    )
}

/// `{0, 1, 2}` with sums and products cut off at 2.
pub fn saturating() -> Arc<Semiring> {
    ring("N2", &["0", "1", "2"], |a, b| (a + b).min(2), |a, b| (a * b).min(2))
}

/// The chain `0 < m < 1` under max and min; index 1 is the top.
pub fn chain() -> Arc<Semiring> {
    // indices: 0 -> 0, 1 -> 1 (top), 2 -> m
    let rank = |x: usize| [0, 2, 1][x];
    let back = |r: usize| [0, 2, 1][r];
    ring(
        "L3",
        &["0", "1", "m"],
        move |a, b| back(rank(a).max(rank(b))),
        move |a, b| back(rank(a).min(rank(b))),
    )
}

pub fn rings() -> Vec<Arc<Semiring>> {
    vec![boolean(), s3(), saturating(), chain()]
}

pub fn regular(r: &Arc<Semiring>) -> Arc<Semimodule> {
    Arc::new(Semimodule::regular(r))
}

pub fn sub(m: &Arc<Semimodule>, members: &[usize]) -> (Arc<Semimodule>, LinearMap) {
    let l = Subsemimodule::new(m, members.iter().copied()).unwrap();
    l.materialize(l.display())
}

pub fn quotient(m: &Arc<Semimodule>, members: &[usize]) -> (Arc<Semimodule>, LinearMap) {
    let q = quotient_semimodule(&Subsemimodule::new(m, members.iter().copied()).unwrap());
    (q.module, q.projection)
}

pub fn product(a: &Arc<Semimodule>, b: &Arc<Semimodule>) -> Arc<Semimodule> {
    direct_product(&[a.clone(), b.clone()], &Limits::default()).unwrap().module
}

pub fn zero(r: &Arc<Semiring>) -> Arc<Semimodule> {
    Arc::new(Semimodule::zero_module(r, "0"))
}

/// Small modules over `r`: the regular module, its subsemimodules and
/// quotients, the zero module and the square of the regular module when it
/// is small.
pub fn pool(r: &Arc<Semiring>) -> Vec<Arc<Semimodule>> {
    let reg = regular(r);
    let mut out = vec![zero(r), reg.clone()];
    for l in semilab::algebra::enumerate_subsemimodules(&reg, false, &Limits::default()).unwrap() {
        if !l.is_zero() && !l.is_whole() {
            out.push(l.materialize(l.display()).0);
            out.push(quotient_semimodule(&l).module);
        }
    }
    if reg.len() <= 2 {
        out.push(product(&reg, &reg));
    }
    out
}
