//! Exact-rational replay of the 2x2 matrix counterexample over the
//! non-negative rationals.

mod demo;
mod ideal;
mod qmat;

pub use demo::{matrix_demo, verify_counterexample_n1, DEFAULT_SAMPLES, DEFAULT_SEED};
pub use ideal::{check_subtractive_samples, i_inj_extension, ideal_member, IdealTag};
pub use qmat::{mat_op, q, qi, MatOp, QMat};
