//! Finite semirings and semimodules as validated table algebras.

mod product;
mod properties;
mod quotient;
mod semimodule;
mod semiring;
mod subsemimodule;

pub use product::{direct_product, Product};
pub use properties::{is_divisible, is_ideal_simple};
pub use quotient::{congruence_closure, quotient_by_classes, quotient_semimodule, Quotient};
pub use semimodule::{cancellative_subset, is_cancellative, validate_semimodule, RawSemimodule, Semimodule};
pub use semiring::{counting_semiring, is_zerosumfree, validate_semiring, zero_sums, RawSemiring, Semiring};
pub use subsemimodule::{
    enumerate_subsemimodules, generated_subsemimodule, subtractive_closure, Subsemimodule,
};
