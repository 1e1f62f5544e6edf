//! Linear maps, Hom sets and the constructions built from them.

mod change;
mod hom;
mod iso;
mod linear;
mod universal;

pub use change::{
    check_semiring_morphism, induced_hom_module, restrict_scalars, InducedHomModule,
    SemiringMorphism,
};
pub use hom::{
    enumerate_homs, enumerate_homs_with, generating_set, hom_monoid, hom_monoids, precomposition,
    HomMonoid, HomStrategy, BRUTE_FORCE_THRESHOLD,
};
pub use iso::{are_isomorphic, find_isomorphism};
pub(crate) use linear::k_normal_witness;
pub use linear::{
    check_linear, compose, image, is_i_normal, is_k_normal, is_normal, kernel, normality,
    LinearMap, NormalityVerdict,
};
pub use universal::{pullback, pushout, Pullback, Pushout};
