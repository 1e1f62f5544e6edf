mod common;

use std::sync::Arc;

use common::*;
use semilab::algebra::{Semimodule, Semiring};
use semilab::injectivity::decide_i_injective;
use semilab::morphism::{check_semiring_morphism, induced_hom_module, restrict_scalars, SemiringMorphism};
use semilab::Limits;

fn unit_map(t: &Arc<Semiring>, s: &Arc<Semiring>) -> SemiringMorphism {
    check_semiring_morphism(t, s, vec![s.zero(), s.one()]).unwrap()
}

/// If `A` is i-injective relative to `M` viewed over `T`, then
/// `Hom_T(S, A)` is i-injective relative to `M` over `S`.
fn check(gamma: &SemiringMorphism, t_modules: &[Arc<Semimodule>], s_modules: &[Arc<Semimodule>]) -> (usize, usize) {
    let limits = Limits::default();
    let (mut premises, mut total) = (0, 0);
    for a in t_modules {
        let hom = induced_hom_module(gamma, a, &limits).unwrap();
        for m in s_modules {
            total += 1;
            let m_over_t = Arc::new(restrict_scalars(gamma, m).unwrap());
            if decide_i_injective(a, &m_over_t, &limits).unwrap().verdict {
                premises += 1;
                assert!(
                    decide_i_injective(&hom.module, m, &limits).unwrap().verdict,
                    "Hom_T(S, {}) relative to {}",
                    a.name(),
                    m.name()
                );
            }
        }
    }
    (premises, total)
}

#[test]
fn identity_change_of_rings() {
    for r in rings() {
        let (p, _) = check(&SemiringMorphism::identity(&r), &pool(&r), &pool(&r));
        assert!(p > 0);
    }
}

#[test]
fn boolean_into_s3_and_chain() {
    let b = boolean();
    for s in [s3(), chain()] {
        let (p, total) = check(&unit_map(&b, &s), &pool(&b), &pool(&s));
        assert!(p > 0 && total > 0);
    }
}

#[test]
fn identity_gives_back_the_module() {
    let limits = Limits::default();
    for r in rings() {
        for a in pool(&r) {
            let hom = induced_hom_module(&SemiringMorphism::identity(&r), &a, &limits).unwrap();
            assert!(semilab::morphism::are_isomorphic(&hom.module, &a, &limits).unwrap(), "{}", a.name());
        }
    }
}
