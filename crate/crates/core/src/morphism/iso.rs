use std::sync::Arc;

use super::hom::enumerate_homs;
use super::linear::{check_linear, LinearMap};
use crate::algebra::Semimodule;
use crate::error::Result;
use crate::limits::Limits;

/// First bijective linear map `A -> B` in canonical order, with its inverse.
pub fn find_isomorphism(
    a: &Arc<Semimodule>,
    b: &Arc<Semimodule>,
    limits: &Limits,
) -> Result<Option<(LinearMap, LinearMap)>> {
    if a.len() != b.len() || !a.same_base(b) {
        return Ok(None);
    }
    for f in enumerate_homs(a, b, limits)? {
        if !f.is_injective() {
            continue;
        }
        let mut inv = vec![0; b.len()];
        for x in a.elements() {
            inv[f.apply(x)] = x;
        }
        // bijective homomorphisms of algebras have homomorphic inverses; the
        // check keeps that a computed fact
        let g = check_linear(b, a, inv)?;
        return Ok(Some((f, g)));
    }
    Ok(None)
}

pub fn are_isomorphic(a: &Arc<Semimodule>, b: &Arc<Semimodule>, limits: &Limits) -> Result<bool> {
    Ok(find_isomorphism(a, b, limits)?.is_some())
}
