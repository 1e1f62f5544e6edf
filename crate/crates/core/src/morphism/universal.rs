use std::sync::Arc;

use super::linear::{compose, is_normal, LinearMap};
use crate::algebra::{congruence_closure, direct_product, quotient_by_classes, Semimodule, Subsemimodule};
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Clone, Debug)]
pub struct Pullback {
    pub object: Arc<Semimodule>,
    /// First-component projection `U -> source(q)`.
    pub f_prime: LinearMap,
    /// Second-component projection `U -> source(f)`.
    pub q_prime: LinearMap,
    /// Whether `f_prime` is an injective normal map, computed on the result.
    pub f_prime_normal_mono: bool,
}

/// `U = {(m, k) | q(m) = f(k)}` inside `source(q) x source(f)`.
pub fn pullback(q: &LinearMap, f: &LinearMap, limits: &Limits) -> Result<Pullback> {
    if q.target().as_ref() != f.target().as_ref() {
        return Err(Error::Shape("pullback needs a common target".into()));
    }
    let prod = direct_product(&[q.source().clone(), f.source().clone()], limits)?;
    let members: Vec<usize> = q
        .source()
        .elements()
        .flat_map(|m| {
            f.source()
                .elements()
                .filter(move |&k| q.apply(m) == f.apply(k))
                .map(move |k| (m, k))
        })
        .map(|(m, k)| prod.index_of(&[m, k]))
        .collect();
    let sub = Subsemimodule::new(&prod.module, members)?;
    let name = format!("{}x_{}{}", q.source().name(), q.target().name(), f.source().name());
    let (object, incl) = sub.materialize(name);
    let f_prime = compose(&prod.projections[0], &incl)?;
    let q_prime = compose(&prod.projections[1], &incl)?;
    let f_prime_normal_mono = f_prime.is_injective() && is_normal(&f_prime);
    Ok(Pullback {
        object,
        f_prime,
        q_prime,
        f_prime_normal_mono,
    })
}

#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: Arc<Semimodule>,
    /// `target(f) -> P`
    pub g_prime: LinearMap,
    /// `target(g) -> P`
    pub f_prime: LinearMap,
}

/// `(M x N) / ~` with `~` generated by `(f(l), 0) ~ (0, g(l))`.
pub fn pushout(f: &LinearMap, g: &LinearMap, limits: &Limits) -> Result<Pushout> {
    if f.source().as_ref() != g.source().as_ref() {
        return Err(Error::Shape("pushout needs a common source".into()));
    }
    let (m, n) = (f.target(), g.target());
    let prod = direct_product(&[m.clone(), n.clone()], limits)?;
    limits.check(prod.module.len().saturating_mul(prod.module.len()))?;
    let pairs: Vec<(usize, usize)> = f
        .source()
        .elements()
        .map(|l| {
            (
                prod.index_of(&[f.apply(l), n.zero()]),
                prod.index_of(&[m.zero(), g.apply(l)]),
            )
        })
        .collect();
    let classes = congruence_closure(&prod.module, &pairs);
    let name = format!("{}+_{}{}", m.name(), f.source().name(), n.name());
    let quot = quotient_by_classes(&prod.module, &classes, name);
    let g_prime = compose(&quot.projection, &prod.injections[0])?;
    let f_prime = compose(&quot.projection, &prod.injections[1])?;
    Ok(Pushout {
        object: quot.module,
        g_prime,
        f_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{quotient_semimodule, Semiring};
    use crate::morphism::check_linear;

    fn s3() -> Arc<Semimodule> {
        let s = Semiring::new(
            "S3",
            vec!["0".into(), "1".into(), "a".into()],
            0,
            1,
            vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 2]],
            vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]],
        )
        .unwrap();
        Arc::new(Semimodule::regular(&Arc::new(s)))
    }

    #[test]
    fn pullback_of_projection_along_iso() {
        let m = s3();
        let l = Subsemimodule::new(&m, [0, 2]).unwrap();
        let q = quotient_semimodule(&l);
        // the quotient is {[0],[1]}; pull back along its identity
        let f = LinearMap::identity(&q.module);
        let pb = pullback(&q.projection, &f, &Limits::default()).unwrap();
        assert_eq!(pb.object.len(), 3);
        assert!(pb.f_prime.is_injective() && pb.f_prime.is_surjective());
        assert_eq!(
            compose(&q.projection, &pb.f_prime).unwrap().images(),
            compose(&f, &pb.q_prime).unwrap().images()
        );
    }

    #[test]
    fn pullback_of_zero_maps_is_product() {
        let m = s3();
        let z = LinearMap::zero(&m, &m);
        let pb = pullback(&z, &z, &Limits::default()).unwrap();
        assert_eq!(pb.object.len(), 9);
    }

    #[test]
    fn pushout_collapses_ideal() {
        let m = s3();
        let (ideal, iota) = Subsemimodule::new(&m, [0, 2]).unwrap().materialize("S3a");
        let zero = Arc::new(Semimodule::zero_module(m.ring(), "0"));
        let to_zero = check_linear(&ideal, &zero, vec![0, 0]).unwrap();
        let po = pushout(&iota, &to_zero, &Limits::default()).unwrap();
        assert_eq!(po.object.len(), 2);
        assert_eq!(po.g_prime.images(), &[0, 1, 0]);
    }

    #[test]
    fn pushout_of_zero_maps_is_product() {
        let m = s3();
        let zero = Arc::new(Semimodule::zero_module(m.ring(), "0"));
        let f = LinearMap::zero(&zero, &m);
        let po = pushout(&f, &f, &Limits::default()).unwrap();
        assert_eq!(po.object.len(), 9);
    }
}
