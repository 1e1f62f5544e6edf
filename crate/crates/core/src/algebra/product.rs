use std::sync::Arc;

use super::semimodule::Semimodule;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::morphism::LinearMap;

/// A finite direct product with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub module: Arc<Semimodule>,
    pub injections: Vec<LinearMap>,
    pub projections: Vec<LinearMap>,
}

impl Product {
    /// Element index of a coordinate tuple.
    pub fn index_of(&self, coords: &[usize]) -> usize {
        let mut idx = 0;
        for (p, &c) in self.projections.iter().zip(coords) {
            idx = idx * p.target().len() + c;
        }
        idx
    }
}

/// Componentwise product. Elements are tuples in lexicographic order with
/// the first factor most significant.
pub fn direct_product(factors: &[Arc<Semimodule>], limits: &Limits) -> Result<Product> {
    let first = factors
        .first()
        .ok_or_else(|| Error::DegenerateInput("empty factor list".into()))?;
    if let Some(f) = factors.iter().find(|f| !f.same_base(first)) {
        return Err(Error::Shape(format!(
            "{} is over a different semiring than {}",
            f.name(),
            first.name()
        )));
    }
    let size = factors
        .iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(f.len()))
        .ok_or(Error::SearchCapExceeded { cap: limits.cap })?;
    limits.check(size)?;

    let dims: Vec<usize> = factors.iter().map(|f| f.len()).collect();
    let coords = |mut idx: usize| {
        let mut c = vec![0; dims.len()];
        for (k, &d) in dims.iter().enumerate().rev() {
            c[k] = idx % d;
            idx /= d;
        }
        c
    };
    let index = |c: &[usize]| c.iter().zip(&dims).fold(0, |acc, (&x, &d)| acc * d + x);
    let tuples: Vec<Vec<usize>> = (0..size).map(coords).collect();

    let labels = tuples
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c.iter().zip(factors).map(|(&x, f)| f.label(x)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let zero_c: Vec<usize> = factors.iter().map(|f| f.zero()).collect();
    let mut add = Vec::with_capacity(size * size);
    for a in &tuples {
        for b in &tuples {
            let c: Vec<usize> = factors
                .iter()
                .enumerate()
                .map(|(k, f)| f.add(a[k], b[k]))
                .collect();
            add.push(index(&c));
        }
    }
    let ring = first.ring().clone();
    let mut act = Vec::with_capacity(ring.len() * size);
    for s in ring.elements() {
        for a in &tuples {
            let c: Vec<usize> = factors
                .iter()
                .enumerate()
                .map(|(k, f)| f.act(s, a[k]))
                .collect();
            act.push(index(&c));
        }
    }
    let name = factors
        .iter()
        .map(|f| f.name())
        .collect::<Vec<_>>()
        .join("x");
    let module = Arc::new(Semimodule::unchecked(
        name,
        ring,
        labels,
        index(&zero_c),
        add,
        act,
    )?);

    let mut injections = Vec::with_capacity(factors.len());
    let mut projections = Vec::with_capacity(factors.len());
    for (k, f) in factors.iter().enumerate() {
        let inj = f
            .elements()
            .map(|x| {
                let mut c = zero_c.clone();
                c[k] = x;
                index(&c)
            })
            .collect();
        injections.push(LinearMap::new_unchecked(f.clone(), module.clone(), inj));
        let proj = tuples.iter().map(|c| c[k]).collect();
        projections.push(LinearMap::new_unchecked(module.clone(), f.clone(), proj));
    }
    Ok(Product {
        module,
        injections,
        projections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Semiring;
    use crate::morphism::{check_linear, compose, LinearMap};

    fn boolean() -> Arc<Semimodule> {
        let b = Semiring::new(
            "B",
            vec!["0".into(), "1".into()],
            0,
            1,
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![0, 0], vec![0, 1]],
        )
        .unwrap();
        Arc::new(Semimodule::regular(&Arc::new(b)))
    }

    #[test]
    fn boolean_square() {
        let b = boolean();
        let p = direct_product(&[b.clone(), b.clone()], &Limits::default()).unwrap();
        assert_eq!(p.module.len(), 4);
        assert_eq!(p.module.labels()[2], "(1,0)");
        for k in 0..2 {
            let round = compose(&p.projections[k], &p.injections[k]).unwrap();
            assert_eq!(round, LinearMap::identity(&b));
            check_linear(&b, &p.module, p.injections[k].images().to_vec()).unwrap();
            check_linear(&p.module, &b, p.projections[k].images().to_vec()).unwrap();
        }
        assert_eq!(p.index_of(&[1, 1]), 3);
    }

    #[test]
    fn single_factor_is_a_copy() {
        let b = boolean();
        let p = direct_product(&[b.clone()], &Limits::default()).unwrap();
        assert_eq!(p.module.len(), 2);
        assert_eq!(p.projections[0].images(), &[0, 1]);
    }

    #[test]
    fn cap_and_empty() {
        let b = boolean();
        assert!(matches!(
            direct_product(&[b.clone(), b.clone(), b], &Limits::with_cap(7)),
            Err(Error::SearchCapExceeded { cap: 7 })
        ));
        assert!(direct_product(&[], &Limits::default()).is_err());
    }
}
