use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::qmat::QMat;
use crate::error::{Error, Result};
use crate::report::Report;

/// The subtractive left ideals `E1` (second column zero), `E2` (first
/// column zero) and `N_r` (first column `r` times the second).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealTag {
    E1,
    E2,
    Nr(BigRational),
}

impl IdealTag {
    pub fn nr(r: BigRational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::Domain(format!("N_r needs r > 0, got {r}")));
        }
        Ok(IdealTag::Nr(r))
    }

    /// The element `n0` with `n . n0 = n` for every member `n`:
    /// `E11`, `E22` and `[[1, 1/r], [0, 0]]`.
    pub fn generator(&self) -> QMat {
        match self {
            IdealTag::E1 => QMat::ints(1, 0, 0, 0),
            IdealTag::E2 => QMat::ints(0, 0, 0, 1),
            IdealTag::Nr(r) => QMat::new(
                BigRational::one(),
                r.recip(),
                BigRational::zero(),
                BigRational::zero(),
            )
            .expect("r > 0"),
        }
    }

    /// The member with columns `(x, y)` scaled to the ideal's shape:
    /// `[[x,0],[y,0]]`, `[[0,x],[0,y]]` or `[[rx,x],[ry,y]]`.
    pub fn member(&self, x: &BigRational, y: &BigRational) -> QMat {
        let z = BigRational::zero;
        let m = match self {
            IdealTag::E1 => QMat::new(x.clone(), z(), y.clone(), z()),
            IdealTag::E2 => QMat::new(z(), x.clone(), z(), y.clone()),
            IdealTag::Nr(r) => QMat::new(r * x, x.clone(), r * y, y.clone()),
        };
        m.expect("non-negative parameters")
    }
}

impl fmt::Display for IdealTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealTag::E1 => f.write_str("E1"),
            IdealTag::E2 => f.write_str("E2"),
            IdealTag::Nr(r) => write!(f, "N_{r}"),
        }
    }
}

pub fn ideal_member(tag: &IdealTag, a: &QMat) -> bool {
    match tag {
        IdealTag::E1 => a.entry(0, 1).is_zero() && a.entry(1, 1).is_zero(),
        IdealTag::E2 => a.entry(0, 0).is_zero() && a.entry(1, 0).is_zero(),
        IdealTag::Nr(r) => *a.entry(0, 0) == r * a.entry(0, 1) && *a.entry(1, 0) == r * a.entry(1, 1),
    }
}

/// For each `(X, A)` with `A` in the ideal: `X + A` in the ideal forces `X`
/// in the ideal, and `X . A + A` stays in the ideal.
pub fn check_subtractive_samples(tag: &IdealTag, samples: &[(QMat, QMat)]) -> Result<Report> {
    let mut triggered = 0u64;
    for (x, a) in samples {
        if !ideal_member(tag, a) {
            return Err(Error::Domain(format!("{a} is not in {tag}")));
        }
        if ideal_member(tag, &x.add(a)) {
            triggered += 1;
            if !ideal_member(tag, x) {
                return Err(Error::SampleViolation(format!(
                    "{tag} not subtractive: {x} + {a} is a member, {x} is not"
                )));
            }
        }
        let combo = x.mul(a).add(a);
        if !ideal_member(tag, &combo) {
            return Err(Error::SampleViolation(format!(
                "{tag} not a left ideal: {x} . {a} + {a} = {combo}"
            )));
        }
    }
    Ok(Report::boolean("check_subtractive_samples", vec![tag.to_string()], true)
        .stat("samples", samples.len() as u64)
        .stat("subtractive_premises", triggered)
        .cite("E1, E2 and N_r are subtractive left ideals of the 2x2 matrix semiring"))
}

/// `h(probe) = probe . g(n0)`, the extension of `g` along the inclusion of
/// the ideal.
pub fn i_inj_extension(case: &IdealTag, g_n0: &QMat, probe: &QMat) -> Result<QMat> {
    if !ideal_member(case, probe) {
        return Err(Error::Domain(format!("{probe} is not in {case}")));
    }
    Ok(probe.mul(g_n0))
}
