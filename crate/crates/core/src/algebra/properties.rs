use std::sync::Arc;

use super::semimodule::Semimodule;
use super::subsemimodule::enumerate_subsemimodules;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::report::Report;

/// Divisibility: every scalar that is not a zero divisor acts surjectively.
/// On failure the witnesses are the scalar and the first element it misses.
pub fn is_divisible(m: &Semimodule) -> Report {
    let ring = m.ring();
    let inputs = vec![m.name().to_string()];
    let mut scalars = 0u64;
    for s in ring.elements().filter(|&s| !ring.is_zero_divisor(s)) {
        scalars += 1;
        let mut hit = vec![false; m.len()];
        for x in m.elements() {
            hit[m.act(s, x)] = true;
        }
        if let Some(n) = hit.iter().position(|&h| !h) {
            return Report::boolean("is_divisible", inputs, false)
                .witness("scalar", vec![ring.label(s).to_string()])
                .witness("unreached", vec![m.label(n).to_string()])
                .stat("scalars_checked", scalars)
                .cite("injective semimodules are divisible");
        }
    }
    Report::boolean("is_divisible", inputs, true)
        .stat("scalars_checked", scalars)
        .cite("injective semimodules are divisible")
}

/// `0` and `M` are the only subsemimodules.
pub fn is_ideal_simple(m: &Arc<Semimodule>, limits: &Limits) -> Result<Report> {
    if m.is_zero_module() {
        return Err(Error::DegenerateInput(format!(
            "{} is the zero semimodule",
            m.name()
        )));
    }
    let subs = enumerate_subsemimodules(m, false, limits)?;
    let inputs = vec![m.name().to_string()];
    let proper = subs.iter().find(|l| !l.is_zero() && !l.is_whole());
    let report = match proper {
        Some(l) => Report::boolean("is_ideal_simple", inputs, false)
            .witness("subsemimodule", l.labels()),
        None => Report::boolean("is_ideal_simple", inputs, true),
    };
    Ok(report.stat("subsemimodules", subs.len() as u64))
}
