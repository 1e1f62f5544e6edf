use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ideal::{check_subtractive_samples, i_inj_extension, ideal_member, IdealTag};
use super::qmat::QMat;
use crate::error::{Error, Result};
use crate::report::Report;

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_SAMPLES: usize = 1000;

fn rational(rng: &mut ChaCha8Rng, positive: bool) -> BigRational {
    let lo = if positive { 1 } else { 0 };
    let n: i64 = rng.gen_range(lo..=12);
    let d: i64 = rng.gen_range(1..=6);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn matrix(rng: &mut ChaCha8Rng) -> QMat {
    QMat::new(
        rational(rng, false),
        rational(rng, false),
        rational(rng, false),
        rational(rng, false),
    )
    .expect("sampled entries are non-negative")
}

fn mat(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> QMat {
    QMat::new(a, b, c, d).expect("non-negative by construction")
}

fn zero() -> BigRational {
    BigRational::zero()
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::SampleViolation(what()))
    }
}

#[derive(Default)]
struct Tally(BTreeMap<String, u64>);

impl Tally {
    fn bump(&mut self, key: &str) {
        *self.0.entry(key.to_string()).or_default() += 1;
    }
}

/// Ideal closure and subtractivity samples for `E1`, `E2` and `N_r`.
fn ideal_samples(rng: &mut ChaCha8Rng, samples: usize, tally: &mut Tally) -> Result<()> {
    for k in 0..samples {
        let tag = match k % 3 {
            0 => IdealTag::E1,
            1 => IdealTag::E2,
            _ => IdealTag::nr(rational(rng, true))?,
        };
        let a = tag.member(&rational(rng, false), &rational(rng, false));
        // half the probes satisfy the subtractivity premise by construction
        let x = if rng.gen_bool(0.5) {
            tag.member(&rational(rng, false), &rational(rng, false))
        } else {
            matrix(rng)
        };
        let r = check_subtractive_samples(&tag, &[(x.clone(), a.clone())])?;
        if r.statistics["subtractive_premises"] > 0 {
            tally.bump("subtractive_premises");
        }
        // the displayed closure formulas, entry by entry
        let s = matrix(rng);
        let b = tag.member(&rational(rng, false), &rational(rng, false));
        let lhs = s.mul(&a).add(&b);
        let expect = match &tag {
            IdealTag::E1 => mat(
                s.entry(0, 0) * a.entry(0, 0) + s.entry(0, 1) * a.entry(1, 0) + b.entry(0, 0),
                zero(),
                s.entry(1, 0) * a.entry(0, 0) + s.entry(1, 1) * a.entry(1, 0) + b.entry(1, 0),
                zero(),
            ),
            IdealTag::E2 => mat(
                zero(),
                s.entry(0, 0) * a.entry(0, 1) + s.entry(0, 1) * a.entry(1, 1) + b.entry(0, 1),
                zero(),
                s.entry(1, 0) * a.entry(0, 1) + s.entry(1, 1) * a.entry(1, 1) + b.entry(1, 1),
            ),
            IdealTag::Nr(r) => {
                let top = s.entry(0, 0) * a.entry(0, 1) + s.entry(0, 1) * a.entry(1, 1) + b.entry(0, 1);
                let bottom = s.entry(1, 0) * a.entry(0, 1) + s.entry(1, 1) * a.entry(1, 1) + b.entry(1, 1);
                mat(r * &top, top, r * &bottom, bottom)
            }
        };
        ensure(lhs == expect && ideal_member(&tag, &lhs), || {
            format!("closure display for {tag}: {s} . {a} + {b} = {lhs}, expected {expect}")
        })?;
        tally.bump("ideal_samples");
    }
    Ok(())
}

/// Step II: a subtractive ideal strictly above `E1`, `E2` or `N_r` contains
/// a unit idempotent.
fn step_two(rng: &mut ChaCha8Rng, samples: usize, tally: &mut Tally) -> Result<()> {
    let e11 = QMat::ints(1, 0, 0, 0);
    let e22 = QMat::ints(0, 0, 0, 1);
    for _ in 0..samples {
        // Case 1: X outside E1 splits into its E1 part and an E2 part.
        let x = matrix(rng);
        let (p, qq, r, s) = (x.entry(0, 0), x.entry(0, 1), x.entry(1, 0), x.entry(1, 1));
        let left = mat(p.clone(), zero(), r.clone(), zero());
        let right = mat(zero(), qq.clone(), zero(), s.clone());
        ensure(left.add(&right) == x, || format!("split of {x}"))?;
        if !qq.is_zero() {
            let u = mat(zero(), zero(), qq.recip(), zero()).mul(&right);
            ensure(u == e22, || format!("1/q scaling of {right} gave {u}"))?;
            tally.bump("step2_case1");
        } else if !s.is_zero() {
            let u = mat(zero(), zero(), zero(), s.recip()).mul(&right);
            ensure(u == e22, || format!("1/s scaling of {right} gave {u}"))?;
            tally.bump("step2_case1");
        }
        // Case 2, mirrored: the E1 part of X yields E11.
        if !p.is_zero() {
            let u = mat(p.recip(), zero(), zero(), zero()).mul(&left);
            ensure(u == e11, || format!("1/p scaling of {left} gave {u}"))?;
            tally.bump("step2_case2");
        } else if !r.is_zero() {
            let u = mat(zero(), r.recip(), zero(), zero()).mul(&left);
            ensure(u == e11, || format!("1/r scaling of {left} gave {u}"))?;
            tally.bump("step2_case2");
        }

        // Case 3: [[k,l],[m,n]] with k < r l; the missing first-column mass
        // is added either below (m <= r n) or on the diagonal (m > r n).
        let rr = rational(rng, true);
        let l = rational(rng, true);
        let n = rational(rng, false);
        let m = rational(rng, false);
        let t = rational(rng, true);
        let pgap = &rr * &l * &t / (&t + BigRational::one());
        let k = &rr * &l - &pgap;
        let pt = QMat::new(k, l.clone(), m.clone(), n.clone())?;
        let nr = IdealTag::nr(rr.clone())?;
        let addend = if m <= &rr * &n {
            let addend = mat(pgap.clone(), zero(), &rr * &n - &m, zero());
            let sum = addend.add(&pt);
            ensure(sum == mat(&rr * &l, l.clone(), &rr * &n, n.clone()), || format!("case 3 lower display at {pt}"))?;
            ensure(ideal_member(&nr, &sum), || format!("{sum} not in {nr}"))?;
            tally.bump("step2_case3_lower");
            addend
        } else {
            let addend = mat(pgap.clone(), zero(), zero(), &m / &rr - &n);
            let sum = addend.add(&pt);
            ensure(sum == mat(&rr * &l, l.clone(), m.clone(), &m / &rr), || format!("case 3 diagonal display at {pt}"))?;
            ensure(ideal_member(&nr, &sum), || format!("{sum} not in {nr}"))?;
            tally.bump("step2_case3_diagonal");
            addend
        };
        let u = mat(pgap.recip(), zero(), zero(), zero()).mul(&addend);
        ensure(u == e11, || format!("1/p scaling of {addend} gave {u}"))?;
    }
    Ok(())
}

/// Step III: any non-zero member generates `E1`, `E2` or some `N_r` after
/// one of four scalings.
fn step_three(rng: &mut ChaCha8Rng, samples: usize, tally: &mut Tally) -> Result<()> {
    for _ in 0..samples {
        let x = matrix(rng);
        if x.is_zero() {
            continue;
        }
        let (k, l, m, n) = (x.entry(0, 0), x.entry(0, 1), x.entry(1, 0), x.entry(1, 1));
        let one = BigRational::one;
        if !k.is_zero() {
            let y = mat(k.recip(), zero(), zero(), zero()).mul(&x);
            ensure(y == mat(one(), l / k, zero(), zero()), || format!("case 1 at {x}"))?;
            let tag = if l.is_zero() { IdealTag::E1 } else { IdealTag::nr(k / l)? };
            let g = if l.is_zero() { y } else { y.scale(&(k / l)) };
            ensure(ideal_member(&tag, &g), || format!("{g} not in {tag}"))?;
            tally.bump("step3_case1");
        }
        if !l.is_zero() {
            let y = mat(zero(), zero(), l.recip(), zero()).mul(&x);
            ensure(y == mat(zero(), zero(), k / l, one()), || format!("case 2 at {x}"))?;
            let tag = if k.is_zero() { IdealTag::E2 } else { IdealTag::nr(k / l)? };
            ensure(ideal_member(&tag, &y), || format!("{y} not in {tag}"))?;
            tally.bump("step3_case2");
        }
        if !m.is_zero() {
            let y = mat(zero(), m.recip(), zero(), zero()).mul(&x);
            ensure(y == mat(one(), n / m, zero(), zero()), || format!("case 3 at {x}"))?;
            let tag = if n.is_zero() { IdealTag::E1 } else { IdealTag::nr(m / n)? };
            let g = if n.is_zero() { y } else { y.scale(&(m / n)) };
            ensure(ideal_member(&tag, &g), || format!("{g} not in {tag}"))?;
            tally.bump("step3_case3");
        }
        if !n.is_zero() {
            let y = mat(zero(), zero(), zero(), n.recip()).mul(&x);
            ensure(y == mat(zero(), zero(), m / n, one()), || format!("case 4 at {x}"))?;
            let tag = if m.is_zero() { IdealTag::E2 } else { IdealTag::nr(m / n)? };
            ensure(ideal_member(&tag, &y), || format!("{y} not in {tag}"))?;
            tally.bump("step3_case4");
        }
    }
    Ok(())
}

/// `h(f(n)) = g(n)` for `f` the inclusion of an ideal, `g(n) = n . Y`, and
/// `h(X) = X . g(n0)`.
fn extensions(rng: &mut ChaCha8Rng, samples: usize, tally: &mut Tally) -> Result<()> {
    for k in 0..samples {
        let (tag, key) = match k % 3 {
            0 => (IdealTag::E1, "extension_e1"),
            1 => (IdealTag::E2, "extension_e2"),
            _ => (IdealTag::nr(rational(rng, true))?, "extension_nr"),
        };
        let y = matrix(rng);
        let n0 = tag.generator();
        let g_n0 = n0.mul(&y);
        let n = tag.member(&rational(rng, false), &rational(rng, false));
        ensure(n.mul(&n0) == n, || format!("{n} . {n0} != {n}"))?;
        let h = i_inj_extension(&tag, &g_n0, &n)?;
        let g = n.mul(&y);
        ensure(h == g, || format!("extension for {tag} at {n}: {h} != {g}"))?;
        tally.bump(key);
    }
    Ok(())
}

/// Non-zero members of `E1` generate the unit `E11`.
fn e1_ideal_simple(rng: &mut ChaCha8Rng, samples: usize, tally: &mut Tally) -> Result<()> {
    let e11 = QMat::ints(1, 0, 0, 0);
    for _ in 0..samples {
        let x = IdealTag::E1.member(&rational(rng, false), &rational(rng, false));
        let (a, b) = (x.entry(0, 0), x.entry(1, 0));
        let u = if !a.is_zero() {
            mat(a.recip(), zero(), zero(), zero()).mul(&x)
        } else if !b.is_zero() {
            mat(zero(), b.recip(), zero(), zero()).mul(&x)
        } else {
            continue;
        };
        ensure(u == e11, || format!("{x} does not generate E11"))?;
        tally.bump("e1_generates_unit");
    }
    Ok(())
}

/// Variables forced to zero by `sum = 0` equations over the non-negative
/// rationals: every summand lies between 0 and the equation's value.
fn forced_zeros(equations: &[(&[&str], BigRational)]) -> BTreeMap<String, bool> {
    let mut upper: BTreeMap<String, Option<BigRational>> = BTreeMap::new();
    for (vars, value) in equations {
        for v in vars.iter() {
            let slot = upper.entry(v.to_string()).or_insert(None);
            *slot = Some(match slot.take() {
                Some(u) if u < *value => u,
                _ => value.clone(),
            });
        }
    }
    upper
        .into_iter()
        .map(|(v, u)| (v, u.is_some_and(|u| u.is_zero())))
        .collect()
}

/// The two retractions of `S` onto `N1`, their agreement on `N1`, the
/// forced vanishing of any reconciling pair, and `h1 != h2` at the identity.
pub fn verify_counterexample_n1(seed: u64, samples: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n1 = IdealTag::nr(BigRational::one())?;
    let c1 = QMat::ints(1, 1, 0, 0);
    let c2 = QMat::ints(0, 0, 1, 1);
    let h1 = |x: &QMat| x.mul(&c1);
    let h2 = |x: &QMat| x.mul(&c2);
    for _ in 0..samples {
        let x = matrix(&mut rng);
        let (p, qq, r, s) = (x.entry(0, 0), x.entry(0, 1), x.entry(1, 0), x.entry(1, 1));
        ensure(h1(&x) == mat(p.clone(), p.clone(), r.clone(), r.clone()), || format!("h1 formula at {x}"))?;
        ensure(h2(&x) == mat(qq.clone(), qq.clone(), s.clone(), s.clone()), || format!("h2 formula at {x}"))?;
        ensure(ideal_member(&n1, &h1(&x)) && ideal_member(&n1, &h2(&x)), || format!("h(X) outside N1 at {x}"))?;
        // left linearity
        let (t, x2) = (matrix(&mut rng), matrix(&mut rng));
        let combo = t.mul(&x).add(&x2);
        ensure(h1(&combo) == t.mul(&h1(&x)).add(&h1(&x2)), || format!("h1 not linear at {x}"))?;
        ensure(h2(&combo) == t.mul(&h2(&x)).add(&h2(&x2)), || format!("h2 not linear at {x}"))?;
        // both restrict to the identity on N1
        let n = n1.member(&rational(&mut rng, false), &rational(&mut rng, false));
        ensure(h1(&n) == n && h2(&n) == n, || format!("h_i . iota != id at {n}"))?;
        // k(X) = X . K applied to [[1,1],[0,0]] gives [[l+n, m+o], [0,0]]
        let kk = matrix(&mut rng);
        let probe = c1.mul(&kk);
        let (l, m, nn, o) = (kk.entry(0, 0), kk.entry(0, 1), kk.entry(1, 0), kk.entry(1, 1));
        ensure(probe == mat(l + nn, m + o, zero(), zero()), || format!("k . iota display at {kk}"))?;
        // a vanishing restriction forces K = 0
        ensure(!probe.is_zero() || kk.is_zero(), || format!("non-zero {kk} vanishes on N1"))?;
    }
    let zeros = forced_zeros(&[
        (&["l", "n"], zero()),
        (&["m", "o"], zero()),
        (&["p", "r"], zero()),
        (&["q", "s"], zero()),
    ]);
    ensure(zeros.values().all(|&z| z) && zeros.len() == 8, || format!("forced zeros {zeros:?}"))?;
    let (h1i, h2i) = (h1(&QMat::identity()), h2(&QMat::identity()));
    ensure(h1i == QMat::ints(1, 1, 0, 0), || format!("h1(I) = {h1i}"))?;
    ensure(h2i == QMat::ints(0, 0, 1, 1), || format!("h2(I) = {h2i}"))?;
    ensure(h1i != h2i, || "h1 = h2".into())?;
    Ok(Report::boolean("verify_counterexample_n1", vec!["N1".into()], true)
        .witness("h1(I)", vec![h1i.to_string()])
        .witness("h2(I)", vec![h2i.to_string()])
        .witness("k1 . iota", vec!["[[1,1],[0,0]].[[l,m],[n,o]] = [[l+n,m+o],[0,0]]".into()])
        .witness("forced-zero", zeros.keys().cloned().collect())
        .stat("samples", samples as u64)
        .stat("seed", seed)
        .cite("N1 is S-i-injective but not S-e-injective: k1 . iota = 0 = k2 . iota forces l=m=n=o=0 and p=q=r=s=0, while h1 != h2"))
}

/// Replays every sampled computation of the matrix counterexample.
pub fn matrix_demo(samples: usize, seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    ideal_samples(&mut rng, samples, &mut tally)?;
    step_two(&mut rng, samples, &mut tally)?;
    step_three(&mut rng, samples, &mut tally)?;
    extensions(&mut rng, samples, &mut tally)?;
    e1_ideal_simple(&mut rng, samples, &mut tally)?;
    let n1 = verify_counterexample_n1(seed, samples)?;
    let mut r = Report::boolean(
        "matrix_demo",
        vec![format!("samples={samples}"), format!("seed={seed}")],
        true,
    )
    .cite("over 2x2 non-negative rational matrices every semimodule is S-i-injective while N1 is not S-e-injective");
    r.statistics = tally.0;
    r.statistics.insert("samples".into(), samples as u64);
    r.statistics.insert("seed".into(), seed);
    r.witnesses = n1.witnesses;
    Ok(r)
}
