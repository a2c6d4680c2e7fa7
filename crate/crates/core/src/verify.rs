//! Checks every claim attached to a catalogue entry: points lie on the family
//! over ℚ(u), sampled fibres have the claimed torsion, and the claimed points
//! stay independent at a chosen fibre.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::catalog::{self, FamilyEntry, HADANO_CONDITIONS, HADANO_MODEL, HADANO_TWO_PARAM};
use crate::curves::{Curve, Point};
use crate::error::{Error, Result};
use crate::exact_math::{parse_ratfunc_with, rat, RatFunc, Rational};
use crate::heights::{regulator, DEFAULT_EPS, REGULATOR_EPS};
use crate::torsion::{torsion_structure, TorsionGroup};

/// Range for sampled numerators and denominators.
pub const SAMPLE_RANGE: i64 = 50;
const MAX_SAMPLE_ATTEMPTS: usize = 20_000;

#[derive(Clone, Debug)]
pub struct Claim {
    pub name: String,
    pub outcome: std::result::Result<String, Error>,
}

impl Claim {
    fn new(name: impl Into<String>, outcome: Result<String>) -> Claim {
        Claim { name: name.into(), outcome }
    }

    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }

    pub fn to_json(&self) -> Value {
        match &self.outcome {
            Ok(d) => json!({ "claim": self.name, "status": "pass", "detail": d }),
            Err(e) => json!({ "claim": self.name, "status": "fail", "detail": e.to_string() }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub entry: String,
    pub claims: Vec<Claim>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(Claim::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "entry": self.entry,
            "passed": self.passed(),
            "claims": self.claims.iter().map(Claim::to_json).collect::<Vec<_>>(),
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }

    fn merge(mut self, other: VerificationReport) -> VerificationReport {
        self.claims.extend(other.claims);
        self.elapsed += other.elapsed;
        self
    }
}

fn timed(entry: &FamilyEntry, f: impl FnOnce() -> Vec<Claim>) -> VerificationReport {
    let t = Instant::now();
    let claims = f();
    VerificationReport { entry: entry.id.clone(), claims, elapsed: t.elapsed() }
}

/// x³ + Ax² + Bx + C as an element of ℚ(u).
pub fn rhs_at(entry: &FamilyEntry, x: &RatFunc) -> RatFunc {
    let x2 = x * x;
    let terms = [&x2 * x, &entry.a * &x2, &entry.b * x, entry.c.clone()];
    terms.iter().fold(RatFunc::zero(), |acc, t| &acc + t)
}

/// y(u) with y² = x³ + Ax² + Bx + C in ℚ(u), or `SymbolicFailure`.
pub fn membership_witness(entry: &FamilyEntry, x: &RatFunc, index: usize) -> Result<RatFunc> {
    let s = rhs_at(entry, x);
    s.sqrt().ok_or_else(|| Error::SymbolicFailure {
        entry: entry.id.clone(),
        index,
        witness: s.display_in(&entry.param),
    })
}

fn check_point(entry: &FamilyEntry, p: &catalog::ClaimedPoint, index: usize) -> Result<String> {
    let w = membership_witness(entry, &p.x, index)?;
    if let Some(y) = &p.y {
        if &(y * y) != &(&w * &w) {
            return Err(Error::SymbolicFailure {
                entry: entry.id.clone(),
                index,
                witness: format!("printed y = {} does not square to x^3+Ax^2+Bx", y.display_in(&entry.param)),
            });
        }
    }
    Ok(format!("y = {}", w.display_in(&entry.param)))
}

/// Every claimed point and the torsion generator satisfy the curve equation
/// over ℚ(u).
pub fn verify_membership(entry: &FamilyEntry) -> VerificationReport {
    timed(entry, || {
        let mut claims: Vec<Claim> = entry
            .claimed_points
            .iter()
            .enumerate()
            .map(|(i, p)| Claim::new(format!("point {i} on family"), check_point(entry, p, i)))
            .collect();
        if entry.claimed_points.is_empty() {
            claims.push(Claim::new("point on family", Ok("no point claimed".into())));
        }
        if let Some(g) = &entry.torsion_generator {
            let i = entry.claimed_points.len();
            claims.push(Claim::new("torsion generator on family", check_point(entry, g, i)));
        }
        claims
    })
}

/// `n` distinct parameters with numerator in [−50, 50] and denominator in
/// [1, 50], avoiding the degeneracy set and failed specializations.
pub fn sample_parameters(entry: &FamilyEntry, n: usize, seed: u64) -> Result<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Rational> = Vec::with_capacity(n);
    for _ in 0..MAX_SAMPLE_ATTEMPTS {
        if out.len() == n {
            return Ok(out);
        }
        let num = rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE);
        let den = rng.gen_range(1..=SAMPLE_RANGE);
        let q = Rational::new(num.into(), den.into());
        if out.contains(&q) || catalog::specialize(entry, &q).is_err() {
            continue;
        }
        out.push(q);
    }
    if out.len() == n {
        Ok(out)
    } else {
        Err(Error::ExhaustedSearch { attempts: MAX_SAMPLE_ATTEMPTS, found: out.len(), wanted: n })
    }
}

fn cyclic_factor(g: TorsionGroup) -> u32 {
    match g {
        TorsionGroup::Cyclic(n) | TorsionGroup::TwoBy(n) => n,
    }
}

fn torsion_at(entry: &FamilyEntry, q: &Rational) -> Result<String> {
    let s = catalog::specialize(entry, q)?;
    let found = torsion_structure(&s.curve).group;
    if found != entry.claimed_torsion {
        let growth = found.contains(&entry.claimed_torsion);
        return Err(Error::TorsionMismatch {
            entry: entry.id.clone(),
            param: q.clone(),
            found: if growth { format!("{} (torsion grows on this fibre)", found.tag()) } else { found.tag() },
            expected: entry.claimed_torsion.tag(),
        });
    }
    if let Some(g) = &s.torsion_point {
        let want = cyclic_factor(entry.claimed_torsion);
        let order = s.curve.point_order(g, 12)?;
        if order != Some(want) {
            return Err(Error::TorsionMismatch {
                entry: entry.id.clone(),
                param: q.clone(),
                found: format!("generator of order {order:?}"),
                expected: format!("order {want}"),
            });
        }
    }
    Ok(found.tag())
}

/// Torsion of `samples` seeded random fibres equals the claimed group, and the
/// generator has the claimed order on each.
pub fn verify_torsion(entry: &FamilyEntry, samples: usize, seed: u64) -> VerificationReport {
    timed(entry, || {
        let qs = match sample_parameters(entry, samples, seed) {
            Ok(qs) => qs,
            Err(e) => return vec![Claim::new("torsion sampled", Err(e))],
        };
        let results: Vec<Result<String>> = qs.par_iter().map(|q| torsion_at(entry, q)).collect();
        let outcome = match results.into_iter().find(|r| r.is_err()) {
            Some(Err(e)) => Err(e),
            _ => Ok(format!(
                "{} at {} parameters: {}",
                entry.claimed_torsion.tag(),
                qs.len(),
                qs.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", ")
            )),
        };
        vec![Claim::new("torsion sampled", outcome)]
    })
}

/// Regulator of `points` on `e` above `eps`, with no point of finite order.
pub fn check_independent(e: &Curve, points: &[Point], eps: f64) -> Result<f64> {
    for p in points {
        if e.is_torsion(p)? {
            return Err(Error::DependentPoints { regulator: 0.0, eps });
        }
    }
    let r = regulator(e, points, DEFAULT_EPS)?;
    if r.value - r.error_bound > eps {
        Ok(r.value)
    } else {
        Err(Error::DependentPoints { regulator: r.value, eps })
    }
}

/// The first integer ≥ `start` at which the entry specializes cleanly.
pub fn first_good_integer(entry: &FamilyEntry, start: i64) -> Result<Rational> {
    (start..start + 1000)
        .map(rat)
        .find(|q| catalog::specialize(entry, q).is_ok())
        .ok_or_else(|| Error::Other(format!("{}: no good integer parameter found", entry.id)))
}

/// The first integer ≥ `start` at which the entry specializes cleanly and no
/// claimed point lands on a torsion point. A fibre where a point becomes
/// torsion says nothing about independence, so such fibres are skipped.
pub fn first_informative_integer(entry: &FamilyEntry, start: i64) -> Result<Rational> {
    (start..start + 1000)
        .map(rat)
        .find(|q| {
            catalog::specialize(entry, q)
                .is_ok_and(|s| s.points.iter().all(|p| s.curve.is_torsion(p).is_ok_and(|t| !t)))
        })
        .ok_or_else(|| Error::Other(format!("{}: no fibre with non-torsion points found", entry.id)))
}

/// The claimed points at `q` are of infinite order with regulator above `eps`.
pub fn verify_independence(entry: &FamilyEntry, q: &Rational, eps: f64) -> VerificationReport {
    timed(entry, || {
        let outcome = catalog::specialize(entry, q).and_then(|s| {
            let r = check_independent(&s.curve, &s.points, eps)?;
            Ok(format!("regulator {r:.9} of {} points at {q}", s.points.len()))
        });
        vec![Claim::new(format!("independence at {q}"), outcome)]
    })
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub eps: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { samples: 20, seed: 0, eps: REGULATOR_EPS }
    }
}

/// Membership, sampled torsion and, when points are claimed, independence at
/// the first good integer ≥ 2.
pub fn verify_entry(entry: &FamilyEntry, opts: &VerifyOptions) -> VerificationReport {
    let mut report = verify_membership(entry).merge(verify_torsion(entry, opts.samples, opts.seed));
    if !entry.claimed_points.is_empty() {
        let indep = match first_informative_integer(entry, 2) {
            Ok(q) => verify_independence(entry, &q, opts.eps),
            Err(e) => timed(entry, || vec![Claim::new("independence", Err(e))]),
        };
        report = report.merge(indep);
    }
    let extra = match entry.id.as_str() {
        "Z6_HADANO" => vec![Claim::new(
            "two-parameter model identity",
            verify_hadano_two_param(20, opts.seed),
        )],
        "Z26_HADANO_R1" => vec![verify_hadano_conditions().swap_remove(0)],
        "Z26_R2_C" => vec![verify_hadano_conditions().swap_remove(1)],
        _ => Vec::new(),
    };
    if !extra.is_empty() {
        report = report.merge(timed(entry, || extra));
    }
    report
}

/// Reports for every entry, in catalogue order.
pub fn verify_all(opts: &VerifyOptions) -> Vec<VerificationReport> {
    catalog::catalog_list().par_iter().map(|e| verify_entry(e, opts)).collect()
}

fn square_condition(src: &str, var: &str, bindings: &[(&str, RatFunc)]) -> Result<String> {
    let f = parse_ratfunc_with(src, var, bindings)?;
    f.sqrt()
        .map(|r| format!("= ({})^2", r.display_in(var)))
        .ok_or_else(|| Error::Other(format!("{} is not a square", f.display_in(var))))
}

/// The two square conditions of the Z/6 chain become literal squares after
/// the chosen substitutions.
pub fn verify_hadano_conditions() -> Vec<Claim> {
    let r1 = catalog::lookup("Z26_HADANO_R1").expect("catalog entry");
    let r2 = catalog::lookup("Z26_R2_C").expect("catalog entry");
    let vs = r1.provenance.substitution.clone().expect("substitution");
    let ws = r2.provenance.substitution.clone().expect("substitution");
    let a = (&RatFunc::x() + &RatFunc::one()).compose(&vs);
    let first = square_condition(HADANO_CONDITIONS[0], "w", &[("a", a), ("v", vs)]);
    let second = square_condition(HADANO_CONDITIONS[1], "u", &[("w", ws)]);
    vec![
        Claim::new("full 2-torsion condition is a square", first),
        Claim::new("extra point condition is a square", second),
    ]
}

/// The two-parameter Z/6 identities at random (a, v): the cleared model is
/// the model with b substituted, scaled by k = 16(a + v − a³)², and P is on it.
pub fn verify_hadano_two_param(count: usize, seed: u64) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    let mut attempts = 0;
    while done < count {
        attempts += 1;
        if attempts > MAX_SAMPLE_ATTEMPTS {
            return Err(Error::ExhaustedSearch { attempts, found: done, wanted: count });
        }
        let draw = |rng: &mut ChaCha8Rng| {
            Rational::new(
                rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE).into(),
                rng.gen_range(1..=SAMPLE_RANGE).into(),
            )
        };
        let a0 = draw(&mut rng);
        let v0 = draw(&mut rng);
        let a = RatFunc::constant(a0.clone());
        let ev = |src: &str, extra: &[(&str, RatFunc)]| -> Result<Option<Rational>> {
            let mut b: Vec<(&str, RatFunc)> = vec![("a", a.clone())];
            b.extend(extra.iter().cloned());
            Ok(parse_ratfunc_with(src, "v", &b)?.eval(&v0))
        };
        let Some(bv) = ev(HADANO_MODEL[0], &[])? else { continue };
        let bf = [("b", RatFunc::constant(bv))];
        let vals = (
            ev(HADANO_TWO_PARAM[0], &[])?,
            ev(HADANO_TWO_PARAM[1], &[])?,
            ev(HADANO_TWO_PARAM[2], &[])?,
            ev(HADANO_TWO_PARAM[3], &[])?,
            ev(HADANO_MODEL[1], &bf)?,
            ev(HADANO_MODEL[2], &bf)?,
        );
        let (Some(a61), Some(b61), Some(px), Some(py), Some(ha), Some(hb)) = vals else { continue };
        let t = &a0 * &a0 * &a0 - &a0 - &v0;
        let k = rat(16) * &t * &t;
        if k == rat(0) || b61 == rat(0) {
            continue;
        }
        let same_model = a61 == &k * &ha && b61 == &k * &k * &hb;
        let on_curve = &py * &py == &px * &px * &px + &a61 * &px * &px + &b61 * &px;
        if !(same_model && on_curve) {
            return Err(Error::Other(format!("two-parameter identity fails at a = {a0}, v = {v0}")));
        }
        done += 1;
    }
    Ok(format!("identity holds at {count} random (a, v)"))
}
