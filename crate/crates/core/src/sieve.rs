//! Mestre–Nagao scoring of fibres and grid scans over a family.
//!
//! The sum used throughout is S(E, N) = Σ (1 − (p − 1)/#E(F_p))·log p over odd
//! primes p ≤ N of good reduction. Fibres of large rank tend to have many
//! primes with large #E(F_p), which pushes S up.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{specialize, FamilyEntry};
use crate::curves::Curve;
use crate::error::{Error, Result};
use crate::exact_math::{fmt_rational, odd_primes, Rational};
use crate::heights::small_integral_model;
use crate::torsion::{count_points_mod_p, torsion_structure};

/// Recorded alongside every scan.
pub const VARIANT: &str = "S(N) = sum over good odd p <= N of (1 - (p-1)/#E(F_p)) log p";

pub const DEFAULT_PRIMES: u64 = 1000;

#[derive(Clone, Debug, PartialEq)]
pub struct SieveRecord {
    pub parameter: Rational,
    pub score: f64,
    pub torsion_ok: bool,
    pub primes_used: usize,
    pub notes: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Score {
    pub value: f64,
    pub primes_used: usize,
    pub bad_primes: Vec<u64>,
}

impl Score {
    pub fn notes(&self) -> String {
        if self.primes_used == 0 {
            return "no good primes".into();
        }
        if self.bad_primes.is_empty() {
            return String::new();
        }
        let list: Vec<String> = self.bad_primes.iter().map(u64::to_string).collect();
        format!("skipped bad primes {}", list.join(" "))
    }
}

/// S(E, N) on a small integral model of `e`.
pub fn mestre_nagao(e: &Curve, n: u64) -> Result<Score> {
    if n < 3 {
        return Err(Error::Other(format!("prime bound {n} is below 3")));
    }
    let model = small_integral_model(e);
    let primes: Vec<u64> = odd_primes().take_while(|&p| p <= n).collect();
    let terms: Vec<(u64, Option<f64>)> = primes
        .par_iter()
        .map(|&p| {
            let term = count_points_mod_p(&model, p)
                .ok()
                .map(|np| (1.0 - (p - 1) as f64 / np as f64) * (p as f64).ln());
            (p, term)
        })
        .collect();
    let mut score = Score { value: 0.0, primes_used: 0, bad_primes: Vec::new() };
    for (p, term) in terms {
        match term {
            Some(t) => {
                score.value += t;
                score.primes_used += 1;
            }
            None => score.bad_primes.push(p),
        }
    }
    Ok(score)
}

/// Reduced fractions num/den over the grid, in grid order (numerator outer),
/// without repeats.
pub fn grid(numerators: std::ops::RangeInclusive<i64>, denominators: std::ops::RangeInclusive<i64>) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for a in numerators {
        for b in denominators.clone() {
            if b == 0 {
                continue;
            }
            let q = Rational::new(a.into(), b.into());
            if seen.insert(q.clone()) {
                out.push(q);
            }
        }
    }
    out
}

/// Scores every non-degenerate parameter of the grid and returns the best
/// `top_k`, each with its torsion checked against the family claim.
pub fn scan(entry: &FamilyEntry, params: &[Rational], n: u64, top_k: usize) -> Result<Vec<SieveRecord>> {
    if top_k == 0 {
        return Err(Error::Other("top_k must be at least 1".into()));
    }
    if n < 3 {
        return Err(Error::Other(format!("prime bound {n} is below 3")));
    }
    let mut scored: Vec<(usize, Rational, Curve, Score)> = params
        .par_iter()
        .enumerate()
        .filter_map(|(i, q)| {
            let fibre = specialize(entry, q).ok()?;
            let score = mestre_nagao(&fibre.curve, n).ok()?;
            Some((i, q.clone(), fibre.curve, score))
        })
        .collect();
    scored.sort_by(|x, y| y.3.value.total_cmp(&x.3.value).then(x.0.cmp(&y.0)));
    scored.truncate(top_k);
    Ok(scored
        .into_par_iter()
        .map(|(_, q, curve, score)| SieveRecord {
            torsion_ok: torsion_structure(&curve).group == entry.claimed_torsion,
            parameter: q,
            score: score.value,
            primes_used: score.primes_used,
            notes: score.notes(),
        })
        .collect())
}

#[derive(Serialize)]
struct CsvRow<'a> {
    param: String,
    score: String,
    torsion_ok: bool,
    primes_used: usize,
    notes: &'a str,
}

pub fn write_csv<W: Write>(records: &[SieveRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Other(e.to_string());
    for r in records {
        w.serialize(CsvRow {
            param: fmt_rational(&r.parameter),
            score: format!("{:.6}", r.score),
            torsion_ok: r.torsion_ok,
            primes_used: r.primes_used,
            notes: &r.notes,
        })
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Other(e.to_string()))
}
