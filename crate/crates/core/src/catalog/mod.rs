//! Registry of parametrized families: coefficients, claimed points, torsion
//! and how each family descends from a base model.
//!
//! A family is y² = x³ + A(u)x² + B(u)x (+ C(u) for the Z/7 model) over ℚ(u).
//! Everything is parsed from [`data`] on first use and cached.

mod data;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::curves::{tate_curve, tate_to_ab, Curve, Point};
use crate::error::{Error, Result};
use crate::exact_math::{
    factor_int, parse_ratfunc_with, rational_roots, rational_sqrt, Poly, RatFunc, Rational,
};
use crate::torsion::TorsionGroup;

pub use data::{HADANO_CONDITIONS, HADANO_MODEL, HADANO_TWO_PARAM};

/// Claimed point over ℚ(u); `y` is present when it was printed or derived.
#[derive(Clone, Debug, PartialEq)]
pub struct ClaimedPoint {
    pub x: RatFunc,
    pub y: Option<RatFunc>,
}

/// Where an entry comes from.
#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub description: String,
    pub parent: Option<String>,
    /// Label of the substitution, e.g. `v3`.
    pub label: Option<String>,
    /// The parent's parameter as a function of this entry's parameter.
    pub substitution: Option<RatFunc>,
    /// k with A = k·A_parent(sub), B = k²·B_parent(sub); always a square.
    pub scale: Option<RatFunc>,
    /// Tate normal form parameters (b, c) as functions of the parameter.
    pub tate: Option<(RatFunc, RatFunc)>,
    /// Chain from the root, e.g. `Z8_BASE ∘ v3 ∘ w1`.
    pub ancestry: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyEntry {
    pub id: String,
    pub param: String,
    pub a: RatFunc,
    pub b: RatFunc,
    pub c: RatFunc,
    pub claimed_points: Vec<ClaimedPoint>,
    pub claimed_torsion: TorsionGroup,
    pub torsion_generator: Option<ClaimedPoint>,
    /// Rational parameters where the curve is singular or some formula has a pole.
    pub degeneracy: Vec<Rational>,
    pub provenance: Provenance,
}

/// A family evaluated at one parameter value.
#[derive(Clone, Debug)]
pub struct Specialization {
    pub param: Rational,
    pub curve: Curve,
    pub points: Vec<Point>,
    pub torsion_point: Option<Point>,
}

/// All entries in a fixed order.
pub fn catalog_list() -> &'static [FamilyEntry] {
    static CATALOG: OnceLock<Vec<FamilyEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| build().expect("catalog data parses"))
}

pub fn lookup(id: &str) -> Result<&'static FamilyEntry> {
    catalog_list()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownFamily(id.to_string()))
}

fn build() -> Result<Vec<FamilyEntry>> {
    let mut out: Vec<FamilyEntry> = Vec::with_capacity(data::ROWS.len());
    for row in data::ROWS {
        let entry = build_row(row, &out)?;
        out.push(entry);
    }
    Ok(out)
}

fn build_row(row: &data::Row, done: &[FamilyEntry]) -> Result<FamilyEntry> {
    let var = row.param;
    let mut bindings: Vec<(&str, RatFunc)> = Vec::new();
    for (name, src) in row.bindings {
        let f = parse_ratfunc_with(src, var, &bindings)?;
        bindings.push((name, f));
    }
    let parent = match row.parent {
        Some(id) => Some(
            done.iter()
                .find(|e| e.id == id)
                .ok_or_else(|| Error::UnknownFamily(id.to_string()))?,
        ),
        None => None,
    };
    let sub = match row.sub {
        Some((_, src)) => Some(parse_ratfunc_with(src, var, &bindings)?),
        None => None,
    };
    if let (Some(p), Some(s)) = (parent, &sub) {
        bindings.push((p.param.as_str(), s.clone()));
    }
    let parse = |src: &str| parse_ratfunc_with(src, var, &bindings);
    let parse_point = |p: &data::PointText| -> Result<ClaimedPoint> {
        Ok(ClaimedPoint { x: parse(p.x)?, y: p.y.map(parse).transpose()? })
    };

    let torsion = TorsionGroup::from_tag(row.torsion)?;
    let mut entry = match (row.a, parent, &sub) {
        (None, Some(p), Some(s)) => substitute(p, s, var),
        (Some(a), _, _) => {
            let a = parse(a)?;
            let b = parse(row.b.expect("b given with a"))?;
            let c = row.c.map(parse).transpose()?.unwrap_or_else(RatFunc::zero);
            let scale = match (parent, &sub) {
                (Some(p), Some(s)) => {
                    let composed = compose_coeffs(p, s);
                    twist_ratio(&composed, &(a.clone(), b.clone(), c.clone()))
                }
                _ => None,
            };
            let mut e = FamilyEntry {
                id: String::new(),
                param: var.to_string(),
                a,
                b,
                c,
                claimed_points: Vec::new(),
                claimed_torsion: torsion,
                torsion_generator: None,
                degeneracy: Vec::new(),
                provenance: Provenance {
                    description: String::new(),
                    parent: parent.map(|p| p.id.clone()),
                    label: None,
                    substitution: sub.clone(),
                    scale: scale.clone(),
                    tate: None,
                    ancestry: String::new(),
                },
            };
            if let (Some(p), Some(s), Some(k)) = (parent, &sub, &scale) {
                e.torsion_generator = p.torsion_generator.as_ref().map(|g| transport(g, s, k));
            }
            e
        }
        _ => return Err(Error::Other(format!("row {} has neither coefficients nor parent", row.id))),
    };

    entry.id = row.id.to_string();
    entry.claimed_torsion = torsion;
    entry.provenance.description = row.description.to_string();
    entry.provenance.label = row.sub.map(|(l, _)| l.to_string());
    entry.provenance.ancestry = match (parent, row.sub) {
        (Some(p), Some((label, _))) => format!("{} ∘ {label}", p.provenance.ancestry),
        _ => row.id.to_string(),
    };
    if let Some((b, c)) = row.tate {
        entry.provenance.tate = Some((parse(b)?, parse(c)?));
    }
    entry.claimed_points = Vec::new();
    if !row.parent_points.is_empty() {
        let k = entry.provenance.scale.clone().ok_or_else(|| {
            Error::Other(format!("{}: parent points need a twist relation to the parent", row.id))
        })?;
        for src in row.parent_points {
            entry.claimed_points.push(ClaimedPoint { x: &k * &parse(src)?, y: None });
        }
    }
    for p in row.points {
        entry.claimed_points.push(parse_point(p)?);
    }
    if let Some(g) = &row.generator {
        entry.torsion_generator = Some(parse_point(g)?);
    }
    entry.degeneracy = degeneracy(&entry);
    Ok(entry)
}

fn compose_coeffs(e: &FamilyEntry, sub: &RatFunc) -> (RatFunc, RatFunc, RatFunc) {
    (e.a.compose(sub), e.b.compose(sub), e.c.compose(sub))
}

/// Moves a point of the parent family to the child: x ↦ k·x(sub), y ↦ k^{3/2}·y(sub).
fn transport(p: &ClaimedPoint, sub: &RatFunc, k: &RatFunc) -> ClaimedPoint {
    let x = k * &p.x.compose(sub);
    let y = match (&p.y, k.sqrt()) {
        (Some(y), Some(t)) => Some(&(&t * &(&t * &t)) * &y.compose(sub)),
        _ => None,
    };
    ClaimedPoint { x, y }
}

/// The k ∈ ℚ(u)* with (A', B', C') = (kA, k²B, k³C), provided k is a square,
/// so that the two models are isomorphic over ℚ(u).
pub fn twist_ratio(from: &(RatFunc, RatFunc, RatFunc), to: &(RatFunc, RatFunc, RatFunc)) -> Option<RatFunc> {
    let k = if !from.0.is_zero() {
        &to.0 / &from.0
    } else if !from.1.is_zero() {
        let k2 = &to.1 / &from.1;
        // k² = ratio of B; pick the root compatible with C, if any
        let k = k2.sqrt()?;
        if !from.2.is_zero() && &to.2 / &from.2 != &(&k * &k) * &k {
            -&k
        } else {
            k
        }
    } else {
        return None;
    };
    let k2 = &k * &k;
    let ok = to.0 == &k * &from.0 && to.1 == &k2 * &from.1 && to.2 == &(&k2 * &k) * &from.2;
    (ok && !k.is_zero() && k.sqrt().is_some()).then_some(k)
}

/// Polynomial whose k-th power divides `f`, collecting the irreducible factors
/// of multiplicity at least k; 1 for the zero polynomial (no constraint).
fn kth_power_support(f: &Poly, k: usize) -> Option<Poly> {
    if f.is_zero() {
        return None;
    }
    let mut g = f.clone();
    let mut d = f.clone();
    for _ in 1..k {
        d = d.derivative();
        g = g.gcd(&d);
    }
    Some(g.squarefree_part())
}

fn rational_valuation(q: &Rational, p: &BigInt) -> i64 {
    let count = |n: &BigInt| {
        let mut n = n.abs();
        let mut e = 0i64;
        while !n.is_zero() && (&n % p).is_zero() {
            n /= p;
            e += 1;
        }
        e
    };
    count(q.numer()) - count(q.denom())
}

/// Rescales (A, B, C) by k = t² to polynomials free of removable twist content:
/// no polynomial f with f² | A, f⁴ | B, f⁶ | C, and the integer scaling chosen
/// as small as integrality allows. Returns the new triple and k.
pub fn normalize_twist(a: &RatFunc, b: &RatFunc, c: &RatFunc) -> (RatFunc, RatFunc, RatFunc, RatFunc) {
    let coeffs = [a, b, c];
    // clear denominators with t = lcm of denominators
    let mut t = Poly::one();
    for f in coeffs {
        let g = t.gcd(f.den());
        t = (&t * f.den()).exact_div(&g);
    }
    let tf = RatFunc::from_poly(t);
    let mut scaled: Vec<Poly> = coeffs
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let r = &tf.pow(2 * (i as i32 + 1)) * *f;
            debug_assert!(r.is_polynomial());
            r.num().clone()
        })
        .collect();
    let mut t_total = tf;
    loop {
        let supports: Vec<Poly> = scaled
            .iter()
            .enumerate()
            .filter_map(|(i, f)| kth_power_support(f, 2 * (i + 1)))
            .collect();
        let Some(mut f) = supports.first().cloned() else { break };
        for s in &supports[1..] {
            f = f.gcd(s);
        }
        if f.is_constant() {
            break;
        }
        for (i, p) in scaled.iter_mut().enumerate() {
            if !p.is_zero() {
                *p = p.exact_div(&f.pow(2 * (i as u32 + 1)));
            }
        }
        t_total = &t_total / &RatFunc::from_poly(f);
    }
    // integer part of the twist, prime by prime
    let contents: Vec<Option<Rational>> =
        scaled.iter().map(|p| (!p.is_zero()).then(|| p.content())).collect();
    let mut primes: Vec<BigInt> = Vec::new();
    for c in contents.iter().flatten() {
        for n in [c.numer(), c.denom()] {
            if !n.is_one() {
                primes.extend(factor_int(n).into_iter().map(|(p, _)| p));
            }
        }
    }
    primes.sort();
    primes.dedup();
    let mut s = Rational::one();
    for p in &primes {
        let e = contents
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.as_ref().map(|c| (i, c)))
            .map(|(i, c)| {
                let k = 2 * (i as i64 + 1);
                Integer::div_ceil(&-rational_valuation(c, p), &k)
            })
            .max()
            .unwrap_or(0);
        let pe = Rational::from_integer(p.pow(e.unsigned_abs() as u32));
        s *= if e >= 0 { pe } else { pe.recip() };
    }
    t_total = t_total.scale(&s);
    let k = &t_total * &t_total;
    let out: Vec<RatFunc> = coeffs
        .iter()
        .enumerate()
        .map(|(i, f)| &k.pow(i as i32 + 1) * *f)
        .collect();
    (out[0].clone(), out[1].clone(), out[2].clone(), k)
}

/// Composes the entry with `param_old = sub(new_param)`, renormalizes the
/// coefficients and carries the claimed points and torsion generator along.
pub fn substitute(entry: &FamilyEntry, sub: &RatFunc, new_param: &str) -> FamilyEntry {
    let (a0, b0, c0) = compose_coeffs(entry, sub);
    let (a, b, c, k) = normalize_twist(&a0, &b0, &c0);
    let claimed_points = entry
        .claimed_points
        .iter()
        .map(|p| transport(p, sub, &k))
        .collect();
    let torsion_generator = entry.torsion_generator.as_ref().map(|g| transport(g, sub, &k));
    let mut e = FamilyEntry {
        id: format!("{}[{}]", entry.id, new_param),
        param: new_param.to_string(),
        a,
        b,
        c,
        claimed_points,
        claimed_torsion: entry.claimed_torsion,
        torsion_generator,
        degeneracy: Vec::new(),
        provenance: Provenance {
            description: format!("substitution into {}", entry.id),
            parent: Some(entry.id.clone()),
            label: None,
            substitution: Some(sub.clone()),
            scale: Some(k),
            tate: None,
            ancestry: format!("{} ∘ {}", entry.provenance.ancestry, sub.display_in(new_param)),
        },
    };
    e.degeneracy = degeneracy(&e);
    e
}

/// Discriminant of the cubic x³ + a x² + b x + c, as a rational function.
fn cubic_discriminant(a: &RatFunc, b: &RatFunc, c: &RatFunc) -> RatFunc {
    let k = |n: i64| Rational::from_integer(BigInt::from(n));
    let a2 = a * a;
    let terms = [
        (&(&a2 * a) * c).scale(&k(-4)),
        &a2 * &(b * b),
        (&(a * b) * c).scale(&k(18)),
        (&(b * b) * b).scale(&k(-4)),
        (c * c).scale(&k(-27)),
    ];
    terms.iter().fold(RatFunc::zero(), |acc, t| &acc + t)
}

/// j-invariant of the family as an element of ℚ(u).
pub fn j_invariant(entry: &FamilyEntry) -> RatFunc {
    let (a, b, c) = (&entry.a, &entry.b, &entry.c);
    let c4 = &(a * a) - &b.scale(&Rational::from_integer(BigInt::from(3)));
    let num = (&(&c4 * &c4) * &c4).scale(&Rational::from_integer(BigInt::from(256)));
    &num / &cubic_discriminant(a, b, c)
}

fn degeneracy(e: &FamilyEntry) -> Vec<Rational> {
    let mut polys: Vec<Poly> = vec![cubic_discriminant(&e.a, &e.b, &e.c).num().clone()];
    for f in [&e.a, &e.b, &e.c] {
        polys.push(f.den().clone());
    }
    for p in e.claimed_points.iter().chain(e.torsion_generator.iter()) {
        polys.push(p.x.den().clone());
        if let Some(y) = &p.y {
            polys.push(y.den().clone());
        }
    }
    let mut roots: Vec<Rational> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .flat_map(rational_roots)
        .collect();
    roots.sort();
    roots.dedup();
    roots
}

fn degenerate(q: &Rational, reason: &str) -> Error {
    Error::DegenerateParameter { param: q.clone(), reason: reason.to_string() }
}

fn lift(
    e: &FamilyEntry,
    curve: &Curve,
    p: &ClaimedPoint,
    index: usize,
    q: &Rational,
) -> Result<Point> {
    let x = p.x.eval(q).ok_or_else(|| degenerate(q, "denominator zero"))?;
    let y = match &p.y {
        Some(y) => y.eval(q).ok_or_else(|| degenerate(q, "denominator zero"))?,
        None => rational_sqrt(&curve.rhs(&x)).ok_or_else(|| Error::NonSquareY {
            entry: e.id.clone(),
            index,
            param: q.clone(),
        })?,
    };
    let pt = Point::new(x, y);
    if !curve.contains(&pt) {
        return Err(Error::PointNotOnCurve);
    }
    Ok(pt)
}

/// Evaluates the family at `q` and lifts every claimed point to (x, y).
pub fn specialize(entry: &FamilyEntry, q: &Rational) -> Result<Specialization> {
    if entry.degeneracy.contains(q) {
        return Err(degenerate(q, "listed in the degeneracy set"));
    }
    let eval = |f: &RatFunc| f.eval(q).ok_or_else(|| degenerate(q, "denominator zero"));
    let curve = Curve::cubic(eval(&entry.a)?, eval(&entry.b)?, eval(&entry.c)?)
        .map_err(|_| degenerate(q, "singular curve"))?;
    let points = entry
        .claimed_points
        .iter()
        .enumerate()
        .map(|(i, p)| lift(entry, &curve, p, i, q))
        .collect::<Result<Vec<_>>>()?;
    let torsion_point = entry
        .torsion_generator
        .as_ref()
        .map(|g| lift(entry, &curve, g, entry.claimed_points.len(), q))
        .transpose()?;
    Ok(Specialization { param: q.clone(), curve, points, torsion_point })
}

/// Model from the Tate normal form at `q`, moved to y² = x³ + Ax² + Bx, when
/// the entry records one.
pub fn tate_model_at(entry: &FamilyEntry, q: &Rational) -> Option<Result<Curve>> {
    let (b, c) = entry.provenance.tate.as_ref()?;
    let eval = |f: &RatFunc| f.eval(q).ok_or_else(|| degenerate(q, "denominator zero"));
    Some((|| {
        let t = tate_curve(&eval(b)?, &eval(c)?)?;
        Ok(tate_to_ab(&t)?.0)
    })())
}

fn ratfunc_json(f: &RatFunc) -> Value {
    let coeffs = |p: &Poly| -> Vec<String> { p.coeffs().iter().map(|c| c.to_string()).collect() };
    json!({ "num": coeffs(f.num()), "den": coeffs(f.den()) })
}

fn point_json(p: &ClaimedPoint) -> Value {
    json!({ "x": ratfunc_json(&p.x), "y": p.y.as_ref().map(ratfunc_json) })
}

impl FamilyEntry {
    pub fn is_ab(&self) -> bool {
        self.c.is_zero()
    }

    pub fn to_json(&self) -> Value {
        let mut m = BTreeMap::new();
        m.insert("id", json!(self.id));
        m.insert("parameter", json!(self.param));
        m.insert("model", json!(if self.is_ab() { "AB" } else { "W" }));
        m.insert("A", ratfunc_json(&self.a));
        m.insert("B", ratfunc_json(&self.b));
        if !self.is_ab() {
            m.insert("C", ratfunc_json(&self.c));
        }
        m.insert("claimed_points", Value::Array(self.claimed_points.iter().map(point_json).collect()));
        m.insert("torsion", json!(self.claimed_torsion.tag()));
        m.insert("torsion_generator", self.torsion_generator.as_ref().map(point_json).unwrap_or(Value::Null));
        m.insert(
            "degeneracy",
            json!(self.degeneracy.iter().map(|q| q.to_string()).collect::<Vec<_>>()),
        );
        let p = &self.provenance;
        m.insert(
            "provenance",
            json!({
                "description": p.description,
                "parent": p.parent,
                "substitution": p.substitution.as_ref().map(|s| s.display_in(&self.param)),
                "label": p.label,
                "ancestry": p.ancestry,
            }),
        );
        serde_json::to_value(m).expect("json map")
    }
}

pub fn catalog_json() -> Value {
    Value::Array(catalog_list().iter().map(FamilyEntry::to_json).collect())
}
