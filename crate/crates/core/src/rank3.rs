//! Rank-3 curves from matching two rank-2 chains.
//!
//! Both rank-2 families of a torsion kind descend from one rank-1 family with
//! parameter w, through w = w₁(r) and w = w₂(s). Whenever w₁(r) = w₂(s) the
//! fibre carries the two points of the first family and the new point of the
//! second. Clearing denominators in that equation gives a quadratic in s whose
//! discriminant is a quartic in r, and the quartic with its rational point is
//! an elliptic curve. Rational points on it give the matching r.

use std::collections::HashSet;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::catalog::{self, FamilyEntry};
use crate::curves::{ab_isomorphism, apply_ab_isomorphism, tate_to_ab, AbMap, Curve, GeneralCurve, Point};
use crate::error::{Error, Result};
use crate::exact_math::{fmt_rational, parse_poly, rat, rational_sqrt, solve_quadratic, Poly, RatFunc, Rational};
use crate::heights::naive_height;
use crate::torsion::{torsion_structure, TorsionGroup};
use crate::verify::check_independent;

/// Integer x-range searched on the auxiliary cubic.
pub const DEFAULT_SEARCH_BOUND: i64 = 400;
/// Largest multiple of each auxiliary generator that is walked.
pub const MAX_MULTIPLE: i64 = 4;
/// Non-torsion auxiliary points used as generators.
const MAX_GENERATORS: usize = 3;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Rank3Kind {
    Z8,
    Z2xZ6,
}

impl Rank3Kind {
    pub fn parse(s: &str) -> Result<Rank3Kind> {
        match s.to_ascii_lowercase().as_str() {
            "z8" => Ok(Rank3Kind::Z8),
            "z2x6" | "z2xz6" => Ok(Rank3Kind::Z2xZ6),
            _ => Err(Error::Parse(format!("unknown torsion kind {s:?}, expected z8 or z2x6"))),
        }
    }

    pub fn torsion(&self) -> TorsionGroup {
        match self {
            Rank3Kind::Z8 => TorsionGroup::Cyclic(8),
            Rank3Kind::Z2xZ6 => TorsionGroup::TwoBy(6),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Rank3Kind::Z8 => "z8",
            Rank3Kind::Z2xZ6 => "z2x6",
        }
    }
}

/// t² = a₄r⁴ + a₃r³ + a₂r² + a₁r + a₀ with a known rational point.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticCurve {
    /// a₄, a₃, a₂, a₁, a₀.
    pub coeffs: [Rational; 5],
    pub seed: (Rational, Rational),
}

impl QuarticCurve {
    pub fn new(coeffs: [Rational; 5], seed: (Rational, Rational)) -> Result<QuarticCurve> {
        if coeffs[0].is_zero() {
            return Err(Error::Other("quartic needs a nonzero leading coefficient".into()));
        }
        let q = QuarticCurve { coeffs, seed };
        if !q.contains(&q.seed.0, &q.seed.1) {
            return Err(Error::PointNotOnCurve);
        }
        Ok(q)
    }

    pub fn from_ints(c: [i64; 5], seed: (i64, i64)) -> Result<QuarticCurve> {
        QuarticCurve::new(c.map(rat), (rat(seed.0), rat(seed.1)))
    }

    pub fn poly(&self) -> Poly {
        Poly::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn eval(&self, r: &Rational) -> Rational {
        self.poly().eval(r)
    }

    pub fn contains(&self, r: &Rational, t: &Rational) -> bool {
        t * t == self.eval(r)
    }
}

/// Birational map between a quartic and an AB model.
///
/// With r = r₀ + z the quartic becomes T² = az⁴ + bz³ + cz² + dz + q², and
/// x = (2q(T+q) + dz)/z², y = (4q²(T+q) + 2q(dz + cz²) − d²z²/(2q))/z³ lands on
/// y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆. That model is then moved to AB form.
#[derive(Clone, Debug)]
pub struct QuarticMap {
    pub quartic: QuarticCurve,
    pub general: GeneralCurve,
    pub curve: Curve,
    to_ab: AbMap,
    shifted: [Rational; 4],
}

impl QuarticMap {
    fn q(&self) -> &Rational {
        &self.quartic.seed.1
    }

    /// Image of (r, t) on the AB model.
    pub fn forward(&self, r: &Rational, t: &Rational) -> Result<Point> {
        if !self.quartic.contains(r, t) {
            return Err(Error::PointNotOnCurve);
        }
        let [_, _, c, d] = &self.shifted;
        let q = self.q();
        let z = r - &self.quartic.seed.0;
        let general = if z.is_zero() {
            if t == q {
                Point::Infinity
            } else {
                let [a1, a2, a3, _, _] = &self.general.a;
                Point::new(-a2.clone(), a1 * a2 - a3)
            }
        } else {
            let two = rat(2);
            let tq = t + q;
            let x = (&two * q * &tq + d * &z) / (&z * &z);
            let y = (rat(4) * q * q * &tq + &two * q * (d * &z + c * &z * &z) - d * d * &z * &z / (&two * q))
                / (&z * &z * &z);
            Point::new(x, y)
        };
        Ok(self.to_ab.apply(&general))
    }

    /// Preimage of an AB point; `None` where the map has no finite value.
    pub fn inverse(&self, p: &Point) -> Option<(Rational, Rational)> {
        let Point::Affine { x, y } = self.to_ab.invert(p) else {
            return Some(self.quartic.seed.clone());
        };
        if y.is_zero() {
            return None;
        }
        let [_, _, c, d] = &self.shifted;
        let q = self.q();
        let two = rat(2);
        let z = (&two * q * (&x + c) - d * d / (&two * q)) / &y;
        let t = -q.clone() + &z * (&z * &x - d) / (&two * q);
        let r = &self.quartic.seed.0 + &z;
        self.quartic.contains(&r, &t).then_some((r, t))
    }
}

/// Weierstrass model of a quartic with a rational point.
pub fn quartic_to_cubic(quartic: &QuarticCurve) -> Result<QuarticMap> {
    let f = quartic.poly();
    if f.gcd(&f.derivative()).degree() != Some(0) {
        return Err(Error::DegenerateQuartic);
    }
    let (r0, q) = &quartic.seed;
    if q.is_zero() {
        return Err(Error::Other("the seed point needs t ≠ 0".into()));
    }
    let g = f.compose(&Poly::new(vec![r0.clone(), Rational::one()]));
    let (a, b, c, d) = (g.coeff(4), g.coeff(3), g.coeff(2), g.coeff(1));
    let four_q2 = rat(4) * q * q;
    let a1 = &d / q;
    let a2 = &c - &d * &d / &four_q2;
    let a3 = rat(2) * q * &b;
    let a4 = -&four_q2 * &a;
    let a6 = &a2 * &a4;
    let general = GeneralCurve::new([a1, a2, a3, a4, a6]).map_err(|_| Error::DegenerateQuartic)?;
    let (curve, to_ab) = tate_to_ab(&general)?;
    let map = QuarticMap { quartic: quartic.clone(), general, curve, to_ab, shifted: [a, b, c, d] };
    let image = map.forward(r0, q)?;
    debug_assert!(image.is_infinity());
    Ok(map)
}

/// Matching data for one torsion kind.
#[derive(Clone, Debug)]
pub struct MatchSpec {
    pub kind: Rank3Kind,
    /// Coefficients of s⁰, s¹, s² in the matching polynomial, as polynomials in r.
    pub s_coeffs: [Poly; 3],
    /// Rank-2 family fed by r and the one fed by s.
    pub first: &'static str,
    pub second: &'static str,
    /// Index of the point of `second` that is new relative to the common parent.
    pub second_new_point: usize,
    pub quartic: QuarticCurve,
    /// The auxiliary cubic in the small model quoted with the construction.
    pub aux_cubic: Curve,
}

impl MatchSpec {
    pub fn new(kind: Rank3Kind) -> MatchSpec {
        let polys = |cs: [&str; 3]| cs.map(|c| parse_poly(c, "r").expect("static matching polynomial"));
        match kind {
            Rank3Kind::Z8 => MatchSpec {
                kind,
                s_coeffs: polys(["319 + 290 r - 29 r^2", "-120 r", "-11 + 10 r + r^2"]),
                first: "Z8_R2_A",
                second: "Z8_R2_B",
                second_new_point: 1,
                quartic: QuarticCurve::from_ints([29, 0, 62, 0, 3509], (1, 60)).expect("seed"),
                aux_cubic: Curve::ab(rat(-463), rat(45936)).expect("nonsingular"),
            },
            Rank3Kind::Z2xZ6 => MatchSpec {
                kind,
                s_coeffs: polys(["-35 + 10 r - 15 r^2", "-14 - 4 r + 2 r^2", "21 + 2 r + r^2"]),
                first: "Z26_R2_A",
                second: "Z26_R2_B",
                second_new_point: 1,
                quartic: QuarticCurve::from_ints([1, 1, 20, -7, 49], (1, 8)).expect("seed"),
                aux_cubic: Curve::ab(rat(-43), rat(280)).expect("nonsingular"),
            },
        }
    }

    pub fn first_entry(&self) -> &'static FamilyEntry {
        catalog::lookup(self.first).expect("rank-2 entry")
    }

    pub fn second_entry(&self) -> &'static FamilyEntry {
        catalog::lookup(self.second).expect("rank-2 entry")
    }

    /// w₁ and w₂ as recorded on the two rank-2 entries.
    pub fn substitutions(&self) -> (RatFunc, RatFunc) {
        let sub = |e: &FamilyEntry| e.provenance.substitution.clone().expect("rank-2 entry has a substitution");
        (sub(self.first_entry()), sub(self.second_entry()))
    }

    /// c₁² − 4c₀c₂, the s-discriminant as a polynomial in r.
    pub fn discriminant(&self) -> Poly {
        let [c0, c1, c2] = &self.s_coeffs;
        &(c1 * c1) - &(&(c0 * c2) * &Poly::constant(rat(4)))
    }
}

/// Rational s with w₁(r) = w₂(s).
pub fn solve_match(spec: &MatchSpec, r: &Rational) -> Vec<Rational> {
    let [c0, c1, c2] = spec.s_coeffs.each_ref().map(|c| c.eval(r));
    solve_quadratic(&c2, &c1, &c0).unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuxPoint {
    pub point: Point,
    pub torsion: bool,
}

/// Points with integer x in [−bound, bound] on the auxiliary cubic, one per ±y.
pub fn aux_points(spec: &MatchSpec, bound: i64) -> Vec<AuxPoint> {
    let e = &spec.aux_cubic;
    (-bound..=bound)
        .into_par_iter()
        .filter_map(|x| {
            let x = rat(x);
            let y = rational_sqrt(&e.rhs(&x))?;
            let point = Point::new(x, y);
            let torsion = e.is_torsion(&point).ok()?;
            Some(AuxPoint { point, torsion })
        })
        .collect()
}

/// A matched fibre: the parameter of the first rank-2 family and three points on it.
#[derive(Clone, Debug)]
pub struct Rank3Candidate {
    pub r: Rational,
    pub s: Rational,
    /// Common value w₁(r) = w₂(s) of the rank-1 parameter.
    pub w: Rational,
    pub aux_point: Point,
    pub curve: Curve,
    pub points: Vec<Point>,
}

/// A fibre dropped by the filters, with the reason.
#[derive(Clone, Debug, PartialEq)]
pub struct Rejection {
    pub r: Rational,
    pub s: Rational,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct Generation {
    pub accepted: Vec<Rank3Candidate>,
    pub rejected: Vec<Rejection>,
}

/// Torsion subgroup elements as explicit points.
fn torsion_points(e: &Curve) -> Vec<Point> {
    let t = torsion_structure(e);
    let mut pts = vec![Point::Infinity];
    for g in &t.generators {
        let mut next = Vec::new();
        for p in &pts {
            let mut q = p.clone();
            loop {
                q = e.add(&q, g).expect("torsion points lie on the curve");
                if pts.contains(&q) || next.contains(&q) {
                    break;
                }
                next.push(q.clone());
            }
        }
        pts.extend(next);
    }
    pts
}

/// Points nP + T on the auxiliary cubic, sorted by naive height.
pub fn aux_stream(spec: &MatchSpec, search_bound: i64) -> Vec<Point> {
    let e = &spec.aux_cubic;
    let mut gens: Vec<Point> = aux_points(spec, search_bound)
        .into_iter()
        .filter(|p| !p.torsion)
        .map(|p| p.point)
        .collect();
    gens.sort_by(|p, q| height_key(p).total_cmp(&height_key(q)));
    gens.truncate(MAX_GENERATORS);
    let torsion = torsion_points(e);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |p: Point| {
        if seen.insert(p.clone()) {
            out.push(p);
        }
    };
    for t in &torsion {
        push(t.clone());
    }
    for g in &gens {
        for n in 1..=MAX_MULTIPLE {
            let Ok(np) = e.scalar_mul(n, g) else { continue };
            for t in &torsion {
                for base in [np.clone(), e.neg(&np)] {
                    if let Ok(p) = e.add(&base, t) {
                        push(p);
                    }
                }
            }
        }
    }
    out.sort_by(|p, q| height_key(p).total_cmp(&height_key(q)));
    out
}

fn height_key(p: &Point) -> f64 {
    naive_height(p).unwrap_or(0.0)
}

fn evaluate(spec: &MatchSpec, r: &Rational, s: &Rational, aux: &Point) -> std::result::Result<Rank3Candidate, String> {
    let (w1, w2) = spec.substitutions();
    let w = w1.eval(r).ok_or("w₁ has a pole")?;
    if w2.eval(s).as_ref() != Some(&w) {
        return Err("w₂(s) differs from w₁(r)".into());
    }
    let first = catalog::specialize(spec.first_entry(), r).map_err(|e| e.to_string())?;
    let second = catalog::specialize(spec.second_entry(), s).map_err(|e| e.to_string())?;
    let (shift, u) = ab_isomorphism(&second.curve, &first.curve).ok_or("the two fibres are not isomorphic")?;
    let third = apply_ab_isomorphism(&shift, &u, &second.points[spec.second_new_point]);
    let mut points = first.points;
    points.push(third);
    Ok(Rank3Candidate { r: r.clone(), s: s.clone(), w, aux_point: aux.clone(), curve: first.curve, points })
}

/// Walks the auxiliary points through the quartic map and keeps each fibre
/// that survives the degeneracy filters, once per value of w.
pub fn generate_all(spec: &MatchSpec, search_bound: i64) -> Result<Generation> {
    let map = quartic_to_cubic(&spec.quartic)?;
    let (shift, u) = ab_isomorphism(&spec.aux_cubic, &map.curve)
        .ok_or_else(|| Error::Other("auxiliary cubic is not isomorphic to the quartic".into()))?;
    let stream = aux_stream(spec, search_bound);
    let mut rs: Vec<(Rational, Point)> = Vec::new();
    for p in &stream {
        if let Some((r, _)) = map.inverse(&apply_ab_isomorphism(&shift, &u, p)) {
            if !rs.iter().any(|(q, _)| q == &r) {
                rs.push((r, p.clone()));
            }
        }
    }
    let evaluated: Vec<Vec<(Rational, Rational, std::result::Result<Rank3Candidate, String>)>> = rs
        .par_iter()
        .map(|(r, aux)| {
            solve_match(spec, r)
                .into_iter()
                .map(|s| (r.clone(), s.clone(), evaluate(spec, r, &s, aux)))
                .collect()
        })
        .collect();
    let mut out = Generation::default();
    for (r, s, res) in evaluated.into_iter().flatten() {
        match res {
            // w and −w give the same fibre
            Ok(c) => {
                if !out.accepted.iter().any(|o| ab_isomorphism(&c.curve, &o.curve).is_some()) {
                    out.accepted.push(c);
                }
            }
            Err(reason) => out.rejected.push(Rejection { r, s, reason }),
        }
    }
    Ok(out)
}

/// The first `count` non-degenerate fibres.
pub fn generate_parameters(spec: &MatchSpec, count: usize) -> Result<Generation> {
    if count == 0 {
        return Ok(Generation::default());
    }
    let mut all = generate_all(spec, DEFAULT_SEARCH_BOUND)?;
    if all.accepted.len() < count {
        return Err(Error::ExhaustedSearch {
            attempts: all.accepted.len() + all.rejected.len(),
            found: all.accepted.len(),
            wanted: count,
        });
    }
    all.accepted.truncate(count);
    Ok(all)
}

/// A certified rank-3 fibre.
#[derive(Clone, Debug)]
pub struct Rank3Curve {
    pub candidate: Rank3Candidate,
    pub torsion: TorsionGroup,
    pub regulator: f64,
}

impl Rank3Curve {
    pub fn to_json(&self) -> Value {
        let c = &self.candidate;
        json!({
            "curve": c.curve.to_json(),
            "points": c.points.iter().map(Point::to_json).collect::<Vec<_>>(),
            "regulator": self.regulator,
            "torsion": self.torsion.tag(),
            "provenance": {
                "r": fmt_rational(&c.r),
                "s": fmt_rational(&c.s),
                "w": fmt_rational(&c.w),
                "aux_point": c.aux_point.to_json(),
            },
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct Rank3Run {
    pub curves: Vec<Rank3Curve>,
    /// Fibres that passed the filters but failed torsion or independence.
    pub failures: Vec<(Rank3Candidate, String)>,
    pub rejected: Vec<Rejection>,
}

impl Rank3Run {
    pub fn to_json(&self, kind: Rank3Kind) -> Value {
        json!({
            "torsion": kind.tag(),
            "curves": self.curves.iter().map(Rank3Curve::to_json).collect::<Vec<_>>(),
            "failures": self.failures.iter().map(|(c, why)| json!({
                "r": fmt_rational(&c.r), "s": fmt_rational(&c.s), "reason": why,
            })).collect::<Vec<_>>(),
            "rejected": self.rejected.iter().map(|j| json!({
                "r": fmt_rational(&j.r), "s": fmt_rational(&j.s), "reason": j.reason,
            })).collect::<Vec<_>>(),
        })
    }
}

fn certify(spec: &MatchSpec, c: &Rank3Candidate, eps: f64) -> std::result::Result<Rank3Curve, String> {
    if !c.points.iter().all(|p| c.curve.contains(p)) {
        return Err("point off the curve".into());
    }
    let torsion = torsion_structure(&c.curve).group;
    if torsion != spec.kind.torsion() {
        return Err(format!("torsion {} instead of {}", torsion.tag(), spec.kind.torsion().tag()));
    }
    let regulator = check_independent(&c.curve, &c.points, eps).map_err(|e| e.to_string())?;
    Ok(Rank3Curve { candidate: c.clone(), torsion, regulator })
}

/// Certifies fibres in stream order until `count` pass. At most `max_attempts`
/// candidates are certified.
pub fn build_rank3_with(spec: &MatchSpec, count: usize, eps: f64, search_bound: i64, max_attempts: usize) -> Result<Rank3Run> {
    let generation = generate_all(spec, search_bound)?;
    let mut run = Rank3Run { rejected: generation.rejected, ..Rank3Run::default() };
    if count == 0 {
        return Ok(run);
    }
    let pool: Vec<&Rank3Candidate> = generation.accepted.iter().take(max_attempts).collect();
    let chunk = count.max(rayon::current_num_threads());
    for batch in pool.chunks(chunk) {
        let results: Vec<_> = batch.par_iter().map(|c| certify(spec, c, eps)).collect();
        for (c, res) in batch.iter().zip(results) {
            match res {
                Ok(curve) if run.curves.len() < count => run.curves.push(curve),
                Ok(_) => {}
                Err(why) => run.failures.push(((*c).clone(), why)),
            }
        }
        if run.curves.len() >= count {
            return Ok(run);
        }
    }
    if run.curves.is_empty() && !run.failures.is_empty() {
        return Err(Error::IndependenceFailure(run.failures.len()));
    }
    Err(Error::ExhaustedSearch { attempts: pool.len(), found: run.curves.len(), wanted: count })
}

pub fn build_rank3(spec: &MatchSpec, count: usize, eps: f64) -> Result<Rank3Run> {
    build_rank3_with(spec, count, eps, DEFAULT_SEARCH_BOUND, (4 * count).max(12))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{ab_twist_factor, invert_ab_isomorphism, two_torsion_roots};
    use crate::exact_math::frac;

    #[test]
    fn seeds_lie_on_quartics() {
        for kind in [Rank3Kind::Z8, Rank3Kind::Z2xZ6] {
            let q = MatchSpec::new(kind).quartic;
            assert!(q.contains(&q.seed.0, &q.seed.1));
        }
        assert_eq!(MatchSpec::new(Rank3Kind::Z8).quartic.eval(&rat(1)), rat(3600));
        assert_eq!(MatchSpec::new(Rank3Kind::Z2xZ6).quartic.eval(&rat(1)), rat(64));
    }

    #[test]
    fn discriminant_is_square_times_quartic() {
        for (kind, k) in [(Rank3Kind::Z8, 4), (Rank3Kind::Z2xZ6, 64)] {
            let spec = MatchSpec::new(kind);
            assert_eq!(spec.discriminant(), spec.quartic.poly().scale(&rat(k)));
        }
    }

    #[test]
    fn matching_polynomial_is_cleared_equation() {
        for kind in [Rank3Kind::Z8, Rank3Kind::Z2xZ6] {
            let spec = MatchSpec::new(kind);
            let (w1, w2) = spec.substitutions();
            for r in [rat(2), frac(-3, 7), rat(5)] {
                for s in solve_match(&spec, &r) {
                    assert_eq!(w1.eval(&r), w2.eval(&s));
                }
                // also check the polynomial vanishes at random matches built the other way
                let w = w1.eval(&r).unwrap();
                let lhs = (w2.num().clone() - w2.den().scale(&w)).primitive();
                let [c0, c1, c2] = spec.s_coeffs.each_ref().map(|c| c.eval(&r));
                let rhs = Poly::new(vec![c0, c1, c2]).primitive();
                assert!(lhs == rhs || lhs == -rhs.clone(), "{kind:?} at {r}");
            }
        }
    }

    #[test]
    fn solve_match_examples() {
        let z8 = MatchSpec::new(Rank3Kind::Z8);
        let z26 = MatchSpec::new(Rank3Kind::Z2xZ6);
        assert_eq!(solve_match(&z8, &rat(1)), vec![frac(29, 6)]);
        assert_eq!(solve_match(&z26, &rat(1)), vec![rat(-1), frac(5, 3)]);
        assert!(solve_match(&z8, &rat(2)).is_empty());
    }

    #[test]
    fn quartic_images_match_quoted_cubics() {
        for kind in [Rank3Kind::Z8, Rank3Kind::Z2xZ6] {
            let spec = MatchSpec::new(kind);
            let map = quartic_to_cubic(&spec.quartic).unwrap();
            assert_eq!(map.curve.j_invariant(), spec.aux_cubic.j_invariant());
            assert!(ab_isomorphism(&spec.aux_cubic, &map.curve).is_some());
            let (r0, t0) = &spec.quartic.seed;
            assert!(map.forward(r0, t0).unwrap().is_infinity());
            assert_eq!(map.inverse(&Point::Infinity), Some(spec.quartic.seed.clone()));
        }
    }

    #[test]
    fn twist_scaling_is_explicit() {
        // Translating a 2-torsion point to 0 and rescaling lands exactly on the quoted model.
        let spec = MatchSpec::new(Rank3Kind::Z8);
        let map = quartic_to_cubic(&spec.quartic).unwrap();
        let found = two_torsion_roots(&map.curve).into_iter().any(|e| {
            let a = map.curve.a() + rat(3) * &e;
            let b = rat(3) * &e * &e + rat(2) * map.curve.a() * &e + map.curve.b();
            Curve::ab(a, b).ok().and_then(|c| ab_twist_factor(&c, &spec.aux_cubic)).is_some()
        });
        assert!(found);
    }

    #[test]
    fn maps_round_trip() {
        for kind in [Rank3Kind::Z8, Rank3Kind::Z2xZ6] {
            let spec = MatchSpec::new(kind);
            let map = quartic_to_cubic(&spec.quartic).unwrap();
            let (shift, u) = ab_isomorphism(&spec.aux_cubic, &map.curve).unwrap();
            for p in aux_stream(&spec, 120).into_iter().take(20) {
                let q = apply_ab_isomorphism(&shift, &u, &p);
                assert!(map.curve.contains(&q));
                assert_eq!(invert_ab_isomorphism(&shift, &u, &q), p);
                if let Some((r, t)) = map.inverse(&q) {
                    assert!(spec.quartic.contains(&r, &t));
                    assert_eq!(map.forward(&r, &t).unwrap(), q);
                    // Δ(r) is a square by construction
                    assert!(rational_sqrt(&spec.discriminant().eval(&r)).is_some());
                }
            }
        }
    }

    #[test]
    fn degenerate_quartic() {
        let q = QuarticCurve::from_ints([1, 0, 2, 0, 1], (0, 1)).unwrap();
        assert_eq!(quartic_to_cubic(&q).unwrap_err(), Error::DegenerateQuartic);
    }

    #[test]
    fn auxiliary_points() {
        let z8 = aux_points(&MatchSpec::new(Rank3Kind::Z8), 400);
        let p = AuxPoint { point: Point::new(rat(99), rat(990)), torsion: false };
        assert!(z8.contains(&p));
        for x in [0, 144, 319] {
            assert!(z8.iter().any(|a| a.torsion && a.point == Point::new(rat(x), rat(0))));
        }
        let z26 = aux_points(&MatchSpec::new(Rank3Kind::Z2xZ6), 100);
        assert!(z26.contains(&AuxPoint { point: Point::new(rat(7), rat(14)), torsion: false }));
        for x in [0, 8, 35] {
            assert!(z26.iter().any(|a| a.torsion && a.point == Point::new(rat(x), rat(0))));
        }
    }

    #[test]
    fn second_chain_contributes_a_new_point() {
        // The other point of the second family is the image of the common parent's point.
        for kind in [Rank3Kind::Z8, Rank3Kind::Z2xZ6] {
            let spec = MatchSpec::new(kind);
            let c = &generate_parameters(&spec, 1).unwrap().accepted[0];
            let second = catalog::specialize(spec.second_entry(), &c.s).unwrap();
            let (shift, u) = ab_isomorphism(&second.curve, &c.curve).unwrap();
            let old = apply_ab_isomorphism(&shift, &u, &second.points[1 - spec.second_new_point]);
            let e = &c.curve;
            let diffs = [e.add(&old, &e.neg(&c.points[0])).unwrap(), e.add(&old, &c.points[0]).unwrap()];
            assert!(diffs.iter().any(|d| e.is_torsion(d).unwrap()), "{kind:?}");
        }
    }

    #[test]
    fn generation_examples() {
        let z26 = generate_parameters(&MatchSpec::new(Rank3Kind::Z2xZ6), 1).unwrap();
        // the hand solution r = 1, s = −1 lands on w = −2, a singular fibre
        assert!(z26.rejected.iter().any(|j| j.r == rat(1) && j.s == rat(-1)));
        let (w1, w2) = MatchSpec::new(Rank3Kind::Z2xZ6).substitutions();
        assert_eq!((w1.eval(&rat(1)), w2.eval(&rat(-1))), (Some(rat(-2)), Some(rat(-2))));
        let first = &z26.accepted[0];
        assert_eq!(num_traits::Signed::abs(&first.w), frac(1954, 449));

        let z8 = generate_parameters(&MatchSpec::new(Rank3Kind::Z8), 1).unwrap();
        assert!(z8.rejected.iter().any(|j| j.r == rat(1) && j.s == frac(29, 6)));
        assert_ne!(z8.accepted[0].r, rat(1));

        assert!(generate_parameters(&MatchSpec::new(Rank3Kind::Z8), 0).unwrap().accepted.is_empty());
    }

    #[test]
    fn impossible_tolerance() {
        let spec = MatchSpec::new(Rank3Kind::Z2xZ6);
        let err = build_rank3_with(&spec, 1, 1e10, 60, 2).unwrap_err();
        assert!(matches!(err, Error::IndependenceFailure(2)));
    }

    #[test]
    fn kinds() {
        assert_eq!(Rank3Kind::parse("z2x6").unwrap().torsion(), TorsionGroup::TwoBy(6));
        assert!(Rank3Kind::parse("z5").is_err());
    }
}
