//! Weierstrass models over ℚ and their group law.
//!
//! [`Curve`] is the working model y² = x³ + A·x² + B·x (+ C). Every family in
//! the catalog lives in the AB form with C = 0, where (0,0) is a rational
//! 2-torsion point; C ≠ 0 is only needed for the ℤ/7ℤ model, which has no
//! rational 2-torsion. [`GeneralCurve`] carries all five coefficients and is
//! used for the Tate normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact_math::{parse_rational, rat, rational_roots, rational_sqrt, solve_quadratic, trial_factor, Poly, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Point {
    Infinity,
    Affine { x: Rational, y: Rational },
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Point {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&Rational> {
        match self {
            Point::Affine { x, .. } => Some(x),
            Point::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&Rational> {
        match self {
            Point::Affine { y, .. } => Some(y),
            Point::Infinity => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Point::Infinity => json!("infinity"),
            Point::Affine { x, y } => json!({"x": x.to_string(), "y": y.to_string()}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Point> {
        match v {
            Value::String(s) if s == "infinity" => Ok(Point::Infinity),
            Value::Object(m) => {
                let get = |k: &str| {
                    m.get(k)
                        .and_then(Value::as_str)
                        .ok_or_else(|| Error::Parse(format!("point field {k:?} missing")))
                        .and_then(parse_rational)
                };
                Ok(Point::new(get("x")?, get("y")?))
            }
            _ => Err(Error::Parse(format!("not a point: {v}"))),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => f.write_str("O"),
            Point::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// y² = x³ + a·x² + b·x + c, with `a`, `b` the A and B of the AB model.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Curve {
    a: Rational,
    b: Rational,
    c: Rational,
}

/// Change of coordinates x = u²·x', y = u³·y' between isomorphic models.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scaling {
    pub u: Rational,
}

impl Scaling {
    /// Maps a point on the original model to the model scaled by `u`.
    pub fn apply(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => {
                let u2 = &self.u * &self.u;
                Point::new(x * &u2, y * &u2 * &self.u)
            }
        }
    }

    pub fn invert(&self, p: &Point) -> Point {
        Scaling { u: self.u.recip() }.apply(p)
    }
}

impl Curve {
    /// The AB model y² = x³ + A·x² + B·x.
    pub fn ab(a: Rational, b: Rational) -> Result<Curve> {
        Curve::cubic(a, b, Rational::zero())
    }

    /// y² = x³ + a·x² + b·x + c.
    pub fn cubic(a: Rational, b: Rational, c: Rational) -> Result<Curve> {
        let e = Curve { a, b, c };
        if e.discriminant().is_zero() {
            return Err(Error::SingularCurve(format!("{e} has zero discriminant")));
        }
        Ok(e)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn is_ab(&self) -> bool {
        self.c.is_zero()
    }

    /// x³ + a·x² + b·x + c
    pub fn rhs(&self, x: &Rational) -> Rational {
        ((x + &self.a) * x + &self.b) * x + &self.c
    }

    pub fn rhs_poly(&self) -> Poly {
        Poly::new(vec![self.c.clone(), self.b.clone(), self.a.clone(), Rational::one()])
    }

    /// Δ = 16·disc(x³ + a·x² + b·x + c); for the AB model 16·B²·(A² − 4B).
    pub fn discriminant(&self) -> Rational {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let disc = a * a * b * b - rat(4) * b * b * b - rat(4) * a * a * a * c - rat(27) * c * c
            + rat(18) * a * b * c;
        rat(16) * disc
    }

    /// c₄ = 16·(a² − 3b)
    pub fn c4(&self) -> Rational {
        rat(16) * (&self.a * &self.a - rat(3) * &self.b)
    }

    pub fn j_invariant(&self) -> Rational {
        let c4 = self.c4();
        &c4 * &c4 * &c4 / self.discriminant()
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => y * y == self.rhs(x),
        }
    }

    fn check(&self, p: &Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::PointNotOnCurve)
        }
    }

    /// The point with this x-coordinate and non-negative y, if y² is a rational square.
    pub fn lift_x(&self, x: &Rational) -> Option<Point> {
        rational_sqrt(&self.rhs(x)).map(|y| Point::new(x.clone(), y))
    }

    pub fn neg(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::new(x.clone(), -y),
        }
    }

    /// Chord-tangent addition; both points must lie on the curve.
    pub fn add(&self, p: &Point, q: &Point) -> Result<Point> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub(crate) fn add_unchecked(&self, p: &Point, q: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return Point::Infinity;
            }
            (rat(3) * x1 * x1 + rat(2) * &self.a * x1 + &self.b) / (rat(2) * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &lambda * &lambda - &self.a - x1 - x2;
        let y3 = -(y1 + &lambda * (&x3 - x1));
        Point::new(x3, y3)
    }

    pub fn double(&self, p: &Point) -> Point {
        self.add_unchecked(p, p)
    }

    /// n·P by double-and-add; negative n uses n·P = (−n)·(−P).
    pub fn scalar_mul(&self, n: i64, p: &Point) -> Result<Point> {
        self.check(p)?;
        Ok(self.mul_unchecked(n, p))
    }

    pub(crate) fn mul_unchecked(&self, n: i64, p: &Point) -> Point {
        if n < 0 {
            return self.mul_unchecked(-n, &self.neg(p));
        }
        let mut acc = Point::Infinity;
        let mut base = p.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.double(&base);
            }
        }
        acc
    }

    /// Exact order of `p` if it is at most `max`, otherwise `None`.
    pub fn point_order(&self, p: &Point, max: u32) -> Result<Option<u32>> {
        self.check(p)?;
        if p.is_infinity() {
            return Ok(Some(1));
        }
        // On an integral model torsion points have integral coordinates.
        let (_, scaling) = self.integral_model();
        if let Point::Affine { x, y } = scaling.apply(p) {
            if !x.is_integer() || !y.is_integer() {
                return Ok(None);
            }
        }
        let mut q = p.clone();
        for n in 1..=max {
            if q.is_infinity() {
                return Ok(Some(n));
            }
            q = self.add_unchecked(&q, p);
        }
        Ok(None)
    }

    pub fn is_torsion(&self, p: &Point) -> Result<bool> {
        Ok(self.point_order(p, 16)?.is_some())
    }

    /// Points with y = 0. For the AB model this is always (0,0) plus the two
    /// roots of x² + A·x + B when they are rational.
    pub fn two_torsion(&self) -> Vec<Point> {
        let mut xs = if self.is_ab() {
            let mut v = vec![Rational::zero()];
            v.extend(solve_quadratic(&Rational::one(), &self.a, &self.b).expect("monic"));
            v
        } else {
            rational_roots(&self.rhs_poly())
        };
        xs.sort();
        xs.dedup();
        xs.into_iter().map(|x| Point::new(x, Rational::zero())).collect()
    }

    /// Model scaled by u: (a, b, c) → (u²a, u⁴b, u⁶c), with the matching point map.
    pub fn scaled(&self, u: &Rational) -> (Curve, Scaling) {
        let u2 = u * u;
        let u4 = &u2 * &u2;
        let e = Curve { a: &self.a * &u2, b: &self.b * &u4, c: &self.c * &u4 * &u2 };
        (e, Scaling { u: u.clone() })
    }

    /// Integral model obtained by the smallest positive integer scaling that
    /// clears denominators.
    pub fn integral_model(&self) -> (Curve, Scaling) {
        let mut u = BigInt::one();
        for (coef, weight) in [(&self.a, 2u32), (&self.b, 4), (&self.c, 6)] {
            if coef.is_zero() {
                continue;
            }
            // need u^weight divisible by the denominator: per prime, ceil(v/weight)
            let (small, rest) = trial_factor(coef.denom(), 100_000);
            let mut need = rest;
            for (p, v) in small {
                need *= p.pow(v.div_ceil(weight));
            }
            u = u.lcm(&need);
        }
        self.scaled(&Rational::from_integer(u))
    }

    pub fn to_general(&self) -> GeneralCurve {
        GeneralCurve {
            a: [
                Rational::zero(),
                self.a.clone(),
                Rational::zero(),
                self.b.clone(),
                self.c.clone(),
            ],
        }
    }

    pub fn to_json(&self) -> Value {
        if self.is_ab() {
            json!({"model": "AB", "A": self.a.to_string(), "B": self.b.to_string()})
        } else {
            self.to_general().to_json()
        }
    }

    pub fn from_json(v: &Value) -> Result<Curve> {
        let field = |k: &str| -> Result<Rational> {
            v.get(k)
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse(format!("curve field {k:?} missing")))
                .and_then(parse_rational)
        };
        match v.get("model").and_then(Value::as_str) {
            Some("AB") => Curve::ab(field("A")?, field("B")?),
            Some("W") => {
                let g = GeneralCurve::from_json(v)?;
                let [a1, a2, a3, a4, a6] = &g.a;
                if !a1.is_zero() || !a3.is_zero() {
                    return Err(Error::Parse("general model with a1 or a3 nonzero".into()));
                }
                Curve::cubic(a2.clone(), a4.clone(), a6.clone())
            }
            _ => Err(Error::Parse(format!("unknown curve encoding {v}"))),
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x^2 + ({})x", self.a, self.b)?;
        if !self.c.is_zero() {
            write!(f, " + ({})", self.c)?;
        }
        Ok(())
    }
}

/// y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6, coefficients `[a1, a2, a3, a4, a6]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GeneralCurve {
    pub a: [Rational; 5],
}

/// Coordinate map from a general model to the AB model produced by [`tate_to_ab`]:
/// x' = x − shift, y' = y + (a1·x + a3)/2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbMap {
    pub shift: Rational,
    pub a1: Rational,
    pub a3: Rational,
}

impl AbMap {
    pub fn apply(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => {
                let y2 = y + (&self.a1 * x + &self.a3) / rat(2);
                Point::new(x - &self.shift, y2)
            }
        }
    }

    pub fn invert(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => {
                let x0 = x + &self.shift;
                let y0 = y - (&self.a1 * &x0 + &self.a3) / rat(2);
                Point::new(x0, y0)
            }
        }
    }
}

impl GeneralCurve {
    pub fn new(a: [Rational; 5]) -> Result<GeneralCurve> {
        let e = GeneralCurve { a };
        if e.discriminant().is_zero() {
            return Err(Error::SingularCurve("general model has zero discriminant".into()));
        }
        Ok(e)
    }

    /// b2, b4, b6, b8
    pub fn b_invariants(&self) -> [Rational; 4] {
        let [a1, a2, a3, a4, a6] = &self.a;
        let b2 = a1 * a1 + rat(4) * a2;
        let b4 = rat(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + rat(4) * a6;
        let b8 = a1 * a1 * a6 + rat(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        [b2, b4, b6, b8]
    }

    pub fn discriminant(&self) -> Rational {
        let [b2, b4, b6, b8] = self.b_invariants();
        -(&b2 * &b2 * &b8) - rat(8) * &b4 * &b4 * &b4 - rat(27) * &b6 * &b6
            + rat(9) * &b2 * &b4 * &b6
    }

    pub fn j_invariant(&self) -> Rational {
        let [b2, b4, _, _] = self.b_invariants();
        let c4 = &b2 * &b2 - rat(24) * &b4;
        &c4 * &c4 * &c4 / self.discriminant()
    }

    pub fn contains(&self, p: &Point) -> bool {
        let [a1, a2, a3, a4, a6] = &self.a;
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => {
                y * y + a1 * x * y + a3 * y == ((x + a2) * x + a4) * x + a6
            }
        }
    }

    pub fn neg(&self, p: &Point) -> Point {
        let [a1, _, a3, _, _] = &self.a;
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::new(x.clone(), -y - a1 * x - a3),
        }
    }

    pub fn add(&self, p: &Point, q: &Point) -> Result<Point> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::PointNotOnCurve);
        }
        let [a1, a2, a3, a4, a6] = &self.a;
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return Ok(q.clone()),
            (_, Point::Infinity) => return Ok(p.clone()),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let (lambda, nu) = if x1 == x2 {
            let den = rat(2) * y1 + a1 * x1 + a3;
            if den.is_zero() || (y1 + y2 + a1 * x2 + a3).is_zero() {
                return Ok(Point::Infinity);
            }
            let l = (rat(3) * x1 * x1 + rat(2) * a2 * x1 + a4 - a1 * y1) / &den;
            let n = (-(x1 * x1 * x1) + a4 * x1 + rat(2) * a6 - a3 * y1) / &den;
            (l, n)
        } else {
            let l = (y2 - y1) / (x2 - x1);
            let n = (y1 * x2 - y2 * x1) / (x2 - x1);
            (l, n)
        };
        let x3 = &lambda * &lambda + a1 * &lambda - a2 - x1 - x2;
        let y3 = -(&lambda + a1) * &x3 - nu - a3;
        Ok(Point::new(x3, y3))
    }

    pub fn scalar_mul(&self, n: i64, p: &Point) -> Result<Point> {
        if n < 0 {
            return self.scalar_mul(-n, &self.neg(p));
        }
        let mut acc = Point::Infinity;
        for _ in 0..n {
            acc = self.add(&acc, p)?;
        }
        Ok(acc)
    }

    pub fn point_order(&self, p: &Point, max: u32) -> Result<Option<u32>> {
        let mut q = p.clone();
        for n in 1..=max {
            if q.is_infinity() {
                return Ok(Some(n));
            }
            q = self.add(&q, p)?;
        }
        Ok(None)
    }

    /// Completes the square in y: y'² = x³ + (b2/4)x² + (b4/2)x + b6/4.
    pub fn to_cubic(&self) -> Curve {
        let [b2, b4, b6, _] = self.b_invariants();
        Curve { a: b2 / rat(4), b: b4 / rat(2), c: b6 / rat(4) }
    }

    pub fn to_json(&self) -> Value {
        json!({"model": "W", "a": self.a.iter().map(|c| c.to_string()).collect::<Vec<_>>()})
    }

    pub fn from_json(v: &Value) -> Result<GeneralCurve> {
        let arr = v
            .get("a")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 5)
            .ok_or_else(|| Error::Parse("general curve needs five coefficients".into()))?;
        let mut a: [Rational; 5] = Default::default();
        for (slot, c) in a.iter_mut().zip(arr) {
            *slot = parse_rational(c.as_str().ok_or_else(|| Error::Parse("coefficient must be a string".into()))?)?;
        }
        GeneralCurve::new(a)
    }
}

/// Tate normal form y² + (1 − c)xy − by = x³ − bx², with (0,0) on it.
pub fn tate_curve(b: &Rational, c: &Rational) -> Result<GeneralCurve> {
    if b.is_zero() {
        return Err(Error::SingularCurve("Tate normal form with b = 0".into()));
    }
    GeneralCurve::new([
        Rational::one() - c,
        -b.clone(),
        -b.clone(),
        Rational::zero(),
        Rational::zero(),
    ])
}

/// Brings a general model with a rational 2-torsion point to the AB form by
/// completing the square and translating a rational root of the cubic to 0.
/// The smallest root is used; see [`tate_to_ab_with_root`] to choose another.
pub fn tate_to_ab(e: &GeneralCurve) -> Result<(Curve, AbMap)> {
    let roots = rational_roots(&e.to_cubic().rhs_poly());
    let root = roots.first().ok_or(Error::NoRational2Torsion)?.clone();
    tate_to_ab_with_root(e, &root)
}

pub fn tate_to_ab_with_root(e: &GeneralCurve, root: &Rational) -> Result<(Curve, AbMap)> {
    let cubic = e.to_cubic();
    if !cubic.rhs(root).is_zero() {
        return Err(Error::NoRational2Torsion);
    }
    let (a, b) = (&cubic.a, &cubic.b);
    let new_a = a + rat(3) * root;
    let new_b = rat(3) * root * root + rat(2) * a * root + b;
    let curve = Curve::ab(new_a, new_b)?;
    let map = AbMap { shift: root.clone(), a1: e.a[0].clone(), a3: e.a[2].clone() };
    Ok((curve, map))
}

/// Rational roots of the cubic of an AB-or-cubic model, i.e. the x-coordinates
/// of its 2-torsion points.
pub fn two_torsion_roots(e: &Curve) -> Vec<Rational> {
    e.two_torsion().into_iter().filter_map(|p| p.x().cloned()).collect()
}

/// Looks for a rational u with (A', B') = (u²A, u⁴B). Returns u > 0.
pub fn ab_twist_factor(from: &Curve, to: &Curve) -> Option<Rational> {
    if !from.is_ab() || !to.is_ab() {
        return None;
    }
    let u2 = if !from.a.is_zero() {
        if to.a.is_zero() {
            return None;
        }
        &to.a / &from.a
    } else {
        if !to.a.is_zero() {
            return None;
        }
        // A = 0: u⁴ = B'/B, take a square root of a square root
        let u4 = &to.b / &from.b;
        rational_sqrt(&u4)?
    };
    if u2.is_negative() {
        return None;
    }
    let u = rational_sqrt(&u2)?;
    (&from.b * &u2 * &u2 == to.b).then_some(u)
}

/// ℚ-isomorphism between two AB models: some translation of a 2-torsion point
/// to the origin followed by an AB-twist scaling. Returns the translation
/// (x-shift on `from`) and the scaling into `to`.
pub fn ab_isomorphism(from: &Curve, to: &Curve) -> Option<(Rational, Rational)> {
    if from.j_invariant() != to.j_invariant() {
        return None;
    }
    for e in two_torsion_roots(from) {
        let a = &from.a + rat(3) * &e;
        let b = rat(3) * &e * &e + rat(2) * &from.a * &e + &from.b;
        let Ok(shifted) = Curve::ab(a, b) else { continue };
        if let Some(u) = ab_twist_factor(&shifted, to) {
            return Some((e, u));
        }
    }
    None
}

/// Applies the translation-then-scaling returned by [`ab_isomorphism`].
pub fn apply_ab_isomorphism(shift: &Rational, u: &Rational, p: &Point) -> Point {
    match p {
        Point::Infinity => Point::Infinity,
        Point::Affine { x, y } => Scaling { u: u.clone() }.apply(&Point::new(x - shift, y.clone())),
    }
}

pub fn invert_ab_isomorphism(shift: &Rational, u: &Rational, p: &Point) -> Point {
    match (Scaling { u: u.clone() }).invert(p) {
        Point::Infinity => Point::Infinity,
        Point::Affine { x, y } => Point::new(x + shift, y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::frac;

    fn z26() -> Curve {
        Curve::ab(rat(-59), rat(864)).unwrap()
    }

    #[test]
    fn ab_constructor() {
        assert!(Curve::ab(rat(49), rat(256)).is_ok());
        assert!(Curve::ab(rat(-59), rat(864)).is_ok());
        assert!(matches!(Curve::ab(rat(2), rat(1)), Err(Error::SingularCurve(_))));
        assert!(matches!(Curve::ab(rat(2), rat(0)), Err(Error::SingularCurve(_))));
    }

    #[test]
    fn tate_examples() {
        let e = tate_curve(&rat(3), &frac(3, 2)).unwrap();
        let p = Point::new(rat(0), rat(0));
        assert!(e.contains(&p));
        assert_eq!(e.scalar_mul(4, &p).unwrap(), Point::new(rat(2), rat(2)));
        assert_eq!(e.point_order(&p, 16).unwrap(), Some(8));
        assert!(matches!(tate_curve(&rat(0), &rat(1)), Err(Error::SingularCurve(_))));
        let e6 = tate_curve(&rat(6), &rat(2)).unwrap();
        assert_eq!(e6.point_order(&p, 16).unwrap(), Some(6));
    }

    #[test]
    fn group_law_basics() {
        let e = z26();
        let t = Point::new(rat(24), rat(24));
        assert!(e.contains(&t));
        assert_eq!(e.add(&t, &Point::Infinity).unwrap(), t);
        assert_eq!(e.add(&t, &e.neg(&t)).unwrap(), Point::Infinity);
        assert_eq!(e.scalar_mul(6, &t).unwrap(), Point::Infinity);
        assert_eq!(e.scalar_mul(0, &t).unwrap(), Point::Infinity);
        assert_eq!(e.scalar_mul(2, &Point::new(rat(0), rat(0))).unwrap(), Point::Infinity);
        assert_eq!(e.scalar_mul(-1, &t).unwrap(), e.neg(&t));
        assert_eq!(e.add(&t, &Point::new(rat(1), rat(1))), Err(Error::PointNotOnCurve));
    }

    #[test]
    fn orders() {
        let e = z26();
        assert_eq!(e.point_order(&Point::new(rat(24), rat(24)), 16).unwrap(), Some(6));
        assert_eq!(e.point_order(&Point::new(rat(0), rat(0)), 16).unwrap(), Some(2));
        let aux = Curve::ab(rat(-43), rat(280)).unwrap();
        assert_eq!(aux.point_order(&Point::new(rat(7), rat(14)), 16).unwrap(), None);
    }

    #[test]
    fn j_invariants() {
        assert_eq!(Curve::ab(rat(0), rat(1)).unwrap().j_invariant(), rat(1728));
        let e = Curve::ab(frac(5, 3), rat(7)).unwrap();
        let (t, _) = e.scaled(&rat(3));
        assert_eq!(e.j_invariant(), t.j_invariant());
        assert_eq!(e.j_invariant(), e.to_general().j_invariant());
    }

    #[test]
    fn two_torsion_examples() {
        let xs = |e: &Curve| two_torsion_roots(e);
        assert_eq!(xs(&z26()), vec![rat(0), rat(27), rat(32)]);
        assert_eq!(xs(&Curve::ab(rat(49), rat(256)).unwrap()), vec![rat(0)]);
        assert_eq!(
            xs(&Curve::ab(rat(-463), rat(45936)).unwrap()),
            vec![rat(0), rat(144), rat(319)]
        );
    }

    #[test]
    fn tate_to_ab_examples() {
        // v = 2: b = 3, c = 3/2
        let e = tate_curve(&rat(3), &frac(3, 2)).unwrap();
        let (ab, map) = tate_to_ab(&e).unwrap();
        assert_eq!(ab.j_invariant(), Curve::ab(rat(49), rat(256)).unwrap().j_invariant());
        let p = map.apply(&Point::new(rat(0), rat(0)));
        assert!(ab.contains(&p));
        assert_eq!(ab.point_order(&p, 16).unwrap(), Some(8));
        assert_eq!(map.invert(&p), Point::new(rat(0), rat(0)));
        // ℤ/6 model at c = 2: A6(2) = -1, B6(2) = -128
        let e6 = tate_curve(&rat(6), &rat(2)).unwrap();
        let (ab6, map6) = tate_to_ab(&e6).unwrap();
        assert_eq!(ab6.j_invariant(), Curve::ab(rat(-1), rat(-128)).unwrap().j_invariant());
        assert_eq!(ab6.point_order(&map6.apply(&Point::new(rat(0), rat(0))), 16).unwrap(), Some(6));
        // y² = x³ + 2 has no rational 2-torsion
        let g = GeneralCurve::new([rat(0), rat(0), rat(0), rat(0), rat(2)]).unwrap();
        assert_eq!(tate_to_ab(&g).unwrap_err(), Error::NoRational2Torsion);
    }

    #[test]
    fn json_round_trip() {
        let e = Curve::ab(frac(-59, 7), rat(864)).unwrap();
        assert_eq!(Curve::from_json(&e.to_json()).unwrap(), e);
        let c = Curve::cubic(rat(1), rat(2), rat(3)).unwrap();
        assert_eq!(Curve::from_json(&c.to_json()).unwrap(), c);
        let p = Point::new(frac(1, 2), frac(-3, 8));
        assert_eq!(Point::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(Point::from_json(&Point::Infinity.to_json()).unwrap(), Point::Infinity);
        assert_eq!(e.to_json().to_string(), r#"{"A":"-59/7","B":"864","model":"AB"}"#);
    }

    #[test]
    fn isomorphism_search() {
        let e = z26();
        // translate 27 to the origin, then scale by 2
        let a = rat(-59) + rat(81);
        let b = rat(3 * 27 * 27) + rat(2) * rat(-59) * rat(27) + rat(864);
        let target = Curve::ab(a * rat(4), b * rat(16)).unwrap();
        let (shift, u) = ab_isomorphism(&e, &target).unwrap();
        let t = Point::new(rat(24), rat(24));
        let mapped = apply_ab_isomorphism(&shift, &u, &t);
        assert!(target.contains(&mapped));
        assert_eq!(invert_ab_isomorphism(&shift, &u, &mapped), t);
    }
}
