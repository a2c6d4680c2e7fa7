//! Rational torsion subgroups.
//!
//! Torsion points of a model with integral coefficients have integral
//! coordinates, and every candidate x-coordinate is a root of a division
//! polynomial or of a halving quartic. Both are solved exactly with
//! [`rational_roots`], so the search below is complete: the group it returns is
//! the full rational torsion subgroup, not a lower bound.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::curves::{Curve, Point};
use crate::error::{Error, Result};
use crate::exact_math::{odd_primes, rat, rational_mod_p, rational_roots, Poly, Rational};

/// Primes used for the reduction bound.
pub const BOUND_PRIMES: usize = 12;

/// One of the fifteen groups allowed by Mazur's theorem.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TorsionGroup {
    /// ℤ/nℤ with n ≤ 10 or n = 12.
    Cyclic(u32),
    /// ℤ/2ℤ × ℤ/2mℤ, stored as 2m ∈ {2, 4, 6, 8}.
    TwoBy(u32),
}

impl TorsionGroup {
    pub fn new_cyclic(n: u32) -> Result<TorsionGroup> {
        if (1..=10).contains(&n) || n == 12 {
            Ok(TorsionGroup::Cyclic(n))
        } else {
            Err(Error::Other(format!("ℤ/{n} is not a torsion group over ℚ")))
        }
    }

    pub fn new_two_by(n: u32) -> Result<TorsionGroup> {
        if matches!(n, 2 | 4 | 6 | 8) {
            Ok(TorsionGroup::TwoBy(n))
        } else {
            Err(Error::Other(format!("ℤ/2×ℤ/{n} is not a torsion group over ℚ")))
        }
    }

    pub fn order(&self) -> u32 {
        match *self {
            TorsionGroup::Cyclic(n) => n,
            TorsionGroup::TwoBy(n) => 2 * n,
        }
    }

    /// Whether `other` embeds in this group.
    pub fn contains(&self, other: &TorsionGroup) -> bool {
        use TorsionGroup::*;
        match (*self, *other) {
            (Cyclic(m), Cyclic(n)) | (TwoBy(m), Cyclic(n)) | (TwoBy(m), TwoBy(n)) => m % n == 0,
            (Cyclic(_), TwoBy(_)) => false,
        }
    }

    /// Short machine tag: `Z8`, `Z2xZ6`.
    pub fn tag(&self) -> String {
        match *self {
            TorsionGroup::Cyclic(n) => format!("Z{n}"),
            TorsionGroup::TwoBy(n) => format!("Z2xZ{n}"),
        }
    }

    pub fn from_tag(s: &str) -> Result<TorsionGroup> {
        let bad = || Error::Parse(format!("unknown torsion tag {s:?}"));
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("Z2xZ") {
            return TorsionGroup::new_two_by(rest.parse().map_err(|_| bad())?);
        }
        let n = s.strip_prefix('Z').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        TorsionGroup::new_cyclic(n)
    }
}

impl fmt::Display for TorsionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TorsionGroup::Cyclic(1) => f.write_str("0"),
            TorsionGroup::Cyclic(n) => write!(f, "Z/{n}Z"),
            TorsionGroup::TwoBy(n) => write!(f, "Z/2Z x Z/{n}Z"),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct TorsionResult {
    pub group: TorsionGroup,
    /// One generator for a cyclic group; the point of maximal order followed
    /// by a 2-torsion point outside its span for ℤ/2 × ℤ/2m.
    pub generators: Vec<Point>,
    /// gcd of #E(F_p) over `primes_used`; the group order divides it.
    pub order_bound: u64,
    pub primes_used: Vec<u64>,
}

impl TorsionResult {
    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group.tag(),
            "order": self.group.order(),
            "generators": self.generators.iter().map(Point::to_json).collect::<Vec<_>>(),
            "order_bound": self.order_bound,
            "primes_used": self.primes_used,
        })
    }
}

/// Coefficients of E reduced mod p, or the reason p cannot be used.
fn reduce(e: &Curve, p: u64) -> Result<(u64, u64, u64)> {
    if p == 2 {
        return Err(Error::BadPrime(p));
    }
    let r = |q: &Rational| rational_mod_p(q, p).ok_or(Error::BadPrime(p));
    let (a, b, c) = (r(e.a())?, r(e.b())?, r(e.c())?);
    if rational_mod_p(&e.discriminant(), p) == Some(0) {
        return Err(Error::BadReduction(p));
    }
    Ok((a, b, c))
}

/// #E(F_p) for an odd prime p of good reduction.
pub fn count_points_mod_p(e: &Curve, p: u64) -> Result<u64> {
    let (a, b, c) = reduce(e, p)?;
    Ok(count_reduced(a, b, c, p))
}

/// #E(F_p) for y² = x³ + a x² + b x + c already reduced mod p.
pub(crate) fn count_reduced(a: u64, b: u64, c: u64, p: u64) -> u64 {
    let pu = p as usize;
    // 0 = zero, 1 = nonzero square, 2 = non-square
    let mut kind = vec![2u8; pu];
    kind[0] = 0;
    for t in 1..=(pu / 2) {
        kind[(t * t) % pu] = 1;
    }
    let mut total = 1u64;
    for x in 0..p {
        let f = ((((x + a) % p) * x % p + b) % p * x % p + c) % p;
        total += match kind[f as usize] {
            0 => 1,
            1 => 2,
            _ => 0,
        };
    }
    total
}

/// The first `n` odd primes of good reduction for `e`, with #E(F_p).
pub fn good_prime_counts(e: &Curve, n: usize) -> Vec<(u64, u64)> {
    let primes: Vec<u64> = odd_primes()
        .filter(|&p| reduce(e, p).is_ok())
        .take(n)
        .collect();
    primes
        .into_par_iter()
        .map(|p| (p, count_points_mod_p(e, p).expect("good prime")))
        .collect()
}

/// gcd of #E(F_p) over the first `num_primes` good odd primes of an integral
/// model of `e`. The torsion order divides the result.
pub fn torsion_order_bound(e: &Curve, num_primes: usize) -> u64 {
    torsion_order_bound_with_primes(e, num_primes).0
}

fn torsion_order_bound_with_primes(e: &Curve, num_primes: usize) -> (u64, Vec<u64>) {
    let (integral, _) = e.integral_model();
    let counts = good_prime_counts(&integral, num_primes);
    let bound = counts.iter().fold(0u64, |g, &(_, n)| g.gcd(&n));
    (bound, counts.into_iter().map(|(p, _)| p).collect())
}

/// Division polynomials of y² = x³ + a x² + b x + c, reduced to polynomials
/// in x: entry n is ψ_n for odd n and ψ_n / (2y) for even n.
pub fn division_polynomials(e: &Curve, max_n: usize) -> Vec<Poly> {
    let (a, b, c) = (e.a().clone(), e.b().clone(), e.c().clone());
    let b2 = rat(4) * &a;
    let b4 = rat(2) * &b;
    let b6 = rat(4) * &c;
    let b8 = rat(4) * &a * &c - &b * &b;
    let ff = e.rhs_poly().scale(&rat(4));
    let ff2 = &ff * &ff;
    let mut g = vec![Poly::zero(), Poly::one(), Poly::one()];
    g.push(Poly::new(vec![
        b8.clone(),
        rat(3) * &b6,
        rat(3) * &b4,
        b2.clone(),
        rat(3),
    ]));
    g.push(Poly::new(vec![
        &b4 * &b8 - &b6 * &b6,
        &b2 * &b8 - &b4 * &b6,
        rat(10) * &b8,
        rat(10) * &b6,
        rat(5) * &b4,
        b2,
        rat(2),
    ]));
    for n in 5..=max_n {
        let m = n / 2;
        let next = if n % 2 == 1 {
            let t1 = &g[m + 2] * &g[m].pow(3);
            let t2 = &g[m - 1] * &g[m + 1].pow(3);
            if m % 2 == 0 {
                &(&ff2 * &t1) - &t2
            } else {
                &t1 - &(&ff2 * &t2)
            }
        } else {
            let inner = &(&g[m + 2] * &g[m - 1].pow(2)) - &(&g[m - 2] * &g[m + 1].pow(2));
            &g[m] * &inner
        };
        g.push(next);
    }
    g.truncate(max_n + 1);
    g
}

/// Affine points whose x-coordinate is a rational root of `f` and whose y is
/// rational, both signs of y included.
fn points_over_roots(e: &Curve, f: &Poly) -> Vec<Point> {
    if f.is_zero() || f.is_constant() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for x in rational_roots(f) {
        if let Some(p) = e.lift_x(&x) {
            let q = e.neg(&p);
            if q != p {
                out.push(q);
            }
            out.push(p);
        }
    }
    out
}

/// Points R with 2R = q.
fn halves(e: &Curve, q: &Point) -> Vec<Point> {
    let Point::Affine { x: x0, .. } = q else {
        return e.two_torsion();
    };
    // x(2R) = (x⁴ − 2b x² − 8c x + b² − 4ac) / (4 f(x))
    let (a, b, c) = (e.a(), e.b(), e.c());
    let num = Poly::new(vec![
        b * b - rat(4) * a * c,
        rat(-8) * c,
        rat(-2) * b,
        Rational::zero(),
        Rational::one(),
    ]);
    let quartic = &num - &e.rhs_poly().scale(&(rat(4) * x0));
    points_over_roots(e, &quartic)
        .into_iter()
        .filter(|r| e.double(r) == *q)
        .collect()
}

fn order_of(e: &Curve, p: &Point) -> u32 {
    e.point_order(p, 12).expect("on curve").expect("torsion point")
}

/// The rational torsion subgroup of `e`.
pub fn torsion_structure(e: &Curve) -> TorsionResult {
    let (integral, scaling) = e.integral_model();
    let (order_bound, primes_used) = torsion_order_bound_with_primes(e, BOUND_PRIMES);

    // 2-power part: halve 2-torsion points until no rational halves remain.
    let two_torsion = integral.two_torsion();
    let mut best2 = Point::Infinity;
    let mut best2_order = 1u32;
    if order_bound % 2 == 0 {
        let mut frontier = two_torsion.clone();
        let mut ord = 2u32;
        while !frontier.is_empty() {
            best2 = frontier[0].clone();
            best2_order = ord;
            if order_bound % (2 * ord as u64) != 0 {
                break;
            }
            frontier = frontier.iter().flat_map(|q| halves(&integral, q)).collect();
            ord *= 2;
        }
    }

    // Odd part is cyclic of order 1, 3, 5, 7 or 9.
    let mut best_odd = Point::Infinity;
    let mut best_odd_order = 1u32;
    let need = [9usize, 7, 5, 3].into_iter().filter(|&n| order_bound % n as u64 == 0);
    let need: Vec<usize> = need.collect();
    if let Some(&top) = need.iter().max() {
        let psi = division_polynomials(&integral, top);
        for &n in &need {
            if n as u32 <= best_odd_order {
                continue;
            }
            for p in points_over_roots(&integral, &psi[n]) {
                let o = order_of(&integral, &p);
                if o % 2 == 1 && o > best_odd_order {
                    best_odd_order = o;
                    best_odd = p;
                }
            }
        }
    }

    let generator = integral.add_unchecked(&best2, &best_odd);
    let n = best2_order * best_odd_order;
    let (group, mut gens) = if two_torsion.len() == 3 {
        let in_span = integral.mul_unchecked(i64::from(n / 2), &generator);
        let other = two_torsion
            .iter()
            .find(|t| **t != in_span)
            .expect("three 2-torsion points")
            .clone();
        (TorsionGroup::TwoBy(n), vec![generator, other])
    } else if n == 1 {
        (TorsionGroup::Cyclic(1), vec![])
    } else {
        (TorsionGroup::Cyclic(n), vec![generator])
    };
    gens = gens.iter().map(|p| scaling.invert(p)).collect();
    TorsionResult { group, generators: gens, order_bound, primes_used }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_relation() {
        let g = |s: &str| TorsionGroup::from_tag(s).unwrap();
        assert!(g("Z2xZ8").contains(&g("Z8")));
        assert!(g("Z2xZ6").contains(&g("Z6")));
        assert!(g("Z12").contains(&g("Z6")));
        assert!(!g("Z8").contains(&g("Z2xZ2")));
        assert!(!g("Z8").contains(&g("Z6")));
    }
    use crate::curves::tate_curve;
    use crate::exact_math::frac;
    use proptest::prelude::*;

    fn ab(a: i64, b: i64) -> Curve {
        Curve::ab(rat(a), rat(b)).unwrap()
    }

    fn brute_count(e: &Curve, p: u64) -> u64 {
        let (a, b, c) = reduce(e, p).unwrap();
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                if (y * y) % p == (((x * x % p) * x) % p + a * x % p * x % p + b * x % p + c) % p {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn counts() {
        assert_eq!(count_points_mod_p(&ab(49, 256), 7).unwrap(), 8);
        assert_eq!(count_points_mod_p(&ab(-59, 864), 7).unwrap(), 12);
        assert_eq!(count_points_mod_p(&ab(0, 1), 3).unwrap(), 4);
        assert_eq!(count_points_mod_p(&ab(49, 256), 2), Err(Error::BadPrime(2)));
        assert_eq!(count_points_mod_p(&ab(-59, 864), 5), Err(Error::BadReduction(5)));
        let e = Curve::ab(frac(1, 3), rat(1)).unwrap();
        assert_eq!(count_points_mod_p(&e, 3), Err(Error::BadPrime(3)));
    }

    #[test]
    fn bounds() {
        assert_eq!(torsion_order_bound(&ab(-59, 864), 8) % 12, 0);
        assert_eq!(torsion_order_bound(&ab(49, 256), 8) % 8, 0);
        assert_eq!(torsion_order_bound(&ab(0, 1), 8) % 2, 0);
    }

    #[test]
    fn structures() {
        let z8 = torsion_structure(&ab(49, 256));
        assert_eq!(z8.group, TorsionGroup::Cyclic(8));
        let e = ab(49, 256);
        let g = &z8.generators[0];
        let g2 = e.double(g);
        assert_eq!(e.point_order(&g2, 16).unwrap(), Some(4));
        assert_eq!(e.double(&g2), Point::new(rat(0), rat(0)));

        let z26 = torsion_structure(&ab(-59, 864));
        assert_eq!(z26.group, TorsionGroup::TwoBy(6));
        let e = ab(-59, 864);
        assert_eq!(e.point_order(&z26.generators[0], 16).unwrap(), Some(6));
        assert_eq!(e.point_order(&z26.generators[1], 16).unwrap(), Some(2));

        assert_eq!(torsion_structure(&ab(-43, 280)).group, TorsionGroup::TwoBy(2));
        assert_eq!(torsion_structure(&ab(-463, 45936)).group, TorsionGroup::TwoBy(2));
        assert_eq!(torsion_structure(&ab(0, 1)).group, TorsionGroup::Cyclic(2));
    }

    #[test]
    fn tate_orders() {
        // Tate normal forms with torsion of order 5, 7, 9, 10, 12
        for (b, c, n) in [
            (rat(1), rat(1), 5u32),
            (rat(4), rat(2), 7),
            (rat(6), rat(2), 6),
            (rat(12), rat(4), 9),
        ] {
            let g = tate_curve(&b, &c).unwrap();
            let cubic = g.to_cubic();
            let t = torsion_structure(&cubic);
            assert_eq!(t.group.order(), n, "b={b} c={c}");
        }
    }

    #[test]
    fn division_polynomial_roots() {
        let e = ab(-59, 864);
        let psi = division_polynomials(&e, 6);
        // (24, 24) has order 6 so its x is not a root of ψ3 but 2·(24,24) is
        let t = Point::new(rat(24), rat(24));
        let t2 = e.double(&t);
        assert!(psi[3].eval(t2.x().unwrap()).is_zero());
        assert!(!psi[3].eval(&rat(24)).is_zero());
        assert!(psi[6].eval(&rat(24)).is_zero());
    }

    #[test]
    fn tags() {
        for g in [TorsionGroup::Cyclic(8), TorsionGroup::TwoBy(6), TorsionGroup::Cyclic(7)] {
            assert_eq!(TorsionGroup::from_tag(&g.tag()).unwrap(), g);
        }
        assert!(TorsionGroup::new_cyclic(11).is_err());
        assert!(TorsionGroup::new_two_by(10).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn hasse_and_brute_force(a in -30i64..30, b in -30i64..30, pi in 0usize..8) {
            prop_assume!(b != 0 && a * a != 4 * b);
            let e = ab(a, b);
            let p = [3u64, 5, 7, 11, 13, 17, 19, 23][pi];
            if let Ok(n) = count_points_mod_p(&e, p) {
                let dev = (n as f64 - p as f64 - 1.0).abs();
                prop_assert!(dev <= 2.0 * (p as f64).sqrt());
                prop_assert_eq!(n, brute_count(&e, p));
            }
        }

        #[test]
        fn torsion_orders_divide_counts(a in -20i64..20, b in -20i64..20) {
            prop_assume!(b != 0 && a * a != 4 * b);
            let e = ab(a, b);
            let t = torsion_structure(&e);
            for (p, n) in good_prime_counts(&e, 6) {
                prop_assert_eq!(n % t.group.order() as u64, 0, "p = {}", p);
            }
        }
    }
}
