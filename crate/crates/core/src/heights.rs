//! Canonical heights, pairings and regulators.
//!
//! Normalization: ĥ(P) = lim h(x(2ⁿP)) / 4ⁿ with h(a/b) = log max(|a|, |b|),
//! so ĥ is close to the naive height of x.
//!
//! The model is first made integral and, at small primes, as close to
//! minimal as a model y² = cubic allows. On it write P = (a/d², b/d³). Then
//! ĥ(P) = 2·(λ(P) + Σ_p μ_p(P)) where λ is the archimedean local height from
//! Tate's series and μ_p(P) = ord_p(d)·log p whenever P reduces to a
//! nonsingular point mod p. The remaining primes divide gcd(2b, d⁴·f′(x)).
//! At odd primes of multiplicative reduction the closed form for the
//! component of P is used; elsewhere a multiple kP with nonsingular
//! reduction, through μ_p(kP) = k²·μ_p(P) + ord_p(ψ_k(P))·log p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::curves::{Curve, Point};
use crate::error::{Error, Result};
use crate::exact_math::{is_probable_prime, ln_abs, ln_abs_int, rat, trial_factor, Rational};

/// Primes below this bound are found by trial division.
const TRIAL_BOUND: u32 = 10_000;

/// Default tolerance for a single height.
pub const DEFAULT_EPS: f64 = 1e-10;
/// Default threshold on a regulator for declaring points independent.
pub const REGULATOR_EPS: f64 = 1e-6;

const MAX_MULTIPLE: u32 = 256;

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct HeightValue {
    pub value: f64,
    pub error_bound: f64,
}

impl HeightValue {
    pub fn to_json(&self) -> Value {
        json!({"value": self.value, "error_bound": self.error_bound})
    }
}

/// log max(|num x|, |den x|).
pub fn naive_height(p: &Point) -> Result<f64> {
    let x = p.x().ok_or(Error::InfinityPoint)?;
    Ok(ln_abs_int(x.numer()).max(ln_abs_int(x.denom())))
}

/// Tate's series for the archimedean local height, on an arbitrary model.
/// Returns (value, error estimate).
fn archimedean(e: &Curve, x: &Rational, eps: f64) -> (f64, f64) {
    // Scale to coefficients of size O(1): x = s²·X.
    let la = ln_abs(e.a()) / 2.0;
    let lb = ln_abs(e.b()) / 4.0;
    let lc = ln_abs(e.c()) / 6.0;
    let log_s = [la, lb, lc]
        .into_iter()
        .filter(|v| v.is_finite())
        .fold(0.0f64, f64::max);
    // coefficients can exceed the f64 range, so scale in log form
    let scaled = |q: &Rational, w: f64| {
        if q.is_zero() {
            0.0
        } else {
            let sign = if q.is_negative() { -1.0 } else { 1.0 };
            sign * (ln_abs(q) - w * log_s).exp()
        }
    };
    let a = scaled(e.a(), 2.0);
    let b = scaled(e.b(), 4.0);
    let c = scaled(e.c(), 6.0);

    // Translate below the smallest real root so that every real point has X ≥ 1.
    let r = smallest_real_root(a, b, c) - 1.0;
    let a2 = a + 3.0 * r;
    let a4 = 3.0 * r * r + 2.0 * a * r + b;
    let a6 = ((r + a) * r + b) * r + c;
    let b2 = 4.0 * a2;
    let b4 = 2.0 * a4;
    let b6 = 4.0 * a6;
    let b8 = 4.0 * a2 * a6 - a4 * a4;

    // log |X| where X = x/s² − r, kept in log form while it is huge.
    let log_x_scaled = ln_abs(x) - 2.0 * log_s;
    let mut big = log_x_scaled > 600.0;
    let mut log_big = log_x_scaled;
    let mut xf = if big {
        f64::INFINITY
    } else {
        let sign = if x.is_negative() { -1.0 } else { 1.0 };
        sign * log_x_scaled.exp() - r
    };
    let lead = if big { log_x_scaled } else { xf.abs().ln() };

    let mut sum = 0.0;
    let mut weight = 1.0;
    let mut n = 0;
    loop {
        if big {
            // z ≈ 1, x(2Q) ≈ x/4
            log_big -= 4f64.ln();
            if log_big < 600.0 {
                big = false;
                xf = log_big.exp();
            }
        } else {
            let t = 1.0 / xf;
            let z = 1.0 - b4 * t * t - 2.0 * b6 * t * t * t - b8 * t * t * t * t;
            let w = 4.0 + b2 * t + 2.0 * b4 * t * t + b6 * t * t * t;
            sum += weight * z.abs().ln();
            xf = xf * z / w;
        }
        weight /= 4.0;
        n += 1;
        if (weight < eps * 1e-3 && n > 8) || n > 200 {
            break;
        }
    }
    let value = 0.5 * lead + sum / 8.0 + log_s;
    // tail of the series plus rounding in f64
    let err = weight * 10.0 + 1e-14 * (1.0 + value.abs()) * 8.0;
    (value, err)
}

fn smallest_real_root(a: f64, b: f64, c: f64) -> f64 {
    let f = |x: f64| ((x + a) * x + b) * x + c;
    let df = |x: f64| (3.0 * x + 2.0 * a) * x + b;
    // Cauchy bound, then bisection from the left followed by Newton polish.
    let m = 1.0 + a.abs().max(b.abs()).max(c.abs());
    let mut lo = -m;
    let mut hi = m;
    // f(lo) < 0, f(hi) > 0; the leftmost sign change holds the smallest root
    let steps = 4096;
    let h = (hi - lo) / steps as f64;
    let mut prev = lo;
    for i in 1..=steps {
        let cur = -m + h * i as f64;
        if f(cur) >= 0.0 {
            lo = prev;
            hi = cur;
            break;
        }
        prev = cur;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut x = hi;
    for _ in 0..3 {
        let d = df(x);
        if d != 0.0 {
            x -= f(x) / d;
        }
    }
    x.min(hi)
}

/// Division values ψ_0(P), …, ψ_n(P) on y² = x³ + ax² + bx + c.
fn division_values(e: &Curve, p: &Point, n: usize) -> Vec<Rational> {
    let (x, y) = match p {
        Point::Affine { x, y } => (x, y),
        Point::Infinity => unreachable!("affine point"),
    };
    let (a, b, c) = (e.a(), e.b(), e.c());
    let b2 = rat(4) * a;
    let b4 = rat(2) * b;
    let b6 = rat(4) * c;
    let b8 = rat(4) * a * c - b * b;
    let x2 = x * x;
    let x3 = &x2 * x;
    let x4 = &x2 * &x2;
    let psi2 = rat(2) * y;
    let psi3 = rat(3) * &x4 + &b2 * &x3 + rat(3) * &b4 * &x2 + rat(3) * &b6 * x + &b8;
    let psi4 = &psi2
        * (rat(2) * &x3 * &x3
            + &b2 * &x4 * x
            + rat(5) * &b4 * &x4
            + rat(10) * &b6 * &x3
            + rat(10) * &b8 * &x2
            + (&b2 * &b8 - &b4 * &b6) * x
            + (&b4 * &b8 - &b6 * &b6));
    let mut v = vec![Rational::zero(), rat(1), psi2.clone(), psi3, psi4];
    for k in 5..=n {
        let m = k / 2;
        let next = if k % 2 == 1 {
            &v[m + 2] * v[m].pow(3) - &v[m - 1] * v[m + 1].pow(3)
        } else {
            &v[m] * (&v[m + 2] * v[m - 1].pow(2) - &v[m - 2] * v[m + 1].pow(2)) / &psi2
        };
        v.push(next);
    }
    v.truncate(n + 1);
    v
}

/// gcd(2b, d⁴·f′(a/d²)) for P = (a/d², b/d³) on an integral model: the primes
/// at which P reduces to the singular point.
fn singular_primes_witness(e: &Curve, p: &Point) -> BigInt {
    let (x, y) = match p {
        Point::Affine { x, y } => (x, y),
        Point::Infinity => return BigInt::from(1),
    };
    let fprime = rat(3) * x * x + rat(2) * e.a() * x + e.b();
    let d2 = x.denom();
    // y = b/d³ and f′(x)·d⁴ is integral
    let fp = fprime * Rational::from_integer(d2 * d2);
    debug_assert!(fp.is_integer());
    (rat(2) * y.numer()).to_integer().gcd(&fp.to_integer())
}

fn denominator_root(x: &Rational) -> BigInt {
    crate::exact_math::isqrt(x.denom())
}

/// The part of `n` supported on the primes of `m`.
fn part_over(n: &BigInt, m: &BigInt) -> BigInt {
    let mut n = n.abs();
    let mut part = BigInt::from(1);
    if n.is_zero() {
        return part;
    }
    loop {
        let g = n.gcd(m);
        if g <= BigInt::from(1) {
            return part;
        }
        n /= &g;
        part *= g;
    }
}

fn ord(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// An integral model isomorphic to `e` through x = u²·x' + r, y = u³·y'.
struct Reduced {
    curve: Curve,
    u: BigInt,
    r: BigInt,
}

impl Reduced {
    fn point(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => {
                let u = Rational::from_integer(self.u.clone());
                let u2 = &u * &u;
                Point::new((x - Rational::from_integer(self.r.clone())) / &u2, y / (&u2 * &u))
            }
        }
    }
}

/// Divides out p²ⁱ-scalings of an integral model at the small primes of
/// gcd(c₄, c₆), translating x where needed.
fn reduce_model(e: &Curve) -> Reduced {
    let (mut a, mut b, mut c) = (e.a().to_integer(), e.b().to_integer(), e.c().to_integer());
    let c4 = e.c4().to_integer();
    let c6 = (rat(-64) * e.a() * e.a() * e.a() + rat(288) * e.a() * e.b() - rat(864) * e.c()).to_integer();
    let (primes, rest) = trial_factor(&c4.gcd(&c6), TRIAL_BOUND);
    let mut bases: Vec<BigInt> = primes.into_iter().map(|(p, _)| p).collect();
    if rest > BigInt::one() {
        let parts = [&c4, &c6].map(|n| part_over(n, &rest));
        bases.extend(coprime_base(&[rest, parts[0].clone(), parts[1].clone()]).into_iter().map(|q| power_root(&q)));
    }
    let mut u = BigInt::one();
    let mut r = BigInt::zero();
    for p in bases {
        let p2 = &p * &p;
        let p4 = &p2 * &p2;
        let p6 = &p4 * &p2;
        loop {
            let candidates: Vec<BigInt> = if p > BigInt::from(3) {
                let inv3 = BigInt::from(3).extended_gcd(&p2).x;
                vec![(-&a * inv3).mod_floor(&p2)]
            } else {
                (0..9u32).map(BigInt::from).filter(|t| t < &p2).collect()
            };
            let step = candidates.into_iter().find_map(|t| {
                let (two, three) = (BigInt::from(2), BigInt::from(3));
                let a1: BigInt = &a + &three * &t;
                let b1: BigInt = &three * &t * &t + &two * &a * &t + &b;
                let c1: BigInt = ((&t + &a) * &t + &b) * &t + &c;
                let ok = (&a1 % &p2).is_zero() && (&b1 % &p4).is_zero() && (&c1 % &p6).is_zero();
                ok.then(|| (t, a1 / &p2, b1 / &p4, c1 / &p6))
            });
            let Some((t, a1, b1, c1)) = step else { break };
            r += &u * &u * t;
            u *= &p;
            (a, b, c) = (a1, b1, c1);
        }
    }
    let int = |n: BigInt| Rational::from_integer(n);
    let curve = Curve::cubic(int(a), int(b), int(c)).expect("isomorphic to a nonsingular curve");
    Reduced { curve, u, r }
}

/// The smallest m with mᵏ = n.
fn power_root(n: &BigInt) -> BigInt {
    let mut m = n.clone();
    for k in (2..=12u32).rev() {
        let root = n.nth_root(k);
        if root > BigInt::one() && root.pow(k) == *n {
            m = m.min(root);
        }
    }
    m
}

/// An integral model of `e`, reduced at the small primes of gcd(c₄, c₆).
pub fn small_integral_model(e: &Curve) -> Curve {
    reduce_model(&e.integral_model().0).curve
}

/// μ_p at an odd prime of multiplicative reduction where P is singular:
/// −i(N − i)/(2N)·log p with N = ord_p Δ and i = min(ord_p(2y), N/2).
/// `p` may be an element of a coprime base rather than a prime.
fn multiplicative_local(e: &Curve, pt: &Point, p: &BigInt) -> f64 {
    let y = pt.y().expect("affine point");
    let n = ord(&e.discriminant().to_integer(), p) as f64;
    let i = (ord(y.numer(), p) as f64).min(n / 2.0);
    -i * (n - i) / (2.0 * n) * ln_abs_int(p)
}

/// μ₂ when the model becomes minimal with multiplicative reduction at 2 after
/// x = 4x' + r, y = 8y' + 4s·x' + t. Such a model is never of the form
/// y² = cubic, so the closed form is applied to the general model and
/// shifted by log 2 for the change of model.
fn multiplicative_at_two(e: &Curve, pt: &Point) -> Option<f64> {
    let (a, b, c) = (e.a(), e.b(), e.c());
    let (x, y) = (pt.x()?, pt.y()?);
    for r in 0..16i64 {
        for s in 0..2i64 {
            for t in (0..64i64).step_by(4) {
                let (r, s, t) = (rat(r), rat(s), rat(t));
                let a2 = (a + rat(3) * &r - &s * &s) / rat(4);
                let a4 = (b + rat(2) * &r * a + rat(3) * &r * &r - rat(2) * &s * &t) / rat(16);
                let a6 = (c + &r * b + &r * &r * a + &r * &r * &r - &t * &t) / rat(64);
                if !(a2.is_integer() && a4.is_integer() && a6.is_integer()) {
                    continue;
                }
                let (a1, a3) = (s.clone(), &t / rat(4));
                let general = crate::curves::GeneralCurve { a: [a1.clone(), a2.clone(), a3.clone(), a4.clone(), a6] };
                let [b2, b4, _, _] = general.b_invariants();
                let c4 = &b2 * &b2 - rat(24) * &b4;
                let disc = general.discriminant().to_integer();
                let two = BigInt::from(2);
                if ord(&c4.to_integer(), &two) > 0 {
                    return None;
                }
                let xp = (x - &r) / rat(4);
                if xp.denom().is_even() {
                    return None;
                }
                let yp = (y - rat(4) * &s * &xp - &t) / rat(8);
                let psi2 = rat(2) * &yp + &a1 * &xp + &a3;
                let dx = rat(3) * &xp * &xp + rat(2) * &a2 * &xp + &a4 - &a1 * &yp;
                let log2 = 2f64.ln();
                if psi2.numer().is_odd() || dx.numer().is_odd() {
                    return Some(-log2);
                }
                let n = ord(&disc, &two) as f64;
                let i = (ord(psi2.numer(), &two) as f64).min(n / 2.0);
                return Some(-i * (n - i) / (2.0 * n) * log2 - log2);
            }
        }
    }
    None
}

/// Σ μ_p over the primes of `pending`, through the first multiples kP that
/// are nonsingular there: μ_p(kP) = k²·μ_p(P) + ord_p(ψ_k(P))·log p.
///
/// `pending` is never factored. It is split by gcds against the witnesses of
/// 2P, 3P, …; the primes at which kP is nonsingular are settled together.
fn walk_multiples(e: &Curve, pt: &Point, mut pending: BigInt) -> Result<f64> {
    let mut total = 0.0;
    let mut q = pt.clone();
    let mut k = 1usize;
    while pending > BigInt::one() {
        k += 1;
        if k as u32 > MAX_MULTIPLE {
            return Err(Error::Other(format!("no nonsingular multiple for the primes of {pending}")));
        }
        q = e.add_unchecked(&q, pt);
        if q.is_infinity() {
            return Err(Error::Other("torsion point reached in height computation".into()));
        }
        let still = singular_primes_witness(e, &q).gcd(&pending);
        let mut settled = pending.clone();
        loop {
            let g = settled.gcd(&still);
            if g <= BigInt::one() {
                break;
            }
            settled /= g;
        }
        if settled <= BigInt::one() {
            continue;
        }
        let psi = division_values(e, pt, k);
        let psik = &psi[k];
        let den = part_over(&denominator_root(q.x().expect("affine multiple")), &settled);
        let num_psi = part_over(psik.numer(), &settled);
        let den_psi = part_over(psik.denom(), &settled);
        total += (ln_abs_int(&den) - ln_abs_int(&num_psi) + ln_abs_int(&den_psi)) / (k * k) as f64;
        pending = part_over(&pending, &still);
    }
    Ok(total)
}

/// Pairwise coprime integers > 1 of which every input is a product of powers.
fn coprime_base(inputs: &[BigInt]) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = Vec::new();
    let mut work: Vec<BigInt> = inputs.iter().map(|n| n.abs()).filter(|n| n > &BigInt::one()).collect();
    while let Some(x) = work.pop() {
        match base.iter().position(|b| b.gcd(&x) > BigInt::one()) {
            None => base.push(x),
            Some(i) => {
                let b = base.swap_remove(i);
                let g = b.gcd(&x);
                for piece in [&b / &g, &x / &g, g] {
                    if piece > BigInt::one() {
                        work.push(piece);
                    }
                }
            }
        }
    }
    base.sort();
    base
}

/// Σ_p μ_p(P) for P on an integral model, P non-torsion.
///
/// Singular primes above the trial bound are not factored. Their product is
/// split into a coprime base together with Δ, y and c₄; every prime of one
/// base element q has the same reduction type and the same ratios of
/// valuations, so q can stand in for a prime with weight log q.
fn non_archimedean(e: &Curve, pt: &Point) -> Result<f64> {
    let x = pt.x().ok_or(Error::InfinityPoint)?;
    let mut total = ln_abs_int(&denominator_root(x));
    let witness = singular_primes_witness(e, pt).abs();
    if witness <= BigInt::one() {
        return Ok(total);
    }
    let c4 = e.c4().to_integer();
    let (small, rest) = trial_factor(&witness, TRIAL_BOUND);
    let mut factors: Vec<BigInt> = small.into_iter().map(|(p, _)| p).collect();
    if rest > BigInt::one() {
        if is_probable_prime(&rest) {
            factors.push(rest);
        } else {
            let disc = e.discriminant().to_integer();
            let y = pt.y().expect("affine point").numer().clone();
            let parts = [disc, y, c4.clone()].map(|n| part_over(&n, &rest));
            factors.extend(coprime_base(&[rest.clone(), parts[0].clone(), parts[1].clone(), parts[2].clone()]));
        }
    }
    let mut pending = BigInt::one();
    for q in factors {
        if q.is_odd() && q.gcd(&c4).is_one() {
            total += multiplicative_local(e, pt, &q);
        } else if let Some(mu) = (q == BigInt::from(2)).then(|| multiplicative_at_two(e, pt)).flatten() {
            total += mu;
        } else {
            pending *= q;
        }
    }
    Ok(total + walk_multiples(e, pt, pending)?)
}

/// Nagell–Lutz on an integral model: torsion points are integral with y = 0
/// or y² | Δ.
fn might_be_torsion(e: &Curve, p: &Point) -> bool {
    let (Some(x), Some(y)) = (p.x(), p.y()) else { return true };
    if !(x.is_integer() && y.is_integer()) {
        return false;
    }
    let y = y.to_integer();
    y.is_zero() || (e.discriminant().to_integer() % (&y * &y)).is_zero()
}

/// The canonical height of `p` on `e` within `eps`.
pub fn canonical_height(e: &Curve, p: &Point, eps: f64) -> Result<HeightValue> {
    if !e.contains(p) {
        return Err(Error::PointNotOnCurve);
    }
    if p.is_infinity() {
        return Ok(HeightValue { value: 0.0, error_bound: eps });
    }
    let (integral, scaling) = e.integral_model();
    let reduced = reduce_model(&integral);
    let q = reduced.point(&scaling.apply(p));
    let x = q.x().expect("affine point").clone();
    if might_be_torsion(&reduced.curve, &q) && reduced.curve.point_order(&q, 12)?.is_some() {
        return Ok(HeightValue { value: 0.0, error_bound: eps });
    }
    let (lambda, err) = archimedean(&reduced.curve, &x, eps);
    let mu = non_archimedean(&reduced.curve, &q)?;
    let value = 2.0 * (lambda + mu);
    Ok(HeightValue { value, error_bound: (2.0 * err).max(f64::EPSILON) })
}

/// ⟨P, Q⟩ = (ĥ(P+Q) − ĥ(P) − ĥ(Q)) / 2.
pub fn height_pairing(e: &Curve, p: &Point, q: &Point, eps: f64) -> Result<HeightValue> {
    let s = e.add(p, q)?;
    let hs = canonical_height(e, &s, eps)?;
    let hp = canonical_height(e, p, eps)?;
    let hq = canonical_height(e, q, eps)?;
    Ok(HeightValue {
        value: (hs.value - hp.value - hq.value) / 2.0,
        error_bound: (hs.error_bound + hp.error_bound + hq.error_bound) / 2.0,
    })
}

/// Gram matrix of the height pairing.
pub fn gram_matrix(e: &Curve, points: &[Point], eps: f64) -> Result<Vec<Vec<HeightValue>>> {
    let n = points.len();
    let heights: Vec<HeightValue> = points
        .iter()
        .map(|p| canonical_height(e, p, eps))
        .collect::<Result<_>>()?;
    let mut g = vec![vec![HeightValue { value: 0.0, error_bound: 0.0 }; n]; n];
    for i in 0..n {
        g[i][i] = heights[i];
        for j in (i + 1)..n {
            let s = e.add(&points[i], &points[j])?;
            let hs = canonical_height(e, &s, eps)?;
            let v = HeightValue {
                value: (hs.value - heights[i].value - heights[j].value) / 2.0,
                error_bound: (hs.error_bound + heights[i].error_bound + heights[j].error_bound) / 2.0,
            };
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    Ok(g)
}

/// Determinant of the Gram matrix, with a first-order error bound.
pub fn regulator(e: &Curve, points: &[Point], eps: f64) -> Result<HeightValue> {
    let g = gram_matrix(e, points, eps)?;
    Ok(determinant(&g))
}

pub(crate) fn determinant(g: &[Vec<HeightValue>]) -> HeightValue {
    let n = g.len();
    if n == 0 {
        return HeightValue { value: 1.0, error_bound: 0.0 };
    }
    let mut m: Vec<Vec<f64>> = g.iter().map(|r| r.iter().map(|h| h.value).collect()).collect();
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[piv][col] == 0.0 {
            det = 0.0;
            break;
        }
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col];
        for r in (col + 1)..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    // |∂det/∂g_ij| ≤ product of the other row norms (Hadamard)
    let row_norms: Vec<f64> = g
        .iter()
        .map(|r| r.iter().map(|h| h.value * h.value).sum::<f64>().sqrt().max(1.0))
        .collect();
    let max_err = g.iter().flatten().map(|h| h.error_bound).fold(0.0, f64::max);
    let prod: f64 = row_norms.iter().product();
    let max_norm = row_norms.iter().cloned().fold(1.0, f64::max);
    let err = n as f64 * n as f64 * max_err * prod / max_norm;
    HeightValue { value: det, error_bound: err }
}

/// Reference value by the doubling limit h(x(2ⁿP)) / 4ⁿ, for cross-checks.
pub fn doubling_limit_height(e: &Curve, p: &Point, n: u32) -> Result<f64> {
    if !e.contains(p) {
        return Err(Error::PointNotOnCurve);
    }
    let mut q = p.clone();
    for _ in 0..n {
        q = e.double(&q);
    }
    if q.is_infinity() {
        return Ok(0.0);
    }
    Ok(naive_height(&q)? / 4f64.powi(n as i32))
}

/// Convenience: ĥ as an f64 with the default tolerance.
pub fn height(e: &Curve, p: &Point) -> Result<f64> {
    Ok(canonical_height(e, p, DEFAULT_EPS)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::frac;
    use proptest::prelude::*;

    fn ab(a: i64, b: i64) -> Curve {
        Curve::ab(rat(a), rat(b)).unwrap()
    }

    fn pt(x: i64, y: i64) -> Point {
        Point::new(rat(x), rat(y))
    }

    #[test]
    fn naive() {
        assert!((naive_height(&pt(7, 14)).unwrap() - 7f64.ln()).abs() < 1e-15);
        assert!((naive_height(&Point::new(frac(1, 2), rat(0))).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((naive_height(&pt(99, 990)).unwrap() - 99f64.ln()).abs() < 1e-15);
        assert_eq!(naive_height(&Point::Infinity), Err(Error::InfinityPoint));
    }

    #[test]
    fn torsion_is_zero() {
        let h = canonical_height(&ab(-59, 864), &pt(24, 24), DEFAULT_EPS).unwrap();
        assert!(h.value.abs() <= h.error_bound);
    }

    #[test]
    fn quadratic_and_positive() {
        let e = ab(-43, 280);
        let p = pt(7, 14);
        let h1 = canonical_height(&e, &p, DEFAULT_EPS).unwrap();
        let h2 = canonical_height(&e, &e.double(&p), DEFAULT_EPS).unwrap();
        assert!(h1.value > 0.05);
        assert!((h2.value - 4.0 * h1.value).abs() < 5.0 * DEFAULT_EPS.max(h1.error_bound * 4.0));
        let h3 = canonical_height(&e, &e.scalar_mul(3, &p).unwrap(), DEFAULT_EPS).unwrap();
        assert!((h3.value - 9.0 * h1.value).abs() < 1e-8);
    }

    #[test]
    fn agrees_with_doubling_limit() {
        for (e, p) in [(ab(-43, 280), pt(7, 14)), (ab(-463, 45936), pt(99, 990))] {
            let h = height(&e, &p).unwrap();
            let d = doubling_limit_height(&e, &p, 5).unwrap();
            assert!((h - d).abs() < 0.02, "{h} vs {d}");
        }
    }

    #[test]
    fn pairing_and_regulator() {
        let e = ab(-43, 280);
        let p = pt(7, 14);
        let t = Point::new(rat(0), rat(0));
        let pp = height_pairing(&e, &p, &p, DEFAULT_EPS).unwrap();
        assert!((pp.value - height(&e, &p).unwrap()).abs() < 1e-9);
        assert!(height_pairing(&e, &p, &t, DEFAULT_EPS).unwrap().value.abs() < 1e-9);
        let r1 = regulator(&e, &[t.clone()], DEFAULT_EPS).unwrap();
        assert!(r1.value.abs() < 1e-9);
        let r2 = regulator(&e, &[p.clone(), e.double(&p)], DEFAULT_EPS).unwrap();
        assert!(r2.value.abs() < 1e-6);
    }

    #[test]
    fn closed_form_matches_multiples() {
        // primes of multiplicative reduction at which the point is singular
        for (e, p, primes) in [(ab(-43, 280), pt(7, 14), vec![7]), (ab(-463, 45936), pt(99, 990), vec![3, 5, 11])] {
            for prime in primes {
                let prime = BigInt::from(prime);
                let walk = walk_multiples(&e, &p, prime.clone()).unwrap();
                let closed = multiplicative_local(&e, &p, &prime);
                assert!(walk < 0.0 && (walk - closed).abs() < 1e-12, "{prime}: {walk} vs {closed}");
            }
        }
    }

    #[test]
    fn two_adic_closed_form_matches_multiples() {
        let mut checked = 0;
        for v in -40..40i64 {
            // c₄ = 16·odd and 2¹² | Δ: multiplicative at 2 once made minimal
            let Ok(e) = Curve::ab(rat(1 - 8 * v + 8 * v * v), rat(16 * v.pow(4))) else { continue };
            for (n, m) in (-300..300i64).flat_map(|n| [(n, 1), (n, 3), (n, 5)]) {
                let x = frac(n, m * m);
                let f = x.pow(3) + e.a() * &x * &x + e.b() * &x;
                let Some(y) = crate::exact_math::rational_sqrt(&f) else { continue };
                if y.is_zero() {
                    continue;
                }
                let p = Point::new(x.clone(), y);
                if singular_primes_witness(&e, &p).is_odd() {
                    continue;
                }
                let Some(mu) = multiplicative_at_two(&e, &p) else { continue };
                let Ok(walked) = walk_multiples(&e, &p, BigInt::from(2)) else { continue };
                assert!((mu - walked).abs() < 1e-12, "v={v} x={x}: {mu} vs {walked}");
                checked += 1;
            }
        }
        assert!(checked > 10, "{checked}");
    }

    #[test]
    fn coprime_bases() {
        let n = |v: i64| BigInt::from(v);
        assert_eq!(coprime_base(&[n(12), n(18)]), vec![n(2), n(3)]);
        assert_eq!(coprime_base(&[n(35), n(49), n(1)]), vec![n(5), n(7)]);
        let big = n(1_000_003) * n(1_000_033);
        let base = coprime_base(&[big.clone(), n(1_000_003).pow(3) * n(17)]);
        assert_eq!(base, vec![n(17), n(1_000_003), n(1_000_033)]);
    }

    #[test]
    fn composite_base_matches_primes() {
        // the closed form over a coprime base of 5·11 equals the sum over 5 and 11
        let e = ab(-463, 45936);
        let p = pt(99, 990);
        let m = BigInt::from(55);
        let inputs = [e.discriminant().to_integer(), p.y().unwrap().to_integer(), e.c4().to_integer()]
            .map(|n| part_over(&n, &m));
        let base = coprime_base(&[m.clone(), inputs[0].clone(), inputs[1].clone(), inputs[2].clone()]);
        let via_base: f64 = base.iter().map(|q| multiplicative_local(&e, &p, q)).sum();
        let direct: f64 = [5, 11].iter().map(|&q| multiplicative_local(&e, &p, &BigInt::from(q))).sum();
        assert!((via_base - direct).abs() < 1e-12);
    }

    #[test]
    fn far_from_minimal_models() {
        let e = ab(-43, 280);
        let p = pt(7, 14);
        let h = height(&e, &p).unwrap();
        for u in [rat(2).pow(9), rat(7).pow(4), rat(3).pow(5) * rat(5).pow(3)] {
            let (t, s) = e.scaled(&u);
            let reduced = reduce_model(&t.integral_model().0);
            assert_eq!(reduced.curve, e);
            assert!((height(&t, &s.apply(&p)).unwrap() - h).abs() < 1e-9);
        }
        // a translated model reduces back as well
        let shifted = Curve::cubic(rat(-43 + 3 * 9), rat(3 * 81 - 2 * 43 * 9 + 280), rat(9 * 9 * 9 - 43 * 81 + 280 * 9)).unwrap();
        let (t, s) = shifted.scaled(&rat(5));
        let q = s.apply(&Point::new(rat(7 - 9), rat(14)));
        assert!((height(&t, &q).unwrap() - h).abs() < 1e-9);
    }

    #[test]
    fn model_invariance() {
        let e = ab(-43, 280);
        let p = pt(7, 14);
        let (t, s) = e.scaled(&frac(1, 3));
        let h = height(&e, &p).unwrap();
        assert!((height(&t, &s.apply(&p)).unwrap() - h).abs() < 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn parallelogram(k in 1i64..4, j in 1i64..4) {
            // ĥ(kP + jQ) + ĥ(kP − jQ) = 2ĥ(kP) + 2ĥ(jQ) on a rank-2 curve
            let e = ab(-463, 45936);
            let p = pt(99, 990);
            let q = pt(4, 420);
            let kp = e.scalar_mul(k, &p).unwrap();
            let jq = e.scalar_mul(j, &q).unwrap();
            let s = e.add(&kp, &jq).unwrap();
            let d = e.add(&kp, &e.neg(&jq)).unwrap();
            let lhs = height(&e, &s).unwrap() + height(&e, &d).unwrap();
            let rhs = 2.0 * height(&e, &kp).unwrap() + 2.0 * height(&e, &jq).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-7 * (1.0 + rhs));
        }
    }
}
