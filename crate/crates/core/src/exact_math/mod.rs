//! Exact arithmetic over ℚ and ℚ(u).
//!
//! Scalars are [`num_rational::BigRational`], which is always kept reduced with a
//! positive denominator. On top of it sit dense univariate polynomials ([`Poly`]),
//! rational functions in lowest terms ([`RatFunc`]), a small expression parser for
//! transcribed formulas, and exact rational root finding.

mod expr;
mod factor;
mod poly;
mod ratfunc;
mod roots;

pub use expr::{parse_poly, parse_ratfunc, parse_ratfunc_with};
pub use factor::{factor_int, is_probable_prime, trial_factor};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use roots::{integer_roots, rational_roots};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`; the result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Canonical text form: `p/q`, or `p` when q = 1.
pub fn fmt_rational(q: &Rational) -> String {
    q.to_string()
}

/// Floor square root of a non-negative integer (Newton iteration).
pub fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// Exact square root of an integer, if it is a perfect square.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = isqrt(n);
    (&r * &r == *n).then_some(r)
}

/// Non-negative rational square root, if `q` is a square in ℚ.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let n = int_sqrt_exact(q.numer())?;
    let d = int_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

/// Natural log of |n| for arbitrarily large integers. `n` must be nonzero.
pub fn ln_abs_int(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        if let Some(f) = n.to_f64() {
            return f.abs().ln();
        }
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of |q|; `q` must be nonzero.
pub fn ln_abs(q: &Rational) -> f64 {
    ln_abs_int(q.numer()) - ln_abs_int(q.denom())
}

/// log max(|num|, |den|), the logarithmic naive height of a rational.
pub fn log_height(q: &Rational) -> f64 {
    let n = q.numer().abs();
    let d = q.denom();
    if n.is_zero() {
        return 0.0;
    }
    if &n > d {
        ln_abs_int(&n)
    } else {
        ln_abs_int(d)
    }
}

/// Converts to f64 for moderate magnitudes, going through logs when the
/// numerator or denominator alone would overflow.
pub fn to_f64(q: &Rational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let sign = if q.is_negative() { -1.0 } else { 1.0 };
    sign * ln_abs(q).exp()
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Residue of a rational modulo an odd prime p, or `None` when p divides the denominator.
pub fn rational_mod_p(q: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = q.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    let n = q.numer().mod_floor(&pb).to_u64()?;
    Some(mul_mod(n, inv_mod(d, p), p))
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime via Fermat.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Odd primes in increasing order starting at 3.
pub fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| is_prime(n))
}

/// All rational roots of a·x² + b·x + c.
///
/// Degenerates to the linear equation when a = 0. Roots come back sorted and
/// without repetition.
pub fn solve_quadratic(a: &Rational, b: &Rational, c: &Rational) -> Result<Vec<Rational>> {
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_zero() {
                Err(Error::Other("solve_quadratic: all coefficients are zero".into()))
            } else {
                Err(Error::InconsistentEquation)
            };
        }
        return Ok(vec![-c / b]);
    }
    let disc = b * b - rat(4) * a * c;
    let Some(root) = rational_sqrt(&disc) else {
        return Ok(vec![]);
    };
    let two_a = rat(2) * a;
    let mut roots = vec![(-b + &root) / &two_a, (-b - &root) / &two_a];
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Lowest common multiple of the denominators of the given rationals.
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Sign-aware helper: true if the integer is a perfect square (zero included).
pub fn is_square_int(n: &BigInt) -> bool {
    n.sign() != Sign::Minus && int_sqrt_exact(n).is_some()
}
