use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{common_denominator, rational_sqrt, Rational};

/// Dense univariate polynomial over ℚ, coefficients indexed by degree.
///
/// The coefficient vector never ends in a zero; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| super::rat(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate u.
    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().recip())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Polynomial composition f(g).
    pub fn compose(&self, g: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * g) + &Poly::constant(c.clone()))
    }

    /// Euclidean division: returns (q, r) with self = q·d + r and deg r < deg d.
    ///
    /// Runs as integer pseudo-division on cleared denominators, so only the
    /// final coefficients are reduced as fractions.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let (sn, sd) = self.to_integer_parts();
        let (dn, ddn) = d.to_integer_parts();
        let lc = dn[dd].clone();
        let steps = sn.len() - dd;
        let mut rem = sn;
        let mut quot = vec![BigInt::zero(); steps];
        // invariant: lc^(steps-1-k) scaling is folded in as we go
        for k in (0..steps).rev() {
            let c = rem[k + dd].clone();
            if !c.is_zero() {
                for r in rem.iter_mut().take(k + dd + 1) {
                    *r *= &lc;
                }
                for q in quot.iter_mut().skip(k + 1) {
                    *q *= &lc;
                }
                for (j, dc) in dn.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
                quot[k] = c;
            } else {
                // keep the common scale in sync
                for r in rem.iter_mut().take(k + dd + 1) {
                    *r *= &lc;
                }
                for q in quot.iter_mut().skip(k + 1) {
                    *q *= &lc;
                }
            }
        }
        // now lc^steps · self·sd = quot · (d·ddn) + rem
        let scale = lc.pow(steps as u32) * &sd;
        rem.truncate(dd);
        let q = Poly::new(
            quot.into_iter()
                .map(|c| Rational::new(c * &ddn, scale.clone()))
                .collect(),
        );
        let r = Poly::new(rem.into_iter().map(|c| Rational::new(c, scale.clone())).collect());
        (q, r)
    }

    /// Integer coefficients n and a positive integer m with self = n / m.
    fn to_integer_parts(&self) -> (Vec<BigInt>, BigInt) {
        let m = self.denominator_lcm();
        let n = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&m / c.denom()))
            .collect();
        (n, m)
    }

    fn from_integer_parts(n: Vec<BigInt>, m: &BigInt) -> Poly {
        Poly::new(n.into_iter().map(|c| Rational::new(c, m.clone())).collect())
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    ///
    /// A reduction modulo a couple of large primes detects the common coprime
    /// case cheaply; otherwise a primitive remainder sequence over ℤ is used.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        let a = int_primitive(self.to_integer_parts().0);
        let b = int_primitive(other.to_integer_parts().0);
        if coprime_mod_p(&a, &b) {
            return Poly::one();
        }
        let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        while !b.is_empty() {
            let r = int_primitive(pseudo_rem(&a, &b));
            a = b;
            b = r;
        }
        Poly::from_integer_parts(a, &BigInt::one()).monic()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return Poly::one();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    /// lcm of coefficient denominators, so that `self * denominator_lcm` is integral.
    pub fn denominator_lcm(&self) -> BigInt {
        common_denominator(self.coeffs.iter())
    }

    /// gcd of the numerators of the coefficients (after clearing denominators).
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        let d = Rational::from_integer(self.denominator_lcm());
        self.coeffs.iter().map(|c| (c * &d).to_integer()).collect()
    }

    /// Rational content: positive c with self / c integral and primitive.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let den = self.denominator_lcm();
        let g = self
            .integer_coeffs()
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Rational::new(g, den)
    }

    /// Integral primitive polynomial with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Square root in ℚ[u], if one exists; the returned root has positive
    /// leading coefficient.
    ///
    /// Coefficients are determined from the top down by the linear recurrence
    /// coming from g² = f, then the candidate is checked by squaring.
    pub fn sqrt(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let n = self.coeffs.len() - 1;
        if n % 2 == 1 {
            return None;
        }
        let m = n / 2;
        let top = rational_sqrt(&self.leading())?;
        let two_top = &top * Rational::from_integer(BigInt::from(2));
        let mut g = vec![Rational::zero(); m + 1];
        g[m] = top;
        for k in 1..=m {
            // coefficient of u^(2m-k) in g² is 2·g_m·g_(m-k) + Σ_{0<i<k} g_(m-i)·g_(m-k+i)
            let mut acc = self.coeffs[n - k].clone();
            for i in 1..k {
                acc -= &g[m - i] * &g[m - k + i];
            }
            g[m - k] = acc / &two_top;
        }
        let g = Poly::new(g);
        (&g * &g == *self).then_some(g)
    }

    /// Comma-separated coefficient list, constant term first.
    pub fn to_coeff_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Inverse of [`Poly::to_coeff_string`].
    pub fn from_coeff_string(s: &str) -> crate::error::Result<Poly> {
        s.split(',')
            .map(super::parse_rational)
            .collect::<crate::error::Result<Vec<_>>>()
            .map(Poly::new)
    }

    /// Human-readable form in the variable `var`, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 || !a.is_one() {
                out.push_str(&a.to_string());
                if i > 0 {
                    out.push('*');
                }
            }
            out.push_str(&mono);
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self.to_coeff_string())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_coeff_string())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let (a, da) = self.to_integer_parts();
        let (b, db) = rhs.to_integer_parts();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Poly::from_integer_parts(out, &(da * db))
    }
}

/// Integer coefficient vector divided by its content, sign fixed so the
/// leading coefficient is positive; trailing zeros removed.
fn int_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let Some(lead) = v.last() else { return v };
    let mut g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if lead.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    v
}

/// lc(b)^(deg a - deg b + 1) · a mod b over ℤ.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let top = r.pop().expect("non-empty");
        let shift = r.len() - db;
        for c in r.iter_mut() {
            *c *= lc;
        }
        if !top.is_zero() {
            for (j, bc) in b.iter().take(db).enumerate() {
                r[shift + j] -= &top * bc;
            }
        }
        while r.len() > db && r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

/// True when some large prime not dividing either leading coefficient shows
/// the polynomials to be coprime (coprime mod p implies coprime over ℚ).
fn coprime_mod_p(a: &[BigInt], b: &[BigInt]) -> bool {
    const PRIMES: [u64; 2] = [4_294_967_291, 4_294_967_279];
    for p in PRIMES {
        let pb = BigInt::from(p);
        let red = |v: &[BigInt]| -> Vec<u64> {
            v.iter()
                .map(|c| {
                    let r = c.mod_floor(&pb);
                    u64::try_from(r).expect("residue fits")
                })
                .collect()
        };
        let (ra, rb) = (red(a), red(b));
        if ra.last() == Some(&0) || rb.last() == Some(&0) {
            continue;
        }
        if super::roots::gcd_degree_mod(&ra, &rb, p) == 0 {
            return true;
        }
    }
    false
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::{frac, rat};

    #[test]
    fn sqrt_examples() {
        assert_eq!(Poly::from_ints(&[1, 2, 1]).sqrt(), Some(Poly::from_ints(&[1, 1])));
        assert_eq!(Poly::from_ints(&[1, 0, 1]).sqrt(), None);
        assert_eq!(
            Poly::from_ints(&[1, 6, 13, 12, 4]).sqrt(),
            Some(Poly::from_ints(&[1, 3, 2]))
        );
        // (-u - 1)² normalizes to u + 1
        let g = Poly::from_ints(&[-1, -1]);
        assert_eq!((&g * &g).sqrt(), Some(Poly::from_ints(&[1, 1])));
        assert_eq!(Poly::from_ints(&[0, 1]).sqrt(), None);
        assert_eq!(Poly::from_ints(&[-1]).sqrt(), None);
    }

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_ints(&[-1, 0, 1]); // u² - 1
        let b = Poly::from_ints(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Poly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let c = Poly::from_ints(&[2, 3, 1]); // (u+1)(u+2)
        assert_eq!(a.gcd(&c), Poly::from_ints(&[1, 1]));
        let sq = &a * &a;
        assert_eq!(sq.squarefree_part(), a);
    }

    #[test]
    fn composition_and_eval() {
        let f = Poly::from_ints(&[1, 0, 1]);
        let g = Poly::from_ints(&[1, 1]);
        assert_eq!(f.compose(&g), Poly::from_ints(&[2, 2, 1]));
        assert_eq!(f.eval(&frac(1, 2)), frac(5, 4));
        assert_eq!(Poly::from_ints(&[3, 0, 1]).derivative(), Poly::from_ints(&[0, 2]));
    }

    #[test]
    fn content_and_text() {
        let f = Poly::new(vec![frac(2, 3), frac(-4, 3)]);
        assert_eq!(f.content(), frac(2, 3));
        assert_eq!(f.primitive(), Poly::from_ints(&[-1, 2]));
        let s = f.to_coeff_string();
        assert_eq!(s, "2/3,-4/3");
        assert_eq!(Poly::from_coeff_string(&s).unwrap(), f);
        assert_eq!(Poly::from_ints(&[1, -8, 16]).display_in("v"), "16*v^2 - 8*v + 1");
        assert_eq!(Poly::constant(rat(0)), Poly::zero());
    }
}
