use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Poly, Rational};

/// Element of ℚ(u) stored as num/den in lowest terms with a monic denominator,
/// so two equal functions are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc = den.leading();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn x() -> Self {
        RatFunc::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn recip(&self) -> RatFunc {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: i32) -> RatFunc {
        let r = RatFunc {
            num: self.num.pow(e.unsigned_abs()),
            den: self.den.pow(e.unsigned_abs()),
        };
        if e < 0 {
            r.recip()
        } else {
            r
        }
    }

    /// Value at `x`, or `None` where the denominator vanishes.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Substitution self(g).
    pub fn compose(&self, g: &RatFunc) -> RatFunc {
        // With g = p/q and k = max degree, self(g) = Σ n_i p^i q^(k-i) / Σ d_i p^i q^(k-i).
        let k = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        let p = &g.num;
        let q = &g.den;
        let mut p_pows = vec![Poly::one()];
        let mut q_pows = vec![Poly::one()];
        for i in 1..=k {
            p_pows.push(&p_pows[i - 1] * p);
            q_pows.push(&q_pows[i - 1] * q);
        }
        let homogenize = |f: &Poly| {
            f.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .fold(Poly::zero(), |acc, (i, c)| {
                    &acc + &(&p_pows[i] * &q_pows[k - i]).scale(c)
                })
        };
        RatFunc::new(homogenize(&self.num), homogenize(&self.den))
    }

    /// Square root in ℚ(u): since num and den are coprime, num/den is a square iff
    /// num·den is, and then sqrt(num/den) = sqrt(num·den)/den.
    pub fn sqrt(&self) -> Option<RatFunc> {
        let s = (&self.num * &self.den).sqrt()?;
        Some(RatFunc::new(s, self.den.clone()))
    }

    pub fn derivative(&self) -> RatFunc {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(n, &self.den * &self.den)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.den.is_constant() {
            self.num.display_in(var)
        } else {
            format!("({})/({})", self.num.display_in(var), self.den.display_in(var))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("u"))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("u"))
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::{frac, rat};

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(n), Poly::from_ints(d))
    }

    #[test]
    fn normalization() {
        let f = rf(&[-1, 0, 1], &[2, 2]); // (u²-1)/(2u+2) = (u-1)/2
        assert_eq!(f, RatFunc::from_poly(Poly::new(vec![frac(-1, 2), frac(1, 2)])));
        assert!(f.den().leading().is_one());
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(rf(&[1, 2, 1], &[0, 0, 1]).sqrt(), Some(rf(&[1, 1], &[0, 1])));
        assert_eq!(rf(&[1, 1], &[0, 1]).sqrt(), None);
        assert_eq!(rf(&[9], &[4]).sqrt(), Some(RatFunc::constant(frac(3, 2))));
    }

    #[test]
    fn compose_substitution() {
        // v3 = (1 + 3w²)/(3 + w²) at w = 1 gives 1
        let v3 = rf(&[1, 0, 3], &[3, 0, 1]);
        assert_eq!(v3.eval(&rat(1)), Some(rat(1)));
        // (v - 1) ∘ v3 = (2w² - 2)/(w² + 3)
        let f = rf(&[-1, 1], &[1]).compose(&v3);
        assert_eq!(f, rf(&[-2, 0, 2], &[3, 0, 1]));
        // identity substitution
        assert_eq!(v3.compose(&RatFunc::x()), v3);
        // compose agrees with evaluation
        let g = rf(&[1, 2, 0, 5], &[7, 0, 1]);
        let h = g.compose(&v3);
        let w = frac(2, 5);
        assert_eq!(h.eval(&w), g.eval(&v3.eval(&w).unwrap()));
    }

    #[test]
    fn field_ops() {
        let a = rf(&[1], &[0, 1]);
        let b = rf(&[1], &[1, 1]);
        let s = &a + &b;
        assert_eq!(s, rf(&[1, 2], &[0, 1, 1]));
        assert_eq!(&(&s - &b), &a);
        assert_eq!(&(&a / &a), &RatFunc::one());
        assert_eq!(a.pow(-2), rf(&[0, 0, 1], &[1]));
    }
}
