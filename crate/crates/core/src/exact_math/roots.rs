//! Exact rational roots of polynomials over ℚ.
//!
//! Roots are found p-adically: pick a small prime p for which the squarefree
//! part stays squarefree mod p, find its roots in F_p by enumeration, Hensel-lift
//! each to p^k beyond a root bound and confirm by exact evaluation. No integer
//! factorization is needed, so coefficients of hundreds of digits are fine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{odd_primes, Poly, Rational};

/// Primes tried before giving up on finding a prime of good reduction.
const MAX_PRIME: u64 = 60_000;

fn to_mod(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn eval_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u64, |acc, &c| ((acc as u128 * x as u128 + c as u128) % p as u128) as u64)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(super) fn gcd_degree_mod(a: &[u64], b: &[u64], p: u64) -> usize {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let inv = super::inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let c = super::mul_mod(*a.last().unwrap(), inv, p);
            let shift = a.len() - b.len();
            for (j, &bc) in b.iter().enumerate() {
                let t = super::mul_mod(c, bc, p);
                a[shift + j] = (a[shift + j] + p - t) % p;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// All integer roots of a polynomial with integer coefficients, sorted.
pub fn integer_roots(coeffs: &[BigInt]) -> Vec<BigInt> {
    let f = Poly::new(coeffs.iter().cloned().map(Rational::from_integer).collect());
    let mut roots: Vec<BigInt> = rational_roots(&f)
        .into_iter()
        .filter(|r| r.is_integer())
        .map(|r| r.to_integer())
        .collect();
    roots.sort();
    roots
}

/// All rational roots of `f`, sorted and without multiplicity.
///
/// Returns the empty list for constant polynomials. Panics on the zero
/// polynomial, which has every rational as a root.
pub fn rational_roots(f: &Poly) -> Vec<Rational> {
    assert!(!f.is_zero(), "rational_roots of the zero polynomial");
    let mut out = Vec::new();
    let mut g = f.clone();
    // strip the root at zero
    if g.coeff(0).is_zero() {
        out.push(Rational::zero());
        let k = g.coeffs().iter().position(|c| !c.is_zero()).unwrap();
        g = Poly::new(g.coeffs()[k..].to_vec());
    }
    if g.degree().unwrap_or(0) == 0 {
        return out;
    }
    let sf = g.squarefree_part().primitive();
    let ints = sf.integer_coeffs();
    let d = ints.len() - 1;
    if d == 1 {
        out.push(Rational::new(-ints[0].clone(), ints[1].clone()));
        out.sort();
        return out;
    }
    // monic transform: m(y) = lc^(d-1) f(y / lc)
    let lc = ints[d].clone();
    let mut monic = Vec::with_capacity(d + 1);
    let mut lc_pow = BigInt::one();
    for i in (0..=d).rev() {
        // coefficient of y^i is c_i · lc^(d-1-i) for i < d, 1 for i = d
        if i == d {
            monic.push(BigInt::one());
        } else {
            monic.push(&ints[i] * &lc_pow);
            lc_pow *= &lc;
        }
    }
    monic.reverse();
    for y in monic_integer_roots(&monic) {
        out.push(Rational::new(y, lc.clone()));
    }
    out.sort();
    out.dedup();
    out
}

/// Integer roots of a squarefree monic integer polynomial.
fn monic_integer_roots(m: &[BigInt]) -> Vec<BigInt> {
    let d = m.len() - 1;
    // Fujiwara-style bound: |root| < 2 · max |c_(d-i)|^(1/i)
    let mut bound_bits = 1u64;
    for i in 1..=d {
        let c = &m[d - i];
        if !c.is_zero() {
            bound_bits = bound_bits.max(c.bits().div_ceil(i as u64) + 2);
        }
    }
    let bound = BigInt::one() << bound_bits;
    let deriv: Vec<BigInt> = m
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();

    for p in odd_primes().take_while(|&p| p < MAX_PRIME) {
        let fm: Vec<u64> = m.iter().map(|c| to_mod(c, p)).collect();
        let dm: Vec<u64> = deriv.iter().map(|c| to_mod(c, p)).collect();
        if gcd_degree_mod(&fm, &dm, p) != 0 {
            continue;
        }
        let residues: Vec<u64> = (0..p).filter(|&x| eval_mod(&fm, x, p) == 0).collect();
        let pb = BigInt::from(p);
        let mut roots = Vec::new();
        for r0 in residues {
            let mut r = BigInt::from(r0);
            let mut modulus = pb.clone();
            while modulus <= &bound * 2 {
                modulus = &modulus * &modulus;
                let fv = eval_int(m, &r);
                let dv = eval_int(&deriv, &r).mod_floor(&modulus);
                let inv = mod_inverse(&dv, &modulus).expect("simple root has invertible derivative");
                r = (r - fv * inv).mod_floor(&modulus);
            }
            let half = &modulus >> 1;
            if r > half {
                r -= &modulus;
            }
            if r.abs() <= bound && eval_int(m, &r).is_zero() {
                roots.push(r);
            }
        }
        return roots;
    }
    // No usable prime below MAX_PRIME: the discriminant is divisible by all of
    // them, which does not happen for the degrees used here.
    panic!("no prime below {MAX_PRIME} keeps the polynomial squarefree");
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}
