//! Integer factorization: trial division, Miller–Rabin and Pollard–Brent.
//! Meant for the modest gcds that show up in local height computations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const TRIAL_LIMIT: u32 = 10_000;
const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller–Rabin with the first twelve prime bases; deterministic below 3.3·10²⁴.
pub fn is_probable_prime(n: &BigInt) -> bool {
    let n = n.abs();
    if n < BigInt::from(2) {
        return false;
    }
    for &b in &MR_BASES {
        if n == BigInt::from(b) {
            return true;
        }
        if (&n % b).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = &n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for &b in &MR_BASES {
        let mut x = BigInt::from(b).modpow(&d, &n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % &n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigInt, c: u64) -> Option<BigInt> {
    let c = BigInt::from(c);
    let f = |x: &BigInt| (x * x + &c) % n;
    let mut y = BigInt::from(2);
    let mut r: u64 = 1;
    let m: u64 = 128;
    let mut q = BigInt::one();
    let mut g = BigInt::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 22 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

fn split(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    if let Some(r) = crate::exact_math::int_sqrt_exact(&n) {
        split(r.clone(), out);
        split(r, out);
        return;
    }
    for c in 1..64u64 {
        if let Some(d) = pollard_brent(&n, c) {
            let other = &n / &d;
            split(d, out);
            split(other, out);
            return;
        }
    }
    panic!("could not split {n}");
}

/// Primes below `limit` dividing |n|, with exponents, and the cofactor left over.
pub fn trial_factor(n: &BigInt, limit: u32) -> (Vec<(BigInt, u32)>, BigInt) {
    let mut n = n.abs();
    let mut primes = Vec::new();
    if n.is_zero() {
        return (primes, n);
    }
    let mut p = 2u32;
    while p <= limit && !n.is_one() {
        if (&n % p).is_zero() {
            let mut e = 0;
            while (&n % p).is_zero() {
                n /= p;
                e += 1;
            }
            primes.push((BigInt::from(p), e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (primes, n)
}

/// Prime factorization of |n| as sorted (prime, exponent) pairs; empty for ±1.
/// Panics on zero.
pub fn factor_int(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero(), "factor_int(0)");
    let mut n = n.abs();
    let mut primes = Vec::new();
    let mut p = 2u32;
    while p <= TRIAL_LIMIT {
        if (&n % p).is_zero() {
            let mut e = 0;
            while (&n % p).is_zero() {
                n /= p;
                e += 1;
            }
            primes.push((BigInt::from(p), e));
        }
        if n.to_u64().is_some_and(|v| v < u64::from(p) * u64::from(p)) {
            break;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut rest = Vec::new();
    split(n, &mut rest);
    rest.sort();
    for q in rest {
        match primes.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => primes.push((q, 1)),
        }
    }
    primes
}
