//! Exact integer and rational arithmetic plus the number-theoretic helpers
//! used throughout: radicals, CRT, rational reconstruction, modular
//! inverses and primality.

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

const TRIAL_LIMIT: u64 = 1 << 20;

/// Small primes used as Miller–Rabin witnesses.
const WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

/// Positive least common multiple; `lcm(0, b) = |b|` so zero acts as "no constraint".
pub fn lcm(a: &Integer, b: &Integer) -> Integer {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    a.lcm(b)
}

pub fn gcd(a: &Integer, b: &Integer) -> Integer {
    a.gcd(b)
}

/// Squarefree kernel of `n`.
pub fn rad(n: &Integer) -> Result<Integer> {
    if !n.is_positive() {
        return Err(Error::InvalidArgument(format!("rad is defined for positive integers, got {n}")));
    }
    Ok(factorize(n).into_iter().map(|(p, _)| p).product())
}

/// Prime factorization of a positive integer, primes ascending.
pub fn factorize(n: &Integer) -> Vec<(Integer, u32)> {
    assert!(n.is_positive(), "factorize needs a positive integer");
    let mut rest = n.clone();
    let mut out: Vec<(Integer, u32)> = Vec::new();
    let push = |out: &mut Vec<(Integer, u32)>, p: Integer| {
        if let Some(entry) = out.iter_mut().find(|(q, _)| *q == p) {
            entry.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    let mut d: u64 = 2;
    while d < TRIAL_LIMIT {
        let dd = Integer::from(d);
        if &dd * &dd > rest {
            break;
        }
        while (&rest % &dd).is_zero() {
            rest /= &dd;
            push(&mut out, dd.clone());
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_probable_prime(&m) {
                push(&mut out, m);
                continue;
            }
            let f = pollard_rho(&m);
            stack.push(&m / &f);
            stack.push(f);
        }
    }
    out.sort();
    out
}

fn pollard_rho(n: &Integer) -> Integer {
    if n.is_even() {
        return int(2);
    }
    if let Some(r) = exact_square_root(n) {
        return r;
    }
    let mut c = Integer::one();
    loop {
        let f = |x: &Integer| (x * x + &c) % n;
        let mut x = int(2);
        let mut y = int(2);
        let mut d = Integer::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

fn exact_square_root(n: &Integer) -> Option<Integer> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Miller–Rabin with the first thirteen primes as witnesses; deterministic
/// below 3.3 * 10^24 and overwhelmingly reliable above.
pub fn is_probable_prime(n: &Integer) -> bool {
    if n < &int(2) {
        return false;
    }
    for &w in &WITNESSES {
        let w = Integer::from(w);
        if *n == w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    let n_minus_1: Integer = n - 1u32;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &w in &WITNESSES {
        let mut x = Integer::from(w).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    is_probable_prime(&Integer::from(n))
}

/// Returns `(r, m1*m2)` with `r` the least non-negative solution of the two congruences.
pub fn crt_pair(r1: &Integer, m1: &Integer, r2: &Integer, m2: &Integer) -> Result<(Integer, Integer)> {
    if m1 < &int(2) || m2 < &int(2) {
        return Err(Error::InvalidArgument(format!("moduli must be at least 2, got {m1} and {m2}")));
    }
    let eg = m1.extended_gcd(m2);
    if !eg.gcd.is_one() {
        return Err(Error::NonCoprimeModuli(m1.clone(), m2.clone()));
    }
    let m = m1 * m2;
    // r = r1 + m1 * ((r2 - r1) * m1^{-1} mod m2)
    let inv = eg.x.mod_floor(m2);
    let k = ((r2 - r1) * inv).mod_floor(m2);
    let r = (r1 + m1 * k).mod_floor(&m);
    Ok((r, m))
}

/// Recovers `a/b` from `r = a * b^{-1} mod m` when `|a|, b <= floor(sqrt(m/2))`.
pub fn rational_reconstruct(r: &Integer, m: &Integer) -> Option<Rational> {
    if r.is_negative() || r >= m {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let half: Integer = m / 2u32;
    let bound = half.sqrt();
    let (mut r0, mut r1) = (m.clone(), r.clone());
    let (mut t0, mut t1) = (Integer::zero(), Integer::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() || !t1.gcd(m).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Inverse of `a` modulo the prime `p`, in `[1, p)`.
pub fn mod_inverse(a: &Integer, p: &Integer) -> Result<Integer> {
    if p < &int(2) {
        return Err(Error::InvalidArgument(format!("modulus must be at least 2, got {p}")));
    }
    let a = a.mod_floor(p);
    let eg = a.extended_gcd(p);
    if a.is_zero() || !eg.gcd.is_one() {
        return Err(Error::NotInvertible { a, p: p.clone() });
    }
    Ok(eg.x.mod_floor(p))
}

pub fn mod_inverse_u64(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Residue of a rational modulo `p`, or `None` when `p` divides the denominator.
pub fn rational_mod_u64(q: &Rational, p: u64) -> Option<u64> {
    let pb = Integer::from(p);
    let num = q.numer().mod_floor(&pb).to_u64()?;
    let den = q.denom().mod_floor(&pb).to_u64()?;
    let inv = mod_inverse_u64(den, p)?;
    Some(((num as u128 * inv as u128) % p as u128) as u64)
}

/// Symmetric lift of a residue into `(-m/2, m/2]`.
pub fn symmetric_residue(r: &Integer, m: &Integer) -> Integer {
    let r = r.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// A uniformly sampled prime with exactly `bits` bits (2 <= bits <= 62).
pub fn random_prime<R: Rng + ?Sized>(bits: u32, rng: &mut R) -> u64 {
    assert!((2..=62).contains(&bits), "prime size must be between 2 and 62 bits");
    let lo = 1u64 << (bits - 1);
    let hi = (1u64 << bits) - 1;
    loop {
        let c = rng.gen_range(lo..=hi);
        if is_prime_u64(c) {
            return c;
        }
    }
}

/// Renders `n` as `p1^e1 * p2 * ...` for display; `1` stays `1`.
pub fn factorization_string(n: &Integer) -> String {
    if n.is_one() {
        return "1".to_string();
    }
    factorize(n)
        .into_iter()
        .map(|(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" * ")
}

pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn sign_of(n: &Integer) -> Sign {
    n.sign()
}
