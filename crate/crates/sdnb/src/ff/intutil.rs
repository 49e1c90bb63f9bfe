//! Integer utilities: primality, factoring (u64 and BigUint), modular
//! arithmetic, multiplicative orders, and the cyclotomic-split factoring of
//! p^t − 1 used for multiplicative-order certification.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Deterministic Miller–Rabin for u64 (valid for all 64-bit inputs with the
/// fixed base set below).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = modpow_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn modpow_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse of a mod m (m ≥ 1, gcd(a,m) = 1).
pub fn invmod_u64(a: u64, m: u64) -> Result<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        let tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        let tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if old_r.abs() != 1 {
        return Err(Error::Domain(format!("{} not invertible mod {}", a, m)));
    }
    let mut inv = old_s * old_r.signum();
    inv %= m as i128;
    if inv < 0 {
        inv += m as i128;
    }
    Ok(inv as u64)
}

/// Trial-division factorization of a u64 into (prime, multiplicity) pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let push = |p: u64, e: u32, out: &mut Vec<(u64, u32)>| {
        if e > 0 {
            out.push((p, e));
        }
    };
    let mut e = 0;
    while n % 2 == 0 {
        n /= 2;
        e += 1;
    }
    push(2, e, &mut out);
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        push(d, e, &mut out);
        d += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Multiplicative order of a modulo n (gcd(a,n)=1 required).
pub fn ord_mod(a: u64, n: u64) -> Result<u64> {
    if n == 1 {
        return Ok(1);
    }
    if num_integer::gcd(a % n, n) != 1 {
        return Err(Error::Domain(format!("ord_mod: gcd({},{}) ≠ 1", a, n)));
    }
    // order divides the Carmichael/Euler exponent; factor φ(n) via factoring n.
    let mut phi = 1u64;
    for (p, e) in factor_u64(n) {
        phi *= (p - 1) * p.pow(e - 1);
    }
    let mut ord = phi;
    for (p, _) in factor_u64(phi) {
        while ord % p == 0 && modpow_u64(a % n, ord / p, n) == 1 {
            ord /= p;
        }
    }
    debug_assert_eq!(modpow_u64(a % n, ord, n), 1);
    Ok(ord)
}

/// Miller–Rabin on BigUint with a fixed deterministic base set. For inputs
/// below 3.3·10^24 this is a proof; beyond, it is a (deterministic) strong
/// pseudoprime test, ample for the factor sizes this crate meets.
fn is_prime_big(n: &BigUint) -> bool {
    if let Some(n64) = to_u64(n) {
        return is_prime_u64(n64);
    }
    let one = BigUint::one();
    let two = &one + &one;
    if (n % &two).is_zero() {
        return false;
    }
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        s += 1;
    }
    'outer: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn to_u64(n: &BigUint) -> Option<u64> {
    let digits = n.to_u64_digits();
    match digits.len() {
        0 => Some(0),
        1 => Some(digits[0]),
        _ => None,
    }
}

/// Pollard–Brent rho with deterministic parameter sequence. Returns a
/// nontrivial factor of composite odd n, or None if the effort cap is hit.
fn pollard_brent(n: &BigUint) -> Option<BigUint> {
    let one = BigUint::one();
    let two = &one + &one;
    for c in 1u64..64 {
        let cbig = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &cbig) % n;
        let mut x = two.clone();
        let mut y = two.clone();
        let mut d = one.clone();
        let mut count: u64 = 0;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x >= y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break; // cycle without factor; try next c
            }
            d = diff.gcd(n);
            count += 1;
            if count > 40_000_000 {
                return None; // effort cap
            }
        }
        if !d.is_one() && &d != n {
            return Some(d);
        }
    }
    None
}

/// Full factorization of a BigUint into a prime → multiplicity map.
/// Trial division to 10^6, then Miller–Rabin / Pollard–Brent recursion.
pub fn factor_big(n: &BigUint) -> Result<BTreeMap<BigUint, u32>> {
    let mut out: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut stack = vec![n.clone()];
    let one = BigUint::one();
    while let Some(mut v) = stack.pop() {
        if v.is_one() {
            continue;
        }
        // trial division on small primes
        if let Some(v64) = to_u64(&v) {
            for (p, e) in factor_u64(v64) {
                *out.entry(BigUint::from(p)).or_insert(0) += e;
            }
            continue;
        }
        let mut d = 2u64;
        let mut divided = false;
        while d <= 1_000_000 {
            let dbig = BigUint::from(d);
            if (&v % &dbig).is_zero() {
                let mut e = 0;
                while (&v % &dbig).is_zero() {
                    v /= &dbig;
                    e += 1;
                }
                *out.entry(dbig).or_insert(0) += e;
                divided = true;
                if v.is_one() || to_u64(&v).is_some() {
                    break;
                }
            }
            d = if d == 2 { 3 } else { d + 2 };
        }
        if v.is_one() {
            continue;
        }
        if divided && to_u64(&v).is_some() {
            stack.push(v);
            continue;
        }
        if is_prime_big(&v) {
            *out.entry(v).or_insert(0) += 1;
            continue;
        }
        match pollard_brent(&v) {
            Some(f) => {
                let q = &v / &f;
                stack.push(f);
                stack.push(q);
            }
            None => {
                return Err(Error::Parameter(format!(
                    "factorization of {} exceeds the supported effort budget",
                    v
                )));
            }
        }
    }
    let _ = one;
    Ok(out)
}

/// Distinct prime divisors of p^t − 1, computed by splitting into cyclotomic
/// pieces Φ_s(p) for s | t (each piece is far smaller than p^t − 1) and
/// factoring the pieces.
pub fn prime_divisors_of_pow_minus_1(p: u64, t: usize) -> Result<Vec<BigUint>> {
    let pbig = BigUint::from(p);
    // Φ_s(p) by the recursive quotient formula, memoized over divisors of t.
    let mut phi: BTreeMap<usize, BigUint> = BTreeMap::new();
    let divisors: Vec<usize> = (1..=t).filter(|s| t % s == 0).collect();
    for &s in &divisors {
        let mut val = pbig.pow(s as u32) - BigUint::one();
        for (&d, ph) in phi.iter() {
            if s % d == 0 {
                debug_assert!((&val % ph).is_zero());
                val /= ph;
            }
        }
        phi.insert(s, val);
    }
    let mut primes: BTreeMap<BigUint, ()> = BTreeMap::new();
    for (_, piece) in phi {
        for (q, _) in factor_big(&piece)? {
            primes.insert(q, ());
        }
    }
    Ok(primes.into_keys().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(is_prime_u64(1048573)); // largest prime < 2^20
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(1048575));
    }

    #[test]
    fn factor_roundtrip() {
        let n = 2u64 * 2 * 3 * 7 * 7 * 13 * 1048573;
        let f = factor_u64(n);
        let back: u64 = f.iter().map(|(p, e)| p.pow(*e)).product();
        assert_eq!(back, n);
        assert_eq!(f, vec![(2, 2), (3, 1), (7, 2), (13, 1), (1048573, 1)]);
    }

    #[test]
    fn orders() {
        assert_eq!(ord_mod(3, 5).unwrap(), 4); // 3,4,2,1
        assert_eq!(ord_mod(3, 7).unwrap(), 6);
        assert_eq!(ord_mod(9, 7).unwrap(), 3); // 2,4,1
        assert_eq!(ord_mod(2, 7).unwrap(), 3);
        assert_eq!(ord_mod(7, 3).unwrap(), 1);
        assert_eq!(ord_mod(3, 25).unwrap(), 20);
        assert_eq!(ord_mod(9, 25).unwrap(), 10);
    }

    #[test]
    fn pexp_minus_1_primes() {
        // 3^4 − 1 = 80 = 2^4·5
        let ps = prime_divisors_of_pow_minus_1(3, 4).unwrap();
        let expect: Vec<BigUint> = vec![BigUint::from(2u32), BigUint::from(5u32)];
        assert_eq!(ps, expect);
        // 3^12 − 1 = 531440 = 2^4·5·7·13·73
        let ps = prime_divisors_of_pow_minus_1(3, 12).unwrap();
        let expect: Vec<BigUint> = [2u32, 5, 7, 13, 73].iter().map(|&x| BigUint::from(x)).collect();
        assert_eq!(ps, expect);
        // 2^11 − 1 = 2047 = 23·89
        let ps = prime_divisors_of_pow_minus_1(2, 11).unwrap();
        let expect: Vec<BigUint> = [23u32, 89].iter().map(|&x| BigUint::from(x)).collect();
        assert_eq!(ps, expect);
    }

    #[test]
    fn big_factor_median_case() {
        // 3^42 − 1 should factor within budget (used by order tests at the
        // largest acceptance-grid sizes).
        let n = BigUint::from(3u32).pow(42) - BigUint::one();
        let f = factor_big(&n).unwrap();
        let mut back = BigUint::one();
        for (p, e) in &f {
            assert!(is_prime_big(p));
            back *= p.pow(*e);
        }
        assert_eq!(back, n);
    }
}
