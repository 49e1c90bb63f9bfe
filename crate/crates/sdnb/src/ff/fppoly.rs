//! Dense polynomial arithmetic over F_p with coefficients as `u64` values in
//! `[0, p)`, low-to-high. Used for modulus search, Frobenius tables, and
//! coefficient-vector arithmetic inside `FqField`. The characteristic is
//! guarded to p < 2^20 so schoolbook products can defer reduction: each
//! product is < 2^40 and up to 2^12 of them accumulate in a u64 (< 2^52).

use crate::error::{Error, Result};
use crate::ff::intutil;

pub fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn deg(v: &[u64]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub fn add(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0);
        out[i] = x % p;
    }
    trim(&mut out);
    out
}

pub fn sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0) % p;
        out[i] = x % p;
    }
    trim(&mut out);
    out
}

pub fn mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut buf = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            let cell = &mut buf[i + j];
            *cell += ai * bj;
            // keep headroom: reduce eagerly if the accumulator gets large
            if *cell >= 1 << 62 {
                *cell %= p;
            }
        }
    }
    for c in buf.iter_mut() {
        *c %= p;
    }
    trim(&mut buf);
    buf
}

/// Remainder of a modulo monic m (leading coefficient of m must be 1).
pub fn rem_monic(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    debug_assert_eq!(m.last(), Some(&1));
    let dm = m.len() - 1;
    if a.len() <= dm {
        let mut out = a.to_vec();
        trim(&mut out);
        return out;
    }
    let mut buf = a.to_vec();
    for k in (dm..buf.len()).rev() {
        let c = buf[k] % p;
        buf[k] = 0;
        if c == 0 {
            continue;
        }
        let neg = |x: u64| (p - x % p) % p;
        for j in 0..dm {
            if m[j] != 0 {
                let cell = &mut buf[k - dm + j];
                *cell += c * neg(m[j]);
                if *cell >= 1 << 62 {
                    *cell %= p;
                }
            }
        }
    }
    buf.truncate(dm);
    for c in buf.iter_mut() {
        *c %= p;
    }
    trim(&mut buf);
    buf
}

pub fn mulmod(p: u64, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    rem_monic(p, &mul(p, a, b), m)
}

/// Make a polynomial monic; returns None for the zero polynomial.
pub fn monic(p: u64, a: &[u64]) -> Option<Vec<u64>> {
    let mut v = a.to_vec();
    trim(&mut v);
    let lead = *v.last()?;
    if lead != 1 {
        let inv = intutil::invmod_u64(lead, p).expect("leading coeff invertible mod prime");
        for c in v.iter_mut() {
            *c = (*c * inv) % p;
        }
    }
    Some(v)
}

pub fn gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let ym = monic(p, &y).expect("nonzero");
        let r = rem_monic(p, &x, &ym);
        x = ym;
        y = r;
    }
    monic(p, &x).unwrap_or_default()
}

/// Inverse of a modulo monic m via extended Euclid; errors if gcd ≠ 1.
pub fn invmod(p: u64, a: &[u64], m: &[u64]) -> Result<Vec<u64>> {
    // Extended Euclid maintaining r0 = s0·a (mod m).
    let mut r0 = m.to_vec();
    let mut r1 = rem_monic(p, a, m);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    trim(&mut r0);
    while !r1.is_empty() {
        // division r0 = q·r1 + r
        let lead = *r1.last().unwrap();
        let lead_inv = intutil::invmod_u64(lead, p)?;
        let mut q = vec![0u64; r0.len().saturating_sub(r1.len()) + 1];
        let mut rem = r0.clone();
        while rem.len() >= r1.len() && !rem.is_empty() {
            let k = rem.len() - r1.len();
            let c = (*rem.last().unwrap() * lead_inv) % p;
            if c != 0 {
                q[k] = (q[k] + c) % p;
                for (j, &mj) in r1.iter().enumerate() {
                    let sub_val = (c * mj) % p;
                    let cell = &mut rem[k + j];
                    *cell = (*cell + p - sub_val) % p;
                }
            }
            rem.pop();
            trim(&mut rem);
            if rem.len() < r1.len() {
                break;
            }
        }
        trim(&mut q);
        let s_new = sub(p, &s0, &mul(p, &q, &s1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s_new;
    }
    // r0 = gcd; must be a nonzero constant
    if r0.len() != 1 {
        return Err(Error::Domain("element not invertible (gcd ≠ 1)".into()));
    }
    let ginv = intutil::invmod_u64(r0[0], p)?;
    let mut out: Vec<u64> = s0.iter().map(|&c| (c * ginv) % p).collect();
    out = rem_monic(p, &out, m);
    Ok(out)
}

pub fn eval(p: u64, a: &[u64], x: u64) -> u64 {
    let mut acc = 0u64;
    for &c in a.iter().rev() {
        acc = (acc * x + c) % p;
    }
    acc
}

/// X^e mod m by binary exponentiation.
pub fn x_pow_mod(p: u64, e: u64, m: &[u64]) -> Vec<u64> {
    let mut base = rem_monic(p, &[0, 1], m);
    let mut acc = rem_monic(p, &[1], m);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(p, &acc, &base, m);
        }
        base = mulmod(p, &base, &base, m);
        e >>= 1;
    }
    acc
}

/// Frobenius step mod m: given the table of X^{p·i} mod m (i < deg m) and a
/// polynomial g of degree < deg m, returns g^p mod m = Σ g_i · X^{p·i}
/// (coefficients in F_p are Frobenius-fixed).
pub fn frob_step(p: u64, g: &[u64], table: &[Vec<u64>], dm: usize) -> Vec<u64> {
    let mut acc = vec![0u64; dm];
    for (i, &c) in g.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (j, &tj) in table[i].iter().enumerate() {
            let cell = &mut acc[j];
            *cell += c * tj;
            if *cell >= 1 << 62 {
                *cell %= p;
            }
        }
    }
    for c in acc.iter_mut() {
        *c %= p;
    }
    trim(&mut acc);
    acc
}

/// Monomial table X^{p·i} mod m for i = 0..deg(m)−1.
pub fn frob_table(p: u64, m: &[u64]) -> Vec<Vec<u64>> {
    let dm = m.len() - 1;
    let xp = x_pow_mod(p, p, m);
    let mut table = Vec::with_capacity(dm);
    let mut cur = vec![1u64];
    for i in 0..dm {
        if i > 0 {
            cur = mulmod(p, &cur, &xp, m);
        }
        table.push(cur.clone());
    }
    table
}

/// Staged Rabin irreducibility test for monic f of degree m ≥ 1 over F_p.
/// Early-rejects candidates with a factor of degree ≤ 8, then checks the
/// divisor points m/ℓ, then accepts iff X^{p^m} ≡ X.
pub fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let m = f.len() - 1;
    debug_assert_eq!(f.last(), Some(&1));
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    if f[0] == 0 {
        return false; // divisible by X
    }
    let table = frob_table(p, f);
    let x_poly = vec![0u64, 1];
    let mut h = table[1].clone(); // X^p mod f
    let early_cap = 8.min(m - 1);
    let mut checkpoints: Vec<usize> = (1..=early_cap).collect();
    for (l, _) in intutil::factor_u64(m as u64) {
        let k = m / l as usize;
        if k > early_cap && k < m {
            checkpoints.push(k);
        }
    }
    checkpoints.sort_unstable();
    checkpoints.dedup();
    let mut k = 1usize;
    for &cp in &checkpoints {
        while k < cp {
            h = frob_step(p, &h, &table, m);
            k += 1;
        }
        let diff = sub(p, &h, &x_poly);
        if diff.is_empty() {
            return false; // f | X^{p^k} − X with k < m → all factors small
        }
        let g = gcd(p, &diff, f);
        if deg(&g) != Some(0) {
            return false;
        }
    }
    while k < m {
        h = frob_step(p, &h, &table, m);
        k += 1;
    }
    sub(p, &h, &x_poly).is_empty()
}

/// The lexicographically least monic irreducible polynomial of degree m over
/// F_p, ordered by the coefficient tuple (c_0, …, c_{m−1}).
pub fn least_irreducible(p: u64, m: usize) -> Vec<u64> {
    assert!(m >= 1);
    if m == 1 {
        return vec![0, 1]; // X
    }
    // c_0 = 0 would make the polynomial divisible by X; start at c_0 = 1.
    let mut c = vec![0u64; m];
    c[0] = 1;
    loop {
        let mut f = c.clone();
        f.push(1);
        if is_irreducible(p, &f) {
            return f;
        }
        // odometer: last coordinate fastest (lex order on (c_0,…,c_{m−1}))
        let mut i = m - 1;
        loop {
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
            if i == 0 {
                unreachable!("no irreducible polynomial found — impossible for m ≥ 1");
            }
            i -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let p = 7;
        let a = vec![1, 2, 3]; // 1+2X+3X²
        let b = vec![4, 5]; // 4+5X
        let ab = mul(p, &a, &b);
        assert_eq!(ab, vec![4, 13 % 7, 22 % 7, 15 % 7]);
        let m = vec![1, 0, 1]; // X²+1
        let r = rem_monic(p, &ab, &m);
        // (4 + 6X + X² + X³) mod X²+1 = 4+6X − 1 − X = 3 + 5X
        assert_eq!(r, vec![3, 5]);
    }

    #[test]
    fn inverse_mod() {
        let p = 3;
        let m = vec![1, 0, 1]; // X²+1 irreducible over F_3
        let a = vec![1, 1]; // 1+X
        let inv = invmod(p, &a, &m).unwrap();
        let prod = mulmod(p, &a, &inv, &m);
        assert_eq!(prod, vec![1]);
    }

    #[test]
    fn irreducibility_known_cases() {
        assert!(is_irreducible(2, &[1, 1, 1])); // X²+X+1
        assert!(!is_irreducible(2, &[1, 0, 1])); // (X+1)²
        assert!(is_irreducible(3, &[1, 0, 1])); // X²+1 over F_3
        assert!(!is_irreducible(3, &[2, 0, 1])); // X²−1
        assert!(is_irreducible(3, &[1, 2, 0, 1])); // X³+2X+1 over F_3
        assert!(!is_irreducible(3, &[1, 1, 1, 1])); // has root −1: 1-1+1-1=0
    }

    #[test]
    fn least_irreducible_frozen() {
        // Oracle (enumerate by hand): only monic irreducible quadratic over F_2.
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        // Oracle: (0,*) all divisible by X; (1,0) = X²+1 has no root mod 3.
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        // Degree 1 convention.
        assert_eq!(least_irreducible(5, 1), vec![0, 1]);
        // F_3 cubics in tuple order: (1,0,0)=X³+1 has root 2; (1,0,1)=X³+X²+1
        // has root 1; (1,0,2)=X³+2X²+1 has values 1,1,2 at 0,1,2 → irreducible.
        assert_eq!(least_irreducible(3, 3), vec![1, 0, 2, 1]);
        // F_2 cubics: (1,0,0)=X³+1 has root 1; (1,0,1)=X³+X²+1 has no roots.
        assert_eq!(least_irreducible(2, 3), vec![1, 0, 1, 1]);
    }

    #[test]
    fn least_irreducible_determinism_and_bigger() {
        let f1 = least_irreducible(3, 12);
        let f2 = least_irreducible(3, 12);
        assert_eq!(f1, f2);
        assert!(is_irreducible(3, &f1));
        let g = least_irreducible(2, 20);
        assert!(is_irreducible(2, &g));
    }

    #[test]
    fn x_pow_and_frob() {
        let p = 3;
        let m = vec![1, 0, 1]; // X²+1, so X² = −1
        let x4 = x_pow_mod(p, 4, &m);
        assert_eq!(x4, vec![1]); // X⁴ = (−1)² = 1
        let table = frob_table(p, &m);
        // (X)³ mod X²+1 = X·X² = −X = 2X
        let h = frob_step(p, &[0, 1], &table, 2);
        assert_eq!(h, vec![0, 2]);
    }
}
