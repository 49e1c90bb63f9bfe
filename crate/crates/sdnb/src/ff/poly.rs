//! Polynomials over a finite field F_{p^M}, with deterministic root finding.
//!
//! Roots are located with the classical X^{Q} − X linear-factor extraction
//! followed by equal-degree splitting. All branch points are made
//! deterministic: splitting elements δ are drawn from the canonical field
//! enumeration in order, and `find_root` returns the lexicographically
//! smallest root. Binomials X^{r^e} − c are routed through an
//! Adleman–Manders–Miller r-th-root ladder (same contract, much faster for
//! large prime-power exponents), selecting the lex-least root from the full
//! root set.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::sync::Arc;

use super::{lex_cmp, same_field, FqElem, FqField};
use crate::error::{Error, Result};

/// Dense polynomial over an `FqField`, coefficients low-to-high, trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct FqPoly {
    pub field: Arc<FqField>,
    pub c: Vec<FqElem>,
}

impl std::fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FqPoly[deg {:?}]", self.deg())
    }
}

impl FqPoly {
    pub fn new(field: &Arc<FqField>, coeffs: Vec<FqElem>) -> FqPoly {
        for x in &coeffs {
            assert!(same_field(&x.field, field), "coefficient from a different field");
        }
        let mut p = FqPoly { field: field.clone(), c: coeffs };
        p.trim();
        p
    }

    pub fn zero(field: &Arc<FqField>) -> FqPoly {
        FqPoly { field: field.clone(), c: vec![] }
    }

    pub fn one(field: &Arc<FqField>) -> FqPoly {
        FqPoly { field: field.clone(), c: vec![field.one()] }
    }

    /// The monomial X.
    pub fn x(field: &Arc<FqField>) -> FqPoly {
        FqPoly { field: field.clone(), c: vec![field.zero(), field.one()] }
    }

    /// X − a.
    pub fn x_minus(a: &FqElem) -> FqPoly {
        FqPoly { field: a.field.clone(), c: vec![a.neg(), a.field.one()] }
    }

    fn trim(&mut self) {
        while self.c.last().map_or(false, |x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn deg(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &FqPoly) -> FqPoly {
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i).add(&other.coeff(i)));
        }
        let mut r = FqPoly { field: self.field.clone(), c };
        r.trim();
        r
    }

    pub fn sub(&self, other: &FqPoly) -> FqPoly {
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i).sub(&other.coeff(i)));
        }
        let mut r = FqPoly { field: self.field.clone(), c };
        r.trim();
        r
    }

    pub fn mul(&self, other: &FqPoly) -> FqPoly {
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero(&self.field);
        }
        let mut c = vec![self.field.zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        let mut r = FqPoly { field: self.field.clone(), c };
        r.trim();
        r
    }

    pub fn scale(&self, k: &FqElem) -> FqPoly {
        let c = self.c.iter().map(|x| x.mul(k)).collect();
        let mut r = FqPoly { field: self.field.clone(), c };
        r.trim();
        r
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, m: &FqPoly) -> FqPoly {
        let dm = m.deg().expect("zero modulus");
        assert!(m.c[dm].is_one(), "modulus must be monic");
        if dm == 0 {
            return FqPoly::zero(&self.field);
        }
        let mut r = self.c.clone();
        let mut k = r.len();
        while k > dm {
            k -= 1;
            let lead = r[k].clone();
            if lead.is_zero() {
                continue;
            }
            r[k] = self.field.zero();
            for j in 0..dm {
                if !m.c[j].is_zero() {
                    let t = lead.mul(&m.c[j]);
                    r[k - dm + j] = r[k - dm + j].sub(&t);
                }
            }
        }
        let mut out = FqPoly { field: self.field.clone(), c: r };
        out.c.truncate(dm);
        out.trim();
        out
    }

    pub fn mulmod(&self, other: &FqPoly, m: &FqPoly) -> FqPoly {
        self.mul(other).rem_monic(m)
    }

    /// Monic scalar normalization; None for the zero polynomial.
    pub fn make_monic(&self) -> Option<FqPoly> {
        let d = self.deg()?;
        if self.c[d].is_one() {
            return Some(self.clone());
        }
        let inv = self.c[d].inv().expect("leading coefficient is a unit");
        Some(self.scale(&inv))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &FqPoly) -> FqPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let bm = b.make_monic().unwrap();
            let r = a.rem_monic(&bm);
            a = b;
            b = r;
        }
        a.make_monic().unwrap_or_else(|| FqPoly::zero(&self.field))
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        let mut acc = self.field.zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitute: self(u) mod m (Horner).
    pub fn compose_mod(&self, u: &FqPoly, m: &FqPoly) -> FqPoly {
        let mut acc = FqPoly::zero(&self.field);
        for c in self.c.iter().rev() {
            acc = acc.mulmod(u, m);
            if !c.is_zero() {
                acc = acc.add(&FqPoly::new(&self.field, vec![c.clone()]));
            }
        }
        acc
    }

    /// Apply x ↦ x^{p^k} to every coefficient.
    pub fn frobenius_coeffs(&self, k: usize) -> FqPoly {
        let c = self.c.iter().map(|x| x.frobenius_pexp(k)).collect();
        FqPoly { field: self.field.clone(), c }
    }

    /// X^e mod m by binary exponentiation (e a plain integer exponent).
    pub fn x_pow_mod(e: u64, m: &FqPoly) -> FqPoly {
        let field = &m.field;
        let mut acc = FqPoly::one(field);
        let x = FqPoly::x(field);
        if e == 0 {
            return acc.rem_monic(m);
        }
        let bits = 64 - e.leading_zeros();
        for i in (0..bits).rev() {
            acc = acc.mulmod(&acc, m);
            if (e >> i) & 1 == 1 {
                acc = acc.mulmod(&x, m);
            }
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> FqPoly {
        if self.c.len() <= 1 {
            return FqPoly::zero(&self.field);
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| x.scale(i as u64 % self.field.p))
            .collect();
        let mut r = FqPoly { field: self.field.clone(), c };
        r.trim();
        r
    }
}

/// X^{(p^b)^t} mod f, stepping the ladder H ↦ H^{(p^b)}(U) where
/// U = X^{p^b} mod f. Returns the full checkpoint list H_0..H_t.
fn frobenius_power_ladder(f: &FqPoly, base_pexp: usize, t: usize) -> Vec<FqPoly> {
    let field = &f.field;
    let u = {
        // X^{p^b} mod f: b successive applications of H ↦ H^{(p)}(X^p)
        let xp = FqPoly::x_pow_mod(field.p, f);
        let mut u = FqPoly::x(field).rem_monic(f);
        for _ in 0..base_pexp {
            u = u.frobenius_coeffs(1).compose_mod(&xp, f);
        }
        u
    };
    let mut out = Vec::with_capacity(t + 1);
    let mut h = FqPoly::x(field).rem_monic(f);
    out.push(h.clone());
    for _ in 0..t {
        h = h.frobenius_coeffs(base_pexp).compose_mod(&u, f);
        out.push(h.clone());
    }
    out
}

/// Is the polynomial f irreducible over the subfield F_{p^b}? All
/// coefficients must lie in that subfield (domain error otherwise).
pub fn is_irreducible_over_subfield(f: &FqPoly, base_pexp: usize) -> Result<bool> {
    let n = f
        .deg()
        .ok_or_else(|| Error::Domain("irreducibility of the zero polynomial".into()))?;
    if base_pexp == 0 || f.field.m % base_pexp != 0 {
        return Err(Error::Domain(format!(
            "no subfield of degree {} in the universe",
            base_pexp
        )));
    }
    for c in &f.c {
        if !c.in_subfield(base_pexp) {
            return Err(Error::Domain(
                "coefficient lies outside the stated base subfield".into(),
            ));
        }
    }
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let fm = f.make_monic().unwrap();
    let ladder = frobenius_power_ladder(&fm, base_pexp, n);
    let x = FqPoly::x(&fm.field).rem_monic(&fm);
    // X^{Q^n} ≡ X mod f
    if ladder[n] != x {
        return Ok(false);
    }
    // gcd(X^{Q^{n/ℓ}} − X, f) = 1 for every prime ℓ | n
    let mut prev = 0usize;
    for (ell, _) in super::intutil::factor_u64(n as u64) {
        let k = n / ell as usize;
        if k == prev {
            continue;
        }
        prev = k;
        let g = ladder[k].sub(&x).gcd(&fm);
        if g.deg() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimal polynomial of x over the subfield F_{p^b}: the product of
/// (X − σ^j(x)) over the Frobenius orbit. The coefficients are asserted to
/// land in the base subfield.
pub fn min_poly_over_subfield(x: &FqElem, base_pexp: usize) -> Result<FqPoly> {
    let m = x.field.m;
    if base_pexp == 0 || m % base_pexp != 0 {
        return Err(Error::Domain(format!(
            "no subfield of degree {} in the universe",
            base_pexp
        )));
    }
    let field = &x.field;
    let mut orbit = vec![x.clone()];
    let mut cur = x.frobenius_pexp(base_pexp);
    while cur != *x {
        orbit.push(cur.clone());
        cur = cur.frobenius_pexp(base_pexp);
        if orbit.len() > m {
            return Err(Error::Internal("Frobenius orbit failed to close".into()));
        }
    }
    let mut f = FqPoly::one(field);
    for r in &orbit {
        f = f.mul(&FqPoly::x_minus(r));
    }
    for c in &f.c {
        if !c.in_subfield(base_pexp) {
            return Err(Error::Internal(
                "minimal polynomial coefficients left the base subfield".into(),
            ));
        }
    }
    Ok(f)
}

/// All roots of f in its coefficient field, sorted lexicographically.
pub fn all_roots(f: &FqPoly) -> Result<Vec<FqElem>> {
    if f.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    if f.deg() == Some(0) {
        return Ok(vec![]);
    }
    if let Some(roots) = binomial_roots(f)? {
        return Ok(roots);
    }
    let fm = f.make_monic().unwrap();
    // product of the distinct linear factors: gcd(X^{p^M} − X, f)
    let m = fm.field.m;
    let ladder = frobenius_power_ladder(&fm, 1, m);
    let x = FqPoly::x(&fm.field).rem_monic(&fm);
    let lin = ladder[m].sub(&x).gcd(&fm);
    let mut roots = Vec::new();
    let mut stack = vec![lin];
    while let Some(g) = stack.pop() {
        match g.deg() {
            None | Some(0) => {}
            Some(1) => {
                roots.push(g.c[0].neg().mul(&g.c[1].inv().expect("monic")));
            }
            Some(_) => {
                let (a, b) = equal_degree_split_linear(&g)?;
                stack.push(a);
                stack.push(b);
            }
        }
    }
    roots.sort_by(lex_cmp);
    Ok(roots)
}

/// The lexicographically smallest root of f in its coefficient field.
pub fn find_root(f: &FqPoly) -> Result<FqElem> {
    let roots = all_roots(f)?;
    roots
        .into_iter()
        .next()
        .ok_or_else(|| Error::NotFound("polynomial has no root in the field".into()))
}

/// One deterministic root of f (cheapest available), for callers that
/// canonicalize afterwards themselves.
pub fn any_root(f: &FqPoly) -> Result<FqElem> {
    find_root(f)
}

/// Split a monic product of ≥ 2 distinct linear factors into two proper
/// pieces, deterministically.
fn equal_degree_split_linear(g: &FqPoly) -> Result<(FqPoly, FqPoly)> {
    let field = g.field.clone();
    let m = field.m;
    let p = field.p;
    let u = FqPoly::x_pow_mod(p, g); // X^p mod g, shared by all attempts
    for delta in field.subfield_iter(m)? {
        let shifted = if p == 2 {
            // trace splitting: T(δ·X) = Σ_{k<M} (δX)^{2^k} mod g
            let dx = FqPoly::new(&field, vec![field.zero(), delta.clone()]).rem_monic(g);
            let mut term = dx.clone();
            let mut acc = dx;
            for _ in 1..m {
                term = term.mulmod(&term, g);
                acc = acc.add(&term).rem_monic(g);
            }
            acc
        } else {
            // χ(X+δ) splitting: (X+δ)^{(p^M−1)/2} mod g via norm chain
            let xd = FqPoly::new(&field, vec![delta.clone(), field.one()]).rem_monic(g);
            let mut norm = xd.clone();
            let mut conj = xd;
            for _ in 1..m {
                conj = conj.frobenius_coeffs(1).compose_mod(&u, g);
                norm = norm.mulmod(&conj, g);
            }
            // norm has F_p values at the roots; finish with ^((p−1)/2)
            let mut acc = FqPoly::one(&field).rem_monic(g);
            let e = (p - 1) / 2;
            let bits = 64 - e.leading_zeros();
            for i in (0..bits).rev() {
                acc = acc.mulmod(&acc, g);
                if (e >> i) & 1 == 1 {
                    acc = acc.mulmod(&norm, g);
                }
            }
            acc
        };
        let probe = if p == 2 {
            shifted
        } else {
            shifted.sub(&FqPoly::one(&field))
        };
        let h = probe.gcd(g);
        if let Some(d) = h.deg() {
            if d > 0 && d < g.deg().unwrap() {
                let other = divide_out(g, &h);
                return Ok((h, other));
            }
        }
    }
    Err(Error::Internal("equal-degree splitting exhausted the field".into()))
}

/// Exact quotient g / h for monic h dividing monic g.
fn divide_out(g: &FqPoly, h: &FqPoly) -> FqPoly {
    let dg = g.deg().unwrap();
    let dh = h.deg().unwrap();
    let field = &g.field;
    let mut rem = g.c.clone();
    let mut q = vec![field.zero(); dg - dh + 1];
    for k in (dh..=dg).rev() {
        let lead = rem[k].clone();
        if lead.is_zero() {
            continue;
        }
        q[k - dh] = lead.clone();
        for j in 0..=dh {
            let t = lead.mul(&h.c[j]);
            rem[k - dh + j] = rem[k - dh + j].sub(&t);
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact division");
    let mut out = FqPoly { field: field.clone(), c: q };
    out.trim();
    out
}

/// If f is a binomial X^{r^e} − c with r prime (and degree > 1), return all
/// of its roots via an r-th-root ladder; None when f has another shape.
fn binomial_roots(f: &FqPoly) -> Result<Option<Vec<FqElem>>> {
    let d = match f.deg() {
        Some(d) if d >= 2 => d,
        _ => return Ok(None),
    };
    if !f.c[d].is_one() {
        return Ok(None);
    }
    if f.c[1..d].iter().any(|c| !c.is_zero()) {
        return Ok(None);
    }
    let fac = super::intutil::factor_u64(d as u64);
    if fac.len() != 1 {
        return Ok(None);
    }
    let (r, e) = fac[0];
    let c = f.c[0].neg(); // f = X^d − c
    if c.is_zero() {
        return Ok(Some(vec![f.field.zero()]));
    }
    let mut val = c;
    for _ in 0..e {
        match prime_root(&val, r)? {
            Some(root) => val = root,
            None => return Ok(Some(vec![])),
        }
    }
    // expand by the d-th roots of unity present in the field: a cyclic
    // group of order r^min(e, v_r(Q−1))
    let field = &f.field;
    let e_univ = e.min(field.sylow_exponent(r));
    let omega = field.element_of_order_r_pow(r, e_univ)?;
    let count = r.pow(e_univ);
    let mut roots = Vec::with_capacity(count as usize);
    let mut cur = val;
    for _ in 0..count {
        roots.push(cur.clone());
        cur = cur.mul(&omega);
    }
    roots.sort_by(lex_cmp);
    roots.dedup();
    Ok(Some(roots))
}

/// One r-th root of a (r prime) in the coefficient field, or None if a is
/// not an r-th power. Deterministic (Adleman–Manders–Miller with the
/// canonical multiplicative generator).
fn prime_root(a: &FqElem, r: u64) -> Result<Option<FqElem>> {
    let field = &a.field;
    if a.is_zero() {
        return Ok(Some(field.zero()));
    }
    let q_minus_1 = field.size_big() - BigUint::one();
    let rb = BigUint::from(r);
    if (&q_minus_1 % &rb).is_zero() {
        // existence: a^{(Q−1)/r} = 1
        if !a.pow_big(&(&q_minus_1 / &rb)).is_one() {
            return Ok(None);
        }
        // Q − 1 = r^s·u with r ∤ u
        let mut u = q_minus_1.clone();
        let mut s = 0u32;
        while (&u % &rb).is_zero() {
            u /= &rb;
            s += 1;
        }
        // 1 = α·r + β·u  (β = u^{−1} mod r as an integer, α from the rest)
        let u_mod_r = (&u % &rb).to_u64_digits().first().copied().unwrap_or(0);
        let beta = super::intutil::invmod_u64(u_mod_r, r)?;
        // b = a^u lies in the r-Sylow subgroup, and is an r-th power there
        let b = a.pow_big(&u);
        let g_syl = field.sylow_generator(r)?; // order r^s exactly
        // digit-by-digit discrete log of b in base g_syl
        let omega = {
            let mut w = g_syl.clone();
            for _ in 0..s.saturating_sub(1) {
                w = w.pow(r as u128);
            }
            w // order r exactly
        };
        let mut omega_pows = Vec::with_capacity(r as usize);
        let mut cur = field.one();
        for _ in 0..r {
            omega_pows.push(cur.clone());
            cur = cur.mul(&omega);
        }
        let mut exp = BigUint::zero();
        let mut rpow = BigUint::one();
        for j in 0..s {
            // strip the known digits, then project to order r
            let t = b.mul(&g_syl.pow_big(&exp).inv()?);
            let mut proj = t;
            for _ in 0..(s - 1 - j) {
                proj = proj.pow(r as u128);
            }
            let digit = omega_pows
                .iter()
                .position(|w| *w == proj)
                .ok_or_else(|| Error::Internal("discrete log digit not found".into()))?;
            exp += &rpow * BigUint::from(digit as u64);
            rpow *= &rb;
        }
        if (&exp % &rb) != BigUint::zero() {
            return Err(Error::Internal(
                "r-th power passed the existence test but has indivisible log".into(),
            ));
        }
        let c_root = g_syl.pow_big(&(&exp / &rb)); // c_root^r = b
        // x = a^α · c_root^β with α·r + β·u = 1; α = (1 − β·u)/r ≤ 0, so
        // reduce the exponent mod (Q−1) instead of using signed integers
        let bu = BigUint::from(beta) * &u;
        let alpha_mod = {
            // (1 − β·u) / r mod (Q−1): compute in integers — 1 − βu ≤ 0,
            // so α = −(βu − 1)/r; reduce −α mod (Q−1) then negate.
            let num = &bu - BigUint::one();
            debug_assert!((&num % &rb).is_zero());
            let mag = num / &rb; // −α
            let red = &mag % &q_minus_1;
            if red.is_zero() {
                BigUint::zero()
            } else {
                &q_minus_1 - red
            }
        };
        let x = a.pow_big(&alpha_mod).mul(&c_root.pow_big(&BigUint::from(beta)));
        debug_assert!(x.pow(r as u128) == *a);
        Ok(Some(x))
    } else {
        // r invertible mod Q−1: unique r-th root a^{r^{−1} mod (Q−1)}
        let rinv = mod_inverse_big(&rb, &q_minus_1)?;
        Ok(Some(a.pow_big(&rinv)))
    }
}

fn mod_inverse_big(a: &BigUint, m: &BigUint) -> Result<BigUint> {
    use num_bigint::BigInt;
    let a = BigInt::from(a.clone());
    let m = BigInt::from(m.clone());
    let e = a.extended_gcd(&m);
    if e.gcd != BigInt::one() {
        return Err(Error::Internal("non-invertible exponent modulus".into()));
    }
    let mut x = e.x % &m;
    if x < BigInt::zero() {
        x += &m;
    }
    Ok(x.to_biguint().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FqField;

    #[test]
    fn roots_quadratic_f7() {
        let f7 = FqField::new(7, 1).unwrap();
        // (X−2)(X−5) = X² − 7X + 10 = X² + 3
        let f = FqPoly::new(
            &f7,
            vec![f7.from_scalar(3), f7.zero(), f7.one()],
        );
        let roots = all_roots(&f).unwrap();
        assert_eq!(roots, vec![f7.from_scalar(2), f7.from_scalar(5)]);
        assert_eq!(find_root(&f).unwrap(), f7.from_scalar(2));
    }

    #[test]
    fn no_root_reported() {
        let f3 = FqField::new(3, 1).unwrap();
        // X² + 1 irreducible over F_3
        let f = FqPoly::new(&f3, vec![f3.one(), f3.zero(), f3.one()]);
        assert!(matches!(find_root(&f), Err(crate::error::Error::NotFound(_))));
        assert!(all_roots(&f).unwrap().is_empty());
    }

    #[test]
    fn roots_in_extension() {
        let f9 = FqField::new(3, 2).unwrap();
        // X² + 1 splits over F_9 as (X−i)(X+i); lex-least root is i=(0,1)
        let f = FqPoly::new(&f9, vec![f9.one(), f9.zero(), f9.one()]);
        let roots = all_roots(&f).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(find_root(&f).unwrap(), f9.elem(vec![0, 1]));
        for r in &roots {
            assert!(f.eval(r).is_zero());
        }
    }

    #[test]
    fn repeated_roots_deduplicated() {
        let f5 = FqField::new(5, 1).unwrap();
        // (X−1)²(X−3)
        let f = FqPoly::x_minus(&f5.one())
            .mul(&FqPoly::x_minus(&f5.one()))
            .mul(&FqPoly::x_minus(&f5.from_scalar(3)));
        let roots = all_roots(&f).unwrap();
        assert_eq!(roots, vec![f5.one(), f5.from_scalar(3)]);
    }

    #[test]
    fn char2_roots() {
        let f4 = FqField::new(2, 2).unwrap();
        let w = f4.elem(vec![0, 1]);
        // X² + X + 1 = (X−ω)(X−ω²) over F_4
        let f = FqPoly::new(&f4, vec![f4.one(), f4.one(), f4.one()]);
        let roots = all_roots(&f).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&w));
        // lex-least: ω = (0,1) < ω² = (1,1)
        assert_eq!(find_root(&f).unwrap(), w);
        // cubic with all roots in F_4: X³ − 1 = (X−1)(X−ω)(X−ω²)
        let c = FqPoly::new(&f4, vec![f4.one(), f4.zero(), f4.zero(), f4.one()]);
        let roots = all_roots(&c).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(find_root(&c).unwrap(), w); // (0,1) < (1,0) < (1,1)
    }

    #[test]
    fn binomial_route_matches_generic() {
        // X⁵ − 2 over F_{3^20}: 5 | 3^4−1, handled by the r-th-root ladder
        let f = FqField::new(3, 4).unwrap();
        let g = f.multiplicative_generator().unwrap();
        let c = g.pow(5); // guaranteed 5th power
        let bin = FqPoly::new(
            &f,
            vec![
                c.neg(),
                f.zero(),
                f.zero(),
                f.zero(),
                f.zero(),
                f.one(),
            ],
        );
        let roots = all_roots(&bin).unwrap();
        assert_eq!(roots.len(), 5); // 5 | 3^4 − 1 = 80
        for r in &roots {
            assert_eq!(r.pow(5), c);
        }
        // windows are sorted and the reported least is really lex-least
        for w in roots.windows(2) {
            assert!(crate::ff::lex_cmp(&w[0], &w[1]) == std::cmp::Ordering::Less);
        }
        // a non-5th-power has no roots: gcd(5, 80) = 5 partitions F* into
        // 5th powers (16 of 80); g itself is not one
        let bad = FqPoly::new(
            &f,
            vec![
                g.neg(),
                f.zero(),
                f.zero(),
                f.zero(),
                f.zero(),
                f.one(),
            ],
        );
        assert!(all_roots(&bad).unwrap().is_empty());
    }

    #[test]
    fn binomial_unique_root_when_coprime() {
        // X³ − c over F_5: gcd(3, 4) = 1 so cubing is a bijection
        let f5 = FqField::new(5, 1).unwrap();
        for v in 1..5u64 {
            let c = f5.from_scalar(v);
            let bin = FqPoly::new(&f5, vec![c.neg(), f5.zero(), f5.zero(), f5.one()]);
            let roots = all_roots(&bin).unwrap();
            assert_eq!(roots.len(), 1);
            assert_eq!(roots[0].pow(3), c);
        }
    }

    #[test]
    fn irreducibility_over_subfields() {
        let f = FqField::new(3, 4).unwrap();
        // X² + 1 over F_3: irreducible; over F_9 (inside F_81): splits
        let quad = FqPoly::new(&f, vec![f.one(), f.zero(), f.one()]);
        assert!(is_irreducible_over_subfield(&quad, 1).unwrap());
        assert!(!is_irreducible_over_subfield(&quad, 2).unwrap());
        // degree-4 modulus of the universe is irreducible over F_3
        let modl: Vec<FqElem> = f.modulus.clone().into_iter().map(|c| f.from_scalar(c)).collect();
        let mp = FqPoly::new(&f, modl);
        assert!(is_irreducible_over_subfield(&mp, 1).unwrap());
        // X² − g with g a generator of F_81 has coefficients outside F_9
        let g = f.multiplicative_generator().unwrap();
        let t = FqPoly::new(&f, vec![g.neg(), f.zero(), f.one()]);
        assert!(is_irreducible_over_subfield(&t, 2).is_err());
    }

    #[test]
    fn min_poly_frozen() {
        let f9 = FqField::new(3, 2).unwrap();
        let i = f9.elem(vec![0, 1]);
        let mp = min_poly_over_subfield(&i, 1).unwrap();
        // min poly of i over F_3 is X² + 1
        assert_eq!(mp.c.len(), 3);
        assert!(mp.c[0].is_one());
        assert!(mp.c[1].is_zero());
        assert!(mp.c[2].is_one());
        // over F_9 itself: X − i
        let mp2 = min_poly_over_subfield(&i, 2).unwrap();
        assert_eq!(mp2.deg(), Some(1));
        assert!(mp2.eval(&i).is_zero());
    }

    #[test]
    fn derivative_and_eval() {
        let f7 = FqField::new(7, 1).unwrap();
        // f = 3X³ + X + 2, f' = 2X² + 1 (9 ≡ 2 mod 7)
        let f = FqPoly::new(
            &f7,
            vec![f7.from_scalar(2), f7.one(), f7.zero(), f7.from_scalar(3)],
        );
        let d = f.derivative();
        assert_eq!(d.c.len(), 3);
        assert_eq!(d.c[0], f7.one());
        assert_eq!(d.c[2], f7.from_scalar(2));
        assert_eq!(f.eval(&f7.from_scalar(1)), f7.from_scalar(6));
    }
}
