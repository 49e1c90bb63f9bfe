//! Exact arithmetic in finite fields F_{p^m}.
//!
//! All towers and subfields needed by one construction are realized inside a
//! single **universe field** F_{p^M} (M = lcm of the needed degrees); the
//! subfield of size p^t is cut out by the Frobenius fixed-point condition
//! x^{p^t} = x. Moduli and all branch choices (roots, square roots,
//! generators) are deterministic: lexicographically least by coefficient
//! tuple (c_0, …, c_{m−1}).

pub mod fppoly;
pub mod iso;
pub mod intutil;
pub mod linalg;
pub mod poly;

use num_bigint::BigUint;
use num_traits::One;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Hard guards keeping schoolbook arithmetic inside u64 headroom.
pub const MAX_P: u64 = 1 << 20;
pub const MAX_DEGREE: usize = 4096;

/// A finite field F_{p^m} with a fixed monic irreducible modulus over F_p.
///
/// Fields are shared via `Arc`; internal caches (Frobenius tables, subfield
/// bases, subfield generators) are built lazily and are deterministic, so
/// values are semantically immutable and safe to share across threads.
pub struct FqField {
    pub p: u64,
    pub m: usize,
    /// Monic irreducible modulus, coefficients low-to-high, length m+1.
    pub modulus: Vec<u64>,
    frob_rows: OnceLock<Vec<u64>>,
    subfields: Mutex<BTreeMap<usize, Arc<Vec<Vec<u64>>>>>,
    generators: Mutex<BTreeMap<usize, Vec<u64>>>,
    sylow_gens: Mutex<BTreeMap<u64, Vec<u64>>>,
}

impl std::fmt::Debug for FqField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FqField(p={}, m={})", self.p, self.m)
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}
impl Eq for FqField {}

/// An element of an `FqField`: coefficient vector over F_p of length m
/// (low-to-high in the power basis of the modulus root), always reduced.
#[derive(Clone)]
pub struct FqElem {
    pub field: Arc<FqField>,
    pub c: Vec<u64>,
}

impl std::fmt::Debug for FqElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FqElem{:?}", self.c)
    }
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(same_field(&self.field, &other.field));
        self.c == other.c
    }
}
impl Eq for FqElem {}

pub fn same_field(a: &Arc<FqField>, b: &Arc<FqField>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FqField {
    /// The field F_{p^m} with the deterministic (lex-least) modulus.
    pub fn new(p: u64, m: usize) -> Result<Arc<FqField>> {
        Self::check_params(p, m)?;
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            fppoly::least_irreducible(p, m)
        };
        Ok(Arc::new(FqField {
            p,
            m,
            modulus,
            frob_rows: OnceLock::new(),
            subfields: Mutex::new(BTreeMap::new()),
            generators: Mutex::new(BTreeMap::new()),
            sylow_gens: Mutex::new(BTreeMap::new()),
        }))
    }

    /// A field with an explicitly supplied modulus (validated: monic,
    /// reduced coefficients, irreducible over F_p).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Arc<FqField>> {
        let m = modulus.len().saturating_sub(1);
        Self::check_params(p, m)?;
        if modulus.last() != Some(&1) {
            return Err(Error::Parameter("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::Parameter("modulus coefficients must be reduced mod p".into()));
        }
        if m > 1 && !fppoly::is_irreducible(p, &modulus) {
            return Err(Error::Parameter("modulus is not irreducible over F_p".into()));
        }
        if m == 1 && modulus != vec![0, 1] && !fppoly::is_irreducible(p, &modulus) {
            return Err(Error::Parameter("modulus is not irreducible over F_p".into()));
        }
        Ok(Arc::new(FqField {
            p,
            m,
            modulus,
            frob_rows: OnceLock::new(),
            subfields: Mutex::new(BTreeMap::new()),
            generators: Mutex::new(BTreeMap::new()),
            sylow_gens: Mutex::new(BTreeMap::new()),
        }))
    }

    fn check_params(p: u64, m: usize) -> Result<()> {
        if !intutil::is_prime_u64(p) {
            return Err(Error::Parameter(format!("{} is not prime", p)));
        }
        if p >= MAX_P {
            return Err(Error::Parameter(format!("characteristic {} ≥ 2^20 unsupported", p)));
        }
        if m == 0 {
            return Err(Error::Parameter("field degree must be ≥ 1".into()));
        }
        if m > MAX_DEGREE {
            return Err(Error::Parameter(format!("field degree {} > {} unsupported", m, MAX_DEGREE)));
        }
        Ok(())
    }

    pub fn size_pexp(&self) -> usize {
        self.m
    }

    /// Field size p^m as a BigUint.
    pub fn size_big(&self) -> BigUint {
        BigUint::from(self.p).pow(self.m as u32)
    }

    pub fn elem(self: &Arc<Self>, mut coords: Vec<u64>) -> FqElem {
        assert!(coords.len() <= self.m, "coordinate vector longer than degree");
        coords.resize(self.m, 0);
        for c in coords.iter_mut() {
            *c %= self.p;
        }
        FqElem { field: self.clone(), c: coords }
    }

    pub fn zero(self: &Arc<Self>) -> FqElem {
        FqElem { field: self.clone(), c: vec![0; self.m] }
    }

    pub fn one(self: &Arc<Self>) -> FqElem {
        self.from_scalar(1)
    }

    /// Embed an integer (mod p) as a field element.
    pub fn from_scalar(self: &Arc<Self>, v: u64) -> FqElem {
        let mut c = vec![0; self.m];
        c[0] = v % self.p;
        FqElem { field: self.clone(), c }
    }

    /// The class of Y (the modulus root) — for m = 1 this is the class of 0.
    pub fn gen_elem(self: &Arc<Self>) -> FqElem {
        let mut c = vec![0; self.m];
        if self.m > 1 {
            c[1] = 1;
        }
        FqElem { field: self.clone(), c }
    }

    /// Row-major m×m table: row i = coordinates of Y^{p·i} mod modulus.
    fn frob_rows(&self) -> &[u64] {
        self.frob_rows.get_or_init(|| {
            let m = self.m;
            let mut rows = vec![0u64; m * m];
            let u = fppoly::x_pow_mod(self.p, self.p, &self.modulus);
            let mut cur = vec![1u64];
            for i in 0..m {
                if i > 0 {
                    cur = fppoly::mulmod(self.p, &cur, &u, &self.modulus);
                }
                for (j, &cj) in cur.iter().enumerate() {
                    rows[i * m + j] = cj;
                }
            }
            rows
        })
    }

    /// x ↦ x^p on raw coordinates.
    fn apply_frob_raw(&self, c: &[u64]) -> Vec<u64> {
        let m = self.m;
        let rows = self.frob_rows();
        let mut out = vec![0u64; m];
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            let row = &rows[i * m..(i + 1) * m];
            for (j, &rj) in row.iter().enumerate() {
                let cell = &mut out[j];
                *cell += ci * rj;
                if *cell >= 1 << 62 {
                    *cell %= self.p;
                }
            }
        }
        for v in out.iter_mut() {
            *v %= self.p;
        }
        out
    }

    fn mul_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.m;
        let p = self.p;
        if m == 1 {
            return vec![(a[0] * b[0]) % p];
        }
        let mut buf = vec![0u64; 2 * m - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                let cell = &mut buf[i + j];
                *cell += ai * bj;
                if *cell >= 1 << 62 {
                    *cell %= p;
                }
            }
        }
        for k in (m..2 * m - 1).rev() {
            let c = buf[k] % p;
            buf[k] = 0;
            if c == 0 {
                continue;
            }
            for j in 0..m {
                let fj = self.modulus[j];
                if fj != 0 {
                    let cell = &mut buf[k - m + j];
                    *cell += c * (p - fj);
                    if *cell >= 1 << 62 {
                        *cell %= p;
                    }
                }
            }
        }
        buf.truncate(m);
        for v in buf.iter_mut() {
            *v %= p;
        }
        buf
    }

    /// Echelonized F_p-basis of the subfield F_{p^t} (t | m required).
    /// Basis vectors are coordinate vectors in the universe, one per free
    /// column of the Frobenius fixed-point system, canonical and cached.
    pub fn subfield_basis(self: &Arc<Self>, t: usize) -> Result<Arc<Vec<Vec<u64>>>> {
        if t == 0 || self.m % t != 0 {
            return Err(Error::Domain(format!(
                "no subfield of degree {} in a field of degree {}",
                t, self.m
            )));
        }
        if let Some(b) = self.subfields.lock().unwrap().get(&t) {
            return Ok(b.clone());
        }
        let m = self.m;
        // B row i = coords of (Y^{p^t})^i; Frob^t(x) = x·B for row vectors x.
        let mut g = {
            let mut y = vec![0u64; m];
            if m > 1 {
                y[1] = 1;
            } else {
                y[0] = 0; // Y ≡ 0 mod Y
            }
            y
        };
        for _ in 0..t {
            g = self.apply_frob_raw(&g);
        }
        let mut brows: Vec<Vec<u64>> = Vec::with_capacity(m);
        let mut cur = vec![0u64; m];
        cur[0] = 1;
        for i in 0..m {
            if i > 0 {
                cur = self.mul_raw(&cur, &g);
            }
            brows.push(cur.clone());
        }
        // kernel of (B − I)^T: columns index the input coordinates
        let mut mat: Vec<Vec<u64>> = vec![vec![0u64; m]; m];
        for i in 0..m {
            for j in 0..m {
                let mut v = brows[i][j] % self.p;
                if i == j {
                    v = (v + self.p - 1) % self.p;
                }
                mat[j][i] = v; // transpose
            }
        }
        let basis = linalg::kernel_basis(self.p, &mat);
        if basis.len() != t {
            return Err(Error::Internal(format!(
                "subfield of degree {} has basis of size {} (expected {})",
                t,
                basis.len(),
                t
            )));
        }
        let arc = Arc::new(basis);
        self.subfields.lock().unwrap().insert(t, arc.clone());
        Ok(arc)
    }

    /// Deterministic generator of the multiplicative group of the subfield
    /// F_{p^t}: the first element, in the canonical subfield enumeration
    /// order, of multiplicative order p^t − 1.
    pub fn subfield_generator(self: &Arc<Self>, t: usize) -> Result<FqElem> {
        if let Some(c) = self.generators.lock().unwrap().get(&t) {
            return Ok(FqElem { field: self.clone(), c: c.clone() });
        }
        let basis = self.subfield_basis(t)?;
        let order = BigUint::from(self.p).pow(t as u32) - BigUint::one();
        let primes = intutil::prime_divisors_of_pow_minus_1(self.p, t)?;
        let cofactors: Vec<BigUint> = primes.iter().map(|q| &order / q).collect();
        let mut lambda = vec![0u64; t];
        loop {
            // odometer: last coordinate fastest
            let mut i = t - 1;
            loop {
                lambda[i] += 1;
                if lambda[i] < self.p {
                    break;
                }
                lambda[i] = 0;
                if i == 0 {
                    return Err(Error::Internal(format!(
                        "no generator found in subfield of degree {}",
                        t
                    )));
                }
                i -= 1;
            }
            let mut c = vec![0u64; self.m];
            for (li, b) in lambda.iter().zip(basis.iter()) {
                if *li == 0 {
                    continue;
                }
                for (j, &bj) in b.iter().enumerate() {
                    c[j] = (c[j] + li * bj) % self.p;
                }
            }
            let x = FqElem { field: self.clone(), c };
            if x.is_zero() {
                continue;
            }
            let mut ok = true;
            for cof in &cofactors {
                if x.pow_big(cof).is_one() {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.generators.lock().unwrap().insert(t, x.c.clone());
                return Ok(x);
            }
        }
    }

    /// Lexicographically least element of multiplicative order p^m − 1.
    pub fn multiplicative_generator(self: &Arc<Self>) -> Result<FqElem> {
        self.subfield_generator(self.m)
    }

    /// r-adic valuation of p^m − 1.
    pub fn sylow_exponent(&self, r: u64) -> u32 {
        let rb = BigUint::from(r);
        let mut n = self.size_big() - BigUint::one();
        let mut s = 0u32;
        while (&n % &rb) == BigUint::from(0u32) {
            n /= &rb;
            s += 1;
        }
        s
    }

    /// Deterministic generator of the r-Sylow subgroup of the multiplicative
    /// group (r prime dividing p^m − 1): the first element, in canonical
    /// order, whose (p^m−1)/r^s cofactor power has exact order r^s.
    ///
    /// Unlike a full multiplicative generator this needs no factorization of
    /// p^m − 1 beyond its r-part, so it stays cheap in large universes.
    pub fn sylow_generator(self: &Arc<Self>, r: u64) -> Result<FqElem> {
        if let Some(c) = self.sylow_gens.lock().unwrap().get(&r) {
            return Ok(FqElem { field: self.clone(), c: c.clone() });
        }
        let s = self.sylow_exponent(r);
        if s == 0 {
            return Err(Error::Domain(format!(
                "{} does not divide the multiplicative group order",
                r
            )));
        }
        let order = self.size_big() - BigUint::one();
        let rs = BigUint::from(r).pow(s);
        let cofactor = &order / &rs;
        let sub_exp = BigUint::from(r).pow(s - 1);
        for w in self.subfield_iter(self.m)? {
            if w.is_zero() {
                continue;
            }
            let z = w.pow_big(&cofactor);
            if !z.pow_big(&sub_exp).is_one() {
                self.sylow_gens.lock().unwrap().insert(r, z.c.clone());
                return Ok(z);
            }
        }
        Err(Error::Internal("no Sylow generator found".into()))
    }

    /// Deterministic element of exact multiplicative order r^k.
    pub fn element_of_order_r_pow(self: &Arc<Self>, r: u64, k: u32) -> Result<FqElem> {
        if k == 0 {
            return Ok(self.one());
        }
        let s = self.sylow_exponent(r);
        if k > s {
            return Err(Error::Domain(format!(
                "no element of order {}^{} in this field",
                r, k
            )));
        }
        let g = self.sylow_generator(r)?;
        Ok(g.pow_big(&BigUint::from(r).pow(s - k)))
    }

    /// Enumerate the subfield F_{p^t} in canonical order (for small scans).
    pub fn subfield_iter(self: &Arc<Self>, t: usize) -> Result<SubfieldIter> {
        let basis = self.subfield_basis(t)?;
        Ok(SubfieldIter {
            field: self.clone(),
            basis,
            lambda: vec![0u64; t],
            done: false,
        })
    }
}

/// Iterator over all p^t elements of a subfield in the canonical
/// (λ-odometer) order, starting at 0.
pub struct SubfieldIter {
    field: Arc<FqField>,
    basis: Arc<Vec<Vec<u64>>>,
    lambda: Vec<u64>,
    done: bool,
}

impl Iterator for SubfieldIter {
    type Item = FqElem;
    fn next(&mut self) -> Option<FqElem> {
        if self.done {
            return None;
        }
        let mut c = vec![0u64; self.field.m];
        for (li, b) in self.lambda.iter().zip(self.basis.iter()) {
            if *li == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                c[j] = (c[j] + li * bj) % self.field.p;
            }
        }
        // advance odometer (last coordinate fastest)
        let t = self.lambda.len();
        let mut i = t;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.lambda[i] += 1;
            if self.lambda[i] < self.field.p {
                break;
            }
            self.lambda[i] = 0;
        }
        Some(FqElem { field: self.field.clone(), c })
    }
}

impl FqElem {
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &FqElem) -> FqElem {
        assert!(same_field(&self.field, &other.field), "field mismatch in add");
        let p = self.field.p;
        let c = self.c.iter().zip(&other.c).map(|(a, b)| (a + b) % p).collect();
        FqElem { field: self.field.clone(), c }
    }

    pub fn sub(&self, other: &FqElem) -> FqElem {
        assert!(same_field(&self.field, &other.field), "field mismatch in sub");
        let p = self.field.p;
        let c = self.c.iter().zip(&other.c).map(|(a, b)| (a + p - b) % p).collect();
        FqElem { field: self.field.clone(), c }
    }

    pub fn neg(&self) -> FqElem {
        let p = self.field.p;
        let c = self.c.iter().map(|&a| (p - a) % p).collect();
        FqElem { field: self.field.clone(), c }
    }

    pub fn mul(&self, other: &FqElem) -> FqElem {
        assert!(same_field(&self.field, &other.field), "field mismatch in mul");
        FqElem {
            field: self.field.clone(),
            c: self.field.mul_raw(&self.c, &other.c),
        }
    }

    pub fn scale(&self, k: u64) -> FqElem {
        let p = self.field.p;
        let k = k % p;
        let c = self.c.iter().map(|&a| (a * k) % p).collect();
        FqElem { field: self.field.clone(), c }
    }

    pub fn inv(&self) -> Result<FqElem> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let mut a = self.c.clone();
        fppoly::trim(&mut a);
        let inv = fppoly::invmod(self.field.p, &a, &self.field.modulus)?;
        Ok(self.field.elem(inv))
    }

    pub fn pow(&self, mut e: u128) -> FqElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, e: &BigUint) -> FqElem {
        let mut acc = self.field.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = acc.mul(&acc);
            if e.bit(i) {
                acc = acc.mul(self);
            }
        }
        acc
    }

    /// x ↦ x^p (the absolute Frobenius).
    pub fn frobenius(&self) -> FqElem {
        FqElem {
            field: self.field.clone(),
            c: self.field.apply_frob_raw(&self.c),
        }
    }

    /// x ↦ x^{p^k} (k applications of the absolute Frobenius, k mod m).
    pub fn frobenius_pexp(&self, k: usize) -> FqElem {
        let k = k % self.field.m;
        let mut c = self.c.clone();
        for _ in 0..k {
            c = self.field.apply_frob_raw(&c);
        }
        FqElem { field: self.field.clone(), c }
    }

    /// x^{(p^base_pexp)^t}: the t-th power of the Frobenius of the subfield
    /// of size p^base_pexp.
    pub fn frobenius_pow(&self, t: usize, base_pexp: usize) -> FqElem {
        let m = self.field.m;
        // reduce each factor mod m before multiplying to avoid usize overflow;
        // the product mod m is unchanged
        let total = ((base_pexp % m) * (t % m)) % m;
        self.frobenius_pexp(total)
    }

    /// x ∈ F_{p^t}? (Equivalent to x^{p^t} = x inside the universe.)
    pub fn in_subfield(&self, t: usize) -> bool {
        self.frobenius_pexp(t).c == self.c
    }

    /// Relative trace to the subfield of size p^base_pexp from its extension
    /// of degree rel_degree: Σ_{j<rel_degree} x^{(p^base_pexp)^j}.
    ///
    /// Preconditions: the tower F_{p^{base_pexp·rel_degree}} exists inside
    /// the universe and contains x; the result is asserted to lie in the
    /// base subfield.
    pub fn rel_trace(&self, base_pexp: usize, rel_degree: usize) -> Result<FqElem> {
        let m = self.field.m;
        let top = base_pexp * rel_degree;
        if base_pexp == 0 || rel_degree == 0 || m % top != 0 {
            return Err(Error::Domain(format!(
                "trace tower p^{}·degree {} does not divide the universe degree {}",
                base_pexp, rel_degree, m
            )));
        }
        if !self.in_subfield(top) {
            return Err(Error::Domain(
                "element lies outside the stated trace tower".into(),
            ));
        }
        let mut acc = self.clone();
        let mut cur = self.clone();
        for _ in 1..rel_degree {
            cur = cur.frobenius_pexp(base_pexp);
            acc = acc.add(&cur);
        }
        if !acc.in_subfield(base_pexp) {
            return Err(Error::Internal(
                "relative trace landed outside the target subfield".into(),
            ));
        }
        Ok(acc)
    }

    /// Norm down to F_p as a scalar in [0, p).
    fn norm_to_fp_scalar(&self, t: usize) -> u64 {
        // product of the t conjugates under x ↦ x^p; x must lie in F_{p^t}
        let mut acc = self.clone();
        let mut cur = self.clone();
        for _ in 1..t {
            cur = cur.frobenius();
            acc = acc.mul(&cur);
        }
        debug_assert!(acc.c[1..].iter().all(|&v| v == 0), "norm not scalar");
        acc.c[0]
    }

    /// Euler criterion via the norm chain: x is a square in F_{p^M}
    /// (the universe) iff its norm to F_p is a square in F_p.
    pub fn is_square(&self) -> bool {
        self.is_square_in_subfield(self.field.m).unwrap_or(false)
    }

    /// Is x a square **within** the subfield F_{p^t}? (x must lie there.)
    pub fn is_square_in_subfield(&self, t: usize) -> Result<bool> {
        if self.field.p == 2 {
            return Ok(true);
        }
        if self.is_zero() {
            return Ok(true);
        }
        if self.field.m % t != 0 || !self.in_subfield(t) {
            return Err(Error::Domain(format!(
                "element not in the degree-{} subfield",
                t
            )));
        }
        let n = self.norm_to_fp_scalar(t);
        Ok(intutil::modpow_u64(n, (self.field.p - 1) / 2, self.field.p) == 1)
    }

    /// Deterministic square root: the lexicographically smaller of the two
    /// roots (odd characteristic), or the unique root (characteristic 2).
    pub fn sqrt(&self) -> Result<FqElem> {
        let p = self.field.p;
        let m = self.field.m;
        if self.is_zero() {
            return Ok(self.clone());
        }
        if p == 2 {
            // squaring is bijective: sqrt(x) = x^{2^{m−1}}
            return Ok(self.frobenius_pexp(m - 1));
        }
        // minimal t | m with x ∈ F_{p^t}
        let mut t = m;
        for d in 1..=m {
            if m % d == 0 && self.in_subfield(d) {
                t = d;
                break;
            }
        }
        let level = if self.is_square_in_subfield(t)? {
            t
        } else if (m / t) % 2 == 0 {
            2 * t // non-squares of F_{p^t} become squares in the quadratic extension
        } else {
            return Err(Error::Domain("square root of a non-square".into()));
        };
        let r = self.tonelli_shanks(level)?;
        let r_neg = r.neg();
        Ok(if lex_le(&r, &r_neg) { r } else { r_neg })
    }

    fn tonelli_shanks(&self, t: usize) -> Result<FqElem> {
        let p = self.field.p;
        let one = BigUint::one();
        let q_minus_1 = BigUint::from(p).pow(t as u32) - &one;
        let mut s = q_minus_1.clone();
        let mut e = 0u32;
        let two = BigUint::from(2u32);
        while (&s % &two) == BigUint::from(0u32) {
            s /= &two;
            e += 1;
        }
        // deterministic non-residue of F_{p^t}: first in canonical order
        let mut z = None;
        for cand in self.field.subfield_iter(t)? {
            if cand.is_zero() {
                continue;
            }
            if !cand.is_square_in_subfield(t)? {
                z = Some(cand);
                break;
            }
        }
        let z = z.ok_or_else(|| Error::Internal("no quadratic non-residue found".into()))?;
        let mut c = z.pow_big(&s);
        let mut r = self.pow_big(&((&s + &one) / &two));
        let mut tt = self.pow_big(&s);
        let mut m_ord = e;
        while !tt.is_one() {
            let mut i = 0u32;
            let mut cur = tt.clone();
            while !cur.is_one() {
                cur = cur.mul(&cur);
                i += 1;
                if i >= m_ord {
                    return Err(Error::Domain("square root of a non-square".into()));
                }
            }
            let mut b = c.clone();
            for _ in 0..(m_ord - i - 1) {
                b = b.mul(&b);
            }
            r = r.mul(&b);
            c = b.mul(&b);
            tt = tt.mul(&c);
            m_ord = i;
        }
        debug_assert!(r.mul(&r) == *self);
        Ok(r)
    }

    /// Multiplicative order (for small/test use; factors p^t − 1).
    pub fn mult_order(&self) -> Result<BigUint> {
        if self.is_zero() {
            return Err(Error::Domain("order of zero".into()));
        }
        let m = self.field.m;
        let mut ord = BigUint::from(self.field.p).pow(m as u32) - BigUint::one();
        let primes = intutil::prime_divisors_of_pow_minus_1(self.field.p, m)?;
        for q in primes {
            loop {
                let (quot, rem) = num_integer::Integer::div_rem(&ord, &q);
                if rem != BigUint::from(0u32) {
                    break;
                }
                if self.pow_big(&quot).is_one() {
                    ord = quot;
                } else {
                    break;
                }
            }
        }
        Ok(ord)
    }
}

/// Lexicographic comparison by coefficient tuple (c_0, …, c_{m−1}).
pub fn lex_le(a: &FqElem, b: &FqElem) -> bool {
    a.c <= b.c
}

pub fn lex_cmp(a: &FqElem, b: &FqElem) -> std::cmp::Ordering {
    a.c.cmp(&b.c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> Arc<FqField> {
        FqField::new(3, 2).unwrap()
    }

    #[test]
    fn deterministic_moduli() {
        assert_eq!(FqField::new(3, 1).unwrap().modulus, vec![0, 1]);
        assert_eq!(FqField::new(2, 2).unwrap().modulus, vec![1, 1, 1]);
        assert_eq!(FqField::new(3, 2).unwrap().modulus, vec![1, 0, 1]);
        // repeated calls identical
        assert_eq!(FqField::new(5, 3).unwrap().modulus, FqField::new(5, 3).unwrap().modulus);
        assert!(FqField::new(4, 2).is_err()); // 4 not prime
    }

    #[test]
    fn f9_arithmetic_frozen() {
        let f = f9();
        let i = f.elem(vec![0, 1]); // root of Y²+1
        let i2 = i.mul(&i);
        assert_eq!(i2, f.from_scalar(2)); // i² = −1
        // Frobenius: i³ = −i = 2i
        assert_eq!(i.frobenius(), f.elem(vec![0, 2]));
        assert_eq!(i.frobenius_pow(1, 1), f.elem(vec![0, 2]));
        // fixed field: x ∈ F_9 under base 9 is fixed for any t
        assert_eq!(i.frobenius_pow(7, 2), i);
        assert_eq!(i.frobenius_pow(0, 1), i);
    }

    #[test]
    fn traces_frozen() {
        let f = f9();
        let one = f.one();
        assert_eq!(one.rel_trace(1, 2).unwrap(), f.from_scalar(2)); // Tr(1) = 2
        let i = f.elem(vec![0, 1]);
        assert!(i.rel_trace(1, 2).unwrap().is_zero()); // i + i³ = 0
        assert_eq!(i.rel_trace(2, 1).unwrap(), i); // Tr_{F_q/F_q} = id
        // domain error: tower too big
        assert!(i.rel_trace(2, 2).is_err());
    }

    #[test]
    fn trace_linearity_and_transitivity() {
        let f = FqField::new(3, 4).unwrap();
        let g = f.multiplicative_generator().unwrap();
        let x = g.clone();
        let y = g.mul(&g).add(&f.from_scalar(2));
        // linearity over F_3
        let lhs = x.add(&y).rel_trace(1, 4).unwrap();
        let rhs = x.rel_trace(1, 4).unwrap().add(&y.rel_trace(1, 4).unwrap());
        assert_eq!(lhs, rhs);
        // transitivity: Tr_{F81/F3} = Tr_{F9/F3} ∘ Tr_{F81/F9}
        let t1 = x.rel_trace(1, 4).unwrap();
        let t2 = x.rel_trace(2, 2).unwrap().rel_trace(1, 2).unwrap();
        assert_eq!(t1, t2);
    }

    #[test]
    fn sqrt_frozen() {
        let f7 = FqField::new(7, 1).unwrap();
        let two = f7.from_scalar(2);
        assert_eq!(two.sqrt().unwrap(), f7.from_scalar(3)); // 3² = 2, 3 < 4
        assert_eq!(f7.one().sqrt().unwrap(), f7.one()); // 1 < 6
        let f3 = FqField::new(3, 1).unwrap();
        assert!(!f3.from_scalar(2).is_square()); // −1 non-square mod 3
        assert!(f3.from_scalar(2).sqrt().is_err());
        // −1 is a square in F_9 with lex-least root i = (0,1)
        let f = f9();
        let m1 = f.from_scalar(2);
        assert!(m1.is_square());
        assert_eq!(m1.sqrt().unwrap(), f.elem(vec![0, 1]));
    }

    #[test]
    fn sqrt_char2() {
        let f4 = FqField::new(2, 2).unwrap();
        let w = f4.elem(vec![0, 1]); // ω, root of Y²+Y+1
        let s = w.sqrt().unwrap();
        assert_eq!(s.mul(&s), w);
        assert_eq!(s, f4.elem(vec![1, 1])); // ω² = ω+1
        for x in f4.subfield_iter(2).unwrap() {
            let s = x.sqrt().unwrap();
            assert_eq!(s.mul(&s), x);
            assert!(x.is_square());
        }
    }

    #[test]
    fn is_square_exhaustive_small_fields() {
        for (p, m) in [(3u64, 2usize), (3, 3), (3, 4), (5, 2), (7, 2)] {
            let f = FqField::new(p, m).unwrap();
            let elems: Vec<FqElem> = f.subfield_iter(m).unwrap().collect();
            let mut squares = std::collections::BTreeSet::new();
            for x in &elems {
                squares.insert(x.mul(x).c.clone());
            }
            for x in &elems {
                assert_eq!(x.is_square(), squares.contains(&x.c), "p={} m={} x={:?}", p, m, x.c);
                if x.is_square() {
                    let r = x.sqrt().unwrap();
                    assert_eq!(r.mul(&r), *x);
                    // deterministic branch: lex-min of the two roots
                    assert!(lex_le(&r, &r.neg()));
                }
            }
        }
    }

    #[test]
    fn generators_frozen() {
        let f7 = FqField::new(7, 1).unwrap();
        assert_eq!(f7.multiplicative_generator().unwrap(), f7.from_scalar(3));
        let f2 = FqField::new(2, 1).unwrap();
        assert_eq!(f2.multiplicative_generator().unwrap(), f2.one());
        let f = f9();
        let g = f.multiplicative_generator().unwrap();
        assert_eq!(g, f.elem(vec![1, 1])); // 1+i has order 8
        // verify order by exponentiation
        let mut cur = g.clone();
        for _ in 1..8 {
            assert!(!cur.is_one());
            cur = cur.mul(&g);
        }
        assert!(cur.is_one());
    }

    #[test]
    fn subfield_structure() {
        let f = FqField::new(3, 4).unwrap();
        let basis = f.subfield_basis(2).unwrap();
        assert_eq!(basis.len(), 2);
        for b in basis.iter() {
            let x = f.elem(b.clone());
            assert_eq!(x.frobenius_pexp(2), x); // fixed by Frob²
        }
        // subfield generator of the F_9 inside F_81 has order 8
        let g = f.subfield_generator(2).unwrap();
        assert!(g.in_subfield(2));
        assert_eq!(g.mult_order().unwrap(), BigUint::from(8u32));
        // the full multiplicative generator has order 80
        let g4 = f.multiplicative_generator().unwrap();
        assert_eq!(g4.mult_order().unwrap(), BigUint::from(80u32));
        // is_square at subfield level: 2 is a non-square in F_3, a square in F_9
        let two = f.from_scalar(2);
        assert!(!two.is_square_in_subfield(1).unwrap());
        assert!(two.is_square_in_subfield(2).unwrap());
    }

    #[test]
    fn inverse_and_pow() {
        let f = FqField::new(7, 3).unwrap();
        let g = f.multiplicative_generator().unwrap();
        let gi = g.inv().unwrap();
        assert!(g.mul(&gi).is_one());
        assert!(f.zero().inv().is_err());
        // Fermat: g^{7³−1} = 1
        assert!(g.pow(342).is_one());
        assert!(g.pow_big(&BigUint::from(342u32)).is_one());
    }
}
