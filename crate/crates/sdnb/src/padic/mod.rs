//! p-adic scalar arithmetic with explicit precision tracking.
//!
//! [`LocalBase`] presents an unramified extension K of Q_p as Z_p[y]/(m(y))
//! with m a lift of the lexicographically least irreducible polynomial over
//! F_p, so the presentation is canonical and reproducible across processes.
//! [`BaseElem`] stores elements as p^off · Σ cᵢ yⁱ where every coordinate is
//! known modulo p^prec; all operations propagate precision pessimistically
//! (minimum rule for addition and multiplication, exactness for division by
//! powers of p and inversion of units).
//!
//! A coordinate vector is kept *primitive* — at least one coordinate is a
//! p-adic unit — or all zero ("zeroish": indistinguishable from zero at the
//! recorded precision). Because y generates an unramified extension, an
//! element is a unit exactly when its vector is primitive, so structural
//! valuations are exact and only zeroish elements have unknown valuation.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ff::{same_field, FqElem, FqField};

pub mod galg;
pub mod lubin;
pub mod ring;

/// An unramified coefficient ring O_K = Z_p[y]/(m(y)) at a fixed working
/// precision of `w` base-p digits.
pub struct LocalBase {
    pub p: u64,
    /// Degree of K over Q_p.
    pub n: usize,
    /// Working precision in base-p digits: fresh elements carry this many.
    pub w: usize,
    /// Cache precision (w + 32): structural constants are stored to this
    /// bound so internal routines may use guard digits.
    pub wmax: usize,
    /// Monic modulus, lifted digitwise from the residue field presentation
    /// (length n+1, coefficients in 0..p).
    pub modulus: Vec<u64>,
    pub resfield: Arc<FqField>,
    ppow: Vec<BigUint>,
    /// -m_i mod p^wmax for i < n, used when reducing y^n.
    neg_m: Vec<BigUint>,
    frob: OnceLock<Vec<Vec<BigUint>>>,
}

impl fmt::Debug for LocalBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalBase(p={}, n={}, w={})", self.p, self.n, self.w)
    }
}

/// Structural identity of coefficient rings (precision settings may differ,
/// so runs at different working precisions remain comparable).
pub fn same_base(a: &Arc<LocalBase>, b: &Arc<LocalBase>) -> bool {
    Arc::ptr_eq(a, b) || (a.p == b.p && a.n == b.n && a.modulus == b.modulus)
}

impl LocalBase {
    pub fn new(p: u64, n: usize, w: usize) -> Result<Arc<LocalBase>> {
        let resfield = FqField::new(p, n)?;
        Self::build(resfield, w)
    }

    /// Build with an explicit residue-field modulus (validated for monicity
    /// and irreducibility); used when reconstructing from a certificate.
    pub fn with_modulus(p: u64, modulus: Vec<u64>, w: usize) -> Result<Arc<LocalBase>> {
        let resfield = FqField::with_modulus(p, modulus)?;
        Self::build(resfield, w)
    }

    fn build(resfield: Arc<FqField>, w: usize) -> Result<Arc<LocalBase>> {
        let p = resfield.p;
        let n = resfield.m;
        if p == 2 {
            return Err(Error::Parameter(
                "local constructions require an odd residue characteristic".into(),
            ));
        }
        if w == 0 {
            return Err(Error::Parameter("working precision must be positive".into()));
        }
        if w > 100_000 {
            return Err(Error::Parameter("working precision is unreasonably large".into()));
        }
        let wmax = w + 32;
        let pbig = BigUint::from(p);
        let mut ppow = Vec::with_capacity(wmax + 1);
        ppow.push(BigUint::one());
        for i in 1..=wmax {
            let prev = ppow[i - 1].clone();
            ppow.push(prev * &pbig);
        }
        let modulus = resfield.modulus.clone();
        let neg_m: Vec<BigUint> = (0..n)
            .map(|i| (&ppow[wmax] - BigUint::from(modulus[i])) % &ppow[wmax])
            .collect();
        Ok(Arc::new(LocalBase {
            p,
            n,
            w,
            wmax,
            modulus,
            resfield,
            ppow,
            neg_m,
            frob: OnceLock::new(),
        }))
    }

    /// p^k (k ≤ wmax).
    pub(crate) fn pp(&self, k: usize) -> &BigUint {
        &self.ppow[k]
    }

    // ---- element constructors -------------------------------------------

    /// Zero, known to `w` digits of absolute precision.
    pub fn zero(self: &Arc<Self>) -> BaseElem {
        BaseElem {
            base: self.clone(),
            c: vec![BigUint::zero(); self.n],
            off: self.w as i64,
            prec: 0,
        }
    }

    pub fn one(self: &Arc<Self>) -> BaseElem {
        self.from_u64(1)
    }

    /// Exact small integer, carrying `w` digits on its unit part.
    pub fn from_u64(self: &Arc<Self>, v: u64) -> BaseElem {
        self.from_u64_at(v, self.w)
    }

    pub(crate) fn from_u64_at(self: &Arc<Self>, v: u64, prec: usize) -> BaseElem {
        if v == 0 {
            return BaseElem {
                base: self.clone(),
                c: vec![BigUint::zero(); self.n],
                off: prec as i64,
                prec: 0,
            };
        }
        let mut u = v;
        let mut off = 0i64;
        while u % self.p == 0 {
            u /= self.p;
            off += 1;
        }
        let mut c = vec![BigUint::zero(); self.n];
        c[0] = BigUint::from(u) % self.pp(prec);
        normalize(self, c, off, prec)
    }

    pub fn from_i64(self: &Arc<Self>, v: i64) -> BaseElem {
        if v >= 0 {
            self.from_u64(v as u64)
        } else {
            self.from_u64(v.unsigned_abs()).neg()
        }
    }

    /// Exact digitwise lift of a residue-field element, at `w` digits.
    pub fn lift(self: &Arc<Self>, c: &FqElem) -> BaseElem {
        self.lift_at(c, self.w)
    }

    pub(crate) fn lift_at(self: &Arc<Self>, c: &FqElem, prec: usize) -> BaseElem {
        assert!(same_field(&c.field, &self.resfield), "residue from a different field");
        let digits: Vec<BigUint> = c.c.iter().map(|&x| BigUint::from(x)).collect();
        normalize(self, digits, 0, prec)
    }

    /// The generator y of the coefficient ring.
    pub fn gen_elem(self: &Arc<Self>) -> BaseElem {
        self.lift(&self.resfield.gen_elem())
    }

    /// Reconstruct an element from its serialized form: base-p digit lists
    /// (one per coordinate, low-to-high) and a valuation offset.
    pub fn from_digit_lists(
        self: &Arc<Self>,
        digits: &[Vec<u64>],
        off: i64,
        prec: usize,
    ) -> Result<BaseElem> {
        if digits.len() != self.n {
            return Err(Error::Malformed(format!(
                "expected {} coordinate digit lists, found {}",
                self.n,
                digits.len()
            )));
        }
        if prec > self.wmax {
            return Err(Error::Malformed("recorded precision exceeds the ring's bound".into()));
        }
        let mut c = Vec::with_capacity(self.n);
        for list in digits {
            if list.len() > prec {
                return Err(Error::Malformed("digit list longer than recorded precision".into()));
            }
            let mut v = BigUint::zero();
            for &d in list.iter().rev() {
                if d >= self.p {
                    return Err(Error::Malformed("digit out of range for base p".into()));
                }
                v = v * self.p + BigUint::from(d);
            }
            c.push(v);
        }
        Ok(normalize(self, c, off, prec))
    }

    // ---- Teichmüller lifts ----------------------------------------------

    /// The Teichmüller representative of a residue-field element: the unique
    /// lift fixed by x ↦ x^q, computed by iterated q-th powering.
    pub fn teichmuller(self: &Arc<Self>, c: &FqElem) -> BaseElem {
        self.teichmuller_at(c, self.w)
    }

    pub(crate) fn teichmuller_at(self: &Arc<Self>, c: &FqElem, prec: usize) -> BaseElem {
        assert!(same_field(&c.field, &self.resfield), "residue from a different field");
        if c.is_zero() {
            return BaseElem {
                base: self.clone(),
                c: vec![BigUint::zero(); self.n],
                off: prec as i64,
                prec: 0,
            };
        }
        let q = (self.p as u128)
            .checked_pow(self.n as u32)
            .expect("residue field too large for Teichmüller powering");
        let mut x = self.lift_at(c, prec);
        for _ in 0..prec + 2 {
            let nx = x.pow_u128(q);
            if nx.c == x.c && nx.off == x.off {
                return x;
            }
            x = nx;
        }
        unreachable!("Teichmüller iteration failed to stabilize at the working precision");
    }

    // ---- Frobenius lift ---------------------------------------------------

    /// Coordinate matrix (columns = images of y^i) of the canonical lift of
    /// the p-power Frobenius, computed once at cache precision.
    fn frob_matrix(self: &Arc<Self>) -> &Vec<Vec<BigUint>> {
        self.frob.get_or_init(|| {
            if self.n == 1 {
                return vec![vec![BigUint::one()]];
            }
            let prec = self.wmax;
            let m: Vec<BaseElem> = self
                .modulus
                .iter()
                .map(|&mi| self.from_u64_at(mi, prec))
                .collect();
            let y = self.lift_at(&self.resfield.gen_elem(), prec);
            let x0 = y.pow_u128(self.p as u128);
            let root = hensel_root(&m, &x0)
                .expect("Frobenius lift: Newton iteration on a separable modulus cannot fail");
            let mut cols = Vec::with_capacity(self.n);
            let mut pw = self.from_u64_at(1, prec);
            for _ in 0..self.n {
                assert_eq!(pw.off, 0, "power of a unit lift must stay integral");
                cols.push(pw.c.clone());
                pw = pw.mul(&root);
            }
            cols
        })
    }
}

/// Canonical form: digits reduced mod p^prec, then either primitive (some
/// coordinate a unit) or all zero with the precision folded into the offset.
pub(crate) fn normalize(
    base: &Arc<LocalBase>,
    mut c: Vec<BigUint>,
    mut off: i64,
    mut prec: usize,
) -> BaseElem {
    let mask = base.pp(prec);
    for x in c.iter_mut() {
        if !x.is_zero() {
            *x %= mask;
        }
    }
    if c.iter().all(|x| x.is_zero()) {
        return BaseElem {
            base: base.clone(),
            c,
            off: off + prec as i64,
            prec: 0,
        };
    }
    let pbig = BigUint::from(base.p);
    while prec > 0 && c.iter().all(|x| (x % &pbig).is_zero()) {
        for x in c.iter_mut() {
            *x /= &pbig;
        }
        off += 1;
        prec -= 1;
    }
    BaseElem { base: base.clone(), c, off, prec }
}

/// An element of O_K ⊗ Q_p: value p^off · Σ cᵢ yⁱ with every coordinate
/// known modulo p^prec.
#[derive(Clone)]
pub struct BaseElem {
    pub base: Arc<LocalBase>,
    pub(crate) c: Vec<BigUint>,
    pub off: i64,
    pub prec: usize,
}

impl fmt::Debug for BaseElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zeroish() {
            write!(f, "O(p^{})", self.absprec())
        } else {
            write!(f, "p^{}·{:?} + O(p^{})", self.off, self.c, self.absprec())
        }
    }
}

impl BaseElem {
    /// Absolute precision: the element is known modulo p^absprec.
    pub fn absprec(&self) -> i64 {
        self.off + self.prec as i64
    }

    /// True when every coordinate is zero at the recorded precision — the
    /// element cannot be distinguished from zero.
    pub fn zeroish(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// Exact valuation. Zeroish elements have no certifiable valuation.
    pub fn valuation(&self) -> Result<i64> {
        if self.zeroish() {
            Err(Error::Precision(format!(
                "valuation undetermined: element is zero to absolute precision {}",
                self.absprec()
            )))
        } else {
            Ok(self.off)
        }
    }

    pub fn add(&self, other: &BaseElem) -> BaseElem {
        assert!(same_base(&self.base, &other.base), "elements from different coefficient rings");
        let target = self.absprec().min(other.absprec());
        let off = self.off.min(other.off);
        let prec = (target - off) as usize;
        let n = self.base.n;
        let mut c = vec![BigUint::zero(); n];
        if prec > 0 {
            let mask = self.base.pp(prec);
            for (src, soff) in [(self, self.off), (other, other.off)] {
                if src.zeroish() {
                    continue;
                }
                let sh = (soff - off) as usize;
                if sh >= prec {
                    continue;
                }
                let shift = self.base.pp(sh);
                for i in 0..n {
                    if !src.c[i].is_zero() {
                        c[i] = (&c[i] + &src.c[i] * shift) % mask;
                    }
                }
            }
        }
        normalize(&self.base, c, off, prec)
    }

    pub fn neg(&self) -> BaseElem {
        if self.zeroish() {
            return self.clone();
        }
        let mask = self.base.pp(self.prec);
        let c: Vec<BigUint> = self
            .c
            .iter()
            .map(|x| if x.is_zero() { BigUint::zero() } else { (mask - x) % mask })
            .collect();
        normalize(&self.base, c, self.off, self.prec)
    }

    pub fn sub(&self, other: &BaseElem) -> BaseElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BaseElem) -> BaseElem {
        assert!(same_base(&self.base, &other.base), "elements from different coefficient rings");
        let prec = self.prec.min(other.prec);
        let off = self.off + other.off;
        let n = self.base.n;
        if prec == 0 || self.zeroish() || other.zeroish() {
            return BaseElem {
                base: self.base.clone(),
                c: vec![BigUint::zero(); n],
                off: off + prec as i64,
                prec: 0,
            };
        }
        let mask = self.base.pp(prec);
        let mut acc = vec![BigUint::zero(); 2 * n - 1];
        for i in 0..n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if other.c[j].is_zero() {
                    continue;
                }
                acc[i + j] = (&acc[i + j] + &self.c[i] * &other.c[j]) % mask;
            }
        }
        reduce_y(&self.base, &mut acc, mask);
        acc.truncate(n);
        normalize(&self.base, acc, off, prec)
    }

    /// Multiply by an exact power of p (no precision loss).
    pub fn scale_p(&self, k: i64) -> BaseElem {
        let mut r = self.clone();
        r.off += k;
        r
    }

    /// Invert a unit-times-p-power. Precision is preserved: the inverse of
    /// an element known mod p^(off+prec) is determined to the same relative
    /// precision.
    pub fn inv(&self) -> Result<BaseElem> {
        if self.zeroish() {
            return Err(Error::Precision(format!(
                "cannot invert an element that is zero to absolute precision {}",
                self.absprec()
            )));
        }
        let unit = BaseElem {
            base: self.base.clone(),
            c: self.c.clone(),
            off: 0,
            prec: self.prec,
        };
        let rbar = unit.residue()?;
        let z0 = rbar.inv()?;
        let mut z = self.base.lift_at(&z0, self.prec);
        let two = self.base.from_u64_at(2, self.prec);
        let mut rounds = 0usize;
        let mut gain = 1usize;
        while gain < self.prec {
            gain *= 2;
            rounds += 1;
        }
        for _ in 0..rounds + 1 {
            z = z.mul(&two.sub(&unit.mul(&z)));
        }
        let check = unit.mul(&z);
        assert!(
            check.off == 0 && check.c[0].is_one() && check.c[1..].iter().all(|x| x.is_zero()),
            "unit inversion failed to converge"
        );
        z.off = -self.off;
        Ok(z)
    }

    pub fn pow_u128(&self, mut e: u128) -> BaseElem {
        let mut acc = self.base.from_u64_at(1, self.prec.max(1));
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Image in the residue field. Integral zeroish elements map to zero;
    /// elements with negative structural valuation are not integral.
    pub fn residue(&self) -> Result<FqElem> {
        if self.zeroish() {
            return if self.absprec() >= 1 {
                Ok(self.base.resfield.zero())
            } else {
                Err(Error::Precision(
                    "residue undetermined: absolute precision below one digit".into(),
                ))
            };
        }
        if self.off < 0 {
            return Err(Error::Domain("residue of a non-integral element".into()));
        }
        if self.off > 0 {
            return Ok(self.base.resfield.zero());
        }
        let pbig = BigUint::from(self.base.p);
        let digits: Vec<u64> = self
            .c
            .iter()
            .map(|x| {
                let r = x % &pbig;
                r.iter_u64_digits().next().unwrap_or(0)
            })
            .collect();
        Ok(self.base.resfield.elem(digits))
    }

    /// Apply the canonical p-power Frobenius lift k times (exact isometry).
    pub fn frob(&self, k: usize) -> BaseElem {
        let n = self.base.n;
        let k = k % n;
        if k == 0 || self.zeroish() {
            return self.clone();
        }
        let m = self.base.frob_matrix();
        let mask = self.base.pp(self.prec);
        let mut c = self.c.clone();
        for _ in 0..k {
            let mut nc = vec![BigUint::zero(); n];
            for (i, ci) in c.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !m[i][j].is_zero() {
                        nc[j] = (&nc[j] + ci * &m[i][j]) % mask;
                    }
                }
            }
            c = nc;
        }
        normalize(&self.base, c, self.off, self.prec)
    }

    /// Base-p digit lists per coordinate (low-to-high, padded to prec), for
    /// serialization.
    pub fn digit_lists(&self) -> Vec<Vec<u64>> {
        let pbig = BigUint::from(self.base.p);
        self.c
            .iter()
            .map(|x| {
                let mut v = x.clone();
                let mut out = Vec::with_capacity(self.prec);
                for _ in 0..self.prec {
                    let d = &v % &pbig;
                    out.push(d.iter_u64_digits().next().unwrap_or(0));
                    v /= &pbig;
                }
                out
            })
            .collect()
    }
}

/// Equality at the shared precision: the difference is indistinguishable
/// from zero.
impl PartialEq for BaseElem {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).zeroish()
    }
}

/// Reduce a y-polynomial of degree < 2n-1 modulo the base modulus, in place
/// (entries mod `mask`).
pub(crate) fn reduce_y(base: &Arc<LocalBase>, acc: &mut [BigUint], mask: &BigUint) {
    let n = base.n;
    for k in (n..acc.len()).rev() {
        if acc[k].is_zero() {
            continue;
        }
        let t = std::mem::replace(&mut acc[k], BigUint::zero());
        for i in 0..n {
            if !base.neg_m[i].is_zero() {
                acc[k - n + i] = (&acc[k - n + i] + &t * (&base.neg_m[i] % mask)) % mask;
            }
        }
    }
}

/// Evaluate a polynomial (coefficients low-to-high) at x, by Horner.
pub fn eval_poly(h: &[BaseElem], x: &BaseElem) -> BaseElem {
    let mut acc = h.last().expect("empty polynomial").clone();
    for c in h.iter().rev().skip(1) {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Newton's method for a root of h near x0, under the Hensel criterion
/// v(h(x0)) > 2·v(h'(x0)). The returned root satisfies h(root) = 0 to the
/// full working precision of the inputs.
pub fn hensel_root(h: &[BaseElem], x0: &BaseElem) -> Result<BaseElem> {
    let dh: Vec<BaseElem> = h
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul(&c.base.from_u64_at(i as u64, c.prec.max(1))))
        .collect();
    let mut x = x0.clone();
    let mut first = true;
    for _ in 0..200 {
        let hx = eval_poly(h, &x);
        let dhx = eval_poly(&dh, &x);
        let vd = dhx.valuation().map_err(|_| {
            Error::Domain("Newton iteration stalled: derivative is zero at the working precision".into())
        })?;
        if first {
            let vh_bound = match hx.valuation() {
                Ok(v) => v,
                Err(_) => hx.absprec(),
            };
            if vh_bound <= 2 * vd {
                return Err(Error::Domain(format!(
                    "Hensel criterion fails: v(h(x0)) = {} is not greater than 2·v(h'(x0)) = {}",
                    vh_bound,
                    2 * vd
                )));
            }
            first = false;
        }
        if hx.zeroish() {
            return Ok(x);
        }
        x = x.sub(&hx.mul(&dhx.inv()?));
    }
    Err(Error::Internal("Newton iteration failed to converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(p: u64, w: usize) -> Arc<LocalBase> {
        LocalBase::new(p, 1, w).unwrap()
    }

    #[test]
    fn teichmuller_of_two_in_z3_is_minus_one() {
        let b = zp(3, 48);
        let two = b.resfield.from_scalar(2);
        let t = b.teichmuller(&two);
        assert_eq!(t, b.from_i64(-1));
        assert_eq!(t.residue().unwrap(), two);
    }

    #[test]
    fn teichmuller_in_z7_sixth_roots() {
        let b = zp(7, 48);
        let om = b.teichmuller(&b.resfield.from_scalar(2));
        assert_eq!(om.residue().unwrap(), b.resfield.from_scalar(2));
        assert_eq!(om.pow_u128(6), b.one());
        // multiplicativity: ω(2)·ω(3) = ω(6)
        let om3 = b.teichmuller(&b.resfield.from_scalar(3));
        let om6 = b.teichmuller(&b.resfield.from_scalar(6));
        assert_eq!(om.mul(&om3), om6);
    }

    #[test]
    fn teichmuller_multiplicative_in_z9() {
        let b = LocalBase::new(3, 2, 24).unwrap();
        let els: Vec<FqElem> = b.resfield.subfield_iter(2).unwrap().collect();
        for a in &els {
            for x in &els {
                let lhs = b.teichmuller(a).mul(&b.teichmuller(x));
                let rhs = b.teichmuller(&a.mul(x));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn hensel_root_of_y_squared_minus_four_near_one() {
        // over Z_3 the branch through x0 = 1 converges to -2 (≡ 1 mod 3)
        let b = zp(3, 48);
        let h = vec![b.from_i64(-4), b.zero(), b.one()];
        let r = hensel_root(&h, &b.one()).unwrap();
        assert_eq!(r, b.from_i64(-2));
    }

    #[test]
    fn hensel_criterion_failure_is_domain_error() {
        // at x0 = 0 the derivative vanishes: no certified convergence
        let b = zp(3, 48);
        let h = vec![b.from_i64(-4), b.zero(), b.one()];
        match hensel_root(&h, &b.zero()) {
            Err(Error::Domain(_)) => {}
            other => panic!("expected Domain error, got {other:?}"),
        }
    }

    #[test]
    fn valuation_and_zeroish() {
        let b = zp(3, 48);
        assert_eq!(b.from_u64(6).valuation().unwrap(), 1);
        assert_eq!(b.from_u64(5).valuation().unwrap(), 0);
        let d = b.from_u64(7).sub(&b.from_u64(7));
        assert!(d.zeroish());
        match d.valuation() {
            Err(Error::Precision(_)) => {}
            other => panic!("expected Precision error, got {other:?}"),
        }
    }

    #[test]
    fn precision_rules() {
        let b = zp(3, 8);
        let a = b.from_u64(2); // off 0, prec 8
        let x = b.from_u64(9); // off 2, prec 8 → absprec 10
        assert_eq!(a.add(&x).absprec(), 8); // min rule
        let m = a.mul(&x);
        assert_eq!(m.off, 2);
        assert_eq!(m.prec, 8);
        // division by p is exact
        let d = x.scale_p(-2);
        assert_eq!(d, b.one());
        assert_eq!(d.absprec(), 8);
    }

    #[test]
    fn inversion_preserves_precision_and_verifies() {
        let b = zp(3, 48);
        let a = b.from_u64(2);
        let ai = a.inv().unwrap();
        assert_eq!(a.mul(&ai), b.one());
        assert_eq!(ai.prec, 48);
        // inverse of p has valuation -1 and residue is rejected
        let pi = b.from_u64(3).inv().unwrap();
        assert_eq!(pi.valuation().unwrap(), -1);
        assert!(matches!(pi.residue(), Err(Error::Domain(_))));
        assert_eq!(pi.mul(&b.from_u64(3)), b.one());
        // inverting zeroish is a precision error
        let z = a.sub(&a);
        assert!(matches!(z.inv(), Err(Error::Precision(_))));
    }

    #[test]
    fn residues() {
        let b = zp(3, 48);
        assert_eq!(b.from_u64(5).residue().unwrap(), b.resfield.from_scalar(2));
        assert_eq!(b.from_u64(6).residue().unwrap(), b.resfield.zero());
        assert!(b.zero().residue().unwrap().is_zero());
    }

    #[test]
    fn frobenius_lift_in_z9() {
        let b = LocalBase::new(3, 2, 32).unwrap();
        let y = b.gen_elem();
        let fy = y.frob(1);
        // reduces to the residue Frobenius
        assert_eq!(fy.residue().unwrap(), b.resfield.gen_elem().frobenius());
        // order two, fixes Z_3, and is a ring map
        assert_eq!(fy.frob(1), y);
        assert_eq!(b.from_u64(5).frob(1), b.from_u64(5));
        let a = b.from_u64(7).add(&y.mul(&y));
        assert_eq!(a.frob(1).mul(&fy), a.mul(&y).frob(1));
        assert_eq!(a.frob(1).add(&fy), a.add(&y).frob(1));
        // the lifted image still satisfies the modulus
        let m: Vec<BaseElem> = b.modulus.iter().map(|&mi| b.from_u64(mi)).collect();
        assert!(eval_poly(&m, &fy).zeroish());
        // trace and norm via conjugate sums/products are Galois-stable
        let tr = a.add(&a.frob(1));
        assert_eq!(tr.frob(1), tr);
        let nm = a.mul(&a.frob(1));
        assert_eq!(nm.frob(1), nm);
    }

    #[test]
    fn digits_agree_across_working_precisions() {
        // the same computation at w=8 and w=20 agrees on the first 8 digits
        let b8 = zp(3, 8);
        let b20 = zp(3, 20);
        let f = |b: &Arc<LocalBase>| {
            b.from_u64(2)
                .inv()
                .unwrap()
                .mul(&b.from_u64(7))
                .add(&b.from_u64(5).inv().unwrap())
        };
        let x8 = f(&b8);
        let x20 = f(&b20);
        assert_eq!(x8.off, x20.off);
        let d8 = x8.digit_lists();
        let d20 = x20.digit_lists();
        assert_eq!(d8[0][..8], d20[0][..8]);
    }

    #[test]
    fn serialization_roundtrip() {
        let b = LocalBase::new(7, 2, 16).unwrap();
        let x = b.gen_elem().mul(&b.from_u64(30)).add(&b.from_u64(4).inv().unwrap());
        let lists = x.digit_lists();
        let back = b.from_digit_lists(&lists, x.off, x.prec).unwrap();
        assert_eq!(back.c, x.c);
        assert_eq!(back.off, x.off);
        // malformed digit rejected
        let mut bad = lists.clone();
        bad[0][0] = 7;
        assert!(matches!(b.from_digit_lists(&bad, x.off, x.prec), Err(Error::Malformed(_))));
    }

    #[test]
    fn p_two_rejected() {
        assert!(matches!(LocalBase::new(2, 1, 8), Err(Error::Parameter(_))));
    }
}
