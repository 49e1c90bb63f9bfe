//! Ramified-layer arithmetic: L = K[t]/(g(t)) for a monic Eisenstein
//! polynomial g over an unramified base K, in flat power-basis coordinates.
//!
//! A [`LocalElem`] stores p^off · Σ_b (Σ_i c[b·n+i] yⁱ) t^b with all digits
//! known mod p^prec. Valuations are in uniformizer units of L, where
//! v_L(p) = e and v_L(t) = 1; they are exact for any element that is not
//! indistinguishable from zero. The Eisenstein coefficients are rational
//! integers — every extension built here (Kummer t^d + p, Lubin–Tate
//! division polynomials, compositum presentations) has an integral model —
//! which keeps the reduction rows exact at full cache precision.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::{hensel_root, reduce_y, same_base, BaseElem, LocalBase};

pub struct LocalRing {
    pub base: Arc<LocalBase>,
    /// Ramification index: t-degree of the ring over the base (1 = the base
    /// itself, no Eisenstein part).
    pub e: usize,
    /// Monic Eisenstein polynomial, low-to-high, length e+1; None iff e = 1.
    pub eis: Option<Vec<i64>>,
    /// (−g_j) mod p^wmax for j < e; empty when e = 1.
    neg_g: Vec<BigUint>,
}

impl fmt::Debug for LocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalRing(p={}, n={}, e={})", self.base.p, self.base.n, self.e)
    }
}

pub fn same_ring(a: &Arc<LocalRing>, b: &Arc<LocalRing>) -> bool {
    Arc::ptr_eq(a, b) || (same_base(&a.base, &b.base) && a.e == b.e && a.eis == b.eis)
}

impl LocalRing {
    pub fn new(base: &Arc<LocalBase>, e: usize, eis: Option<Vec<i64>>) -> Result<Arc<LocalRing>> {
        if e == 0 {
            return Err(Error::Parameter("ramification index must be positive".into()));
        }
        if e == 1 {
            if eis.is_some() {
                return Err(Error::Domain(
                    "a degree-1 layer takes no Eisenstein polynomial".into(),
                ));
            }
            return Ok(Arc::new(LocalRing {
                base: base.clone(),
                e: 1,
                eis: None,
                neg_g: Vec::new(),
            }));
        }
        let g = eis.ok_or_else(|| {
            Error::Domain("a ramified layer requires an Eisenstein polynomial".into())
        })?;
        if g.len() != e + 1 {
            return Err(Error::Domain(format!(
                "Eisenstein polynomial must have degree {} (got {} coefficients)",
                e,
                g.len()
            )));
        }
        if g[e] != 1 {
            return Err(Error::Domain("Eisenstein polynomial must be monic".into()));
        }
        let p = base.p as i64;
        for (i, &c) in g.iter().enumerate().take(e) {
            if c % p != 0 {
                return Err(Error::Domain(format!(
                    "not Eisenstein: coefficient of t^{i} is a unit"
                )));
            }
        }
        if g[0] == 0 || (g[0] / p) % p == 0 {
            return Err(Error::Domain(
                "not Eisenstein: constant term must have valuation exactly one".into(),
            ));
        }
        let big = base.pp(base.wmax).clone();
        let neg_g: Vec<BigUint> = g
            .iter()
            .take(e)
            .map(|&c| {
                // (−c) mod p^wmax
                if c == 0 {
                    BigUint::zero()
                } else if c < 0 {
                    BigUint::from(c.unsigned_abs()) % &big
                } else {
                    (&big - BigUint::from(c as u64) % &big) % &big
                }
            })
            .collect();
        Ok(Arc::new(LocalRing { base: base.clone(), e, eis: Some(g), neg_g }))
    }

    fn dim(&self) -> usize {
        self.e * self.base.n
    }

    pub fn zero(self: &Arc<Self>) -> LocalElem {
        LocalElem {
            ring: self.clone(),
            c: vec![BigUint::zero(); self.dim()],
            off: self.base.w as i64,
            prec: 0,
        }
    }

    pub fn one(self: &Arc<Self>) -> LocalElem {
        self.from_base(&self.base.one())
    }

    pub fn from_u64(self: &Arc<Self>, v: u64) -> LocalElem {
        self.from_base(&self.base.from_u64(v))
    }

    pub fn from_i64(self: &Arc<Self>, v: i64) -> LocalElem {
        self.from_base(&self.base.from_i64(v))
    }

    /// Inject a base element into the t^0 slice.
    pub fn from_base(self: &Arc<Self>, b: &BaseElem) -> LocalElem {
        assert!(same_base(&b.base, &self.base), "scalar from a different base ring");
        let n = self.base.n;
        let mut c = vec![BigUint::zero(); self.dim()];
        c[..n].clone_from_slice(&b.c);
        normalize_ring(self, c, b.off, b.prec)
    }

    /// The uniformizer t (requires e > 1).
    pub fn gen_t(self: &Arc<Self>) -> LocalElem {
        assert!(self.e > 1, "degree-1 layer has no Eisenstein uniformizer");
        let mut c = vec![BigUint::zero(); self.dim()];
        c[self.base.n] = BigUint::one();
        normalize_ring(self, c, 0, self.base.w)
    }

    /// Exact integer scalar mod p^prec, injected at t^0·y^0.
    pub(crate) fn scalar_digits(self: &Arc<Self>, v: BigUint, prec: usize) -> LocalElem {
        let mut c = vec![BigUint::zero(); self.dim()];
        c[0] = v;
        normalize_ring(self, c, 0, prec)
    }

    /// Assemble from per-slice base elements (low t-degree first).
    pub fn from_base_slices(self: &Arc<Self>, slices: &[BaseElem]) -> LocalElem {
        assert_eq!(slices.len(), self.e, "need one coefficient per power of t");
        let n = self.base.n;
        let target = slices.iter().map(|s| s.absprec()).min().unwrap();
        let off = slices.iter().map(|s| s.off).min().unwrap();
        let prec = (target - off) as usize;
        let mut c = vec![BigUint::zero(); self.dim()];
        if prec > 0 {
            let mask = self.base.pp(prec);
            for (b, s) in slices.iter().enumerate() {
                if s.zeroish() {
                    continue;
                }
                let sh = (s.off - off) as usize;
                if sh >= prec {
                    continue;
                }
                let shift = self.base.pp(sh);
                for i in 0..n {
                    if !s.c[i].is_zero() {
                        c[b * n + i] = (&s.c[i] * shift) % mask;
                    }
                }
            }
        }
        normalize_ring(self, c, off, prec)
    }

    /// Reconstruct an element from serialized digit lists (e·n coordinate
    /// lists, base-p low-to-high) and a valuation offset.
    pub fn from_digit_lists(
        self: &Arc<Self>,
        digits: &[Vec<u64>],
        off: i64,
        prec: usize,
    ) -> Result<LocalElem> {
        if digits.len() != self.dim() {
            return Err(Error::Malformed(format!(
                "expected {} coordinate digit lists, found {}",
                self.dim(),
                digits.len()
            )));
        }
        if prec > self.base.wmax {
            return Err(Error::Malformed("recorded precision exceeds the ring's bound".into()));
        }
        let mut c = Vec::with_capacity(self.dim());
        for list in digits {
            if list.len() > prec {
                return Err(Error::Malformed("digit list longer than recorded precision".into()));
            }
            let mut v = BigUint::zero();
            for &d in list.iter().rev() {
                if d >= self.base.p {
                    return Err(Error::Malformed("digit out of range for base p".into()));
                }
                v = v * self.base.p + BigUint::from(d);
            }
            c.push(v);
        }
        Ok(normalize_ring(self, c, off, prec))
    }
}

fn normalize_ring(ring: &Arc<LocalRing>, mut c: Vec<BigUint>, mut off: i64, mut prec: usize) -> LocalElem {
    let mask = ring.base.pp(prec);
    for x in c.iter_mut() {
        if !x.is_zero() {
            *x %= mask;
        }
    }
    if c.iter().all(|x| x.is_zero()) {
        return LocalElem {
            ring: ring.clone(),
            c,
            off: off + prec as i64,
            prec: 0,
        };
    }
    let pbig = BigUint::from(ring.base.p);
    while prec > 0 && c.iter().all(|x| (x % &pbig).is_zero()) {
        for x in c.iter_mut() {
            *x /= &pbig;
        }
        off += 1;
        prec -= 1;
    }
    LocalElem { ring: ring.clone(), c, off, prec }
}

/// An element of L ⊗ Q_p in flat coordinates (slice b = coefficient of t^b).
#[derive(Clone)]
pub struct LocalElem {
    pub ring: Arc<LocalRing>,
    pub(crate) c: Vec<BigUint>,
    pub off: i64,
    pub prec: usize,
}

impl fmt::Debug for LocalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zeroish() {
            write!(f, "O(π^{})", self.absprec_vl())
        } else {
            write!(f, "p^{}·{:?} + O(π^{})", self.off, self.c, self.absprec_vl())
        }
    }
}

impl LocalElem {
    pub fn zeroish(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// Absolute precision in uniformizer units of L: the element is known
    /// modulo π^absprec_vl.
    pub fn absprec_vl(&self) -> i64 {
        self.ring.e as i64 * (self.off + self.prec as i64)
    }

    /// Exact valuation in uniformizer units: min over nonzero slices b of
    /// e·(off + v_p(content_b)) + b. Any all-zero slice's bound is strictly
    /// larger than every nonzero slice's exact value, so the minimum over
    /// nonzero slices is exact.
    pub fn valuation(&self) -> Result<i64> {
        if self.zeroish() {
            return Err(Error::Precision(format!(
                "valuation undetermined: element is zero to absolute precision π^{}",
                self.absprec_vl()
            )));
        }
        let n = self.ring.base.n;
        let e = self.ring.e as i64;
        let p = self.ring.base.p;
        let mut best: Option<i64> = None;
        for b in 0..self.ring.e {
            let slice = &self.c[b * n..(b + 1) * n];
            if slice.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut content = u32::MAX;
            for x in slice {
                if x.is_zero() {
                    continue;
                }
                let mut v = 0u32;
                let mut t = x.clone();
                while (&t % p).is_zero() {
                    t /= p;
                    v += 1;
                }
                content = content.min(v);
                if content == 0 {
                    break;
                }
            }
            let val = e * (self.off + content as i64) + b as i64;
            best = Some(best.map_or(val, |cur: i64| cur.min(val)));
        }
        Ok(best.unwrap())
    }

    pub fn add(&self, other: &LocalElem) -> LocalElem {
        assert!(same_ring(&self.ring, &other.ring), "elements from different rings");
        let target = (self.off + self.prec as i64).min(other.off + other.prec as i64);
        let off = self.off.min(other.off);
        let prec = (target - off) as usize;
        let dim = self.ring.dim();
        let mut c = vec![BigUint::zero(); dim];
        if prec > 0 {
            let mask = self.ring.base.pp(prec);
            for src in [self, other] {
                if src.zeroish() {
                    continue;
                }
                let sh = (src.off - off) as usize;
                if sh >= prec {
                    continue;
                }
                let shift = self.ring.base.pp(sh);
                for i in 0..dim {
                    if !src.c[i].is_zero() {
                        c[i] = (&c[i] + &src.c[i] * shift) % mask;
                    }
                }
            }
        }
        normalize_ring(&self.ring, c, off, prec)
    }

    pub fn neg(&self) -> LocalElem {
        if self.zeroish() {
            return self.clone();
        }
        let mask = self.ring.base.pp(self.prec);
        let c: Vec<BigUint> = self
            .c
            .iter()
            .map(|x| if x.is_zero() { BigUint::zero() } else { (mask - x) % mask })
            .collect();
        normalize_ring(&self.ring, c, self.off, self.prec)
    }

    pub fn sub(&self, other: &LocalElem) -> LocalElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LocalElem) -> LocalElem {
        assert!(same_ring(&self.ring, &other.ring), "elements from different rings");
        let prec = self.prec.min(other.prec);
        let off = self.off + other.off;
        let e = self.ring.e;
        let n = self.ring.base.n;
        if prec == 0 || self.zeroish() || other.zeroish() {
            return LocalElem {
                ring: self.ring.clone(),
                c: vec![BigUint::zero(); self.ring.dim()],
                off: off + prec as i64,
                prec: 0,
            };
        }
        let mask = self.ring.base.pp(prec);
        let tlen = 2 * e - 1;
        let ylen = 2 * n - 1;
        // t-slice-major accumulator of y-polynomials of degree ≤ 2n-2
        let mut acc = vec![BigUint::zero(); tlen * ylen];
        for b1 in 0..e {
            for i in 0..n {
                let a = &self.c[b1 * n + i];
                if a.is_zero() {
                    continue;
                }
                for b2 in 0..e {
                    for j in 0..n {
                        let b = &other.c[b2 * n + j];
                        if b.is_zero() {
                            continue;
                        }
                        let idx = (b1 + b2) * ylen + i + j;
                        acc[idx] = (&acc[idx] + a * b) % mask;
                    }
                }
            }
        }
        for k in 0..tlen {
            reduce_y(&self.ring.base, &mut acc[k * ylen..(k + 1) * ylen], mask);
        }
        // reduce t^k for k ≥ e, descending: t^e = Σ_j (−g_j) t^j
        for k in (e..tlen).rev() {
            for i in 0..n {
                let s = std::mem::replace(&mut acc[k * ylen + i], BigUint::zero());
                if s.is_zero() {
                    continue;
                }
                for j in 0..e {
                    if self.ring.neg_g[j].is_zero() {
                        continue;
                    }
                    let idx = (k - e + j) * ylen + i;
                    acc[idx] = (&acc[idx] + &s * (&self.ring.neg_g[j] % mask)) % mask;
                }
            }
        }
        let mut c = Vec::with_capacity(self.ring.dim());
        for b in 0..e {
            for i in 0..n {
                c.push(std::mem::replace(&mut acc[b * ylen + i], BigUint::zero()));
            }
        }
        normalize_ring(&self.ring, c, off, prec)
    }

    /// Multiply by the uniformizer t (structural, no precision loss).
    pub(crate) fn mul_t(&self) -> LocalElem {
        let e = self.ring.e;
        let n = self.ring.base.n;
        assert!(e > 1, "degree-1 layer has no Eisenstein uniformizer");
        if self.zeroish() {
            // v goes up by one uniformizer unit: absorbed in the p-offset
            // only in multiples of e, so keep the pessimistic bound as-is.
            return self.clone();
        }
        let mask = self.ring.base.pp(self.prec);
        let mut c = vec![BigUint::zero(); self.ring.dim()];
        c[n..].clone_from_slice(&self.c[..(e - 1) * n]);
        let top = &self.c[(e - 1) * n..];
        for j in 0..e {
            if self.ring.neg_g[j].is_zero() {
                continue;
            }
            let m = &self.ring.neg_g[j] % mask;
            for i in 0..n {
                if !top[i].is_zero() {
                    c[j * n + i] = (&c[j * n + i] + &top[i] * &m) % mask;
                }
            }
        }
        normalize_ring(&self.ring, c, self.off, self.prec)
    }

    /// Multiply by an exact power of p.
    pub fn scale_p(&self, k: i64) -> LocalElem {
        let mut r = self.clone();
        r.off += k;
        r
    }

    /// Truncate the digit precision to at most k (used to avoid claiming
    /// guard digits computed by series machinery).
    pub(crate) fn cap_prec(&self, k: usize) -> LocalElem {
        if self.prec <= k {
            return self.clone();
        }
        normalize_ring(&self.ring, self.c.clone(), self.off, k)
    }

    pub fn pow_u128(&self, mut e: u128) -> LocalElem {
        let mut acc = self.ring.one();
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

    /// The coefficient of t^b as a base element.
    pub fn coeff_t(&self, b: usize) -> BaseElem {
        let n = self.ring.base.n;
        super::normalize(
            &self.ring.base,
            self.c[b * n..(b + 1) * n].to_vec(),
            self.off,
            self.prec,
        )
    }

    pub fn slices(&self) -> Vec<BaseElem> {
        (0..self.ring.e).map(|b| self.coeff_t(b)).collect()
    }

    /// Apply the base Frobenius lift to every t-slice (t fixed). This is the
    /// action of the unramified part of the Galois group on a compositum
    /// presentation.
    pub fn frob(&self, k: usize) -> LocalElem {
        if k % self.ring.base.n == 0 || self.zeroish() {
            return self.clone();
        }
        let slices: Vec<BaseElem> = self.slices().iter().map(|s| s.frob(k)).collect();
        self.ring.from_base_slices(&slices)
    }

    /// Trace of the multiplication-by-self matrix over the base (exact):
    /// Tr_{L/K} when the layer presents L/K of degree e.
    pub fn trace_over_base(&self) -> BaseElem {
        if self.ring.e == 1 {
            return self.coeff_t(0);
        }
        if self.zeroish() {
            return super::normalize(
                &self.ring.base,
                vec![BigUint::zero(); self.ring.base.n],
                self.off,
                self.prec,
            );
        }
        let n = self.ring.base.n;
        let mask = self.ring.base.pp(self.prec);
        let mut acc: Vec<BigUint> = self.c[..n].to_vec();
        let mut cur = self.clone();
        for b in 1..self.ring.e {
            cur = cur.mul_t();
            // mul_t may renormalize; realign to the original offset
            let sh = cur.off - self.off;
            debug_assert!(sh >= 0);
            if (sh as usize) < self.prec {
                let shift = self.ring.base.pp(sh as usize);
                for i in 0..n {
                    let x = &cur.c[b * n + i];
                    if !x.is_zero() {
                        acc[i] = (&acc[i] + x * shift) % mask;
                    }
                }
            }
        }
        super::normalize(&self.ring.base, acc, self.off, self.prec)
    }

    /// Determinant of the multiplication-by-self matrix over the base:
    /// N_{L/K} when the layer presents L/K of degree e.
    pub fn norm_over_base(&self) -> Result<BaseElem> {
        if self.ring.e == 1 {
            return Ok(self.coeff_t(0));
        }
        if self.zeroish() {
            return Err(Error::Precision(
                "norm undetermined: element is zero at the working precision".into(),
            ));
        }
        let e = self.ring.e;
        // columns of the multiplication matrix: x·t^b in base coordinates
        let mut cols: Vec<Vec<BaseElem>> = Vec::with_capacity(e);
        let mut cur = self.clone();
        cols.push(cur.slices());
        for _ in 1..e {
            cur = cur.mul_t();
            cols.push(cur.slices());
        }
        // Gaussian elimination with exact-valuation pivoting
        let mut det = self.ring.base.from_u64_at(1, self.ring.base.wmax);
        let mut sign = false;
        for col in 0..e {
            let mut pivot: Option<(usize, i64)> = None;
            for (r, entry) in cols[col].iter().enumerate().skip(col) {
                if let Ok(v) = entry.valuation() {
                    if pivot.map_or(true, |(_, pv)| v < pv) {
                        pivot = Some((r, v));
                    }
                }
            }
            let (pr, _) = pivot.ok_or_else(|| {
                Error::Precision("norm undetermined: singular to working precision".into())
            })?;
            if pr != col {
                for c in cols.iter_mut() {
                    c.swap(pr, col);
                }
                sign = !sign;
            }
            let pv = cols[col][col].clone();
            det = det.mul(&pv);
            let pinv = pv.inv()?;
            for r in col + 1..e {
                let factor = cols[col][r].mul(&pinv);
                if factor.zeroish() {
                    continue;
                }
                for c in cols.iter_mut().skip(col + 1) {
                    let t = c[col].mul(&factor);
                    c[r] = c[r].sub(&t);
                }
            }
        }
        Ok(if sign { det.neg() } else { det })
    }

    pub fn digit_lists(&self) -> Vec<Vec<u64>> {
        let pbig = BigUint::from(self.ring.base.p);
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

impl PartialEq for LocalElem {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).zeroish()
    }
}

/// The canonical embedding of a smaller unramified base into a larger one
/// (residue degrees dividing): the standalone generator maps to the Hensel
/// lift of its lexicographically least residue image, so the embedding is
/// deterministic and Frobenius-compatible.
pub struct BaseEmbedding {
    pub from: Arc<LocalBase>,
    pub to: Arc<LocalBase>,
    cols: Vec<Vec<BigUint>>,
    prec: usize,
}

impl BaseEmbedding {
    pub fn new(from: &Arc<LocalBase>, to: &Arc<LocalBase>) -> Result<BaseEmbedding> {
        if from.p != to.p {
            return Err(Error::Domain("embedding requires equal residue characteristics".into()));
        }
        if to.n % from.n != 0 {
            return Err(Error::Domain(format!(
                "no unramified subextension of degree {} inside degree {}",
                from.n, to.n
            )));
        }
        let prec = to.wmax.min(from.wmax);
        let iso = crate::ff::iso::SubfieldIso::new(&from.resfield, &to.resfield)?;
        let m: Vec<BaseElem> = from
            .modulus
            .iter()
            .map(|&mi| to.from_u64_at(mi, prec))
            .collect();
        let x0 = to.lift_at(&iso.rho, prec);
        let root = hensel_root(&m, &x0)?;
        let mut cols = Vec::with_capacity(from.n);
        let mut pw = to.from_u64_at(1, prec);
        for _ in 0..from.n {
            assert_eq!(pw.off, 0, "powers of an integral unit stay integral");
            cols.push(pw.c.clone());
            pw = pw.mul(&root);
        }
        Ok(BaseEmbedding { from: from.clone(), to: to.clone(), cols, prec })
    }

    pub fn apply(&self, x: &BaseElem) -> BaseElem {
        assert!(same_base(&x.base, &self.from), "element from a different base");
        let prec = x.prec.min(self.prec);
        let n = self.to.n;
        let mut c = vec![BigUint::zero(); n];
        if prec > 0 && !x.zeroish() {
            let mask = self.to.pp(prec);
            for (i, xi) in x.c.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !self.cols[i][j].is_zero() {
                        c[j] = (&c[j] + xi * &self.cols[i][j]) % mask;
                    }
                }
            }
        }
        super::normalize(&self.to, c, x.off, prec)
    }
}

/// The kind of abelian extension a certificate describes.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtKind {
    /// Unramified of the given degree.
    Unramified(usize),
    /// Totally tamely ramified Kummer extension K(t), t^d = −p.
    TameKummer(usize),
    /// The degree-q subextension M of the second Lubin–Tate division field
    /// for f(X) = X^q + pX (q = p), presented inside the full division field.
    WildLubinTate { q: u64 },
    /// Compositum of an unramified part and a tame Kummer part.
    Compositum { unram_d: usize, tame_d: usize },
}

/// An extension descriptor together with the ambient computation ring.
/// For the wild kind the ring is the full division field K_{π,2} of degree
/// q(q−1); the extension itself (degree q) sits inside it.
pub struct LocalExtension {
    pub kind: ExtKind,
    /// Residue degree of the base field K over Q_p.
    pub f_base: usize,
    pub ring: Arc<LocalRing>,
    /// Degree of L/K.
    pub degree: usize,
    /// Ramification index of L/K.
    pub e_rel: usize,
    /// Residue degree of L/K.
    pub f_rel: usize,
    /// Valuation of the different d_{L/K} in uniformizer units of L.
    pub v_d: i64,
    /// Valuation of A_{L/K} (the square root of the inverse different);
    /// None when v_d is odd and no square root exists.
    pub v_a: Option<i64>,
}

/// Build the ambient ring and ramification bookkeeping for an extension of
/// the unramified base K of residue degree f over Q_p, at working precision
/// w. The different is d−1 in the tame Kummer case, 0 in the unramified
/// case, and 2(q−1) in the wild case (all ramification groups up to G_1 are
/// full and G_2 is trivial).
pub fn build_extension(p: u64, f: usize, w: usize, kind: ExtKind) -> Result<LocalExtension> {
    if f == 0 {
        return Err(Error::Parameter("residue degree must be positive".into()));
    }
    match kind {
        ExtKind::Unramified(d) => {
            if d == 0 {
                return Err(Error::Parameter("extension degree must be positive".into()));
            }
            let big = LocalBase::new(p, f * d, w)?;
            let ring = LocalRing::new(&big, 1, None)?;
            Ok(LocalExtension {
                kind: ExtKind::Unramified(d),
                f_base: f,
                ring,
                degree: d,
                e_rel: 1,
                f_rel: d,
                v_d: 0,
                v_a: Some(0),
            })
        }
        ExtKind::TameKummer(d) => {
            if d == 0 {
                return Err(Error::Parameter("extension degree must be positive".into()));
            }
            let base = LocalBase::new(p, f, w)?;
            let ring = if d == 1 {
                LocalRing::new(&base, 1, None)?
            } else {
                let mut g = vec![0i64; d + 1];
                g[0] = p as i64; // t^d − τ with τ = −p
                g[d] = 1;
                LocalRing::new(&base, d, Some(g))?
            };
            let v_d = d as i64 - 1;
            Ok(LocalExtension {
                kind: ExtKind::TameKummer(d),
                f_base: f,
                ring,
                degree: d,
                e_rel: d,
                f_rel: 1,
                v_d,
                v_a: if v_d % 2 == 0 { Some(-v_d / 2) } else { None },
            })
        }
        ExtKind::WildLubinTate { q } => {
            if f != 1 || q != p {
                return Err(Error::Parameter(
                    "wild construction is limited to q = p over Q_p".into(),
                ));
            }
            let base = LocalBase::new(p, 1, w)?;
            let g = lubin_tate_eisenstein(p)?;
            let e = (q * (q - 1)) as usize;
            let ring = LocalRing::new(&base, e, Some(g))?;
            let v_d = 2 * (q as i64 - 1);
            Ok(LocalExtension {
                kind: ExtKind::WildLubinTate { q },
                f_base: 1,
                ring,
                degree: q as usize,
                e_rel: q as usize,
                f_rel: 1,
                v_d,
                v_a: Some(1 - q as i64),
            })
        }
        ExtKind::Compositum { unram_d, tame_d } => {
            if unram_d == 0 || tame_d == 0 {
                return Err(Error::Parameter("extension degree must be positive".into()));
            }
            if tame_d == 1 {
                return Err(Error::Parameter(
                    "a compositum requires a nontrivial totally ramified part".into(),
                ));
            }
            let big = LocalBase::new(p, f * unram_d, w)?;
            let mut g = vec![0i64; tame_d + 1];
            g[0] = p as i64;
            g[tame_d] = 1;
            let ring = LocalRing::new(&big, tame_d, Some(g))?;
            let v_d = tame_d as i64 - 1;
            Ok(LocalExtension {
                kind: ExtKind::Compositum { unram_d, tame_d },
                f_base: f,
                ring,
                degree: unram_d * tame_d,
                e_rel: tame_d,
                f_rel: unram_d,
                v_d,
                v_a: if v_d % 2 == 0 { Some(-v_d / 2) } else { None },
            })
        }
    }
}

/// Integer coefficients of g(X) = (X^q + pX)^(q−1) + p, the Eisenstein
/// polynomial of the second division field over the first (composed with
/// the first level: its roots are exactly the order-p² division points).
pub fn lubin_tate_eisenstein(p: u64) -> Result<Vec<i64>> {
    let q = p;
    let e = (q * (q - 1)) as usize;
    let mut g = vec![0i64; e + 1];
    // (X^q + pX)^(q−1) = Σ_k C(q−1,k) p^k X^(q(q−1−k)+k)
    let mut binom: i64 = 1;
    let mut ppow: i64 = 1;
    for k in 0..q {
        let exp = (q * (q - 1 - k) + k) as usize;
        let term = binom
            .checked_mul(ppow)
            .ok_or_else(|| Error::Parameter("p too large for the wild construction".into()))?;
        g[exp] = term;
        if k + 1 < q {
            binom = binom
                .checked_mul((q - 1 - k) as i64)
                .ok_or_else(|| Error::Parameter("p too large for the wild construction".into()))?
                / (k as i64 + 1);
            ppow = ppow
                .checked_mul(p as i64)
                .ok_or_else(|| Error::Parameter("p too large for the wild construction".into()))?;
        }
    }
    g[0] = g[0]
        .checked_add(p as i64)
        .ok_or_else(|| Error::Parameter("p too large for the wild construction".into()))?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tame_ring(p: u64, d: usize, w: usize) -> Arc<LocalRing> {
        let base = LocalBase::new(p, 1, w).unwrap();
        let mut g = vec![0i64; d + 1];
        g[0] = p as i64;
        g[d] = 1;
        LocalRing::new(&base, d, Some(g)).unwrap()
    }

    #[test]
    fn uniformizer_valuations() {
        // in K[t]/(t³+7) over Q_7: v_L(p) = 3, v_L(t) = 1
        let r = tame_ring(7, 3, 32);
        assert_eq!(r.from_u64(7).valuation().unwrap(), 3);
        assert_eq!(r.gen_t().valuation().unwrap(), 1);
        assert_eq!(r.gen_t().mul(&r.from_u64(7)).valuation().unwrap(), 4);
        assert_eq!(r.from_u64(7).add(&r.gen_t()).valuation().unwrap(), 1);
    }

    #[test]
    fn trace_and_norm_in_cubic_kummer() {
        let r = tame_ring(7, 3, 32);
        let t = r.gen_t();
        // Tr(1) = 3, Tr(t) = 0, Tr(t²) = 0
        assert_eq!(r.one().trace_over_base(), r.base.from_u64(3));
        assert!(t.trace_over_base().zeroish());
        assert!(t.mul(&t).trace_over_base().zeroish());
        // Tr(a + 5t) = Tr(a): scalar part dominates
        let a = r.from_u64(4);
        assert_eq!(a.add(&t.mul(&r.from_u64(5))).trace_over_base(), r.base.from_u64(12));
        // t³ = −7 and N(t) = −(−τ) = −7
        assert_eq!(t.pow_u128(3), r.from_i64(-7));
        assert_eq!(t.norm_over_base().unwrap(), r.base.from_i64(-7));
        // N(7) = 7³
        assert_eq!(r.from_u64(7).norm_over_base().unwrap(), r.base.from_u64(343));
    }

    #[test]
    fn trace_additive_norm_multiplicative() {
        let r = tame_ring(5, 4, 24);
        let t = r.gen_t();
        let a = r.from_u64(3).add(&t.mul(&r.from_u64(2))).add(&t.mul(&t));
        let b = r.from_i64(-1).add(&t.mul(&r.from_u64(7)));
        assert_eq!(
            a.add(&b).trace_over_base(),
            a.trace_over_base().add(&b.trace_over_base())
        );
        assert_eq!(
            a.mul(&b).norm_over_base().unwrap(),
            a.norm_over_base().unwrap().mul(&b.norm_over_base().unwrap())
        );
        // trace is base-linear
        let s = r.base.from_u64(9);
        assert_eq!(
            a.mul(&r.from_base(&s)).trace_over_base(),
            a.trace_over_base().mul(&s)
        );
    }

    #[test]
    fn eisenstein_validation() {
        let base = LocalBase::new(5, 1, 16).unwrap();
        // non-monic
        assert!(matches!(
            LocalRing::new(&base, 2, Some(vec![5, 0, 2])),
            Err(Error::Domain(_))
        ));
        // unit coefficient below the top
        assert!(matches!(
            LocalRing::new(&base, 2, Some(vec![5, 1, 1])),
            Err(Error::Domain(_))
        ));
        // constant term with valuation 2
        assert!(matches!(
            LocalRing::new(&base, 2, Some(vec![25, 0, 1])),
            Err(Error::Domain(_))
        ));
        // degree-1 layer takes no polynomial
        assert!(matches!(
            LocalRing::new(&base, 1, Some(vec![5, 1])),
            Err(Error::Domain(_))
        ));
        // good one
        assert!(LocalRing::new(&base, 2, Some(vec![5, 5, 1])).is_ok());
    }

    #[test]
    fn ramified_layer_over_quadratic_base() {
        // K = Q_3(y) unramified quadratic, L = K(t)/(t²+3)
        let base = LocalBase::new(3, 2, 24).unwrap();
        let r = LocalRing::new(&base, 2, Some(vec![3, 0, 1])).unwrap();
        let t = r.gen_t();
        let y = r.from_base(&base.gen_elem());
        // Frobenius acts on slices and fixes t
        let x = t.mul(&y).add(&r.from_u64(5));
        let fx = x.frob(1);
        assert_eq!(fx, t.mul(&r.from_base(&base.gen_elem().frob(1))).add(&r.from_u64(5)));
        assert_eq!(fx.frob(1), x);
        // trace of y·t over K is zero; N(t) = t·(−t) = −t² = 3
        assert!(t.mul(&y).trace_over_base().zeroish());
        assert_eq!(t.norm_over_base().unwrap(), base.from_u64(3));
        // v_L(y·t) = 1, v_L(3t) = 3
        assert_eq!(t.mul(&y).valuation().unwrap(), 1);
        assert_eq!(t.mul(&r.from_u64(3)).valuation().unwrap(), 3);
    }

    #[test]
    fn slices_roundtrip_and_serialization() {
        let r = tame_ring(7, 3, 16);
        let t = r.gen_t();
        let x = r
            .from_u64(30)
            .add(&t.mul(&r.from_u64(4).scale_p(-1)))
            .add(&t.mul(&t).mul(&r.from_i64(-2)));
        let back = r.from_base_slices(&x.slices());
        assert_eq!(back, x);
        let lists = x.digit_lists();
        let re = r.from_digit_lists(&lists, x.off, x.prec).unwrap();
        assert_eq!(re.c, x.c);
        assert_eq!(re.off, x.off);
    }

    #[test]
    fn base_embedding_preserves_structure() {
        let small = LocalBase::new(3, 2, 24).unwrap();
        let big = LocalBase::new(3, 6, 24).unwrap();
        let emb = BaseEmbedding::new(&small, &big).unwrap();
        let a = small.gen_elem().add(&small.from_u64(4));
        let b = small.gen_elem().inv().unwrap();
        assert_eq!(emb.apply(&a).mul(&emb.apply(&b)), emb.apply(&a.mul(&b)));
        assert_eq!(emb.apply(&a).add(&emb.apply(&b)), emb.apply(&a.add(&b)));
        // the image of the small generator satisfies the small modulus
        let m: Vec<BaseElem> = small.modulus.iter().map(|&mi| big.from_u64(mi)).collect();
        assert!(super::super::eval_poly(&m, &emb.apply(&small.gen_elem())).zeroish());
        // Frobenius compatibility: [K:Q_p] = 2 embeds in [L:Q_p] = 6 with
        // φ_L restricted to K equal to φ_K
        assert_eq!(emb.apply(&a.frob(1)), emb.apply(&a).frob(1));
    }

    #[test]
    fn extension_bookkeeping() {
        let u = build_extension(3, 1, 16, ExtKind::Unramified(5)).unwrap();
        assert_eq!((u.degree, u.e_rel, u.f_rel, u.v_d, u.v_a), (5, 1, 5, 0, Some(0)));
        let t = build_extension(7, 1, 16, ExtKind::TameKummer(3)).unwrap();
        assert_eq!((t.degree, t.e_rel, t.v_d, t.v_a), (3, 3, 2, Some(-1)));
        let t4 = build_extension(7, 1, 16, ExtKind::TameKummer(4)).unwrap();
        assert_eq!((t4.v_d, t4.v_a), (3, None));
        let wld = build_extension(3, 1, 16, ExtKind::WildLubinTate { q: 3 }).unwrap();
        assert_eq!((wld.degree, wld.e_rel, wld.v_d, wld.v_a), (3, 3, 4, Some(-2)));
        assert_eq!(wld.ring.e, 6);
        let c = build_extension(7, 1, 16, ExtKind::Compositum { unram_d: 3, tame_d: 3 }).unwrap();
        assert_eq!((c.degree, c.e_rel, c.f_rel, c.v_d, c.v_a), (9, 3, 3, 2, Some(-1)));
        // wild is q = p over Q_p only
        assert!(matches!(
            build_extension(3, 2, 16, ExtKind::WildLubinTate { q: 3 }),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            build_extension(3, 1, 16, ExtKind::WildLubinTate { q: 9 }),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn division_polynomial_coefficients() {
        // q = 3: g = (X³+3X)² + 3 = X⁶ + 6X⁴ + 9X² + 3
        assert_eq!(lubin_tate_eisenstein(3).unwrap(), vec![3, 0, 9, 0, 6, 0, 1]);
        // q = 5: (X⁵+5X)⁴ + 5
        let g5 = lubin_tate_eisenstein(5).unwrap();
        assert_eq!(g5.len(), 21);
        assert_eq!(g5[20], 1);
        assert_eq!(g5[16], 20); // C(4,1)·5 = 20
        assert_eq!(g5[12], 150); // C(4,2)·25
        assert_eq!(g5[8], 500); // C(4,3)·125
        assert_eq!(g5[4], 625); // C(4,4)·625
        assert_eq!(g5[0], 5);
        // the q=3 polynomial is accepted as Eisenstein by the ring layer
        let base = LocalBase::new(3, 1, 16).unwrap();
        assert!(LocalRing::new(&base, 6, Some(lubin_tate_eisenstein(3).unwrap())).is_ok());
    }

    #[test]
    fn wild_uniformizer_valuation() {
        // x = t^(q−1)/p has v = (q−1) − q(q−1) = −(q−1)² in ring units,
        // i.e. v_M(x) = 1−q = −2 at q = 3
        let base = LocalBase::new(3, 1, 24).unwrap();
        let r = LocalRing::new(&base, 6, Some(lubin_tate_eisenstein(3).unwrap())).unwrap();
        let x = r.gen_t().mul(&r.gen_t()).scale_p(-1);
        assert_eq!(x.valuation().unwrap(), -4);
        assert_eq!(x.valuation().unwrap() % (3 - 1), 0);
        assert_eq!(x.valuation().unwrap() / (3 - 1), 1 - 3);
    }
}
