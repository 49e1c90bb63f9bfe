//! Lubin–Tate formal-group endomorphisms for f(X) = X^q + pX over Z_p
//! (q = p), truncated to the degree needed at the working precision.
//!
//! For a unit-or-p scalar u, the endomorphism [u]_f is the unique power
//! series with [u]_f ≡ uX mod deg 2 and f∘[u]_f = [u]_f∘f. Coefficients are
//! computed one at a time from the commutation identity: writing S for the
//! partial series, the coefficient of X^k in f∘S − S∘f is divisible by
//! p^k − p and determines c_k.
//!
//! Each step divides by p(p^(k−1) − 1) once. The p-division costs one digit
//! of certainty only along a dependency chain whose length is bounded by
//! log_q of the truncation degree (the other paths are damped by the factor
//! q in the derivative of X^q), so computing with 16 guard digits and
//! declaring w digits valid is sound; the final commutation check asserts
//! f∘S ≡ S∘f mod p^w across all retained degrees on every run.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ff::intutil::invmod_u64;

use super::ring::{lubin_tate_eisenstein, LocalElem, LocalRing};
use super::LocalBase;

pub struct LubinTateData {
    pub q: u64,
    pub base: Arc<LocalBase>,
    /// The full second division field K_{π,2} = Q_p[t]/(g), degree q(q−1);
    /// t is a primitive p²-division point α.
    pub ring: Arc<LocalRing>,
    /// Series digit precision (w + 16 guard digits).
    pub ws: usize,
    /// Series truncation degree: terms beyond X^dmax have valuation above
    /// the working absolute precision at any division point.
    pub dmax: usize,
    cache: Mutex<HashMap<BigUint, Arc<Vec<BigUint>>>>,
}

impl LubinTateData {
    pub fn new(p: u64, w: usize) -> Result<LubinTateData> {
        let base = LocalBase::new(p, 1, w)?;
        let q = p;
        let e = (q * (q - 1)) as usize;
        let ring = LocalRing::new(&base, e, Some(lubin_tate_eisenstein(p)?))?;
        let ws = w + 16;
        debug_assert!(ws <= base.wmax);
        Ok(LubinTateData {
            q,
            base,
            ring,
            ws,
            dmax: w * e,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// α = t, a primitive root of the second division polynomial.
    pub fn alpha(&self) -> LocalElem {
        self.ring.gen_t()
    }

    /// x = α^(q−1)/p, the generator the wild construction starts from.
    pub fn x_elem(&self) -> LocalElem {
        self.alpha().pow_u128(self.q as u128 - 1).scale_p(-1)
    }

    /// (1+p)^j mod p², the exponent for the j-th conjugate: the class of
    /// 1+p generates Gal(M/K), and [u]_f on a p²-division point depends on
    /// u mod p² only.
    pub fn conj_unit(&self, j: u64) -> BigUint {
        let p2 = self.q * self.q;
        let mut u: u64 = 1;
        for _ in 0..(j % self.q) {
            u = (u * (1 + self.q)) % p2;
        }
        BigUint::from(u)
    }

    /// Teichmüller lift (at series precision) of the smallest primitive
    /// root mod p: a generator of the (q−1)-torsion scalars.
    pub fn omega_unit(&self) -> Result<BigUint> {
        let gen = self.base.resfield.multiplicative_generator()?;
        let om = self.base.teichmuller_at(&gen, self.ws);
        debug_assert_eq!(om.off, 0);
        Ok(om.c[0].clone())
    }

    /// Coefficients of [u]_f mod p^ws, low-to-high, truncated at dmax.
    /// Valid to w digits (the guard absorbs the division chain).
    pub fn series(&self, u: &BigUint) -> Result<Arc<Vec<BigUint>>> {
        let m_big = self.base.pp(self.ws).clone();
        let key = u % &m_big;
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let s = self.compute_series(&key, &m_big)?;
        let arc = Arc::new(s);
        self.cache.lock().unwrap().insert(key, arc.clone());
        Ok(arc)
    }

    fn compute_series(&self, u: &BigUint, m_big: &BigUint) -> Result<Vec<BigUint>> {
        let p = self.q;
        let q = self.q as usize;
        let d = self.dmax;
        let pbig = BigUint::from(p);

        // binomial table C(j, i) for j ≤ q
        let mut binom = vec![vec![BigUint::zero(); q + 1]; q + 1];
        for j in 0..=q {
            binom[j][0] = BigUint::one();
            for i in 1..=j {
                binom[j][i] = &binom[j - 1][i - 1]
                    + if i <= j - 1 { binom[j - 1][i].clone() } else { BigUint::zero() };
            }
        }

        let mut s = vec![BigUint::zero(); d + 1];
        // sp[j-2] = S^j truncated at degree d
        let mut sp = vec![vec![BigUint::zero(); d + 1]; q - 1];
        // t_acc = S∘f = Σ c_i f^i; fp = f^m at the current step
        let mut t_acc = vec![BigUint::zero(); d + 1];
        let mut fp = vec![BigUint::zero(); d + 1];
        if d >= 1 {
            fp[1] = &pbig % m_big;
        }
        if d >= q {
            fp[q] = BigUint::one();
        }

        // running p^(m-1) mod p^ws for the unit divisor p^(m-1) − 1
        let mut ppow_m = BigUint::one();

        let append = |s: &mut Vec<BigUint>,
                          sp: &mut Vec<Vec<BigUint>>,
                          t_acc: &mut Vec<BigUint>,
                          fp: &mut Vec<BigUint>,
                          c: &BigUint,
                          m: usize| {
            if !c.is_zero() {
                // powers of c
                let mut cp = vec![BigUint::one(); q + 1];
                for i in 1..=q {
                    cp[i] = &cp[i - 1] * c % m_big;
                }
                // update S^j descending so lower powers are still the old ones
                for j in (2..=q).rev() {
                    for i in 1..=j {
                        let scale = &binom[j][i] * &cp[i] % m_big;
                        if scale.is_zero() {
                            continue;
                        }
                        let shift = m * i;
                        if shift > d {
                            continue;
                        }
                        let dst_base = j - 2;
                        if i == j {
                            // S^0 term: a single monomial
                            sp[dst_base][shift] = (&sp[dst_base][shift] + &scale) % m_big;
                        } else if j - i == 1 {
                            for k in 1..=d.saturating_sub(shift) {
                                if !s[k].is_zero() {
                                    sp[dst_base][k + shift] =
                                        (&sp[dst_base][k + shift] + &s[k] * &scale) % m_big;
                                }
                            }
                        } else {
                            let src = (j - i) - 2;
                            // split borrow: src < dst_base because i ≥ 1... (i ≥ 2 here)
                            let (lo, hi) = sp.split_at_mut(dst_base);
                            let dst = &mut hi[0];
                            let srcv = &lo[src];
                            for k in 1..=d.saturating_sub(shift) {
                                if !srcv[k].is_zero() {
                                    dst[k + shift] = (&dst[k + shift] + &srcv[k] * &scale) % m_big;
                                }
                            }
                        }
                    }
                }
                // S∘f gains c·f^m
                for k in 0..=d {
                    if !fp[k].is_zero() {
                        t_acc[k] = (&t_acc[k] + &fp[k] * c) % m_big;
                    }
                }
                s[m] = c.clone();
            }
            // advance f^m → f^(m+1): (f^m·f)[k] = p·f^m[k−1] + f^m[k−q]
            let mut nfp = vec![BigUint::zero(); d + 1];
            for k in (1..=d).rev() {
                let mut v = BigUint::zero();
                if !fp[k - 1].is_zero() {
                    v = &fp[k - 1] * &pbig;
                }
                if k >= q && !fp[k - q].is_zero() {
                    v += &fp[k - q];
                }
                if !v.is_zero() {
                    nfp[k] = v % m_big;
                }
            }
            *fp = nfp;
        };

        append(&mut s, &mut sp, &mut t_acc, &mut fp, u, 1);
        ppow_m = ppow_m * &pbig % m_big; // p^1 for m = 2

        for m in 2..=d {
            // c_m·(p^m − p) = [X^m](S^q) − [X^m](S∘f)
            let diff = (&sp[q - 2][m] + m_big - &t_acc[m]) % m_big;
            let c = if diff.is_zero() {
                BigUint::zero()
            } else {
                if !(&diff % &pbig).is_zero() {
                    return Err(Error::Internal(
                        "division-point series: commutation defect not divisible by p".into(),
                    ));
                }
                let v = &diff / &pbig;
                // unit divisor p^(m−1) − 1 ≡ −1 mod p
                let unit = (&ppow_m + m_big - BigUint::one()) % m_big;
                let inv = inv_unit_mod(&unit, p, m_big, self.ws);
                v * inv % m_big
            };
            append(&mut s, &mut sp, &mut t_acc, &mut fp, &c, m);
            ppow_m = ppow_m * &pbig % m_big;
        }

        // final commutation check mod p^w: f∘S = S^q + pS must match S∘f on
        // every retained degree (the guard digits absorb the division chain)
        let mask = self.base.pp(self.base.w);
        for k in 0..=d {
            let lhs = (&sp[q - 2][k] + &s[k] * &pbig) % m_big;
            let diffk = (lhs + m_big - &t_acc[k]) % m_big;
            if !(&diffk % mask).is_zero() {
                return Err(Error::Internal(format!(
                    "division-point series fails commutation at degree {k} within the declared precision"
                )));
            }
        }
        if !s[0].is_zero() || &s[1] % m_big != u % m_big {
            return Err(Error::Internal("division-point series has wrong linear part".into()));
        }
        Ok(s)
    }

    /// Evaluate a series at α = t by Horner, capping the result at the
    /// working precision (guard digits are not claimed).
    pub fn eval_at_t(&self, series: &[BigUint]) -> LocalElem {
        let mut acc = self.ring.scalar_digits(series[self.dmax].clone(), self.ws);
        for k in (0..self.dmax).rev() {
            acc = acc.mul_t();
            if !series[k].is_zero() {
                acc = acc.add(&self.ring.scalar_digits(series[k].clone(), self.ws));
            }
        }
        acc.cap_prec(self.base.w)
    }
}

/// Inverse of a unit mod p^ws by Newton doubling from the mod-p inverse.
fn inv_unit_mod(a: &BigUint, p: u64, m_big: &BigUint, ws: usize) -> BigUint {
    let a0 = (a % p).iter_u64_digits().next().unwrap_or(0);
    let mut z = BigUint::from(invmod_u64(a0, p).expect("unit required"));
    let two = BigUint::from(2u64);
    let mut gain = 1usize;
    while gain < ws {
        z = &z * ((&two + m_big - a * &z % m_big) % m_big) % m_big;
        gain *= 2;
    }
    debug_assert!((a * &z % m_big).is_one());
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_by_one_is_the_identity_series() {
        let lt = LubinTateData::new(3, 12).unwrap();
        let s = lt.series(&BigUint::one()).unwrap();
        assert!(s[0].is_zero());
        assert!(s[1].is_one());
        assert!(s[2..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn multiplication_by_pi_is_f_itself() {
        let lt = LubinTateData::new(3, 12).unwrap();
        let s = lt.series(&BigUint::from(3u64)).unwrap();
        for (k, c) in s.iter().enumerate() {
            let expect = match k {
                1 => BigUint::from(3u64),
                3 => BigUint::one(),
                _ => BigUint::zero(),
            };
            assert_eq!(*c, expect, "coefficient of X^{k}");
        }
    }

    #[test]
    fn torsion_scalar_series_is_linear() {
        // [ω]_f = ω̃X: all higher coefficients vanish to the declared digits
        let lt = LubinTateData::new(5, 10).unwrap();
        let om = lt.omega_unit().unwrap();
        let s = lt.series(&om).unwrap();
        let mask = lt.base.pp(lt.base.w);
        assert_eq!(&s[1] % mask, &om % mask);
        for (k, c) in s.iter().enumerate().skip(2) {
            assert!((c % mask).is_zero(), "coefficient of X^{k} should vanish");
        }
        // ω̃ has exact multiplicative order q−1 = 4 mod p^w
        let m = lt.base.pp(lt.base.w).clone();
        assert_eq!(om.modpow(&BigUint::from(4u64), &m), BigUint::one());
        assert_ne!(om.modpow(&BigUint::from(2u64), &m), BigUint::one());
    }

    #[test]
    fn alpha_is_a_root_and_has_valuation_one() {
        let lt = LubinTateData::new(3, 16).unwrap();
        let a = lt.alpha();
        assert_eq!(a.valuation().unwrap(), 1);
        // g(α) = 0 exactly in the quotient ring
        let g = lubin_tate_eisenstein(3).unwrap();
        let mut acc = lt.ring.from_i64(g[6]);
        for k in (0..6).rev() {
            acc = acc.mul(&a).add(&lt.ring.from_i64(g[k]));
        }
        assert!(acc.zeroish());
        // x = α^(q−1)/p: v = −(q−1)² ring units, i.e. v_M(x) = 1−q = −2
        let x = lt.x_elem();
        assert_eq!(x.valuation().unwrap(), -4);
    }

    #[test]
    fn conjugates_are_roots_to_precision() {
        let lt = LubinTateData::new(3, 24).unwrap();
        let g = lubin_tate_eisenstein(3).unwrap();
        let guard = 8i64;
        for j in 1..3u64 {
            let u = lt.conj_unit(j);
            let beta = lt.eval_at_t(&lt.series(&u).unwrap());
            assert_eq!(beta.valuation().unwrap(), 1);
            let mut acc = lt.ring.from_i64(g[6]);
            for k in (0..6).rev() {
                acc = acc.mul(&beta).add(&lt.ring.from_i64(g[k]));
            }
            assert!(acc.zeroish(), "g(β_{j}) should vanish to precision");
            assert!(acc.absprec_vl() >= lt.ring.e as i64 * (lt.base.w as i64 - guard));
        }
    }

    #[test]
    fn identity_series_evaluates_to_alpha() {
        let lt = LubinTateData::new(3, 16).unwrap();
        let s = lt.series(&BigUint::one()).unwrap();
        assert_eq!(lt.eval_at_t(&s), lt.alpha());
    }

    #[test]
    fn torsion_orbit_product_is_minus_alpha_power() {
        // conjugates of α over M are ζ̃α for ζ^(q−1) = 1, so the norm to M
        // is (∏ζ̃)·α^(q−1) = −α^(q−1): the product of all roots of unity of
        // even order q−1 is −1
        let lt = LubinTateData::new(3, 16).unwrap();
        let om = lt.omega_unit().unwrap();
        let mut prod = lt.ring.one();
        let m_big = lt.base.pp(lt.ws).clone();
        let mut upow = BigUint::one();
        for _ in 0..2 {
            let beta = lt.eval_at_t(&lt.series(&upow).unwrap());
            prod = prod.mul(&beta);
            upow = upow * &om % &m_big;
        }
        let expect = lt.alpha().mul(&lt.alpha()).neg();
        assert_eq!(prod, expect);
    }

    #[test]
    fn series_cache_reuses_computations() {
        let lt = LubinTateData::new(3, 12).unwrap();
        let u = lt.conj_unit(1);
        let a = lt.series(&u).unwrap();
        let b = lt.series(&u).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }

    #[test]
    fn quintic_series_commutes() {
        // q = 5 exercises the quarter-support pattern and larger binomials
        let lt = LubinTateData::new(5, 8).unwrap();
        let u = lt.conj_unit(1); // 6 mod 25
        let s = lt.series(&u).unwrap();
        assert_eq!(s[1], u);
        // support only on exponents ≡ 1 mod 4
        for (k, c) in s.iter().enumerate().skip(2) {
            if k % 4 != 1 {
                assert!(c.is_zero() || (c % lt.base.pp(lt.base.w)).is_zero());
            }
        }
    }
}
