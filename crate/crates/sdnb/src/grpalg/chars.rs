//! Characters of cyclic groups over finite fields, Frobenius orbits, and
//! the discrete Fourier transform used to test and invert units of
//! F_q[C_d] when gcd(d, q) = 1.
//!
//! A character χ_s of C_d sends the fixed generator to ζ_d^s. The Galois
//! group of F_q(ζ_d)/F_q acts on characters through s ↦ s·q mod d; the
//! orbit representatives index the Wedderburn factors F_q(χ_s) of
//! F_q[C_d]. Inversion is pointwise inversion of character values followed
//! by the inverse transform with Frobenius orbit expansion.

use super::{FqCoeff, Ga, GroupAlgebra};
use crate::error::{Error, Result};
use crate::ff::{intutil, FqElem};

/// One Frobenius orbit of characters of C_d.
#[derive(Clone, Debug)]
pub struct CharOrbit {
    /// The orbit representative: the least exponent in the orbit.
    pub s: u64,
    /// The full orbit s, sq, sq², … (mod d), in power order.
    pub orbit: Vec<u64>,
    /// Orbit length = [F_q(χ_s) : F_q].
    pub v: usize,
    /// Representative of the orbit of −s (the contragredient character).
    pub partner: u64,
    /// When self-paired: the least j with −s ≡ s·q^j (mod d).
    pub j_conj: Option<usize>,
}

/// Character data for F_q[C_d] inside a universe field containing μ_d.
pub struct CharData {
    pub d: u64,
    /// Deterministic primitive d-th root of unity in the universe.
    pub zeta: FqElem,
    /// ζ^k for 0 ≤ k < d.
    pub zeta_pows: Vec<FqElem>,
    /// Orbit representatives in increasing order of s.
    pub reps: Vec<CharOrbit>,
    /// base_pexp of the coefficient field F_q.
    pub base_pexp: usize,
}

impl CharData {
    pub fn new(alg: &GroupAlgebra<FqCoeff>) -> Result<CharData> {
        if alg.group.orders.len() != 1 {
            return Err(Error::Domain(
                "character data requires a cyclic group".into(),
            ));
        }
        let d = alg.group.orders[0];
        let field = &alg.ring.field;
        let m = alg.ring.base_pexp;
        let p = field.p;
        if d % p == 0 {
            return Err(Error::Domain(
                "character data requires the group order to be prime to the characteristic"
                    .into(),
            ));
        }
        // ζ_d: product of elements of prime-power order r^c for r^c || d
        let mut zeta = field.one();
        for (r, c) in intutil::factor_u64(d) {
            if field.sylow_exponent(r) < c {
                return Err(Error::Domain(format!(
                    "the universe field lacks the {}-th roots of unity",
                    d
                )));
            }
            zeta = zeta.mul(&field.element_of_order_r_pow(r, c)?);
        }
        let mut zeta_pows = Vec::with_capacity(d as usize);
        let mut cur = field.one();
        for _ in 0..d {
            zeta_pows.push(cur.clone());
            cur = cur.mul(&zeta);
        }
        // orbits of s ↦ s·q mod d
        let q_mod_d = intutil::modpow_u64(p % d.max(1), m as u64, d.max(1));
        let mut seen = vec![false; d as usize];
        let mut reps = Vec::new();
        for s in 0..d {
            if seen[s as usize] {
                continue;
            }
            let mut orbit = vec![s];
            seen[s as usize] = true;
            let mut t = (s * q_mod_d) % d;
            while t != s {
                seen[t as usize] = true;
                orbit.push(t);
                t = (t * q_mod_d) % d;
            }
            reps.push(CharOrbit {
                s,
                v: orbit.len(),
                orbit,
                partner: 0,
                j_conj: None,
            });
        }
        // partners: the orbit representative containing d − s
        let rep_of = |x: u64, reps: &[CharOrbit]| -> u64 {
            reps.iter()
                .find(|o| o.orbit.contains(&(x % d)))
                .map(|o| o.s)
                .expect("orbits cover Z/d")
        };
        let snapshot = reps.clone();
        for o in reps.iter_mut() {
            let minus = (d - o.s) % d;
            o.partner = rep_of(minus, &snapshot);
            if o.partner == o.s {
                let j = o
                    .orbit
                    .iter()
                    .position(|&t| t == minus)
                    .expect("self-paired orbit contains −s");
                o.j_conj = Some(j);
            }
        }
        Ok(CharData {
            d,
            zeta,
            zeta_pows,
            reps,
            base_pexp: m,
        })
    }

    /// ζ^{e mod d} for any integer-like exponent.
    pub fn zeta_pow(&self, e: u64) -> &FqElem {
        &self.zeta_pows[(e % self.d) as usize]
    }
}

/// Character value â(χ_s) = Σ_k a_k ζ^{sk} for each orbit representative s.
pub fn char_decompose(
    alg: &GroupAlgebra<FqCoeff>,
    cd: &CharData,
    a: &Ga<FqElem>,
) -> Vec<FqElem> {
    let d = cd.d;
    cd.reps
        .iter()
        .map(|o| {
            let mut acc = alg.ring.field.zero();
            for (k, ak) in a.c.iter().enumerate() {
                if ak.is_zero() {
                    continue;
                }
                acc = acc.add(&ak.mul(cd.zeta_pow(o.s * k as u64 % d)));
            }
            acc
        })
        .collect()
}

/// Inverse transform: given one value w_s ∈ F_q(χ_s) per orbit
/// representative, expand over each orbit by Frobenius
/// (ŵ(s·q^j) = w_s^{q^j}) and apply the full inverse DFT
/// a_k = d^{−1} Σ_t ŵ(t) ζ^{−tk}. The result must have coefficients in
/// F_q, which is asserted.
pub fn char_recompose(
    alg: &GroupAlgebra<FqCoeff>,
    cd: &CharData,
    values: &[FqElem],
) -> Result<Ga<FqElem>> {
    if values.len() != cd.reps.len() {
        return Err(Error::Domain(
            "one character value per orbit representative is required".into(),
        ));
    }
    let field = &alg.ring.field;
    let m = cd.base_pexp;
    let d = cd.d;
    // expand each representative value over its orbit
    let mut full = vec![field.zero(); d as usize];
    for (o, w) in cd.reps.iter().zip(values) {
        if !w.in_subfield(m * o.v) {
            return Err(Error::Domain(format!(
                "character value for s = {} lies outside F_q(χ_s)",
                o.s
            )));
        }
        let mut cur = w.clone();
        for (j, &t) in o.orbit.iter().enumerate() {
            if j > 0 {
                cur = cur.frobenius_pexp(m);
            }
            full[t as usize] = cur.clone();
        }
    }
    let d_inv = field.from_scalar(d % field.p).inv().map_err(|_| {
        Error::Domain("the group order is not invertible in the base field".into())
    })?;
    let mut coeffs = Vec::with_capacity(d as usize);
    for k in 0..d {
        let mut acc = field.zero();
        for (t, w) in full.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let e = (d - (t as u64 * k) % d) % d;
            acc = acc.add(&w.mul(cd.zeta_pow(e)));
        }
        let c = acc.mul(&d_inv);
        if !c.in_subfield(m) {
            return Err(Error::Domain(
                "character values are not Frobenius-consistent: recomposition left the base field"
                    .into(),
            ));
        }
        coeffs.push(c);
    }
    Ok(alg.from_coeffs(coeffs))
}

/// Invert a unit of F_q[C_d] (gcd(d, q) = 1) by pointwise inversion of its
/// character values.
pub fn invert_via_characters(
    alg: &GroupAlgebra<FqCoeff>,
    a: &Ga<FqElem>,
) -> Result<Ga<FqElem>> {
    let cd = CharData::new(alg)?;
    let vals = char_decompose(alg, &cd, a);
    let mut inv_vals = Vec::with_capacity(vals.len());
    for v in &vals {
        if v.is_zero() {
            return Err(Error::Domain(
                "not a unit: a character value vanishes".into(),
            ));
        }
        inv_vals.push(v.inv()?);
    }
    char_recompose(alg, &cd, &inv_vals)
}

/// Unit test for F_q[C_n] with arbitrary n: split n = p^a·h, collapse the
/// p-part (units of the local factors are detected by their augmentation)
/// and test the character values of the prime-to-p marginal.
pub fn is_unit(alg: &GroupAlgebra<FqCoeff>, a: &Ga<FqElem>) -> Result<bool> {
    if alg.group.orders.len() != 1 {
        // non-cyclic: fall back to solvability of the regular representation
        return Ok(alg.invert_unit(a).is_ok());
    }
    let n = alg.group.orders[0];
    let p = alg.ring.field.p;
    let mut h = n;
    while h % p == 0 {
        h /= p;
    }
    // marginal over the prime-to-p quotient C_h
    let mut b = vec![alg.ring.field.zero(); h as usize];
    for (k, ak) in a.c.iter().enumerate() {
        let j = (k as u64 % h) as usize;
        b[j] = b[j].add(ak);
    }
    if h == 1 {
        return Ok(!b[0].is_zero());
    }
    let halg = GroupAlgebra::new(alg.ring.clone(), super::AbelianGroup::cyclic(h));
    let cd = CharData::new(&halg)?;
    let bg = halg.from_coeffs(b);
    let vals = char_decompose(&halg, &cd, &bg);
    Ok(vals.iter().all(|v| !v.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FqField;
    use crate::grpalg::AbelianGroup;

    #[test]
    fn orbit_structure_c5_over_f3() {
        let f = FqField::new(3, 4).unwrap(); // universe containing μ_5 (5 | 80)
        let alg = GroupAlgebra::new(FqCoeff::new(&f, 1).unwrap(), AbelianGroup::cyclic(5));
        let cd = CharData::new(&alg).unwrap();
        assert_eq!(cd.d, 5);
        assert_eq!(cd.reps.len(), 2);
        assert_eq!(cd.reps[0].s, 0);
        assert_eq!(cd.reps[0].v, 1);
        assert_eq!(cd.reps[0].partner, 0);
        assert_eq!(cd.reps[0].j_conj, Some(0));
        assert_eq!(cd.reps[1].s, 1);
        assert_eq!(cd.reps[1].orbit, vec![1, 3, 4, 2]);
        assert_eq!(cd.reps[1].v, 4);
        assert_eq!(cd.reps[1].partner, 1); // self-paired
        assert_eq!(cd.reps[1].j_conj, Some(2)); // 1·3² = 9 ≡ 4 ≡ −1 (mod 5)
        // ζ has exact order 5
        assert!(cd.zeta.pow(5).is_one());
        assert!(!cd.zeta.is_one());
    }

    #[test]
    fn orbit_structure_c7_over_f9() {
        // q = 9 ≡ 2 (mod 7): orbits {0}, {1,2,4}, {3,6,5}
        let f = FqField::new(3, 6).unwrap(); // μ_7 ⊂ F_{3^6} (7 | 728)
        let alg = GroupAlgebra::new(FqCoeff::new(&f, 2).unwrap(), AbelianGroup::cyclic(7));
        let cd = CharData::new(&alg).unwrap();
        let ss: Vec<u64> = cd.reps.iter().map(|o| o.s).collect();
        assert_eq!(ss, vec![0, 1, 3]);
        assert_eq!(cd.reps[1].orbit, vec![1, 2, 4]);
        assert_eq!(cd.reps[2].orbit, vec![3, 6, 5]);
        // 1 and 3 are partners (−1 ≡ 6 lies in the orbit of 3)
        assert_eq!(cd.reps[1].partner, 3);
        assert_eq!(cd.reps[2].partner, 1);
        assert_eq!(cd.reps[1].j_conj, None);
    }

    #[test]
    fn dft_roundtrip_c5() {
        let f = FqField::new(3, 4).unwrap();
        let alg = GroupAlgebra::new(FqCoeff::new(&f, 1).unwrap(), AbelianGroup::cyclic(5));
        let cd = CharData::new(&alg).unwrap();
        // a with F_3 coefficients
        let a = alg.from_coeffs(vec![
            f.from_scalar(2),
            f.one(),
            f.zero(),
            f.from_scalar(2),
            f.one(),
        ]);
        let vals = char_decompose(&alg, &cd, &a);
        let back = char_recompose(&alg, &cd, &vals).unwrap();
        assert_eq!(back, a);
        // the identity decomposes to all-ones
        let one = alg.one();
        let vals1 = char_decompose(&alg, &cd, &one);
        assert!(vals1.iter().all(|v| v.is_one()));
    }

    #[test]
    fn unit_detection_mixed_order() {
        let f = FqField::new(3, 4).unwrap();
        let alg = GroupAlgebra::new(FqCoeff::new(&f, 1).unwrap(), AbelianGroup::cyclic(15));
        // Σ_i (g³)^i has marginal (1,1,1,1,1): killed by every nontrivial χ
        let mut a = alg.zero();
        for i in 0..5 {
            a.c[3 * i] = f.one();
        }
        assert!(!is_unit(&alg, &a).unwrap());
        // 1 + g³ has marginal (1,0,0,1,0): all character values nonzero
        let mut b = alg.zero();
        b.c[0] = f.one();
        b.c[3] = f.one();
        assert!(is_unit(&alg, &b).unwrap());
        // g is always a unit
        assert!(is_unit(&alg, &alg.basis_elem(1)).unwrap());
        // augmentation-zero p-part: (1 − g⁵) has marginal zero at χ_0?
        // marginal of 1 − g⁵: j=0 gets 1 + (−1) = 0 … all of b zero except…
        // k=0 → j=0: +1; k=5 → j=0: −1 ⇒ marginal identically 0 → not unit
        let mut c = alg.zero();
        c.c[0] = f.one();
        c.c[5] = f.from_scalar(2);
        assert!(!is_unit(&alg, &c).unwrap());
    }

    #[test]
    fn char_inverse_matches_regular_solve() {
        let f = FqField::new(3, 4).unwrap();
        let alg = GroupAlgebra::new(FqCoeff::new(&f, 1).unwrap(), AbelianGroup::cyclic(5));
        // a = 1 + g + 2g⁴ : check unit and compare the two inversion routes
        let mut a = alg.one();
        a.c[1] = f.one();
        a.c[4] = f.from_scalar(2);
        let via_chars = invert_via_characters(&alg, &a).unwrap();
        assert!(alg.is_one(&alg.mul(&a, &via_chars)));
        let via_regular = alg.invert_regular(&a).unwrap();
        assert_eq!(via_chars, via_regular);
    }
}
