//! Group algebras O_K[G] with p-adic coefficients: residue reduction,
//! naive lifts, Newton inversion, and the Hensel square root used to
//! factor resolvend Gram elements.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grpalg::{Coeff, FqCoeff, Ga, GroupAlgebra};

use super::{same_base, BaseElem, LocalBase};

/// p-adic coefficients for a group algebra: elements of an unramified base
/// ring with pessimistic precision tracking.
#[derive(Clone)]
pub struct PadicCoeff {
    pub base: Arc<LocalBase>,
}

impl Coeff for PadicCoeff {
    type E = BaseElem;
    fn zero(&self) -> BaseElem {
        self.base.zero()
    }
    fn one(&self) -> BaseElem {
        self.base.one()
    }
    fn from_u64(&self, v: u64) -> BaseElem {
        self.base.from_u64(v)
    }
    fn add(&self, a: &BaseElem, b: &BaseElem) -> BaseElem {
        a.add(b)
    }
    fn sub(&self, a: &BaseElem, b: &BaseElem) -> BaseElem {
        a.sub(b)
    }
    fn neg(&self, a: &BaseElem) -> BaseElem {
        a.neg()
    }
    fn mul(&self, a: &BaseElem, b: &BaseElem) -> BaseElem {
        a.mul(b)
    }
    /// Treated as zero only when indistinguishable from zero at the full
    /// working precision: a low-precision zeroish coefficient still carries
    /// an error bound that must not be silently dropped from convolutions.
    fn is_zero(&self, a: &BaseElem) -> bool {
        a.zeroish() && a.absprec() >= self.base.w as i64
    }
    fn inv(&self, a: &BaseElem) -> Result<BaseElem> {
        a.inv()
    }
}

impl GroupAlgebra<PadicCoeff> {
    /// The residue algebra k_L[G], with the coefficient base field marked as
    /// the degree-`base_pexp` subfield (the residue field of K).
    pub fn residue_algebra(&self, base_pexp: usize) -> Result<GroupAlgebra<FqCoeff>> {
        Ok(GroupAlgebra::new(
            FqCoeff::new(&self.ring.base.resfield, base_pexp)?,
            self.group.clone(),
        ))
    }

    /// Coefficient-wise reduction mod p. Errors if any coefficient is not
    /// integral.
    pub fn residue(&self, a: &Ga<BaseElem>) -> Result<Ga<crate::ff::FqElem>> {
        let mut c = Vec::with_capacity(a.c.len());
        for x in &a.c {
            c.push(x.residue()?);
        }
        Ok(Ga { c })
    }

    /// Coefficient-wise naive digit lift at the working precision.
    pub fn lift(&self, abar: &Ga<crate::ff::FqElem>) -> Ga<BaseElem> {
        Ga {
            c: abar.c.iter().map(|x| self.ring.base.lift(x)).collect(),
        }
    }

    /// Invert a unit of O_K[G]: seed with an exact residue-algebra inverse,
    /// then Newton-double to the working precision, verifying a·z = 1.
    pub fn invert_unit(&self, a: &Ga<BaseElem>) -> Result<Ga<BaseElem>> {
        let rbar = self.residue_algebra(self.ring.base.resfield.m)?;
        let abar = self.residue(a)?;
        let zbar = rbar.invert_regular(&abar)?;
        let mut z = self.lift(&zbar);
        let two = self.scalar(&self.ring.base.from_u64(2));
        let w = self.ring.base.w;
        let mut rounds = 1usize;
        let mut gain = 1usize;
        while gain < w {
            gain *= 2;
            rounds += 1;
        }
        for _ in 0..rounds {
            z = self.mul(&z, &self.sub(&two, &self.mul(a, &z)));
        }
        // a·z must be indistinguishable from 1 at the precision the inputs
        // actually carry (inputs with a negative valuation offset legitimately
        // determine fewer than w absolute digits).
        let dev = self.sub(&self.mul(a, &z), &self.one());
        if dev.c.iter().any(|c| !c.zeroish() || c.absprec() < 1) {
            return Err(Error::Internal(
                "group-algebra inversion failed to converge".into(),
            ));
        }
        Ok(z)
    }

    /// Square root of u by Hensel lifting from a residue square root:
    /// w ← (w + u·w^{−1})/2. The seed must square to the residue of u; the
    /// result squares back to u at the working precision and inherits
    /// J-fixedness from u and the seed.
    pub fn hensel_sqrt(&self, u: &Ga<BaseElem>, seed: &Ga<crate::ff::FqElem>) -> Result<Ga<BaseElem>> {
        let rbar = self.residue_algebra(self.ring.base.resfield.m)?;
        let ubar = self.residue(u)?;
        if rbar.mul(seed, seed) != ubar {
            return Err(Error::Domain(
                "square-root seed does not square to the residue".into(),
            ));
        }
        let inv2 = self.scalar(&self.ring.base.from_u64(2).inv()?);
        let mut w = self.lift(seed);
        let prec = self.ring.base.w;
        let mut rounds = 1usize;
        let mut gain = 1usize;
        while gain < prec {
            gain *= 2;
            rounds += 1;
        }
        for _ in 0..rounds {
            let winv = self.invert_unit(&w)?;
            w = self.mul(&self.add(&w, &self.mul(u, &winv)), &inv2);
        }
        if self.mul(&w, &w) != *u {
            return Err(Error::Internal(
                "group-algebra square root failed to converge".into(),
            ));
        }
        if self.is_j_fixed(u) && rbar.is_j_fixed(seed) && !self.is_j_fixed(&w) {
            return Err(Error::Internal(
                "square root lost J-fixedness during lifting".into(),
            ));
        }
        Ok(w)
    }
}

/// Convenience constructor for O_K[G] over a given base.
pub fn padic_algebra(base: &Arc<LocalBase>, group: crate::grpalg::AbelianGroup) -> GroupAlgebra<PadicCoeff> {
    GroupAlgebra::new(PadicCoeff { base: base.clone() }, group)
}

/// Structural equality of the coefficient contexts (used by certificate
/// verification to rebuild algebras).
pub fn same_coeff(a: &PadicCoeff, b: &PadicCoeff) -> bool {
    same_base(&a.base, &b.base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpalg::AbelianGroup;

    #[test]
    fn inversion_in_z7_c4() {
        let base = LocalBase::new(7, 1, 32).unwrap();
        let alg = padic_algebra(&base, AbelianGroup::cyclic(4));
        // 2 + g + 7g²: unit (residue augmentation 3 ≠ 0, residue invertible)
        let mut a = alg.scalar(&base.from_u64(2));
        a = alg.add(&a, &alg.basis_elem(1));
        a = alg.add(&a, &alg.scalar_mul(&base.from_u64(7), &alg.basis_elem(2)));
        let z = alg.invert_unit(&a).unwrap();
        assert!(alg.is_one(&alg.mul(&a, &z)));
    }

    #[test]
    fn sqrt_of_one_plus_p_perturbation() {
        // u = 1 + 3·(J-fixed element) in Z_3[C_5]: seed 1 works
        let base = LocalBase::new(3, 1, 32).unwrap();
        let alg = padic_algebra(&base, AbelianGroup::cyclic(5));
        let mut u = alg.one();
        for (g, k) in [(1usize, 2u64), (4, 2), (2, 7), (3, 7)] {
            let t = alg.scalar_mul(&base.from_u64(3 * k), &alg.basis_elem(g));
            u = alg.add(&u, &t);
        }
        assert!(alg.is_j_fixed(&u));
        let rbar = alg.residue_algebra(1).unwrap();
        let w = alg.hensel_sqrt(&u, &rbar.one()).unwrap();
        assert_eq!(alg.mul(&w, &w), u);
        assert!(alg.is_j_fixed(&w));
    }

    #[test]
    fn sqrt_rejects_bad_seed() {
        let base = LocalBase::new(3, 1, 16).unwrap();
        let alg = padic_algebra(&base, AbelianGroup::cyclic(5));
        let u = alg.one();
        let rbar = alg.residue_algebra(1).unwrap();
        let bad = rbar.basis_elem(1); // g² = g² ≠ 1 in F_3[C_5]
        assert!(matches!(
            alg.hensel_sqrt(&u, &bad),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn residue_and_lift_roundtrip() {
        let base = LocalBase::new(5, 2, 16).unwrap();
        let alg = padic_algebra(&base, AbelianGroup::cyclic(3));
        let abar = Ga {
            c: vec![
                base.resfield.from_scalar(2),
                base.resfield.gen_elem(),
                base.resfield.zero(),
            ],
        };
        let a = alg.lift(&abar);
        assert_eq!(alg.residue(&a).unwrap(), abar);
        // non-integral coefficient rejected
        let bad = alg.scalar(&base.from_u64(5).inv().unwrap());
        assert!(alg.residue(&bad).is_err());
    }

    #[test]
    fn lenient_zero_respects_precision() {
        let base = LocalBase::new(3, 1, 16).unwrap();
        let ring = PadicCoeff { base: base.clone() };
        let exactish = base.from_u64(0); // zeroish at full precision
        assert!(ring.is_zero(&exactish));
        // a difference known only to 2 digits is NOT discardable
        let x = base.from_u64_at(1, 2);
        let lowprec = x.sub(&x);
        assert!(lowprec.zeroish());
        assert!(!ring.is_zero(&lowprec));
    }
}
