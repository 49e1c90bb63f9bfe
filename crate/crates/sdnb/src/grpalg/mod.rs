//! Group algebras R[G] for finite abelian G, and the resolvend calculus.
//!
//! The coefficient ring is abstracted by [`Coeff`] so the same convolution,
//! involution, and square-root machinery serves both finite-field
//! coefficients (self-dual normal bases of finite fields) and p-adic
//! coefficients (self-dual integral normal bases of local fields).
//!
//! The central object is the resolvend Gram element
//! R(x) = Σ_g Tr(x·g(x))·g ∈ R[G]: x generates a (self-dual) normal basis
//! exactly when R(x) is a unit (equal to 1), and any factorization
//! R(x) = u·J(u) with J the inversion involution turns a normal generator x
//! into the self-dual generator u^{−1}∘x.

pub mod chars;

use crate::error::{Error, Result};
use crate::ff::{FqElem, FqField};
use num_bigint::BigUint;
use num_traits::One;
use std::sync::Arc;

/// A finite abelian group presented as a product of cyclic factors.
/// Elements are ranked in mixed radix with the last factor varying fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub orders: Vec<u64>,
    size: usize,
    add_table: Vec<u32>,
    neg_table: Vec<u32>,
}

impl AbelianGroup {
    pub fn product(orders: Vec<u64>) -> AbelianGroup {
        assert!(!orders.is_empty() && orders.iter().all(|&n| n > 0));
        let size = orders.iter().product::<u64>() as usize;
        assert!(size <= 1 << 20, "group too large");
        let mut g = AbelianGroup {
            orders,
            size,
            add_table: vec![],
            neg_table: vec![],
        };
        let mut neg = vec![0u32; size];
        for a in 0..size {
            let ia = g.unrank(a);
            let ineg: Vec<u64> = ia
                .iter()
                .zip(&g.orders)
                .map(|(&x, &n)| (n - x) % n)
                .collect();
            neg[a] = g.rank_of(&ineg) as u32;
        }
        let mut add = vec![0u32; size * size];
        for a in 0..size {
            let ia = g.unrank(a);
            for b in 0..size {
                let ib = g.unrank(b);
                let s: Vec<u64> = ia
                    .iter()
                    .zip(ib.iter())
                    .zip(&g.orders)
                    .map(|((&x, &y), &n)| (x + y) % n)
                    .collect();
                add[a * size + b] = g.rank_of(&s) as u32;
            }
        }
        g.add_table = add;
        g.neg_table = neg;
        g
    }

    pub fn cyclic(n: u64) -> AbelianGroup {
        AbelianGroup::product(vec![n])
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// lcm of the cyclic factor orders.
    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1u64, |acc, &n| num_integer::lcm(acc, n))
    }

    pub fn rank_of(&self, idx: &[u64]) -> usize {
        debug_assert_eq!(idx.len(), self.orders.len());
        let mut r = 0usize;
        for (x, n) in idx.iter().zip(&self.orders) {
            r = r * (*n as usize) + (*x as usize);
        }
        r
    }

    pub fn unrank(&self, mut r: usize) -> Vec<u64> {
        let mut idx = vec![0u64; self.orders.len()];
        for k in (0..self.orders.len()).rev() {
            let n = self.orders[k] as usize;
            idx[k] = (r % n) as u64;
            r /= n;
        }
        idx
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add_table[a * self.size + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg_table[a] as usize
    }
}

/// Coefficient-ring abstraction: a commutative ring with identity, carried
/// by a context value (the ring may hold shared structure such as a field
/// or a precision contract).
pub trait Coeff {
    type E: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_u64(&self, v: u64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn inv(&self, a: &Self::E) -> Result<Self::E>;
}

/// Finite-field coefficients: the base field F_q = F_{p^base_pexp} realized
/// inside a universe field. Elements are universe elements that are
/// expected to lie in the base subfield.
#[derive(Clone)]
pub struct FqCoeff {
    pub field: Arc<FqField>,
    pub base_pexp: usize,
}

impl FqCoeff {
    pub fn new(field: &Arc<FqField>, base_pexp: usize) -> Result<FqCoeff> {
        if base_pexp == 0 || field.m % base_pexp != 0 {
            return Err(Error::Domain(format!(
                "no base subfield of degree {} inside the degree-{} universe",
                base_pexp, field.m
            )));
        }
        Ok(FqCoeff {
            field: field.clone(),
            base_pexp,
        })
    }
}

impl Coeff for FqCoeff {
    type E = FqElem;
    fn zero(&self) -> FqElem {
        self.field.zero()
    }
    fn one(&self) -> FqElem {
        self.field.one()
    }
    fn from_u64(&self, v: u64) -> FqElem {
        self.field.from_scalar(v)
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.add(b)
    }
    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.sub(b)
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        a.neg()
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.mul(b)
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &FqElem) -> Result<FqElem> {
        a.inv()
    }
}

/// An element of R[G]: one coefficient per group element, in rank order.
#[derive(Clone, PartialEq, Debug)]
pub struct Ga<E> {
    pub c: Vec<E>,
}

/// The algebra R[G]: the coefficient context plus the group.
#[derive(Clone)]
pub struct GroupAlgebra<C: Coeff> {
    pub ring: C,
    pub group: AbelianGroup,
}

impl<C: Coeff> GroupAlgebra<C> {
    pub fn new(ring: C, group: AbelianGroup) -> GroupAlgebra<C> {
        GroupAlgebra { ring, group }
    }

    pub fn zero(&self) -> Ga<C::E> {
        Ga {
            c: vec![self.ring.zero(); self.group.size()],
        }
    }

    pub fn one(&self) -> Ga<C::E> {
        let mut a = self.zero();
        a.c[0] = self.ring.one();
        a
    }

    /// The group element of the given rank, as an algebra element.
    pub fn basis_elem(&self, g: usize) -> Ga<C::E> {
        let mut a = self.zero();
        a.c[g] = self.ring.one();
        a
    }

    pub fn from_coeffs(&self, c: Vec<C::E>) -> Ga<C::E> {
        assert_eq!(c.len(), self.group.size(), "coefficient count mismatch");
        Ga { c }
    }

    pub fn scalar(&self, e: &C::E) -> Ga<C::E> {
        let mut a = self.zero();
        a.c[0] = e.clone();
        a
    }

    pub fn add(&self, a: &Ga<C::E>, b: &Ga<C::E>) -> Ga<C::E> {
        Ga {
            c: a.c
                .iter()
                .zip(&b.c)
                .map(|(x, y)| self.ring.add(x, y))
                .collect(),
        }
    }

    pub fn sub(&self, a: &Ga<C::E>, b: &Ga<C::E>) -> Ga<C::E> {
        Ga {
            c: a.c
                .iter()
                .zip(&b.c)
                .map(|(x, y)| self.ring.sub(x, y))
                .collect(),
        }
    }

    pub fn neg(&self, a: &Ga<C::E>) -> Ga<C::E> {
        Ga {
            c: a.c.iter().map(|x| self.ring.neg(x)).collect(),
        }
    }

    /// Convolution product over the group.
    pub fn mul(&self, a: &Ga<C::E>, b: &Ga<C::E>) -> Ga<C::E> {
        let n = self.group.size();
        let mut out = vec![self.ring.zero(); n];
        for g in 0..n {
            if self.ring.is_zero(&a.c[g]) {
                continue;
            }
            for h in 0..n {
                if self.ring.is_zero(&b.c[h]) {
                    continue;
                }
                let k = self.group.add(g, h);
                let t = self.ring.mul(&a.c[g], &b.c[h]);
                out[k] = self.ring.add(&out[k], &t);
            }
        }
        Ga { c: out }
    }

    pub fn scalar_mul(&self, e: &C::E, a: &Ga<C::E>) -> Ga<C::E> {
        Ga {
            c: a.c.iter().map(|x| self.ring.mul(e, x)).collect(),
        }
    }

    pub fn pow_big(&self, a: &Ga<C::E>, e: &BigUint) -> Ga<C::E> {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn pow(&self, a: &Ga<C::E>, e: u64) -> Ga<C::E> {
        self.pow_big(a, &BigUint::from(e))
    }

    /// The inversion involution J: Σ a_g·g ↦ Σ a_g·g^{−1}.
    pub fn involution(&self, a: &Ga<C::E>) -> Ga<C::E> {
        let n = self.group.size();
        let mut out = vec![self.ring.zero(); n];
        for g in 0..n {
            out[self.group.neg(g)] = a.c[g].clone();
        }
        Ga { c: out }
    }

    /// The augmentation ε: Σ a_g·g ↦ Σ a_g.
    pub fn augmentation(&self, a: &Ga<C::E>) -> C::E {
        let mut s = self.ring.zero();
        for x in &a.c {
            s = self.ring.add(&s, x);
        }
        s
    }

    pub fn is_j_fixed(&self, a: &Ga<C::E>) -> bool {
        (0..self.group.size()).all(|g| a.c[g] == a.c[self.group.neg(g)])
    }

    pub fn is_one(&self, a: &Ga<C::E>) -> bool {
        a.c[0] == self.ring.one() && a.c[1..].iter().all(|x| self.ring.is_zero(x))
    }

    /// Apply an algebra element to a module element: a∘x = Σ_g a_g·(g·x).
    /// `action` maps a group rank and x to g·x; `mix` multiplies a
    /// coefficient into the module.
    pub fn group_act<T: Clone>(
        &self,
        a: &Ga<C::E>,
        x: &T,
        action: impl Fn(usize, &T) -> T,
        mix: impl Fn(&C::E, &T) -> T,
        add: impl Fn(&T, &T) -> T,
        zero: T,
    ) -> T {
        let mut acc = zero;
        for g in 0..self.group.size() {
            if self.ring.is_zero(&a.c[g]) {
                continue;
            }
            let gx = action(g, x);
            acc = add(&acc, &mix(&a.c[g], &gx));
        }
        acc
    }

    /// Assemble the resolvend Gram element R(x) = Σ_g Tr(x·g(x))·g from the
    /// pairing traces, and check its two structural identities:
    /// J(R) = R and ε(R) = Tr(x)².
    pub fn resolvend_gram(
        &self,
        pair_trace: impl Fn(usize) -> Result<C::E>,
        trace_x: &C::E,
    ) -> Result<Ga<C::E>> {
        let n = self.group.size();
        let mut c = Vec::with_capacity(n);
        for g in 0..n {
            c.push(pair_trace(g)?);
        }
        let r = Ga { c };
        if !self.is_j_fixed(&r) {
            return Err(Error::Internal(
                "resolvend Gram element is not fixed by the inversion involution".into(),
            ));
        }
        let eps = self.augmentation(&r);
        let tr2 = self.ring.mul(trace_x, trace_x);
        if eps != tr2 {
            return Err(Error::Internal(
                "resolvend augmentation differs from the squared trace".into(),
            ));
        }
        Ok(r)
    }
}

impl GroupAlgebra<FqCoeff> {
    fn p(&self) -> u64 {
        self.ring.field.p
    }

    /// True when |G| is a power of the coefficient characteristic.
    fn is_p_group(&self) -> bool {
        let p = self.p();
        let mut n = self.group.size() as u64;
        while n % p == 0 {
            n /= p;
        }
        n == 1
    }

    /// Inverse of a unit of F_q[G].
    ///
    /// Routes: for p-groups, units are detected by a nonzero augmentation
    /// and inverted through the unipotent p-power trick; for cyclic G of
    /// order prime to p, character values are tested and inverted
    /// pointwise; any remaining shape falls back to solving the regular
    /// representation. Every route verifies a·a^{−1} = 1 before returning.
    pub fn invert_unit(&self, a: &Ga<FqElem>) -> Result<Ga<FqElem>> {
        let p = self.p();
        let n = self.group.size() as u64;
        let z = if self.is_p_group() && n > 1 {
            self.invert_p_group(a)?
        } else if n % p != 0 && self.group.orders.len() == 1 {
            chars::invert_via_characters(self, a)?
        } else {
            self.invert_regular(a)?
        };
        if !self.is_one(&self.mul(a, &z)) {
            return Err(Error::Internal("unit inversion failed verification".into()));
        }
        Ok(z)
    }

    /// p-group route: a = ε(a)·(1 + ν) with ν nilpotent, so
    /// a^{p^k} = ε(a)^{p^k} once p^k beats the nilpotency index, and
    /// a^{−1} = a^{p^k − 1} / ε(a)^{p^k}.
    fn invert_p_group(&self, a: &Ga<FqElem>) -> Result<Ga<FqElem>> {
        let eps = self.augmentation(a);
        if eps.is_zero() {
            return Err(Error::Domain(
                "not a unit: the augmentation vanishes".into(),
            ));
        }
        let p = self.p();
        let cap = self.ring.base_pexp * self.group.size();
        let mut power = a.clone(); // a^{p^j}
        let mut partial = self.one(); // a^{p^j − 1}
        let mut scalar = eps.clone(); // ε(a)^{p^j}
        for _ in 0..=cap {
            // is a^{p^j} already scalar? then a^{p^j} = scalar exactly
            if self.is_scalar(&power) {
                if power.c[0] != scalar {
                    return Err(Error::Internal(
                        "scalar power of the unit disagrees with its augmentation power".into(),
                    ));
                }
                return Ok(self.scalar_mul(&scalar.inv()?, &partial));
            }
            // advance: a^{p^{j+1}} = (a^{p^j})^p, a^{p^{j+1}−1} = a^{p^j−1}·(a^{p^j})^{p−1}
            let step = self.pow(&power, p - 1);
            partial = self.mul(&partial, &step);
            power = self.mul(&step, &power);
            scalar = scalar.pow(p as u128);
        }
        Err(Error::Internal(
            "p-power inversion exceeded the nilpotency cap".into(),
        ))
    }

    fn is_scalar(&self, a: &Ga<FqElem>) -> bool {
        a.c[1..].iter().all(|x| x.is_zero())
    }

    /// General fallback: solve a·z = 1 in the regular representation by
    /// Gaussian elimination over the coefficient field.
    pub(crate) fn invert_regular(&self, a: &Ga<FqElem>) -> Result<Ga<FqElem>> {
        let n = self.group.size();
        let field = &self.ring.field;
        // column g of the matrix is a·(basis g): M[h][g] = a_{h − g}
        let mut mat: Vec<Vec<FqElem>> = vec![vec![field.zero(); n + 1]; n];
        for h in 0..n {
            for g in 0..n {
                let diff = self.group.add(h, self.group.neg(g));
                mat[h][g] = a.c[diff].clone();
            }
        }
        mat[0][n] = field.one(); // right-hand side e_0
        // forward elimination, deterministic pivoting
        let mut pivot_row = 0usize;
        let mut pivots = Vec::new();
        for col in 0..n {
            let mut sel = None;
            for r in pivot_row..n {
                if !mat[r][col].is_zero() {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            mat.swap(pivot_row, sel);
            let inv = mat[pivot_row][col].inv()?;
            for j in col..=n {
                mat[pivot_row][j] = mat[pivot_row][j].mul(&inv);
            }
            for r in 0..n {
                if r != pivot_row && !mat[r][col].is_zero() {
                    let f = mat[r][col].clone();
                    for j in col..=n {
                        let t = f.mul(&mat[pivot_row][j]);
                        mat[r][j] = mat[r][j].sub(&t);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
            if pivot_row == n {
                break;
            }
        }
        if pivots.len() != n {
            return Err(Error::Domain(
                "not a unit: the regular representation is singular".into(),
            ));
        }
        let mut z = vec![field.zero(); n];
        for (r, &col) in pivots.iter().enumerate() {
            z[col] = mat[r][n].clone();
        }
        Ok(Ga { c: z })
    }

    /// Square root of a unipotent element of F_p·1 + I in a p-group algebra
    /// (odd p): the least p-power t with w^t = 1 makes w^{(t+1)/2} the
    /// canonical square root.
    pub fn sqrt_unipotent_charp(&self, w: &Ga<FqElem>) -> Result<Ga<FqElem>> {
        let p = self.p();
        if p == 2 {
            return Err(Error::Domain(
                "unipotent square root requires odd characteristic".into(),
            ));
        }
        if !self.is_p_group() {
            return Err(Error::Domain(
                "unipotent square root requires a p-group".into(),
            ));
        }
        if self.augmentation(w) != self.ring.one() {
            return Err(Error::Domain(
                "unipotent square root requires augmentation 1".into(),
            ));
        }
        let w_j_fixed = self.is_j_fixed(w);
        // least k with w^{p^k} = 1 (k is at most log_p of the nilpotency
        // index, itself at most |G|; the cap below is very generous)
        let cap = self.ring.base_pexp * self.group.size();
        let mut k = 0usize;
        let mut cur = w.clone();
        while !self.is_one(&cur) {
            cur = self.pow(&cur, p);
            k += 1;
            if k > cap {
                return Err(Error::Internal(
                    "unipotent order search exceeded the p-power cap".into(),
                ));
            }
        }
        // t = p^k odd; sqrt = w^{(t+1)/2}
        let t = BigUint::from(p).pow(k as u32);
        let e = (&t + BigUint::one()) / BigUint::from(2u32);
        let s = self.pow_big(w, &e);
        if !self.mul(&s, &s).eq(w) {
            return Err(Error::Internal("unipotent square root failed to square back".into()));
        }
        if w_j_fixed && !self.is_j_fixed(&s) {
            return Err(Error::Internal(
                "unipotent square root lost J-fixedness".into(),
            ));
        }
        Ok(s)
    }

    /// Square root of a unit u of F_q[G] for a p-group G (odd p): factor
    /// u = ε(u)·w with w unipotent, take the base-field square root of the
    /// augmentation and the canonical unipotent square root of w.
    ///
    /// `root_hint`, when given, selects the base-field branch: it must
    /// square to ε(u).
    pub fn sqrt_modular_pgroup(
        &self,
        u: &Ga<FqElem>,
        root_hint: Option<&FqElem>,
    ) -> Result<Ga<FqElem>> {
        let eps = self.augmentation(u);
        if eps.is_zero() {
            return Err(Error::Domain(
                "not a unit: the augmentation vanishes".into(),
            ));
        }
        let m = self.ring.base_pexp;
        if !eps.in_subfield(m) {
            return Err(Error::Domain(
                "augmentation lies outside the base field".into(),
            ));
        }
        if !eps.is_square_in_subfield(m)? {
            return Err(Error::Domain(
                "augmentation is not a square in the base field".into(),
            ));
        }
        let s0 = match root_hint {
            Some(h) => {
                if h.mul(h) != eps {
                    return Err(Error::Domain(
                        "square-root hint does not square to the augmentation".into(),
                    ));
                }
                h.clone()
            }
            None => eps.sqrt()?,
        };
        let w = self.scalar_mul(&eps.inv()?, u);
        let sw = self.sqrt_unipotent_charp(&w)?;
        let s = self.scalar_mul(&s0, &sw);
        if self.mul(&s, &s) != *u {
            return Err(Error::Internal("modular square root failed to square back".into()));
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(p: u64, m: usize, n: u64) -> GroupAlgebra<FqCoeff> {
        let f = FqField::new(p, m).unwrap();
        GroupAlgebra::new(FqCoeff::new(&f, m).unwrap(), AbelianGroup::cyclic(n))
    }

    #[test]
    fn group_rank_roundtrip() {
        let g = AbelianGroup::product(vec![3, 5]);
        assert_eq!(g.size(), 15);
        assert_eq!(g.exponent(), 15);
        for r in 0..15 {
            assert_eq!(g.rank_of(&g.unrank(r)), r);
        }
        // (1,2) + (2,4) = (0,1)
        let a = g.rank_of(&[1, 2]);
        let b = g.rank_of(&[2, 4]);
        assert_eq!(g.unrank(g.add(a, b)), vec![0, 1]);
        assert_eq!(g.unrank(g.neg(a)), vec![2, 3]);
        let g22 = AbelianGroup::product(vec![2, 2]);
        assert_eq!(g22.exponent(), 2);
    }

    #[test]
    fn algebra_arithmetic_c5() {
        let a5 = alg(3, 1, 5);
        let g = a5.basis_elem(1);
        let one = a5.one();
        // (1 + g)(1 − g) = 1 − g²
        let lhs = a5.mul(&a5.add(&one, &g), &a5.sub(&one, &g));
        let mut expect = a5.one();
        expect.c[2] = a5.ring.field.from_scalar(2); // −1 mod 3
        assert_eq!(lhs, expect);
        // g^5 = 1
        assert!(a5.is_one(&a5.pow(&g, 5)));
        // involution: J(g) = g^4
        assert_eq!(a5.involution(&g), a5.basis_elem(4));
        // augmentation of 1 + 2g + g³ is 1 + 2 + 1 = 1 mod 3
        let mut x = a5.one();
        x.c[1] = a5.ring.field.from_scalar(2);
        x.c[3] = a5.ring.field.one();
        assert_eq!(a5.augmentation(&x), a5.ring.field.one());
    }

    #[test]
    fn invert_char_route_c2_over_f3() {
        // F_9/F_3 viewed through C_2: the algebra element g has inverse g
        let a2 = alg(3, 1, 2);
        let g = a2.basis_elem(1);
        let inv = a2.invert_unit(&g).unwrap();
        assert_eq!(inv, g);
        // 1 + g is NOT a unit (augmentations under both characters: 2, 0)
        let bad = a2.add(&a2.one(), &g);
        assert!(a2.invert_unit(&bad).is_err());
        // 1 + 2g: character values 1+2=0 → also singular? χ_0: 0 → not unit
        let bad2 = a2.add(&a2.one(), &a2.scalar_mul(&a2.ring.field.from_scalar(2), &g));
        assert!(a2.invert_unit(&bad2).is_err());
        // 2 + g: values 2+1 = 0 mod 3 → singular as well; but 2 + 2g… ε = 1,
        // χ_1 = 0 → singular. A true unit: 2·g³?? use scalar 2: inverse 2
        let two = a2.scalar(&a2.ring.field.from_scalar(2));
        let it = a2.invert_unit(&two).unwrap();
        assert_eq!(it, two);
    }

    #[test]
    fn invert_p_group_route() {
        let a9 = alg(3, 1, 9);
        let f = a9.ring.field.clone();
        // a = 1 + (g − 1)² = g² − 2g + 2 = g² + g + 2
        let mut a = a9.zero();
        a.c[0] = f.from_scalar(2);
        a.c[1] = f.one();
        a.c[2] = f.one();
        assert_eq!(a9.augmentation(&a), f.one());
        let inv = a9.invert_unit(&a).unwrap();
        assert!(a9.is_one(&a9.mul(&a, &inv)));
        // augmentation zero → not a unit
        let mut b = a9.zero();
        b.c[0] = f.one();
        b.c[1] = f.from_scalar(2);
        assert!(matches!(a9.invert_unit(&b), Err(Error::Domain(_))));
    }

    #[test]
    fn invert_regular_fallback_c2xc2() {
        let f = FqField::new(3, 1).unwrap();
        let alg = GroupAlgebra::new(
            FqCoeff::new(&f, 1).unwrap(),
            AbelianGroup::product(vec![2, 2]),
        );
        // a = 1 + g1 + g2 − g1g2: all four character values are ±2 ≠ 0
        let mut a = alg.one();
        a.c[alg.group.rank_of(&[1, 0])] = f.one();
        a.c[alg.group.rank_of(&[0, 1])] = f.one();
        a.c[alg.group.rank_of(&[1, 1])] = f.from_scalar(2);
        let inv = alg.invert_unit(&a).unwrap();
        assert!(alg.is_one(&alg.mul(&a, &inv)));
        // 1 + g1 has character value 0 under χ(g1) = −1
        let mut b = alg.one();
        b.c[alg.group.rank_of(&[1, 0])] = f.one();
        assert!(alg.invert_unit(&b).is_err());
    }

    #[test]
    fn sqrt_unipotent_c3() {
        let a3 = alg(3, 1, 3);
        // w = g + g² − 1 is J-fixed with ε(w) = 1 and w³ = 1
        let f = a3.ring.field.clone();
        let mut w = a3.zero();
        w.c[0] = f.from_scalar(2);
        w.c[1] = f.one();
        w.c[2] = f.one();
        assert!(a3.is_j_fixed(&w));
        let s = a3.sqrt_unipotent_charp(&w).unwrap();
        assert_eq!(a3.mul(&s, &s), w);
        assert!(a3.is_j_fixed(&s));
        // g is unipotent but not J-fixed; sqrt(g) = g²
        let g = a3.basis_elem(1);
        let sg = a3.sqrt_unipotent_charp(&g).unwrap();
        assert_eq!(sg, a3.basis_elem(2));
        // augmentation ≠ 1 rejected
        let bad = a3.scalar(&f.from_scalar(2));
        assert!(a3.sqrt_unipotent_charp(&bad).is_err());
    }

    #[test]
    fn sqrt_modular_pgroup_with_hint() {
        // base F_9 (2 = i² is a square there), group C_3
        let f = FqField::new(3, 2).unwrap();
        let a3 = GroupAlgebra::new(FqCoeff::new(&f, 2).unwrap(), AbelianGroup::cyclic(3));
        let mut w = a3.zero();
        w.c[0] = f.from_scalar(2);
        w.c[1] = f.one();
        w.c[2] = f.one();
        let u = a3.scalar_mul(&f.from_scalar(2), &w); // ε(u) = 2
        let s = a3.sqrt_modular_pgroup(&u, None).unwrap();
        assert_eq!(a3.mul(&s, &s), u);
        // hint selects the branch: i and −i both square to 2
        let i = f.elem(vec![0, 1]);
        let s_i = a3.sqrt_modular_pgroup(&u, Some(&i)).unwrap();
        let s_mi = a3.sqrt_modular_pgroup(&u, Some(&i.neg())).unwrap();
        assert_eq!(a3.mul(&s_i, &s_i), u);
        assert_eq!(a3.neg(&s_i), s_mi);
        // a bad hint is rejected
        assert!(a3.sqrt_modular_pgroup(&u, Some(&f.one())).is_err());
        // non-square augmentation over F_3 rejected
        let f3 = FqField::new(3, 1).unwrap();
        let b3 = GroupAlgebra::new(FqCoeff::new(&f3, 1).unwrap(), AbelianGroup::cyclic(3));
        let mut v = b3.zero();
        v.c[0] = f3.one();
        v.c[1] = f3.from_scalar(2);
        v.c[2] = f3.from_scalar(2);
        // ε(v) = 2, not a square mod 3
        assert!(b3.sqrt_modular_pgroup(&v, None).is_err());
    }

    #[test]
    fn resolvend_gram_via_closure() {
        // F_9/F_3, Γ = C_2, x = 1+i: R(x) = Tr(x²)·1 + Tr(x·σx)·σ = 0 + 1·σ
        let f = FqField::new(3, 2).unwrap();
        let alg = GroupAlgebra::new(FqCoeff::new(&f, 1).unwrap(), AbelianGroup::cyclic(2));
        let x = f.elem(vec![1, 1]);
        let conj = [x.clone(), x.frobenius()];
        let tr_x = x.rel_trace(1, 2).unwrap();
        let r = alg
            .resolvend_gram(
                |g| conj[0].mul(&conj[g]).rel_trace(1, 2),
                &tr_x,
            )
            .unwrap();
        assert!(r.c[0].is_zero());
        assert!(r.c[1].is_one());
        // x = i is not normal: R(i) = 1 + 2σ… ε(R) = 0 = Tr(i)² holds, and
        // R is visibly non-unit (char values 1+2=0)
        let y = f.elem(vec![0, 1]);
        let cy = [y.clone(), y.frobenius()];
        let tr_y = y.rel_trace(1, 2).unwrap();
        let ry = alg
            .resolvend_gram(|g| cy[0].mul(&cy[g]).rel_trace(1, 2), &tr_y)
            .unwrap();
        assert!(ry.c[0].is_one());
        assert_eq!(ry.c[1], f.from_scalar(2));
        assert!(alg.invert_unit(&ry).is_err());
    }
}
