//! Canonical identification of a standalone field F_{p^t} with the unique
//! degree-t subfield of a universe field F_{p^M} (t | M).
//!
//! The identification sends the standalone generator to the
//! lexicographically least root of the standalone modulus inside the
//! universe, so it is deterministic: two runs (or two processes) always
//! agree on the embedding.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::linalg::solve_columns;
use crate::ff::poly::{find_root, FqPoly};
use crate::ff::{FqElem, FqField};

/// A fixed isomorphism from a standalone field onto the degree-t subfield
/// of a universe field, with its inverse.
pub struct SubfieldIso {
    pub sub: Arc<FqField>,
    pub universe: Arc<FqField>,
    /// Image of the standalone generator: the lex-least root of
    /// `sub.modulus` in the universe.
    pub rho: FqElem,
    /// Universe coordinates of ρ^j for j < t (columns of the embedding).
    cols: Vec<Vec<u64>>,
}

impl SubfieldIso {
    pub fn new(sub: &Arc<FqField>, universe: &Arc<FqField>) -> Result<SubfieldIso> {
        if sub.p != universe.p {
            return Err(Error::Domain(
                "subfield identification requires equal characteristics".into(),
            ));
        }
        if universe.m % sub.m != 0 {
            return Err(Error::Domain(format!(
                "no subfield of degree {} inside a degree-{} field",
                sub.m, universe.m
            )));
        }
        let lifted = FqPoly::new(
            universe,
            sub.modulus
                .iter()
                .map(|&c| universe.from_scalar(c))
                .collect(),
        );
        let rho = find_root(&lifted)?;
        let mut cols = Vec::with_capacity(sub.m);
        let mut pw = universe.one();
        for _ in 0..sub.m {
            cols.push(pw.c.clone());
            pw = pw.mul(&rho);
        }
        Ok(SubfieldIso {
            sub: sub.clone(),
            universe: universe.clone(),
            rho,
            cols,
        })
    }

    /// Map a standalone element into the universe.
    pub fn to_universe(&self, a: &FqElem) -> FqElem {
        debug_assert!(crate::ff::same_field(&a.field, &self.sub));
        let mut c = vec![0u64; self.universe.m];
        for (j, &aj) in a.c.iter().enumerate() {
            if aj == 0 {
                continue;
            }
            for (i, &b) in self.cols[j].iter().enumerate() {
                c[i] = (c[i] + aj * b) % self.universe.p;
            }
        }
        self.universe.elem(c)
    }

    /// Map a universe element lying in the image subfield back to the
    /// standalone presentation.
    pub fn from_universe(&self, x: &FqElem) -> Result<FqElem> {
        debug_assert!(crate::ff::same_field(&x.field, &self.universe));
        let a = solve_columns(self.universe.p, &self.cols, &x.c).ok_or_else(|| {
            Error::Domain("element lies outside the identified subfield".into())
        })?;
        Ok(self.sub.elem(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_ring_structure() {
        let sub = FqField::new(3, 2).unwrap();
        let uni = FqField::new(3, 6).unwrap();
        let iso = SubfieldIso::new(&sub, &uni).unwrap();
        // ρ satisfies the standalone modulus inside the universe
        let lifted = FqPoly::new(
            &uni,
            sub.modulus.iter().map(|&c| uni.from_scalar(c)).collect(),
        );
        assert!(lifted.eval(&iso.rho).is_zero());
        // roundtrip + multiplicativity + Frobenius compatibility on all 9
        let elems: Vec<FqElem> = sub.subfield_iter(2).unwrap().collect();
        for a in &elems {
            let ua = iso.to_universe(a);
            assert!(ua.in_subfield(2));
            assert_eq!(iso.from_universe(&ua).unwrap(), *a);
            for b in &elems {
                let ub = iso.to_universe(b);
                assert_eq!(iso.to_universe(&a.mul(b)), ua.mul(&ub));
                assert_eq!(iso.to_universe(&a.add(b)), ua.add(&ub));
            }
            assert_eq!(iso.to_universe(&a.frobenius()), ua.frobenius());
        }
        // an element outside the subfield is rejected
        let gen = uni.gen_elem();
        assert!(iso.from_universe(&gen).is_err());
    }

    #[test]
    fn identity_when_degrees_match() {
        // same degree and same (lex-least) modulus: ρ is the generator itself
        let sub = FqField::new(5, 3).unwrap();
        let uni = FqField::new(5, 3).unwrap();
        let iso = SubfieldIso::new(&sub, &uni).unwrap();
        assert_eq!(iso.rho, uni.gen_elem());
        let a = sub.elem(vec![2, 0, 4]);
        assert_eq!(iso.to_universe(&a).c, vec![2, 0, 4]);
    }
}
