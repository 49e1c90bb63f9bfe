//! Property-based tests of the algebraic invariants the constructions rest
//! on: resolvend identities and square-root laws in group algebras, character
//! transform laws, and p-adic precision/arithmetic laws. All checks are
//! exact — equality on the nose over finite fields, equality at the carried
//! precision over p-adic rings.

use std::sync::Arc;

use proptest::prelude::*;

use sdnb::ff::{FqElem, FqField};
use sdnb::finite::is_normal;
use sdnb::grpalg::chars::{char_decompose, char_recompose, is_unit, CharData};
use sdnb::grpalg::{AbelianGroup, FqCoeff, Ga, GroupAlgebra};
use sdnb::padic::ring::LocalRing;
use sdnb::padic::{BaseElem, LocalBase};

// ---------------------------------------------------------------------------
// helpers
// ---------------------------------------------------------------------------

fn ff_algebra(p: u64, udeg: usize, m: usize, d: u64) -> (Arc<FqField>, GroupAlgebra<FqCoeff>) {
    let universe = FqField::new(p, udeg).unwrap();
    let alg = GroupAlgebra::new(
        FqCoeff::new(&universe, m).unwrap(),
        AbelianGroup::cyclic(d),
    );
    (universe, alg)
}

/// R(x) = Σ_g Tr(x·σ^g(x))·g for x in the degree-d extension of F_{p^m}.
fn resolvend_gram_of(
    alg: &GroupAlgebra<FqCoeff>,
    x: &FqElem,
    m: usize,
    d: usize,
) -> Ga<FqElem> {
    alg.from_coeffs(
        (0..d)
            .map(|g| x.mul(&x.frobenius_pexp(m * g)).rel_trace(m, d).unwrap())
            .collect(),
    )
}

/// u ∘ x = Σ_g u_g·σ^g(x): the group-algebra action on the extension field.
fn act(alg: &GroupAlgebra<FqCoeff>, u: &Ga<FqElem>, x: &FqElem, m: usize) -> FqElem {
    alg.group_act(
        u,
        x,
        |g, y| y.frobenius_pexp(m * g),
        |c, y| c.mul(y),
        |a, b| a.add(b),
        x.field.zero(),
    )
}

fn elem_from(field: &Arc<FqField>, coords: Vec<u64>) -> FqElem {
    field.elem(coords)
}

prop_compose! {
    /// Coordinates for one element of F_{3^5}.
    fn f3_5_coords()(v in proptest::collection::vec(0u64..3, 5)) -> Vec<u64> { v }
}

prop_compose! {
    /// Coefficients (as F_3 scalars) for one element of F_3[C_5].
    fn f3_c5_coeffs()(v in proptest::collection::vec(0u64..3, 5)) -> Vec<u64> { v }
}

// ---------------------------------------------------------------------------
// group-algebra resolvend laws
// ---------------------------------------------------------------------------

proptest! {
    /// ε(R(x)) = Tr(x)² and J(R(x)) = R(x) for random x ∈ F_{3^5}.
    #[test]
    fn resolvend_gram_laws(coords in f3_5_coords()) {
        let (universe, alg) = ff_algebra(3, 5, 1, 5);
        let x = elem_from(&universe, coords);
        let r = resolvend_gram_of(&alg, &x, 1, 5);
        let tr = x.rel_trace(1, 5).unwrap();
        prop_assert_eq!(alg.augmentation(&r), tr.mul(&tr));
        prop_assert!(alg.is_j_fixed(&r));
    }

    /// R(u∘x) = u·J(u)·R(x) for random units u of F_3[C_5] and random
    /// x ∈ F_{3^5}. The unit test runs through characters of C_5, which need
    /// the 5-th roots of unity, so everything is computed inside F_{3^20} and
    /// x is drawn from its degree-5 subfield.
    #[test]
    fn resolvend_twists_by_unit_times_involution(
        xc in f3_5_coords(),
        uc in f3_c5_coeffs(),
    ) {
        let (universe, alg) = ff_algebra(3, 20, 1, 5);
        let u = alg.from_coeffs(uc.into_iter().map(|c| universe.from_scalar(c)).collect());
        prop_assume!(is_unit(&alg, &u).unwrap());
        let basis = universe.subfield_basis(5).unwrap();
        let x = xc.iter().zip(basis.iter()).fold(universe.zero(), |acc, (c, b)| {
            acc.add(&universe.elem(b.clone()).mul(&universe.from_scalar(*c)))
        });
        let ux = act(&alg, &u, &x, 1);
        let lhs = resolvend_gram_of(&alg, &ux, 1, 5);
        let rhs = alg.mul(&alg.mul(&u, &alg.involution(&u)), &resolvend_gram_of(&alg, &x, 1, 5));
        prop_assert_eq!(lhs, rhs);
    }

    /// Normality of x is equivalent to R(x) being a unit (over F_27/F_3).
    #[test]
    fn normal_iff_resolvend_gram_unit(coords in proptest::collection::vec(0u64..3, 3)) {
        let (universe, alg) = ff_algebra(3, 3, 1, 3);
        let x = elem_from(&universe, coords);
        let r = resolvend_gram_of(&alg, &x, 1, 3);
        let normal = is_normal(&x, 1, 3).unwrap();
        prop_assert_eq!(normal, is_unit(&alg, &r).unwrap());
    }

    /// a·invert_unit(a) = 1 on random units, both for an order prime to the
    /// characteristic (character route) and for a p-group (augmentation route).
    #[test]
    fn inverse_of_unit_is_two_sided(
        uc in f3_c5_coeffs(),
        wc in proptest::collection::vec(0u64..3, 3),
    ) {
        let (u5, alg5) = ff_algebra(3, 4, 1, 5);
        let u = alg5.from_coeffs(uc.into_iter().map(|c| u5.from_scalar(c)).collect());
        prop_assume!(is_unit(&alg5, &u).unwrap());
        let uinv = alg5.invert_unit(&u).unwrap();
        prop_assert!(alg5.is_one(&alg5.mul(&u, &uinv)));
        prop_assert!(alg5.is_one(&alg5.mul(&uinv, &u)));

        let (u3, alg3) = ff_algebra(3, 1, 1, 3);
        let w = alg3.from_coeffs(wc.into_iter().map(|c| u3.from_scalar(c)).collect());
        prop_assume!(!w.c.iter().fold(u3.zero(), |a, b| a.add(b)).is_zero());
        let winv = alg3.invert_unit(&w).unwrap();
        prop_assert!(alg3.is_one(&alg3.mul(&w, &winv)));
    }

    /// sqrt_unipotent_charp squares back on random unipotent units of
    /// F_3[C_9], and preserves J-fixedness.
    #[test]
    fn unipotent_sqrt_squares_back(coeffs in proptest::collection::vec(0u64..3, 8)) {
        let (universe, alg) = ff_algebra(3, 1, 1, 9);
        // force augmentation 1: set the identity coefficient accordingly
        let mut c: Vec<FqElem> = vec![universe.zero(); 9];
        for (i, &v) in coeffs.iter().enumerate() {
            c[i + 1] = universe.from_scalar(v);
        }
        let tail_sum = c[1..].iter().fold(universe.zero(), |a, b| a.add(b));
        c[0] = universe.one().sub(&tail_sum);
        let w = alg.from_coeffs(c);
        let s = alg.sqrt_unipotent_charp(&w).unwrap();
        prop_assert_eq!(alg.mul(&s, &s), w.clone());
        // symmetrize to get a J-fixed unipotent unit; its root is J-fixed
        let wj = alg.mul(&w, &alg.involution(&w));
        let sj = alg.sqrt_unipotent_charp(&wj).unwrap();
        prop_assert!(alg.is_j_fixed(&sj));
    }
}

// ---------------------------------------------------------------------------
// character transform laws
// ---------------------------------------------------------------------------

proptest! {
    /// The character transform is a ring isomorphism: multiplicative on
    /// random pairs, and recompose ∘ decompose is the identity.
    #[test]
    fn character_transform_is_ring_iso(
        ac in f3_c5_coeffs(),
        bc in f3_c5_coeffs(),
    ) {
        let (universe, alg) = ff_algebra(3, 4, 1, 5);
        let cd = CharData::new(&alg).unwrap();
        let a = alg.from_coeffs(ac.into_iter().map(|c| universe.from_scalar(c)).collect());
        let b = alg.from_coeffs(bc.into_iter().map(|c| universe.from_scalar(c)).collect());
        let va = char_decompose(&alg, &cd, &a);
        let vb = char_decompose(&alg, &cd, &b);
        let vab = char_decompose(&alg, &cd, &alg.mul(&a, &b));
        for ((x, y), xy) in va.iter().zip(&vb).zip(&vab) {
            prop_assert_eq!(x.mul(y), xy.clone());
        }
        prop_assert_eq!(char_recompose(&alg, &cd, &va).unwrap(), a);
    }
}

// ---------------------------------------------------------------------------
// p-adic arithmetic laws
// ---------------------------------------------------------------------------

fn base_elem_from_digits(base: &Arc<LocalBase>, digits: &[Vec<u64>]) -> BaseElem {
    base.from_digit_lists(digits, 0, base.w).unwrap()
}

prop_compose! {
    /// Digit lists for one integral element of an unramified quadratic base
    /// over Z_3, 10 digits per coordinate.
    fn z9_digits()(v in proptest::collection::vec(proptest::collection::vec(0u64..3, 10), 2)) -> Vec<Vec<u64>> { v }
}

proptest! {
    /// Raising working precision never changes the digits already computed:
    /// the same arithmetic at w and at 2w agrees on every original digit.
    #[test]
    fn doubled_precision_agrees_on_original_digits(
        ad in z9_digits(),
        bd in z9_digits(),
    ) {
        let lo = LocalBase::new(3, 2, 10).unwrap();
        let hi = LocalBase::new(3, 2, 20).unwrap();
        let combine = |base: &Arc<LocalBase>| {
            let a = base_elem_from_digits(base, &ad);
            let b = base_elem_from_digits(base, &bd);
            // a·b + b·frob(a) + a exercises mul, add, and Frobenius
            a.mul(&b).add(&b.mul(&a.frob(1))).add(&a)
        };
        let xlo = combine(&lo);
        let xhi = combine(&hi);
        prop_assert_eq!(xlo.off, xhi.off);
        for (la, lb) in xlo.digit_lists().iter().zip(&xhi.digit_lists()) {
            prop_assert_eq!(&lb[..la.len()], &la[..]);
        }
    }

    /// Exact unit inversion: a·a⁻¹ = 1 at full precision for units.
    #[test]
    fn unit_inverse_is_exact(ad in z9_digits()) {
        let base = LocalBase::new(3, 2, 12).unwrap();
        let a = base_elem_from_digits(&base, &ad);
        prop_assume!(matches!(a.valuation(), Ok(0)));
        let ainv = a.inv().unwrap();
        let dev = a.mul(&ainv).sub(&base.one());
        prop_assert!(dev.zeroish());
        prop_assert!(dev.absprec() >= 12);
    }

    /// Frobenius is a ring homomorphism and a valuation isometry.
    #[test]
    fn frobenius_respects_ring_structure(ad in z9_digits(), bd in z9_digits()) {
        let base = LocalBase::new(3, 2, 10).unwrap();
        let a = base_elem_from_digits(&base, &ad);
        let b = base_elem_from_digits(&base, &bd);
        prop_assert_eq!(a.mul(&b).frob(1), a.frob(1).mul(&b.frob(1)));
        prop_assert_eq!(a.add(&b).frob(1), a.frob(1).add(&b.frob(1)));
        if let Ok(v) = a.valuation() {
            prop_assert_eq!(a.frob(1).valuation().unwrap(), v);
        }
    }

    /// Teichmüller lifts: residue-faithful and genuinely (q−1)-torsion.
    #[test]
    fn teichmuller_is_torsion_lift(c0 in 0u64..3, c1 in 0u64..3) {
        let base = LocalBase::new(3, 2, 10).unwrap();
        let c = base.resfield.elem(vec![c0, c1]);
        prop_assume!(!c.is_zero());
        let t = base.teichmuller(&c);
        prop_assert_eq!(t.residue().unwrap(), c);
        // ω^q = ω for q = 9
        prop_assert_eq!(t.pow_u128(9), t);
    }

    /// Trace is additive and norm is multiplicative over a ramified layer.
    #[test]
    fn trace_additive_norm_multiplicative(
        ad in proptest::collection::vec(proptest::collection::vec(0u64..7, 8), 3),
        bd in proptest::collection::vec(proptest::collection::vec(0u64..7, 8), 3),
    ) {
        // the tame cubic layer over Z_7: t³ = −7
        let base = LocalBase::new(7, 1, 8).unwrap();
        let ring = LocalRing::new(&base, 3, Some(vec![7, 0, 0, 1])).unwrap();
        let a = ring.from_digit_lists(&ad, 0, 8).unwrap();
        let b = ring.from_digit_lists(&bd, 0, 8).unwrap();
        let tr_sum = a.add(&b).trace_over_base();
        prop_assert_eq!(tr_sum, a.trace_over_base().add(&b.trace_over_base()));
        let n_ab = a.mul(&b).norm_over_base().unwrap();
        prop_assert_eq!(n_ab, a.norm_over_base().unwrap().mul(&b.norm_over_base().unwrap()));
    }
}
