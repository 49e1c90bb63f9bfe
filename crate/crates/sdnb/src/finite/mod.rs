//! Self-dual normal basis generators for finite extensions F_{q^n}/F_q.
//!
//! Existence: in odd characteristic a self-dual normal basis exists exactly
//! when n is odd; in characteristic 2, exactly when the exponent of the
//! Galois group (= n) is not divisible by 4.
//!
//! Construction: split n into prime-power parts. The p-power part is built
//! from a Semaev-style trace tower η with Tr(η) ≠ 0, corrected by the
//! square root of its resolvend Gram element in F_q[C_{p^a}]; each
//! prime-to-p part r^e uses a sum of powers of a root θ of X^{r^e} − ζ over
//! the orbit representatives of the character action, corrected through a
//! character-by-character solution of v·J(v) = R. Generators of coprime
//! parts multiply. Everything happens inside one universe field F_{p^M};
//! every branch choice is deterministic, and every claimed identity is
//! re-checked exactly before a generator is returned.

use num_integer::Integer;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::poly::{all_roots, is_irreducible_over_subfield, FqPoly};
use crate::ff::{intutil, lex_cmp, FqElem, FqField};
use crate::grpalg::chars::{char_decompose, char_recompose, CharData};
use crate::grpalg::{AbelianGroup, FqCoeff, Ga, GroupAlgebra};

/// Exact Gram check report: Tr(x·φ^i(x)) = δ_{0,i} for 0 ≤ i < n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramReport {
    pub ok: bool,
    pub failing: Vec<usize>,
}

/// Which construction route produced a tensor factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartInfo {
    pub degree: u64,
    pub route: &'static str,
}

/// A completed construction for F_{q^n}/F_q.
pub struct FfConstruction {
    pub p: u64,
    pub base_pexp: usize,
    pub n: u64,
    pub universe: Arc<FqField>,
    pub x: FqElem,
    pub parts: Vec<PartInfo>,
    pub gram: GramReport,
    pub normal: bool,
}

/// Degree of the universe field F_{p^M} needed for F_{q^n}/F_q: the lcm of
/// m·n with, for each prime-to-p part r^e of n, the degree m·v·r^e of the
/// field where the root θ of X^{r^e} − ζ lives (v = order of q modulo r).
pub fn universe_degree(p: u64, m: usize, n: u64) -> Result<usize> {
    if n == 0 {
        return Err(Error::Parameter("extension degree must be ≥ 1".into()));
    }
    let mut big = m as u64 * n;
    for (r, e) in intutil::factor_u64(n) {
        if r == p {
            continue;
        }
        let q_mod_r = intutil::modpow_u64(p % r, m as u64, r);
        let v = intutil::ord_mod(q_mod_r, r)?;
        let d = r.pow(e);
        big = big.lcm(&(m as u64 * v * d));
    }
    usize::try_from(big).map_err(|_| Error::Parameter("universe degree overflow".into()))
}

/// A Semaev-style trace tower: η_0 = 1 at the bottom field F′ (the largest
/// subfield of F_q of degree prime to p), and at each level a root of
/// f_i = X^p − η_{i−1}·X^{p−1} + η_{i−1}^{2p−1}, chosen lexicographically
/// least. Consecutive relative traces telescope: Tr(η_i) = η_{i−1}.
pub struct SemaevTower {
    /// m: the degree of F_q over F_p.
    pub base_pexp: usize,
    /// a: the tower reaches F_{q^{p^a}}.
    pub height: usize,
    /// m′: degree of F′, the prime-to-p part of m.
    pub boot_pexp: usize,
    /// b: m = m′·p^b; the tower is built from F′ through F_q to the top.
    pub boot_levels: usize,
    /// η′_0 … η′_{b+a}, indexed by level over F′.
    pub etas: Vec<FqElem>,
    /// The level polynomials f_1 … f_{b+a}.
    pub polys: Vec<FqPoly>,
}

impl SemaevTower {
    /// The top element η, a normal generator of F_{q^{p^a}}/F_q.
    pub fn eta(&self) -> &FqElem {
        self.etas.last().unwrap()
    }

    /// Tr_{F_{q^{p^a}}/F_q}(η) = η_b ∈ F_q (nonzero).
    pub fn eta_at_base(&self) -> &FqElem {
        &self.etas[self.boot_levels]
    }
}

/// Build the trace tower for F_{q^{p^height}}/F_q inside the universe.
pub fn semaev_eta(
    universe: &Arc<FqField>,
    base_pexp: usize,
    height: usize,
) -> Result<SemaevTower> {
    let p = universe.p;
    if p == 2 {
        return Err(Error::Domain(
            "the trace-tower construction applies in odd characteristic".into(),
        ));
    }
    let mut boot_pexp = base_pexp;
    let mut boot_levels = 0usize;
    while boot_pexp % p as usize == 0 {
        boot_pexp /= p as usize;
        boot_levels += 1;
    }
    let total = boot_levels + height;
    let top_deg = boot_pexp
        .checked_mul((p as usize).checked_pow(total as u32).ok_or_else(|| {
            Error::Parameter("tower height overflow".into())
        })?)
        .ok_or_else(|| Error::Parameter("tower height overflow".into()))?;
    if top_deg == 0 || universe.m % top_deg != 0 {
        return Err(Error::Domain(format!(
            "universe of degree {} does not contain the tower top of degree {}",
            universe.m, top_deg
        )));
    }
    let mut etas = vec![universe.one()];
    let mut polys = Vec::new();
    for i in 1..=total {
        let prev = etas[i - 1].clone();
        let lvl_below = boot_pexp * (p as usize).pow((i - 1) as u32);
        // f_i = X^p − η_{i−1}·X^{p−1} + η_{i−1}^{2p−1}
        let mut c = vec![universe.zero(); p as usize + 1];
        c[p as usize] = universe.one();
        c[p as usize - 1] = prev.neg();
        c[0] = prev.pow((2 * p - 1) as u128);
        let f = FqPoly::new(universe, c);
        if !is_irreducible_over_subfield(&f, lvl_below)? {
            return Err(Error::Internal(
                "tower polynomial is unexpectedly reducible".into(),
            ));
        }
        let roots = all_roots(&f)?;
        if roots.len() != p as usize {
            return Err(Error::Internal(
                "tower polynomial does not split at the next level".into(),
            ));
        }
        let eta = roots[0].clone(); // lex-least
        let tr = eta.rel_trace(lvl_below, p as usize)?;
        if tr != prev {
            return Err(Error::Internal(
                "tower trace failed to telescope".into(),
            ));
        }
        etas.push(eta);
        polys.push(f);
    }
    let tower = SemaevTower {
        base_pexp,
        height,
        boot_pexp,
        boot_levels,
        etas,
        polys,
    };
    // Tr_{top/F_q}(η) = η_b must be nonzero (it telescopes to 1 over F′)
    if height > 0 {
        let tr_base = tower
            .eta()
            .rel_trace(base_pexp, (p as usize).pow(height as u32))?;
        if tr_base != *tower.eta_at_base() {
            return Err(Error::Internal("tower trace to the base field is inconsistent".into()));
        }
        if tr_base.is_zero() {
            return Err(Error::Internal("tower element has vanishing trace".into()));
        }
    }
    Ok(tower)
}

/// Σ_g a_g·(g-th conjugate), with the conjugates precomputed.
fn act_with_conjugates(
    alg: &GroupAlgebra<FqCoeff>,
    a: &Ga<FqElem>,
    conj: &[FqElem],
) -> FqElem {
    alg.group_act(
        a,
        &alg.ring.field.zero(),
        |g, _| conj[g].clone(),
        |c, t| c.mul(t),
        |x, y| x.add(y),
        alg.ring.field.zero(),
    )
}

/// Conjugates x, φ_q(x), …, φ_q^{n−1}(x) under the base-field Frobenius.
fn conjugates(x: &FqElem, base_pexp: usize, n: usize) -> Vec<FqElem> {
    let mut out = Vec::with_capacity(n);
    let mut cur = x.clone();
    for j in 0..n {
        if j > 0 {
            cur = cur.frobenius_pexp(base_pexp);
        }
        out.push(cur.clone());
    }
    out
}

/// Resolvend Gram element R(x) = Σ_j Tr(x·φ^j(x))·σ^j ∈ F_q[C_n].
fn resolvend(
    alg: &GroupAlgebra<FqCoeff>,
    x: &FqElem,
    conj: &[FqElem],
) -> Result<Ga<FqElem>> {
    let m = alg.ring.base_pexp;
    let n = alg.group.size();
    let tr = x.rel_trace(m, n)?;
    alg.resolvend_gram(|g| x.mul(&conj[g]).rel_trace(m, n), &tr)
}

/// Whether the φ_q-conjugates of x are F_q-linearly independent (x generates
/// a normal basis), by an F_p-rank computation on the scaled conjugate
/// coordinates.
pub fn is_normal(x: &FqElem, base_pexp: usize, n: usize) -> Result<bool> {
    let field = &x.field;
    let conj = conjugates(x, base_pexp, n);
    let basis = field.subfield_basis(base_pexp)?;
    let mut rows = Vec::with_capacity(n * base_pexp);
    for c in &conj {
        for b in basis.iter() {
            let lambda = field.elem(b.clone());
            rows.push(lambda.mul(c).c.clone());
        }
    }
    Ok(crate::ff::linalg::rank(field.p, &rows) == n * base_pexp)
}

fn assert_normal_by_rank(x: &FqElem, base_pexp: usize, n: usize) -> Result<()> {
    if !is_normal(x, base_pexp, n)? {
        return Err(Error::Internal(
            "conjugates fail to span: the element is not normal".into(),
        ));
    }
    Ok(())
}

/// Self-dual generator for the p-power part F_{q^{p^e}}/F_q.
pub fn selfdual_p_power(
    universe: &Arc<FqField>,
    base_pexp: usize,
    e: u32,
) -> Result<FqElem> {
    let p = universe.p;
    let d = p.pow(e);
    let tower = semaev_eta(universe, base_pexp, e as usize)?;
    let eta = tower.eta().clone();
    let alg = GroupAlgebra::new(
        FqCoeff::new(universe, base_pexp)?,
        AbelianGroup::cyclic(d),
    );
    let conj = conjugates(&eta, base_pexp, d as usize);
    let r = resolvend(&alg, &eta, &conj)?;
    // square root of R with the base-field branch pinned to Tr(η)
    let w = alg.sqrt_modular_pgroup(&r, Some(tower.eta_at_base()))?;
    if !alg.is_j_fixed(&w) {
        return Err(Error::Internal("resolvend square root is not J-fixed".into()));
    }
    let winv = alg.invert_unit(&w)?;
    let x = act_with_conjugates(&alg, &winv, &conj);
    check_part_gram(&x, base_pexp, d as usize)?;
    Ok(x)
}

/// Normal generator η for the prime-to-p part F_{q^d}/F_q (d = r^e), built
/// from a root θ of X^d − ζ with ζ the canonical generator of F_{q_1},
/// q_1 = q^v, v = order of q modulo r.
pub fn pprime_eta(
    universe: &Arc<FqField>,
    base_pexp: usize,
    d: u64,
) -> Result<FqElem> {
    let p = universe.p;
    let fac = intutil::factor_u64(d);
    if fac.len() != 1 {
        return Err(Error::Domain(
            "the orbit-sum construction expects a prime-power degree".into(),
        ));
    }
    let (r, _) = fac[0];
    if r == p {
        return Err(Error::Domain(
            "the orbit-sum construction applies to degrees prime to the characteristic".into(),
        ));
    }
    let q_mod_r = intutil::modpow_u64(p % r, base_pexp as u64, r);
    let v = intutil::ord_mod(q_mod_r, r)? as usize;
    let deg_q1 = base_pexp * v;
    let zeta = universe.subfield_generator(deg_q1)?;
    // θ: lexicographically least root of X^d − ζ
    let mut coeffs = vec![zeta.neg()];
    for _ in 1..d {
        coeffs.push(universe.zero());
    }
    coeffs.push(universe.one());
    let binomial = FqPoly::new(universe, coeffs);
    let theta = crate::ff::poly::find_root(&binomial)?;
    // ξ = Σ_{s ∈ S_{q_1}} θ^s over the orbit representatives of t ↦ t·q_1
    let alg_q1 = GroupAlgebra::new(
        FqCoeff::new(universe, deg_q1)?,
        AbelianGroup::cyclic(d),
    );
    let cd1 = CharData::new(&alg_q1)?;
    // The θ⁰ term feeds the trivial-character component of η; its trace down
    // to F_q is v·d, which vanishes exactly when p | v. In that case the
    // constant 1 is replaced by the first c ∈ F_{q_1} (canonical order) with
    // Tr_{F_{q_1}/F_q}(c) ≠ 0, which restores that component; when p ∤ v this
    // reduces to the plain sum of θ-powers over the orbit representatives.
    let mut xi = if v as u64 % p != 0 {
        universe.one()
    } else {
        let mut found = None;
        for cand in universe.subfield_iter(deg_q1)? {
            if !cand.rel_trace(base_pexp, v)?.is_zero() {
                found = Some(cand);
                break;
            }
        }
        found.ok_or_else(|| Error::Internal("relative trace is identically zero".into()))?
    };
    for o in &cd1.reps {
        if o.s == 0 {
            continue;
        }
        xi = xi.add(&theta.pow(o.s as u128));
    }
    // η = Tr_{F_{q_1^d}/F_{q^d}}(ξ)
    let eta = xi.rel_trace(base_pexp * d as usize, v)?;
    assert_normal_by_rank(&eta, base_pexp, d as usize)?;
    Ok(eta)
}

/// Solve v·J(v) = R character by character: one value per orbit
/// representative, with the self-paired representatives handled by an
/// explicit norm equation in the quadratic extension F_q(χ_s)/E_s.
pub fn pprime_vs(
    alg: &GroupAlgebra<FqCoeff>,
    cd: &CharData,
    r_values: &[FqElem],
    trace_eta: &FqElem,
) -> Result<Vec<FqElem>> {
    let field = &alg.ring.field;
    let m = alg.ring.base_pexp;
    let p = field.p;
    let mut out = Vec::with_capacity(cd.reps.len());
    for (o, a) in cd.reps.iter().zip(r_values) {
        if o.s == 0 {
            // ε-slot: χ_0(R) = Tr(η)², take the Tr(η) branch
            if trace_eta.mul(trace_eta) != *a {
                return Err(Error::Internal(
                    "trivial character value differs from the squared trace".into(),
                ));
            }
            out.push(trace_eta.clone());
            continue;
        }
        if o.partner > o.s {
            out.push(a.clone()); // paired: this slot carries χ_s(R)
            continue;
        }
        if o.partner < o.s {
            out.push(field.one()); // paired: the partner slot carries 1
            continue;
        }
        // self-paired: need v_s with v_s·(v_s)^{q^j} = a, j = v/2
        let j = o
            .j_conj
            .ok_or_else(|| Error::Internal("self-paired orbit lacks its conjugation index".into()))?;
        if o.v % 2 != 0 || j != o.v / 2 {
            return Err(Error::Internal(
                "self-paired orbit has an unexpected conjugation structure".into(),
            ));
        }
        let e_deg = m * o.v / 2; // E_s: the index-2 subfield of F_q(χ_s)
        if !a.in_subfield(e_deg) {
            return Err(Error::Internal(
                "character value of the J-fixed resolvend left its real subfield".into(),
            ));
        }
        let v_s = if a.is_square_in_subfield(e_deg)? {
            // case 1: v ∈ E_s, v² = a
            a.sqrt()?
        } else {
            let minus_a = a.neg();
            if !minus_a.is_square_in_subfield(e_deg)? {
                // case 2: v = √(−a) ∈ F_q(χ_s) \ E_s; conjugation negates it,
                // so v·J(v) = −v² = a
                minus_a.sqrt()?
            } else {
                // case 3: −1 is a non-square in E_s; take the least n ≥ 2
                // with −n a square mod p and combine
                // v = (√(n−1)·√a + √(−a)) / √(−n)
                let mut n_small = 0u64;
                for cand in 1..p {
                    if intutil::modpow_u64(p - cand, (p - 1) / 2, p) == 1 {
                        n_small = cand;
                        break;
                    }
                }
                if n_small == 0 {
                    return Err(Error::Internal("no quadratic non-residue shift found".into()));
                }
                if n_small == 1 {
                    return Err(Error::Internal(
                        "case analysis is inconsistent: −1 cannot be a square here".into(),
                    ));
                }
                let sqrt_n1 = field.from_scalar(n_small - 1).sqrt()?;
                let sqrt_a = a.sqrt()?; // lands in F_q(χ_s) \ E_s
                let sqrt_ma = minus_a.sqrt()?; // lands in E_s
                let sqrt_mn = field.from_scalar(p - n_small).sqrt()?;
                sqrt_n1.mul(&sqrt_a).add(&sqrt_ma).mul(&sqrt_mn.inv()?)
            }
        };
        let vj = v_s.frobenius_pexp(m * j);
        if v_s.mul(&vj) != *a {
            return Err(Error::Internal(
                "character-level norm equation failed verification".into(),
            ));
        }
        out.push(v_s);
    }
    Ok(out)
}

/// Self-dual generator for a prime-to-p part F_{q^d}/F_q, d = r^e.
pub fn selfdual_pprime(
    universe: &Arc<FqField>,
    base_pexp: usize,
    d: u64,
) -> Result<FqElem> {
    let eta = pprime_eta(universe, base_pexp, d)?;
    let alg = GroupAlgebra::new(
        FqCoeff::new(universe, base_pexp)?,
        AbelianGroup::cyclic(d),
    );
    let conj = conjugates(&eta, base_pexp, d as usize);
    let r = resolvend(&alg, &eta, &conj)?;
    let cd = CharData::new(&alg)?;
    let r_values = char_decompose(&alg, &cd, &r);
    let trace_eta = eta.rel_trace(base_pexp, d as usize)?;
    let vs = pprime_vs(&alg, &cd, &r_values, &trace_eta)?;
    let v = char_recompose(&alg, &cd, &vs)?;
    // exact algebra identity v·J(v) = R
    let vjv = alg.mul(&v, &alg.involution(&v));
    if vjv != r {
        return Err(Error::Internal(
            "v·J(v) does not reproduce the resolvend Gram element".into(),
        ));
    }
    let vinv = alg.invert_unit(&v)?;
    let x = act_with_conjugates(&alg, &vinv, &conj);
    check_part_gram(&x, base_pexp, d as usize)?;
    Ok(x)
}

/// Characteristic-2 quadratic part: the first ξ ∈ F_{q²} in canonical order
/// with Tr_{F_{q²}/F_q}(ξ) = 1 (such ξ is automatically self-dual:
/// Tr(ξ²) = Tr(ξ)² = 1 and Tr(ξ·φ(ξ)) = 2·N(ξ) = 0).
pub fn char2_quadratic(universe: &Arc<FqField>, base_pexp: usize) -> Result<FqElem> {
    if universe.p != 2 {
        return Err(Error::Domain(
            "the quadratic trace-one part applies in characteristic 2".into(),
        ));
    }
    for cand in universe.subfield_iter(2 * base_pexp)? {
        let t = cand.rel_trace(base_pexp, 2)?;
        if t.is_one() {
            check_part_gram(&cand, base_pexp, 2)?;
            return Ok(cand);
        }
    }
    Err(Error::Internal("no trace-one element found in the quadratic extension".into()))
}

/// Verify the part Gram identity exactly (internal error on failure).
fn check_part_gram(x: &FqElem, base_pexp: usize, n: usize) -> Result<()> {
    let rep = verify_gram_ff(x, base_pexp, n)?;
    if !rep.ok {
        return Err(Error::Internal(format!(
            "constructed part fails its Gram identity at indices {:?}",
            rep.failing
        )));
    }
    Ok(())
}

/// Exact self-duality check: one Gram row Tr(x·φ^i(x)) = δ_{0,i} suffices,
/// because every other row is a Frobenius translate of this one.
pub fn verify_gram_ff(x: &FqElem, base_pexp: usize, n: usize) -> Result<GramReport> {
    let mut failing = Vec::new();
    let mut conj = x.clone();
    for i in 0..n {
        if i > 0 {
            conj = conj.frobenius_pexp(base_pexp);
        }
        let t = x.mul(&conj).rel_trace(base_pexp, n)?;
        let ok = if i == 0 { t.is_one() } else { t.is_zero() };
        if !ok {
            failing.push(i);
        }
    }
    Ok(GramReport {
        ok: failing.is_empty(),
        failing,
    })
}

/// Construct a self-dual normal basis generator for F_{q^n}/F_q,
/// q = p^base_pexp, returning the generator with its universe and
/// verification report.
pub fn construct_selfdual(p: u64, base_pexp: usize, n: u64) -> Result<FfConstruction> {
    if base_pexp == 0 {
        return Err(Error::Parameter("base field degree must be ≥ 1".into()));
    }
    if n == 0 {
        return Err(Error::Parameter("extension degree must be ≥ 1".into()));
    }
    if p == 2 {
        if n % 4 == 0 {
            return Err(Error::Existence(
                "no self-dual normal basis: the exponent of the Galois group is divisible by 4"
                    .into(),
            ));
        }
    } else if n % 2 == 0 {
        return Err(Error::Existence(
            "no self-dual normal basis: in odd characteristic the extension degree [F:E] must be odd"
                .into(),
        ));
    }
    let mdeg = universe_degree(p, base_pexp, n)?;
    let universe = FqField::new(p, mdeg)?;
    let mut x = universe.one();
    let mut parts = Vec::new();
    for (r, e) in intutil::factor_u64(n) {
        let d = r.pow(e);
        let (xr, route) = if r == 2 && p == 2 {
            // characteristic-2 quadratic part (e = 1 since 4 ∤ n)
            (char2_quadratic(&universe, base_pexp)?, "quadratic")
        } else if r == p {
            (selfdual_p_power(&universe, base_pexp, e)?, "p-power")
        } else {
            (selfdual_pprime(&universe, base_pexp, d)?, "prime-to-p")
        };
        parts.push(PartInfo { degree: d, route });
        x = x.mul(&xr);
    }
    if parts.is_empty() {
        parts.push(PartInfo { degree: 1, route: "trivial" });
    }
    let gram = verify_gram_ff(&x, base_pexp, n as usize)?;
    if !gram.ok {
        return Err(Error::Internal(format!(
            "assembled generator fails its Gram identity at indices {:?}",
            gram.failing
        )));
    }
    // independent normality certificate
    assert_normal_by_rank(&x, base_pexp, n as usize)?;
    Ok(FfConstruction {
        p,
        base_pexp,
        n,
        universe,
        x,
        parts,
        gram,
        normal: true,
    })
}

/// Enumerate every self-dual normal basis generator of F_{q^n}/F_q inside
/// the given universe (which must contain F_{q^n}). Capped at q^n ≤ 243.
/// Each returned element is re-asserted to be normal by rank.
pub fn brute_force_selfdual(
    universe: &Arc<FqField>,
    base_pexp: usize,
    n: u64,
) -> Result<Vec<FqElem>> {
    let size = (universe.p as f64).powi((base_pexp as i32) * (n as i32));
    if size > 243.0 {
        return Err(Error::Parameter(
            "brute-force enumeration is capped at fields of size ≤ 243".into(),
        ));
    }
    let mut out = Vec::new();
    for cand in universe.subfield_iter(base_pexp * n as usize)? {
        if cand.is_zero() {
            continue;
        }
        let rep = verify_gram_ff(&cand, base_pexp, n as usize)?;
        if rep.ok {
            assert_normal_by_rank(&cand, base_pexp, n as usize)?;
            out.push(cand);
        }
    }
    out.sort_by(lex_cmp);
    Ok(out)
}
