//! Self-contained, machine-checkable JSON certificates.
//!
//! A certificate document records one construction in full: the parameters,
//! the defining polynomial of every ring involved (dense, coefficients
//! low-to-high), the generator's coordinates (finite-field coordinates, or
//! base-p digit lists with an explicit valuation offset), and the complete
//! verification outcome.  The document carries enough data for an
//! independent process to rebuild the rings from the embedded polynomials,
//! re-run the verification from scratch, and compare every recorded claim
//! against its recomputation.
//!
//! Serialization is deterministic: identical parameters produce
//! byte-identical documents.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::FqField;
use crate::finite::{construct_selfdual, is_normal, universe_degree, verify_gram_ff};
use crate::grpalg::AbelianGroup;
use crate::local::{
    compose_and_trace, reverify, tame_generator, unram_generator, wild_generator,
    GramReportLocal, LocalCertificate, LocalRoute,
};
use crate::padic::ring::{build_extension, same_ring, ExtKind, LocalElem, LocalExtension, LocalRing};
use crate::padic::LocalBase;

pub const SCHEMA_VERSION: u32 = 1;

const DETERMINISM_NOTE: &str = "identical parameters reproduce this document byte for byte: \
     defining polynomials are chosen canonically and every search runs in a fixed order";

// ---------------------------------------------------------------------------
// document shape
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub schema_version: u32,
    /// "ff" for finite-field constructions, "local" for p-adic ones.
    pub mode: String,
    pub determinism: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ff: Option<FfBody>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local: Option<LocalBody>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FfBody {
    pub p: u64,
    /// Degree over F_p of the base field F_q, q = p^m.
    pub m: usize,
    /// Degree of the extension F_{q^n} / F_q.
    pub n: u64,
    /// Degree over F_p of the field the generator is presented in: a
    /// multiple of m·n, enlarged when a prime-to-p part needs roots of unity.
    pub universe_degree: usize,
    /// Monic irreducible defining polynomial of that field over F_p,
    /// coefficients low-to-high, length universe_degree + 1.
    pub universe_modulus: Vec<u64>,
    /// Coordinates of the generator in the power basis of the universe.
    pub generator: Vec<u64>,
    /// Coprime-degree parts the construction was assembled from.
    pub parts: Vec<FfPartBody>,
    /// Whether the conjugates of the generator form a basis.
    pub normal: bool,
    pub gram: FfGramBody,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FfPartBody {
    pub degree: u64,
    pub route: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FfGramBody {
    pub pass: bool,
    /// Indices g with Tr(x·σ_g(x)) ≠ δ_{g,0} (empty on pass).
    pub failing: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalBody {
    pub p: u64,
    /// Residue degree over Q_p of the base field K.
    pub f: usize,
    /// "tame" | "unram" | "wild" | "compose".
    pub kind: String,
    /// Working precision in base-p digits.
    pub precision: usize,
    /// Guard digits excluded from the verification requirement.
    pub guard: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unram_d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tame_d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_to: Option<u64>,
    /// Wild construction only: whether the two normalization orders agree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    pub certificates: Vec<LocalCertBody>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalCertBody {
    pub route: String,
    /// Degree of the certified extension L/K (smaller than the ambient ring
    /// degree for trace-down certificates).
    pub degree: usize,
    /// Degree over Q_p of the unramified coefficient base of the ambient ring.
    pub base_degree: usize,
    /// Monic defining polynomial of the residue field of that base,
    /// coefficients low-to-high.
    pub base_modulus: Vec<u64>,
    /// Ramification of the ambient ring over its base (1 = no Eisenstein part).
    pub ring_e: usize,
    /// Monic Eisenstein polynomial, coefficients low-to-high; absent iff
    /// ring_e = 1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eisenstein: Option<Vec<i64>>,
    /// Compositum certificates only: ranks of the subgroup traced down by.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<usize>>,
    /// Generator coordinates: one base-p digit list (low-to-high) per ring
    /// coordinate, scaled by p^generator_offset.
    pub generator_digits: Vec<Vec<u64>>,
    pub generator_offset: i64,
    pub generator_precision: usize,
    /// Valuation of the generator in the normalized valuation of L.
    pub v_x: i64,
    /// Valuation of the different of L/K in the normalized valuation of L.
    pub v_different: i64,
    pub gram: LocalGramBody,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalGramBody {
    pub pass: bool,
    /// Deviations must vanish to at least this valuation (ambient-ring
    /// uniformizer units).
    pub required_vl: i64,
    pub margin: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_deviation_vl: Option<i64>,
    pub precision: usize,
    pub guard: usize,
    pub entries: Vec<LocalGramEntryBody>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalGramEntryBody {
    pub index: usize,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviation_vl: Option<i64>,
    pub absprec_vl: i64,
}

// ---------------------------------------------------------------------------
// emission
// ---------------------------------------------------------------------------

/// Construct a self-dual normal basis generator for F_{q^n}/F_q, q = p^m,
/// and package it as a certificate document.
pub fn ff_document(p: u64, m: usize, n: u64) -> Result<CertificateDocument> {
    let c = construct_selfdual(p, m, n)?;
    if !c.gram.ok || !c.normal {
        return Err(Error::Internal(
            "construction returned a generator that fails its own verification".into(),
        ));
    }
    Ok(CertificateDocument {
        schema_version: SCHEMA_VERSION,
        mode: "ff".into(),
        determinism: DETERMINISM_NOTE.into(),
        ff: Some(FfBody {
            p,
            m,
            n,
            universe_degree: c.universe.m,
            universe_modulus: c.universe.modulus.clone(),
            generator: c.x.c.clone(),
            parts: c
                .parts
                .iter()
                .map(|q| FfPartBody { degree: q.degree, route: q.route.to_string() })
                .collect(),
            normal: c.normal,
            gram: FfGramBody { pass: c.gram.ok, failing: c.gram.failing.clone() },
        }),
        local: None,
    })
}

fn gram_body(g: &GramReportLocal) -> LocalGramBody {
    LocalGramBody {
        pass: g.pass,
        required_vl: g.required_vl,
        margin: g.margin,
        worst_deviation_vl: g.worst_deviation_vl,
        precision: g.precision,
        guard: g.guard,
        entries: g
            .entries
            .iter()
            .map(|e| LocalGramEntryBody {
                index: e.index,
                ok: e.ok,
                deviation_vl: e.deviation_vl,
                absprec_vl: e.absprec_vl,
            })
            .collect(),
    }
}

fn local_cert_body(cert: &LocalCertificate) -> LocalCertBody {
    let ring = &cert.ext.ring;
    LocalCertBody {
        route: cert.route.tag().to_string(),
        degree: cert.degree,
        base_degree: ring.base.n,
        base_modulus: ring.base.modulus.clone(),
        ring_e: ring.e,
        eisenstein: ring.eis.clone(),
        subgroup: cert.subgroup.clone(),
        generator_digits: cert.x.digit_lists(),
        generator_offset: cert.x.off,
        generator_precision: cert.x.prec,
        v_x: cert.v_x,
        v_different: cert.v_different,
        gram: gram_body(&cert.gram),
    }
}

fn wrap_local(body: LocalBody) -> CertificateDocument {
    CertificateDocument {
        schema_version: SCHEMA_VERSION,
        mode: "local".into(),
        determinism: DETERMINISM_NOTE.into(),
        ff: None,
        local: Some(body),
    }
}

/// Self-dual integral generator for the tame Kummer extension K(t), t^d = −p.
pub fn tame_document(p: u64, f: usize, d: u64, w: usize, guard: usize) -> Result<CertificateDocument> {
    let cert = tame_generator(p, f, d, w, guard)?;
    Ok(wrap_local(LocalBody {
        p,
        f,
        kind: "tame".into(),
        precision: w,
        guard,
        d: Some(d),
        unram_d: None,
        tame_d: None,
        q: None,
        trace_to: None,
        agree: None,
        certificates: vec![local_cert_body(&cert)],
    }))
}

/// Self-dual integral generator for the unramified extension of degree d.
pub fn unram_document(p: u64, f: usize, d: u64, w: usize, guard: usize) -> Result<CertificateDocument> {
    let cert = unram_generator(p, f, d, w, guard)?;
    Ok(wrap_local(LocalBody {
        p,
        f,
        kind: "unram".into(),
        precision: w,
        guard,
        d: Some(d),
        unram_d: None,
        tame_d: None,
        q: None,
        trace_to: None,
        agree: None,
        certificates: vec![local_cert_body(&cert)],
    }))
}

/// Self-dual integral generator for the ramified degree-p extension of Q_p
/// cut out of the second division field of X^q + pX, by both normalization
/// orders.
pub fn wild_document(p: u64, w: usize, guard: usize, trace_to: Option<u64>) -> Result<CertificateDocument> {
    let pair = wild_generator(p, w, guard, trace_to)?;
    Ok(wrap_local(LocalBody {
        p,
        f: 1,
        kind: "wild".into(),
        precision: w,
        guard,
        d: None,
        unram_d: None,
        tame_d: None,
        q: Some(p),
        trace_to,
        agree: Some(pair.agree),
        certificates: vec![local_cert_body(&pair.direct), local_cert_body(&pair.traced)],
    }))
}

/// Ranks of the cyclic subgroup of C_du × C_dt generated by (1, 1).
pub fn diagonal_subgroup(unram_d: usize, tame_d: usize) -> Vec<usize> {
    let group = AbelianGroup::product(vec![unram_d as u64, tame_d as u64]);
    let order = num_integer::lcm(unram_d, tame_d);
    (0..order)
        .map(|j| group.rank_of(&[(j % unram_d) as u64, (j % tame_d) as u64]))
        .collect()
}

/// Self-dual integral generator for the compositum of an unramified and a
/// tame Kummer extension, optionally traced down the diagonal subgroup.
pub fn compose_document(
    p: u64,
    f: usize,
    unram_d: u64,
    tame_d: u64,
    diagonal: bool,
    w: usize,
    guard: usize,
) -> Result<CertificateDocument> {
    let cert_un = unram_generator(p, f, unram_d, w, guard)?;
    let cert_tame = tame_generator(p, f, tame_d, w, guard)?;
    let sub = if diagonal {
        diagonal_subgroup(unram_d as usize, tame_d as usize)
    } else {
        vec![0]
    };
    let cert = compose_and_trace(&cert_un, &cert_tame, &sub, guard)?;
    Ok(wrap_local(LocalBody {
        p,
        f,
        kind: "compose".into(),
        precision: w,
        guard,
        d: None,
        unram_d: Some(unram_d),
        tame_d: Some(tame_d),
        q: None,
        trace_to: None,
        agree: None,
        certificates: vec![local_cert_body(&cert)],
    }))
}

/// Serialize a document. Field order is the declaration order above and the
/// encoder is deterministic, so the output is a pure function of the content.
pub fn render(doc: &CertificateDocument) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc)
        .map_err(|e| Error::Internal(format!("certificate serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Parse a document, rejecting unknown schema versions and unknown fields.
pub fn parse(text: &str) -> Result<CertificateDocument> {
    let doc: CertificateDocument = serde_json::from_str(text)
        .map_err(|e| Error::Malformed(format!("certificate does not parse: {e}")))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::Malformed(format!(
            "unsupported certificate schema version {}",
            doc.schema_version
        )));
    }
    Ok(doc)
}

// ---------------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------------

/// Re-verify a serialized certificate from scratch: re-parse it, rebuild the
/// rings from the embedded defining polynomials, recompute the generator's
/// verification, and compare every recorded claim against the recomputation.
/// Returns a one-line summary on success.
pub fn verify_document(text: &str) -> Result<String> {
    let doc = parse(text)?;
    match (doc.mode.as_str(), &doc.ff, &doc.local) {
        ("ff", Some(body), None) => verify_ff_body(body),
        ("local", None, Some(body)) => verify_local_body(body),
        _ => Err(Error::Malformed("certificate mode does not match its payload".into())),
    }
}

fn verify_ff_body(b: &FfBody) -> Result<String> {
    if b.m == 0 || b.n == 0 {
        return Err(Error::Malformed("field degrees must be positive".into()));
    }
    let universe = FqField::with_modulus(b.p, b.universe_modulus.clone())?;
    if universe.m != b.universe_degree || b.universe_degree != universe_degree(b.p, b.m, b.n)? {
        return Err(Error::Verification(
            "declared universe degree does not match the modulus and parameters".into(),
        ));
    }
    if b.generator.len() != universe.m {
        return Err(Error::Malformed(
            "generator coordinate count does not match the field degree".into(),
        ));
    }
    if b.generator.iter().any(|&c| c >= b.p) {
        return Err(Error::Malformed("generator coordinate out of range".into()));
    }
    let x = universe.elem(b.generator.clone());
    let gram = verify_gram_ff(&x, b.m, b.n as usize)?;
    if !gram.ok {
        return Err(Error::Verification(
            "the stored generator fails its trace-form verification".into(),
        ));
    }
    if gram.ok != b.gram.pass || gram.failing != b.gram.failing {
        return Err(Error::Verification(
            "recorded verification block does not match its recomputation".into(),
        ));
    }
    let normal = is_normal(&x, b.m, b.n as usize)?;
    if !normal {
        return Err(Error::Verification(
            "the stored generator does not generate a normal basis".into(),
        ));
    }
    if normal != b.normal {
        return Err(Error::Verification(
            "recorded normality flag does not match its recomputation".into(),
        ));
    }
    Ok(format!(
        "ff certificate verified: p={} m={} n={} (trace form and normality recomputed)",
        b.p, b.m, b.n
    ))
}

fn require_param<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::Malformed(format!("missing parameter for this construction kind: {name}")))
}

fn declared_kind(b: &LocalBody) -> Result<ExtKind> {
    match b.kind.as_str() {
        "tame" => Ok(ExtKind::TameKummer(require_param(b.d, "d")? as usize)),
        "unram" => Ok(ExtKind::Unramified(require_param(b.d, "d")? as usize)),
        "wild" => Ok(ExtKind::WildLubinTate { q: require_param(b.q, "q")? }),
        "compose" => Ok(ExtKind::Compositum {
            unram_d: require_param(b.unram_d, "unram-d")? as usize,
            tame_d: require_param(b.tame_d, "tame-d")? as usize,
        }),
        other => Err(Error::Malformed(format!("unknown local construction kind: {other}"))),
    }
}

fn route_kind_consistent(route: &LocalRoute, kind: &ExtKind) -> Result<()> {
    let ok = match kind {
        ExtKind::TameKummer(_) => matches!(route, LocalRoute::Tame),
        ExtKind::Unramified(_) => matches!(
            route,
            LocalRoute::UnramP | LocalRoute::UnramPPrime | LocalRoute::Compositum
        ),
        ExtKind::WildLubinTate { .. } => {
            matches!(route, LocalRoute::WildDirect | LocalRoute::WildTraced)
        }
        ExtKind::Compositum { .. } => {
            matches!(route, LocalRoute::Compositum | LocalRoute::TraceDown)
        }
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Verification(
            "recorded route is not a route of the declared construction".into(),
        ))
    }
}

/// Check that the recorded ranks form a subgroup of C_du × C_dt meeting the
/// inertia factor trivially (the conditions the construction enforces).
fn validate_subgroup(kind: &ExtKind, sub: &[usize]) -> Result<()> {
    let (du, dt) = match kind {
        ExtKind::Compositum { unram_d, tame_d } => (*unram_d, *tame_d),
        _ => {
            return Err(Error::Malformed(
                "only compositum certificates record a subgroup".into(),
            ))
        }
    };
    let group = AbelianGroup::product(vec![du as u64, dt as u64]);
    let size = group.size();
    if sub.is_empty() || !sub.contains(&0) {
        return Err(Error::Verification("recorded subgroup does not contain the identity".into()));
    }
    if sub.iter().any(|&h| h >= size) {
        return Err(Error::Verification("recorded subgroup rank out of range".into()));
    }
    let mut sorted = sub.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != sub.len() || sorted != sub {
        return Err(Error::Verification(
            "recorded subgroup must be strictly increasing and duplicate-free".into(),
        ));
    }
    for &a in sub {
        for &b in sub {
            if !sub.contains(&group.add(a, b)) {
                return Err(Error::Verification(
                    "recorded subgroup is not closed under the group operation".into(),
                ));
            }
        }
    }
    for &h in sub {
        if h != 0 && group.unrank(h)[0] == 0 {
            return Err(Error::Verification(
                "recorded subgroup meets the inertia subgroup".into(),
            ));
        }
    }
    if sub.len() == size {
        return Err(Error::Verification(
            "recorded subgroup is the full Galois group".into(),
        ));
    }
    Ok(())
}

fn verify_local_cert(b: &LocalBody, kind: &ExtKind, cb: &LocalCertBody) -> Result<LocalElem> {
    let w = b.precision;
    let canon = build_extension(b.p, b.f, w, kind.clone())?;
    // Rebuild the ring from the embedded presentation; the result must match
    // the canonical presentation for the declared parameters, so a tampered
    // polynomial cannot smuggle in a different ring.
    let base = LocalBase::with_modulus(b.p, cb.base_modulus.clone(), w)?;
    if base.n != cb.base_degree {
        return Err(Error::Verification(
            "declared base degree does not match the embedded modulus".into(),
        ));
    }
    let ring = LocalRing::new(&base, cb.ring_e, cb.eisenstein.clone())?;
    if !same_ring(&ring, &canon.ring) {
        return Err(Error::Verification(
            "embedded ring presentation does not match the declared parameters".into(),
        ));
    }
    let route = LocalRoute::from_tag(&cb.route)?;
    route_kind_consistent(&route, kind)?;
    let ext = LocalExtension {
        kind: canon.kind.clone(),
        f_base: canon.f_base,
        ring: ring.clone(),
        degree: canon.degree,
        e_rel: canon.e_rel,
        f_rel: canon.f_rel,
        v_d: canon.v_d,
        v_a: canon.v_a,
    };
    // Valuation bookkeeping must match the extension's own arithmetic.
    let va = ext.v_a.ok_or_else(|| {
        Error::Verification("the declared extension admits no self-dual generator".into())
    })?;
    if cb.v_x != va {
        return Err(Error::Verification(
            "recorded generator valuation does not match the extension".into(),
        ));
    }
    if cb.v_different != ext.v_d {
        return Err(Error::Verification(
            "recorded different valuation does not match the extension".into(),
        ));
    }
    // Degree and subgroup bookkeeping.
    match (&cb.subgroup, kind) {
        (Some(sub), ExtKind::Compositum { .. }) => {
            validate_subgroup(kind, sub)?;
            if ext.degree % sub.len() != 0 || cb.degree != ext.degree / sub.len() {
                return Err(Error::Verification(
                    "certified degree does not match the recorded subgroup".into(),
                ));
            }
            let expected_route = if sub.len() == 1 {
                LocalRoute::Compositum
            } else {
                LocalRoute::TraceDown
            };
            if route != expected_route {
                return Err(Error::Verification(
                    "recorded route does not match the recorded subgroup".into(),
                ));
            }
        }
        (None, ExtKind::Compositum { .. }) => {
            return Err(Error::Malformed(
                "a compositum certificate must record its subgroup".into(),
            ))
        }
        (Some(_), _) => {
            return Err(Error::Malformed(
                "only compositum certificates record a subgroup".into(),
            ))
        }
        (None, _) => {
            if cb.degree != ext.degree {
                return Err(Error::Verification(
                    "certified degree does not match the extension".into(),
                ));
            }
        }
    }
    // Rebuild the generator from its digits and re-check its valuation.
    let x = ring.from_digit_lists(&cb.generator_digits, cb.generator_offset, cb.generator_precision)?;
    let vx_ring = x.valuation().map_err(|_| {
        Error::Verification("stored generator is indistinguishable from zero".into())
    })?;
    if vx_ring * (ext.e_rel as i64) != cb.v_x * (ext.ring.e as i64) {
        return Err(Error::Verification("stored generator has the wrong valuation".into()));
    }
    // Re-run the Gram verification from scratch and compare the full report.
    let cert = LocalCertificate {
        ext,
        route,
        subgroup: cb.subgroup.clone(),
        degree: cb.degree,
        x: x.clone(),
        v_x: cb.v_x,
        v_different: cb.v_different,
        gram: GramReportLocal {
            entries: Vec::new(),
            pass: false,
            required_vl: 0,
            margin: 0,
            worst_deviation_vl: None,
            precision: w,
            guard: b.guard,
        },
    };
    let fresh = reverify(&cert, b.guard)?;
    if !fresh.pass {
        return Err(Error::Verification(
            "the stored generator fails its Gram verification".into(),
        ));
    }
    if !gram_matches(&fresh, &cb.gram) {
        return Err(Error::Verification(
            "recorded verification block does not match its recomputation".into(),
        ));
    }
    Ok(x)
}

fn gram_matches(fresh: &GramReportLocal, recorded: &LocalGramBody) -> bool {
    fresh.pass == recorded.pass
        && fresh.required_vl == recorded.required_vl
        && fresh.margin == recorded.margin
        && fresh.worst_deviation_vl == recorded.worst_deviation_vl
        && fresh.precision == recorded.precision
        && fresh.guard == recorded.guard
        && fresh.entries.len() == recorded.entries.len()
        && fresh.entries.iter().zip(&recorded.entries).all(|(a, b)| {
            a.index == b.index
                && a.ok == b.ok
                && a.deviation_vl == b.deviation_vl
                && a.absprec_vl == b.absprec_vl
        })
}

fn verify_local_body(b: &LocalBody) -> Result<String> {
    if b.precision == 0 {
        return Err(Error::Malformed("recorded precision must be positive".into()));
    }
    let kind = declared_kind(b)?;
    let expected_count = if b.kind == "wild" { 2 } else { 1 };
    if b.certificates.len() != expected_count {
        return Err(Error::Malformed(
            "unexpected number of certificates for this construction kind".into(),
        ));
    }
    if b.kind == "wild" {
        match b.trace_to {
            None | Some(1) => {}
            Some(_) => {
                return Err(Error::Malformed(
                    "trace target other than the trivial subgroup is not certifiable".into(),
                ))
            }
        }
    } else if b.trace_to.is_some() {
        return Err(Error::Malformed(
            "trace target is only meaningful for the wild construction".into(),
        ));
    }
    let mut elems = Vec::with_capacity(b.certificates.len());
    for cb in &b.certificates {
        elems.push(verify_local_cert(b, &kind, cb)?);
    }
    if b.kind == "wild" {
        let routes: Vec<&str> = b.certificates.iter().map(|c| c.route.as_str()).collect();
        if routes != ["wild-direct", "wild-traced"] {
            return Err(Error::Verification(
                "wild certificates must carry both normalization orders, direct first".into(),
            ));
        }
        let agree = elems[0] == elems[1];
        if b.agree != Some(agree) {
            return Err(Error::Verification(
                "recorded agreement flag does not match the stored generators".into(),
            ));
        }
    } else if b.agree.is_some() {
        return Err(Error::Malformed(
            "agreement flag is only meaningful for the wild construction".into(),
        ));
    }
    Ok(format!(
        "local certificate verified: p={} f={} kind={} ({} generator{} recomputed)",
        b.p,
        b.f,
        b.kind,
        b.certificates.len(),
        if b.certificates.len() == 1 { "" } else { "s" }
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ff_document_roundtrip_and_determinism() {
        let doc = ff_document(3, 1, 5).unwrap();
        let text = render(&doc).unwrap();
        let summary = verify_document(&text).unwrap();
        assert!(summary.contains("p=3"));
        // parse → render is the identity on bytes
        let again = render(&parse(&text).unwrap()).unwrap();
        assert_eq!(text, again);
        // rebuilding from the same parameters reproduces the bytes
        let rebuilt = render(&ff_document(3, 1, 5).unwrap()).unwrap();
        assert_eq!(text, rebuilt);
    }

    #[test]
    fn ff_tamper_is_detected() {
        let doc = ff_document(3, 1, 5).unwrap();
        let mut tampered = doc.clone();
        {
            let body = tampered.ff.as_mut().unwrap();
            body.generator[0] = (body.generator[0] + 1) % 3;
        }
        let text = render(&tampered).unwrap();
        match verify_document(&text) {
            Err(Error::Verification(_)) => {}
            Ok(_) => panic!("tampered document verified"),
            Err(other) => panic!("expected a verification error, got {other:?}"),
        }
    }

    #[test]
    fn truncated_document_is_malformed() {
        let doc = ff_document(3, 1, 3).unwrap();
        let text = render(&doc).unwrap();
        let cut = &text[..text.len() / 2];
        match verify_document(cut) {
            Err(Error::Malformed(_)) => {}
            Ok(_) => panic!("truncated document verified"),
            Err(other) => panic!("expected a malformed error, got {other:?}"),
        }
    }

    #[test]
    fn tame_document_roundtrip() {
        let doc = tame_document(7, 1, 3, 32, 8).unwrap();
        let text = render(&doc).unwrap();
        verify_document(&text).unwrap();
        let rebuilt = render(&tame_document(7, 1, 3, 32, 8).unwrap()).unwrap();
        assert_eq!(text, rebuilt);
    }

    #[test]
    fn tame_digit_tamper_is_detected() {
        let doc = tame_document(7, 1, 3, 32, 8).unwrap();
        let mut tampered = doc.clone();
        {
            let cb = &mut tampered.local.as_mut().unwrap().certificates[0];
            let list = &mut cb.generator_digits[0];
            list[0] = (list[0] + 1) % 7;
        }
        let text = render(&tampered).unwrap();
        match verify_document(&text) {
            Err(Error::Verification(_)) => {}
            Ok(_) => panic!("tampered document verified"),
            Err(other) => panic!("expected a verification error, got {other:?}"),
        }
    }

    #[test]
    fn wild_document_roundtrip() {
        let doc = wild_document(3, 32, 8, None).unwrap();
        let text = render(&doc).unwrap();
        verify_document(&text).unwrap();
        assert_eq!(doc.local.as_ref().unwrap().certificates.len(), 2);
    }

    #[test]
    fn compose_document_roundtrip() {
        let doc = compose_document(7, 1, 3, 3, true, 32, 8).unwrap();
        let text = render(&doc).unwrap();
        verify_document(&text).unwrap();
        let body = doc.local.as_ref().unwrap();
        assert_eq!(body.certificates[0].route, "trace-down");
        assert_eq!(body.certificates[0].degree, 3);
    }

    #[test]
    fn mode_payload_mismatch_is_malformed() {
        let mut doc = ff_document(3, 1, 3).unwrap();
        doc.mode = "local".into();
        let text = render(&doc).unwrap();
        match verify_document(&text) {
            Err(Error::Malformed(_)) => {}
            Ok(_) => panic!("mismatched document verified"),
            Err(other) => panic!("expected a malformed error, got {other:?}"),
        }
    }

    #[test]
    fn diagonal_subgroup_ranks() {
        // C_3 × C_3: the diagonal is {(0,0), (1,1), (2,2)} = ranks {0, 4, 8}
        assert_eq!(diagonal_subgroup(3, 3), vec![0, 4, 8]);
    }
}
