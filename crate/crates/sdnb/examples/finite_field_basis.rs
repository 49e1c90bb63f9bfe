//! Construct a self-dual normal basis generator for F_{q^n}/F_q and check
//! its two defining properties by hand: the Galois conjugates form a basis,
//! and the trace form is the identity matrix on that basis.

use sdnb::error::Result;
use sdnb::finite::construct_selfdual;

fn main() -> Result<()> {
    // F_{3^5} over F_3: a prime-to-p degree, handled by the resolvend route.
    // The generator is presented in a larger field F_{3^20} that also
    // contains the 5th roots of unity the construction works with.
    let c = construct_selfdual(3, 1, 5)?;
    println!("generator for F_{{3^5}}/F_3, presented in F_{{3^{}}}:", c.universe.m);
    println!("  coordinates: {:?}", c.x.c);
    for part in &c.parts {
        println!("  degree-{} part via the {} route", part.degree, part.route);
    }
    println!("  normal basis: {}", c.normal);
    println!("  Gram matrix is the identity: {}", c.gram.ok);
    assert!(c.normal && c.gram.ok);

    // Recompute one Gram row from scratch: Tr(x · σ^g(x)) must be δ_{g,0},
    // where σ = φ_q is the q-power Frobenius and Tr is the trace of
    // F_{q^n}/F_q.
    let x = &c.x;
    for g in 0..5usize {
        let t = x.mul(&x.frobenius_pexp(g)).rel_trace(1, 5)?;
        println!("  Tr(x·σ^{g}(x)) = {:?}", t.c);
        if g == 0 {
            assert!(t.is_one());
        } else {
            assert!(t.is_zero());
        }
    }

    // The base field may itself be an extension: F_{9^7} over F_9.
    let c2 = construct_selfdual(3, 2, 7)?;
    println!(
        "generator for F_{{9^7}}/F_9: normal = {}, Gram identity = {}",
        c2.normal, c2.gram.ok
    );
    assert!(c2.normal && c2.gram.ok);

    // A composite degree mixing a p-power part with prime-to-p parts.
    let c3 = construct_selfdual(3, 1, 45)?;
    let routes: Vec<&str> = c3.parts.iter().map(|q| q.route).collect();
    println!("degree 45 over F_3 assembled from parts via {routes:?}");
    assert!(c3.normal && c3.gram.ok);

    // In odd characteristic an even extension degree never admits one: the
    // trace form is then not split on the minus part.
    assert!(construct_selfdual(5, 1, 2).is_err());
    println!("degree 2 over F_5 correctly reports non-existence");
    Ok(())
}
