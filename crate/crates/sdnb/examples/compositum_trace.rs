//! Compositum and trace-down: multiply an unramified generator by a tame
//! Kummer generator to get one for the compositum M = F·L, then trace over a
//! subgroup H of Gal(M/K) meeting inertia trivially to reach intermediate
//! fields — here the degree-3 field fixed by the diagonal of C_3 × C_3.

use sdnb::error::{Error, Result};
use sdnb::local::{compose_and_trace, reverify, tame_generator, unram_generator};

fn main() -> Result<()> {
    let unram = unram_generator(7, 1, 3, 48, 8)?;
    let tame = tame_generator(7, 1, 3, 48, 8)?;

    // Trivial subgroup: the full degree-9 abelian extension of Q_7.
    let full = compose_and_trace(&unram, &tame, &[0], 8)?;
    println!(
        "compositum of unramified and tame cubics over Q_7: degree {}, route {}, v(x) = {}",
        full.degree,
        full.route.tag(),
        full.v_x
    );
    assert_eq!(full.degree, 9);
    assert_eq!(full.v_x, -1);
    assert!(full.gram.pass);
    assert!(reverify(&full, 8)?.pass);

    // The diagonal subgroup {(j, j)} has ranks {0, 4, 8} in C_3 × C_3; its
    // fixed field is a ramified cubic distinct from the Kummer one, and the
    // traced generator certifies it.
    let diag = compose_and_trace(&unram, &tame, &[0, 4, 8], 8)?;
    println!(
        "trace-down by the diagonal: degree {}, route {}, v(x) = {}",
        diag.degree,
        diag.route.tag(),
        diag.v_x
    );
    assert_eq!(diag.degree, 3);
    assert_eq!(diag.route.tag(), "trace-down");
    assert!(diag.gram.pass);
    assert!(reverify(&diag, 8)?.pass);
    println!(
        "subgroup recorded in the certificate: {:?}",
        diag.subgroup.as_ref().unwrap()
    );

    // Subgroups that touch inertia (here: the tame factor) are rejected —
    // tracing along them would leave the self-dual lattice.
    match compose_and_trace(&unram, &tame, &[0, 1, 2], 8) {
        Err(Error::Parameter(msg)) => println!("inertia subgroup rejected: {msg}"),
        Ok(_) => panic!("a subgroup inside inertia must be rejected"),
        Err(other) => return Err(other),
    }
    Ok(())
}
