//! Unramified extensions: the different is trivial, so the task is a unit-level
//! one — lift a self-dual normal basis of the residue extension and correct
//! the lift by a group-algebra square root so the trace form becomes exactly
//! the identity. Prime-to-p degrees, p-power degrees, and composites all
//! route differently.

use sdnb::error::{Error, Result};
use sdnb::local::{reverify, unram_generator};

fn main() -> Result<()> {
    // Degree 5 over Q_3: prime to p, one Hensel-corrected residue lift.
    let c5 = unram_generator(3, 1, 5, 32, 8)?;
    println!("unramified degree 5 over Q_3: route {}, v(x) = {}", c5.route.tag(), c5.v_x);
    assert_eq!(c5.v_x, 0);
    assert!(c5.gram.pass);

    // Degree 3 over Q_3: a p-power degree, seeded by the trace-tower
    // generator of the residue extension.
    let c3 = unram_generator(3, 1, 3, 32, 8)?;
    println!("unramified degree 3 over Q_3: route {}, v(x) = {}", c3.route.tag(), c3.v_x);
    assert!(c3.gram.pass);

    // Degree 15 = 3·5: built as a product of the coprime parts, each
    // constructed in its own subextension and multiplied in the big field.
    let c15 = unram_generator(3, 1, 15, 40, 8)?;
    println!("unramified degree 15 over Q_3: route {}, v(x) = {}", c15.route.tag(), c15.v_x);
    assert!(c15.gram.pass);
    assert!(reverify(&c15, 8)?.pass);

    // Degree 9 over Q_3 and a residue-extension base (f = 2).
    let c9 = unram_generator(3, 1, 9, 32, 8)?;
    println!("unramified degree 9 over Q_3: route {}", c9.route.tag());
    assert!(c9.gram.pass);

    let cf = unram_generator(3, 2, 5, 32, 8)?;
    println!("unramified degree 5 over the unramified quadratic of Q_3: route {}", cf.route.tag());
    assert!(cf.gram.pass);

    // Even degree: the residue trace form admits no self-dual normal basis.
    match unram_generator(3, 1, 2, 32, 8) {
        Err(Error::Existence(msg)) => println!("degree 2: {msg}"),
        Ok(_) => panic!("even unramified degree should not admit a generator"),
        Err(other) => return Err(other),
    }
    Ok(())
}
