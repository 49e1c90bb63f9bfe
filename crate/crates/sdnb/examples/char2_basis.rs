//! Characteristic 2: self-dual normal bases exist exactly when the extension
//! degree is not divisible by 4. The even part of the degree is handled by a
//! dedicated quadratic construction, the odd part by the usual routes.

use sdnb::error::{Error, Result};
use sdnb::finite::construct_selfdual;

fn main() -> Result<()> {
    // Odd degrees and degrees ≡ 2 (mod 4) all work, over F_2 and over F_4.
    for (m, q) in [(1usize, 2u64), (2, 4)] {
        for n in [2u64, 3, 5, 6, 7, 10] {
            let c = construct_selfdual(2, m, n)?;
            let routes: Vec<&str> = c.parts.iter().map(|p| p.route).collect();
            println!(
                "F_{{{q}^{n}}}/F_{q}: normal = {}, Gram identity = {}, routes {routes:?}",
                c.normal, c.gram.ok
            );
            assert!(c.normal && c.gram.ok);
        }
    }

    // Multiples of 4 fail for a structural reason: the Galois group then has
    // exponent divisible by 4, and the unit group of F_2[C_4] contains no
    // element whose resolvend could be self-dual.
    for n in [4u64, 8, 12] {
        match construct_selfdual(2, 1, n) {
            Err(Error::Existence(msg)) => {
                println!("degree {n} over F_2: {msg}");
            }
            Ok(_) => panic!("degree {n} should not admit a self-dual normal basis"),
            Err(other) => return Err(other),
        }
    }
    Ok(())
}
