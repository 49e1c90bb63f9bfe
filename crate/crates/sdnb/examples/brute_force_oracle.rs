//! Cross-check the construction against exhaustive search. For fields small
//! enough to enumerate, list every self-dual normal basis generator and
//! confirm the constructed one is among them — and that degrees admitting
//! none are reported as such.

use sdnb::error::Result;
use sdnb::ff::FqField;
use sdnb::finite::{brute_force_selfdual, construct_selfdual};

fn main() -> Result<()> {
    // Degrees with at least one generator: enumerate and check membership.
    for (p, m, n) in [(3u64, 1usize, 3u64), (3, 1, 1), (5, 1, 1), (7, 1, 1), (3, 1, 5)] {
        let c = construct_selfdual(p, m, n)?;
        let all = brute_force_selfdual(&c.universe, m, n)?;
        println!(
            "F_{{{p}^{n}}}/F_{p}: {} self-dual normal generators in total",
            all.len()
        );
        assert!(!all.is_empty());
        assert!(
            all.iter().any(|y| *y == c.x),
            "constructed generator must appear in the exhaustive list"
        );
    }

    // F_25/F_5 admits none (even degree, odd characteristic); the exhaustive
    // list is empty and the constructor refuses.
    let f25 = FqField::new(5, 2)?;
    let none = brute_force_selfdual(&f25, 1, 2)?;
    println!("F_25/F_5: {} generators (an even degree in odd characteristic)", none.len());
    assert!(none.is_empty());
    assert!(construct_selfdual(5, 1, 2).is_err());
    Ok(())
}
