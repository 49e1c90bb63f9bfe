//! Certificates are self-contained JSON documents: they embed the defining
//! polynomials, the generator's coordinates, and the full verification
//! outcome, so an independent process can rebuild everything and re-check.
//! This example emits documents, re-verifies them, and shows that tampering
//! and truncation are detected.

use sdnb::cert::{ff_document, render, tame_document, verify_document};
use sdnb::error::{Error, Result};

fn main() -> Result<()> {
    // A finite-field certificate. Rendering is deterministic: the same
    // parameters always produce the same bytes.
    let doc = ff_document(3, 1, 5)?;
    let text = render(&doc)?;
    let again = render(&ff_document(3, 1, 5)?)?;
    assert_eq!(text, again, "identical parameters must give identical bytes");
    println!("{}", verify_document(&text)?);

    // Tampering with a single generator coordinate is caught by the
    // recomputed trace form.
    let mut bad = doc.clone();
    {
        let body = bad.ff.as_mut().unwrap();
        body.generator[0] = (body.generator[0] + 1) % 3;
    }
    match verify_document(&render(&bad)?) {
        Err(Error::Verification(msg)) => println!("tamper detected: {msg}"),
        Ok(_) => panic!("tampered certificate must not verify"),
        Err(other) => return Err(other),
    }

    // A p-adic certificate for the tame cubic of Q_7.
    let local = tame_document(7, 1, 3, 32, 8)?;
    let local_text = render(&local)?;
    println!("{}", verify_document(&local_text)?);

    // Tampering with one digit of the stored generator.
    let mut bad_local = local.clone();
    {
        let cb = &mut bad_local.local.as_mut().unwrap().certificates[0];
        cb.generator_digits[0][0] = (cb.generator_digits[0][0] + 1) % 7;
    }
    match verify_document(&render(&bad_local)?) {
        Err(Error::Verification(msg)) => println!("tamper detected: {msg}"),
        Ok(_) => panic!("tampered certificate must not verify"),
        Err(other) => return Err(other),
    }

    // A truncated file fails as malformed, not as a verification failure.
    let cut = &local_text[..local_text.len() / 2];
    match verify_document(cut) {
        Err(Error::Malformed(msg)) => println!("truncation detected: {msg}"),
        Ok(_) => panic!("truncated certificate must not verify"),
        Err(other) => return Err(other),
    }
    Ok(())
}
