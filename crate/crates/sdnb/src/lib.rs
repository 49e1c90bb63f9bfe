//! Explicit self-dual normal bases.
//!
//! This crate constructs, for finite extensions of finite fields and for
//! abelian extensions of p-adic fields, explicit generators of self-dual
//! (integral) normal bases whenever they exist — together with
//! machine-checkable certificates of the defining trace identities.
//!
//! Modules:
//! - [`ff`] — exact finite-field arithmetic (universe fields, subfields,
//!   deterministic roots and square roots);
//! - [`grpalg`] — group algebras of finite abelian groups, resolvends, and
//!   the square-root machinery used to turn a normal basis into a self-dual
//!   one;
//! - [`finite`] — self-dual normal basis generators for F_{q^n}/F_q;
//! - [`padic`] — p-adic scalars, unramified/tame/wild local extensions,
//!   Lubin–Tate power series;
//! - [`local`] — self-dual integral normal basis generators over p-adic
//!   base fields;
//! - [`cert`] — JSON certificates and their verifier.

pub mod cert;
pub mod error;
pub mod ff;
pub mod finite;
pub mod grpalg;
pub mod local;
pub mod padic;

pub use error::{Error, Result};
