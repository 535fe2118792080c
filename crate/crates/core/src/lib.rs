//! Exact-arithmetic computer algebra for the superconformal Lie
//! superalgebras W(n), S(n;gamma), the contact families K(N) in their
//! Ramond and Neveu-Schwarz forms, the extended K(4), CK(6) and the twisted
//! contact algebras, together with their cocycles, tensor-density modules,
//! highest-weight evaluation, classification predicates, locality testers
//! and the Jordan/TKK layer.
//!
//! Everything is computed over the rationals with no floating point and no
//! tolerances: equalities asserted by the test suites are literal.

pub mod algebras;
pub mod ck6;
pub mod classify;
pub mod cohomology;
pub mod error;
pub mod funcspace;
pub mod grammar;
pub mod grassmann;
pub mod jordan;
pub mod liecore;
pub mod linalg;
pub mod locality;
pub mod repmod;
pub mod scalar;

pub use error::AlgError;
