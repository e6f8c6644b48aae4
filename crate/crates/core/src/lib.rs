//! Rational homotopy groups of mapping spaces, computed as André–Quillen
//! cohomology of derivation complexes between Sullivan models, together with
//! the Whitehead bracket on those groups and Whitehead-length bounds.
//!
//! The layers build on each other:
//!
//! - [`gca`]: graded-commutative polynomials over Q modulo monomial ideals
//! - [`cdga`]: presentations, morphisms and structural invariants
//! - [`models`]: spheres, projective spaces and the `cp_map` family
//! - [`linalg`]: exact rank, kernel and solving
//! - [`der`]: f-derivations, their differential and the bracket
//! - [`aq`]: cohomology, bracket on classes and Whitehead-length bounds
//! - [`dsl`] and [`cli`]: the `.aq` input language and the `aq` command

pub mod aq;
pub mod cdga;
pub mod cli;
pub mod der;
pub mod dsl;
pub mod error;
pub mod gca;
pub mod linalg;
pub mod models;

pub use error::{Error, Result};
