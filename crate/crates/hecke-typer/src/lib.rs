//! Exact classification of representation types of Hecke algebras attached
//! to finite Weyl group products.
//!
//! For a one-parameter Hecke algebra at a primitive `e`-th root of unity the
//! verdict — semisimple, finite but not semisimple, or infinite — is read off
//! the multiplicity of the cyclotomic polynomial `Phi_e` in the Poincaré
//! polynomial `P_W(x)`. At `q = 1` the group algebra is classified by whether
//! `l^2` divides `|W|`, and two-parameter type-B algebras go through the
//! Dipper-James Morita reduction or the Ariki-Mathas bound. Everything is
//! exact integer arithmetic.
//!
//! Each closed-form criterion is paired with an independent brute-force
//! oracle: groups are realized by integer reflection matrices, enumerated by
//! Cayley-graph BFS (layer = Coxeter length), and the resulting length
//! generating functions, element orders, and Sylow structure must reproduce
//! the formulas. See [`verify`] for the suites and the `hecke-typer` binary
//! for the CLI.

pub mod classify;
pub mod cli;
pub mod coxeter;
pub mod poly;
pub mod verify;
pub mod weyl;

pub use classify::{
    classify as classify_input, BSecondParameter, ClassificationInput, ClassificationReport,
    Parameter, Status,
};
pub use poly::IntPolynomial;
pub use weyl::{IrreducibleType, WeylSpec};
