//! Symbolic algebra for Gelfand-Dorfman algebras and their relatives.
//!
//! The crate provides exact normal forms in free differential algebras
//! ([`nf`]), expansion of operation symbols into those algebras
//! ([`expand`]), multilinear operad computations ([`operad`]) and the
//! weight-graded basis theory of special GD-algebras ([`sgd`]).

pub mod builtins;
pub mod cli;
pub mod error;
pub mod expand;
pub mod linalg;
pub mod nf;
pub mod operad;
pub mod perm;
pub mod poly;
pub mod selftest;
pub mod sgd;
pub mod term;

pub use error::{Error, Result};
pub use poly::{Coeff, LinComb, TermPoly};
pub use term::{Op, Signature, Symmetry, Term, Var};
