//! A kernel for normal and neutral forms of Cartesian cubical type theory.
//!
//! * [`cof`]: interval expressions, cofibrations, and decision procedures for
//!   entailment, equality, and universal quantification.
//! * [`syntax`]: raw terms and types, contexts, substitution, and the
//!   s-expression format.
//! * [`nf`]: neutral forms annotated by their frontier of instability,
//!   normal forms with stabilizers and splits, and the checker.
//! * [`engine`]: destabilizing interval substitution, decay rewriting,
//!   equality of normal forms, and the bounded conversion oracle.
//! * [`cli`]: the batch front end behind the `cubnf` binary.

pub mod cli;
pub mod cof;
pub mod engine;
pub mod name;
pub mod nf;
pub mod syntax;

pub use cof::{cof_eq, dnf, entails, forall_elim, Branch, Cof, IExpr};
pub use name::Name;
