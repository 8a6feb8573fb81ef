//! Exact computation over free abelian groups on pointed metric spaces.
//!
//! The crate computes the Graev norm on integer words by min-cost perfect
//! matching, the Lipschitz-free (Arens–Eells) seminorm on rational
//! combinations by min-cost flow, and checks the two against each other
//! bit-exactly. On top of that sit certified circle/torus density tools
//! (rational-independence decisions, Kronecker power search, grid ε-net
//! certificates), the recursive construction of topological generators for
//! truncated ω-tori, and a desk-scale checker for the lattice-quotient
//! embedding of a vector space into such a torus quotient.
//!
//! Every scalar is an exact `BigRational`; irrational quantities (square
//! roots of primes, ℓ² norms) are handled either symbolically or through
//! certified rational enclosures, so every reported comparison is sound.
//!
//! The crate is `no_std` (alloc required); IO, file formats, and the CLI
//! live in the companion `graev-cli` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod embedding;
pub mod interval;
pub mod norm;
pub mod rat;
pub mod rolewicz;
pub mod seminorm;
pub mod space;
pub mod torus;
pub mod word;

mod assignment;
mod simplex;

pub use interval::{Interval, Precision, SqrtSum};
pub use rat::Rat;
pub use space::{PointedSpace, SpaceStructureError, ValidationReport};
pub use word::{LinComb, Sign, Word, WordError};
