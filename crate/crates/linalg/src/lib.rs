//! Exact linear algebra for the cord-algebra engine.
//!
//! Two coefficient worlds are supported: prime fields `F_p` (word-sized
//! residues, the fast path) and the integers (arbitrary precision, used where
//! torsion matters). Nothing in this crate touches floating point.

mod closure;
mod echelon;
mod field;
mod lattice;
mod matrix;
mod smith;

pub use closure::{span_closure_int, span_closure_mod_p, Multiply};
pub use echelon::{rref_mod_p, ModPSpan, RowEchelon};
pub use field::{is_prime, PrimeField};
pub use lattice::{hermite_normal_form, IntLattice};
pub use matrix::IntMatrix;
pub use smith::{cokernel_invariants, smith_normal_form, CokernelInvariants};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}
