//! Short graded free resolutions of `R/I` as a module over a Noether
//! normalization `A = k[x_{n-d+1}, ..., x_n]`.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is exact:
//! coefficients live in ℚ or in a prime field, and all outputs are
//! deterministic.
//!
//! Layout:
//! - [`field`]: exact coefficient fields.
//! - [`polyring`]: monomials, monomial orders, sparse polynomials, division
//!   and a small textual parser.
//! - [`groebner`]: Buchberger for ideals, module terms under Schreyer orders,
//!   Schreyer syzygy steps, graded free resolutions and their minimalization,
//!   Betti tables.
//! - [`toric`]: generator matrices of simplicial semigroups and their toric
//!   ideals.
//! - [`shortres`]: the general short-resolution pipeline plus Hilbert series,
//!   multiplicity and regularity.
//! - [`dim3`]: the dimension-3 simplicial toric case (Schreyer sets, pruning,
//!   Apery and exceptional sets).
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod dim3;
pub mod error;
pub mod field;
pub mod groebner;
pub mod polyring;
pub mod shortres;
pub mod toric;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use polyring::{Monomial, MonomialOrder, PolyRing, Polynomial, WeightVector};
