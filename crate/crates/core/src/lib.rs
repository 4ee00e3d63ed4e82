//! Exact computer algebra for the Calogero-Sutherland system of fermionic
//! particles and its particle-number limit.
//!
//! The crate provides four layers:
//!
//! * an exact arithmetic substrate: rationals, the coefficient ring in the
//!   coupling `b` (and an optional formal count `N`), sparse polynomials in
//!   coordinate variables and in Fock generators, and windowed Laurent
//!   series ([`rat`], [`scalar`], [`xpoly`], [`ppoly`], [`zseries`]);
//! * symmetric-function combinatorics: Newton-basis conversions, alternants,
//!   Schur polynomials and the coordinate/generator isomorphisms ([`symfun`]);
//! * the finite model: exchange and Dunkl operators, the commuting
//!   Hamiltonians, and their reformulation through slot embeddings and
//!   residue antisymmetrization ([`dunkl`]);
//! * the limit: vertex operators on the extended ring of symmetric
//!   functions, evaluation maps, the limiting Dunkl operator and commuting
//!   Hamiltonians, plus the wedge (free-fermion) realization ([`fock`],
//!   [`pdiffop`], [`fermion`]).
//!
//! All computations are exact over arbitrary-precision rationals; values are
//! immutable after construction and all operations are pure functions, so
//! independent cases may be evaluated from multiple threads freely.

pub mod error;
pub mod rat;
pub mod scalar;
pub mod printer;
pub mod xpoly;
pub mod ppoly;
pub mod zseries;
pub mod partition;
pub mod symfun;
pub mod slot;
pub mod dunkl;
pub mod pdiffop;
pub mod fock;
pub mod fermion;
pub mod parse;

pub use error::{CoreError, Result};
pub use partition::Partition;
pub use pdiffop::PDiffOp;
pub use ppoly::{PMono, PPoly};
pub use rat::Rat;
pub use scalar::BetaScalar;
pub use xpoly::{XMono, XPoly};
pub use zseries::ZSeries;
