//! Exact-arithmetic combinatorics of Hecke algebras over finite Weyl groups:
//! Kazhdan-Lusztig bases in the generic and monodromic Hecke algebras,
//! fixed-point tori and geometric series, and the duality / weight-partition
//! certificates built on top of them.
//!
//! Everything is computed over `Z[v^{±1}]` with arbitrary-precision integer
//! coefficients; there is no floating point anywhere in this crate.

pub mod algebra;
pub mod coxeter;
pub mod dlchar;
pub mod error;
pub mod exec;
pub mod hecke;
pub mod mono;
pub mod torus;

pub use algebra::ff::FFElem;
pub use algebra::intmat::IntMatrix;
pub use algebra::laurent::LaurentPoly;
pub use coxeter::datum::RootDatum;
pub use coxeter::weyl::{ElemId, WeylGroup};
pub use error::Error;
pub use exec::ExecMode;
pub use hecke::elem::HeckeElem;
pub use hecke::kl::KLTable;
