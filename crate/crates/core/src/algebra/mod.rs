//! Exact arithmetic substrate: Laurent polynomials over Z, integer matrices
//! with Smith normal form, and small finite-field arithmetic.

pub mod ff;
pub mod intmat;
pub mod laurent;
