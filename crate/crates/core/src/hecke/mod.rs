//! The generic Hecke algebra over `Z[v^{±1}]` in the normalization
//! `H_w = v^{ℓ(w)} T_w`: standard-basis arithmetic, the bar involution, the
//! involutions `a` and `b`, and both self-dual Kazhdan-Lusztig bases.

pub mod elem;
pub mod kl;
