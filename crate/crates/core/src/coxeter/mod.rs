//! Finite Weyl groups from root data: enumeration, length, descent sets,
//! Bruhat order, conjugacy classes and exact character tables.

pub mod chars;
pub mod datum;
pub mod weyl;
