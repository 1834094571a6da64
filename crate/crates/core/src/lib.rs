//! Polyhedral tools for verifying Wilf's conjecture one multiplicity at a time.
//!
//! The crate builds the Kunz cone for a multiplicity `m`, enumerates its face
//! lattice up to the action of the unit group of `Z/m`, and decides for each
//! face whether its interior can hold a numerical semigroup violating
//! `c(S) <= e(S) n(S)`. A combinatorial certificate (the Wilf game) and a
//! brute-force numerical semigroup library serve as independent checks.

pub mod bitset;
pub mod game;
pub mod geometry;
pub mod kunz;
pub mod lattice;
pub mod poset;
pub mod semigroup;
pub mod verifier;
