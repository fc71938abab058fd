//! Atomic decompositions of Kazhdan–Lusztig basis elements in the spherical
//! Hecke algebra of affine type G2, and the Kostka–Foulkes polynomials they
//! determine.
//!
//! The canonical basis element `H̄_λ` is expanded in the atomic basis `N_μ`
//! along two independent routes:
//!
//! * [`precanonical::atomic`] walks down the pre-canonical bases
//!   `𝒩⁶ → 𝒩⁵ → 𝒩⁴ → 𝒩³ → 𝒩²`;
//! * [`adjusted::atomic_second`] walks down the adjusted bases `Ñᵏ`, whose
//!   layers are positive one step at a time, and then rewrites `Ñ²` atomically.
//!
//! [`kostka`] turns an atomic expansion into Kostka–Foulkes polynomials and
//! checks them against weight multiplicities from Freudenthal's formula.

pub mod adjusted;
pub mod cli;
pub mod combo;
pub mod error;
pub mod kostka;
pub mod lattice;
pub mod poly;
pub mod precanonical;

pub use combo::{BasisLabel, Combination};
pub use error::{Error, Result};
pub use lattice::Weight;
pub use poly::LaurentPoly;
