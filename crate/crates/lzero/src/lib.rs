//! High-precision zeros of Dirichlet and modular L-functions.
//!
//! The ordinate of the n-th zero on the critical line is characterized as
//! the unique solution of an exact transcendental equation: a smooth
//! generalized Riemann-Siegel phase plus the regularized argument of L
//! itself, equated to a half-integer multiple of pi indexed by n. This crate
//! evaluates the L-functions from first principles (Hurwitz zeta for the
//! Dirichlet family, incomplete-gamma partition for modular forms), seeds
//! each root with a Lambert-W closed form, and polishes by annealing the
//! regularization parameter toward zero.
//!
//! Modules:
//! - [`kernel`]: arbitrary-precision complex arithmetic and special functions
//! - [`characters`]: Dirichlet characters, Gauss sums, conductors
//! - [`dirichlet`]: L(z, chi), the completed xi, and its phase decomposition
//! - [`modular`]: Ramanujan tau, weight-k completed L-functions
//! - [`generic`]: descriptor-driven L-functions unifying the families
//! - [`solver`]: Lambert seeds, delta-annealed root solving, zero counting

pub mod characters;
pub mod dirichlet;
pub mod error;
pub mod generic;
pub mod kernel;
pub mod modular;
pub mod solver;

pub use error::{Error, Result};
