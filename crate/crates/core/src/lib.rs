//! Eisenstein series on `X_1(l)` twisted by the periods of a weight-two cusp
//! form on `Gamma_0(l)`.
//!
//! A weight-two cusp form `h` defines a unitary character of `Gamma_0(l)`
//! through the real parts of its antiderivative at the cusps `-d/c`. That
//! character modifies the usual level-`l` lattice sums, giving the series
//! `E_{k,i;h}` and `E^_{k,chi;h}`. This crate evaluates them directly and
//! through their q-expansions, with explicit error bounds throughout, and
//! ships executable forms of their identities:
//!
//! - [`arith`]: Dirichlet characters, L-values, Ramanujan sums, rational
//!   reconstruction.
//! - [`cuspform`]: q-expansions, the antiderivative `H` on the upper half
//!   plane and at cusps, period data and the twisting character.
//! - [`eisenstein`]: direct lattice sums, Fourier coefficients, the exact
//!   untwisted coefficients and the transformation/decomposition checks.
//! - [`petersson`]: quadrature of the Petersson pairing over translates of
//!   the standard fundamental domain.
//! - [`jacobian`]: twist triviality and rationality scans.
//! - [`cli`]: the command-line surface used by the `twisted-eisenstein` binary.

pub mod arith;
pub mod budget;
pub mod cli;
pub mod cuspform;
pub mod eisenstein;
mod error;
pub mod jacobian;
pub mod petersson;
pub mod report;
pub mod sum;

pub use budget::{Estimate, PrecisionBudget};
pub use error::{Error, Result};

pub use num_complex::Complex64;
