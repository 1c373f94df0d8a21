//! Exact computational algebra for kinematic analysis of mechanisms with
//! revolute joints.
//!
//! The crate provides arbitrary-precision rational arithmetic, sparse
//! multivariate polynomials with pluggable monomial orders, a Buchberger
//! based Gröbner engine (elimination, intersection, dimension, Jacobian
//! regularity), Euler-parameter rotation algebra, the prime decomposition
//! of revolute-joint constraint ideals in arbitrary local frames, and the
//! complete analysis pipelines for the Bricard and Bennett mechanisms.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod scalar;
pub mod poly;
pub mod groebner;
pub mod euler;
pub mod revolute;
pub mod mechanism;

pub use scalar::{BigInteger, ExactScalar};
pub use poly::{Monomial, MonomialOrder, Polynomial, VariableUniverse};
pub use groebner::{GroebnerBasis, IdealPresentation};
