//! Weighted minimax polynomials on `[0, 1]` and what they compute.
//!
//! The central object is the *uniform Jacobi polynomial*: the monic polynomial
//! of degree `n` with least weighted sup-norm `sup t^α (1-t)^β |p(t)|` on
//! `[0, 1]`. Around it sit
//!
//! * [`jacobi`]: a Remez exchange solver for it,
//! * [`comb`]: the conformal map of the upper half-plane onto a slit strip
//!   ("comb") whose prevertices are the same roots, solved independently by
//!   Newton's method,
//! * [`ball`]: the least-deviation polynomial for a monomial
//!   `z1^k1 conj(z1)^l1 z2^k2 conj(z2)^l2` on the unit ball of C², built from
//!   a uniform Jacobi polynomial, together with a verifier on the triangle,
//! * [`asymptotics`]: the closed-form limit map and constant for large degree,
//! * [`oracle`]: brute-force linear-programming minimax solvers used as
//!   independent ground truth.
//!
//! The crate is `no_std` (it needs `alloc`); file formats, the CLI and
//! parallel sweeps live in the `unijac` crate.
#![no_std]
// `Float` is needed without std; when a dev-dependency pulls std into the
// graph its inherent float methods take over and the imports look unused.
#![allow(unused_imports)]

extern crate alloc;

pub mod asymptotics;
pub mod ball;
pub mod comb;
mod error;
pub mod jacobi;
mod logpoly;
mod math;
pub mod oracle;
mod roots;
mod weight;

pub use error::Error;
pub use num_complex::Complex64;
pub use weight::WeightParams;

pub use asymptotics::{AsymptoticProfile, StarMapData};
pub use ball::{BallExtremal, MonomialIndex, TriangleReport};
pub use comb::{CombDomainSpec, CombMapData, Polyline};
pub use jacobi::{SolveOptions, UniformJacobiSolution};
pub use oracle::OracleResult;

pub type Result<T, E = Error> = core::result::Result<T, E>;
