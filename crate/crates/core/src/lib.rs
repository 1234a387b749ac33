//! Exact rooted spanning forest counts for circulant foliations.
//!
//! A circulant foliation `H_n(G_1, ..., G_m)` replaces every vertex `v_i` of a
//! base multigraph `H` by a circulant graph `G_i = C_n(s_{i,1}, ..., s_{i,k_i})`
//! and joins the layer-`k` copies along the edges of `H`. This crate computes
//! the number of rooted spanning forests `f(n)` of such graphs exactly, checks
//! the square structure `f(n) = p * f(H) * a(n)^2`, and estimates the growth
//! constant `A` with `f(n) ~ A^n`.
//!
//! Everything here is pure computation over `alloc`; file formats and the
//! command-line front end live in the `forests-cli` crate.
//!
//! ```
//! use forests_core::{dsl, family, forest};
//!
//! let desc = dsl::parse_family("GP(n,2)").unwrap();
//! let spec = family::build_family(&desc).unwrap();
//! let petersen = forest::forest_count(&spec, 5).unwrap();
//! assert_eq!(petersen.f_n.to_string(), "314928");
//! ```
#![no_std]

extern crate alloc;
#[cfg(test)]
#[macro_use]
extern crate std;

pub mod algebra;
pub mod arith;
pub mod asymptotics;
pub mod dsl;
mod error;
pub mod family;
pub mod forest;
pub mod graph;

pub use error::{Error, Result};

pub use num_bigint::{BigInt, BigUint};
pub use num_complex::Complex64;
