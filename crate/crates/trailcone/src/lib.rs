//! Exact computations around trails in fundamental modules of finite-type
//! Kac-Moody algebras.
//!
//! [`cartan`] validates Cartan matrices and reduced words and [`rep`] builds
//! the fundamental modules over the rationals. [`trails`] enumerates trails
//! and their functions on `B_J`, and [`sgraph`] builds the S-graphs and
//! polytopes `K(c)`. [`giant`] assembles these into the envelope and its
//! checks, with [`crystal`] supplying `B_J(∞)` to evaluate `ε*_t` on.
//! [`sl2`] holds the closed-form rank-one calculus. The command line lives
//! in [`cli`].

#![allow(clippy::needless_range_loop)]

pub mod cartan;
pub mod cli;
pub mod config;
pub mod crystal;
pub mod giant;
pub mod hull;
pub mod linalg;
pub mod rep;
pub mod sgraph;
pub mod sl2;
pub mod trails;
