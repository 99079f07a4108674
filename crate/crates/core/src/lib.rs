//! Exact representation theory of `U(N)` signatures, limit moments of
//! regular sequences, and grid-based Markov-Krein transforms.
//!
//! The crate is `no_std` with `alloc`. Exact arithmetic uses `BigRational`;
//! numerical transforms use `f64` and `Complex64`.
#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asymptotics;
pub mod diagram;
pub mod error;
pub mod experiment;
pub mod gallery;
pub mod grid;
pub mod measure;
pub mod poly;
pub mod rational;
pub mod repr;
pub mod series;
pub mod signature;
pub mod transform;

pub use error::{Error, Result};
pub use rational::Rational;
