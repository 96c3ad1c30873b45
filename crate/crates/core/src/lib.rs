//! Exact analysis of finite point sets on spheres and projective spaces,
//! modeled as primitive idempotents of simple Euclidean Jordan algebras.
//!
//! The pipeline takes a design (sphere coordinates or a Gram matrix of
//! Jordan inner products), computes its angle set, strength, annihilator
//! polynomial and tightness, then builds the orthogonal idempotent basis of
//! its Bose-Mesner algebra and checks whether the idempotent ranks certify a
//! rational angle set. Everything is exact: rationals and a single real
//! quadratic field per design.

pub mod catalog;
pub mod design;
pub mod error;
pub mod exactnum;
pub mod jacobi;
pub mod matrix;
pub mod poly;
pub mod rankforms;
pub mod scheme;

pub use error::{Error, Result};
