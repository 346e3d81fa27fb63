//! Exact normal forms for planar polynomial vector fields whose leading part
//! is a quasi-homogeneous Hamiltonian field.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod euler;
pub mod grading;
pub mod linalg;
pub mod normalizer;
pub mod parse;
pub mod render;
pub mod resonance;

pub use error::{Error, Result};
