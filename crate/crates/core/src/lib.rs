//! Discrete-to-continuous extensions of set functions and the spectral
//! theory of pairs of homogeneous functions, with exhaustive verification
//! on small instances.
//!
//! Modules:
//! - [`setfn`]: set functions on tuples of subsets and disjoint pairs
//! - [`extend`]: Lovász, multilinear, diagonal and multiple-integral extensions
//! - [`structures`]: graphs, signed graphs, hypergraphs, tensors, simplicial complexes
//! - [`spectra`]: eigenpairs of homogeneous pairs and the solvers around them
//! - [`constants`]: Cheeger constants, maxcut, clique and independence numbers
//! - [`verify`]: checks pairing discrete oracles with continuous computations
//! - [`cli`]: file formats and command dispatch

pub mod cli;
pub mod constants;
pub mod convex;
pub mod error;
pub mod extend;
pub mod linalg;
pub mod lp;
pub mod scalar;
pub mod setfn;
pub mod spectra;
pub mod structures;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
