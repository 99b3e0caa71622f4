//! Grover-search solver for the maximal clique problem.
//!
//! The pipeline encodes an n-vertex graph on n data qubits, marks
//! illegal vertex subsets through the complement graph, classifies the
//! legal ones by Hamming weight into an ancilla grid, and amplifies the
//! heaviest occupied weight level with Grover iterations, descending
//! one level at a time until a measured candidate passes classical
//! verification.
//!
//! - [`graph`]: graph model, DIMACS parsing, and the brute-force oracle.
//! - [`circuit`]: gate IR, register layout, and circuit builders.
//! - [`format`]: textual circuit serialization.
//! - [`sim`]: dense state-vector and compiled-oracle backends.
//! - [`driver`]: the level-descent solve procedure.
//! - [`resources`]: exact gate/qubit accounting and closed-form
//!   complexity estimates.

pub mod circuit;
pub mod driver;
pub mod error;
pub mod format;
pub mod graph;
pub mod resources;
pub mod sim;

pub use error::{Error, Result};
