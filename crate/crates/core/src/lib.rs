//! Deterministic automata for concatenations of regular languages.
//!
//! The crate builds the ε-free NFA for `L(A₁)⋯L(Aₖ)`, determinizes it while
//! decoding each subset into a tuple of per-automaton states, counts the
//! tuples that can ever be reached, and generates the witness automata that
//! attain those counts. The [`unary`] module covers one-letter alphabets.

pub mod automata;
pub mod bounds;
pub mod concat;
pub mod error;
pub mod grid;
pub mod unary;
pub mod witness;

pub use error::{Error, Result};
