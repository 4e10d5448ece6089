//! Constrained DNA coding: construction, encoding, decoding, counting, and
//! verification of codes whose words avoid secondary-structure formation.
//!
//! A single strand folds back on itself when one substring hybridizes with
//! the reverse complement of another, non-overlapping substring (a *stem*).
//! A sequence is *m-SSA* if no such pair of length >= m exists. This crate
//! provides:
//!
//! - [`dna`]: the four-letter alphabet, sequences, and base-4 conversion;
//! - [`oracle`]: ground-truth m-SSA checks, period-2 run detection, and
//!   capacity upper bounds from anti-reverse-complement sets;
//! - [`block`]: block-concatenation codes built from compatibility search
//!   (exhaustive maximum-clique or greedy), plus a fixed five-block baseline;
//! - [`composition`]: symbol-composition constrained codes with exact
//!   big-integer counting and an enumerative rank/unrank codec;
//! - [`replacement`]: a linear-time encoder/decoder with one redundant
//!   symbol based on iterative sequence replacement.

pub mod block;
pub mod composition;
pub mod dna;
pub mod oracle;
pub mod replacement;

pub use dna::{Base, DnaSeq};
