//! DNA alphabet, sequences, and Watson-Crick operations.
//!
//! Each symbol carries a base-4 digit value (A=0, T=1, C=2, G=3). That one
//! mapping fixes the symbol order, the integer <-> sequence radix
//! conversion, and the byte packing used by the command-line tools.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DnaError {
    #[error("invalid symbol byte 0x{0:02x}: expected A, T, C, or G")]
    InvalidSymbol(u8),
    #[error("value {value} does not fit in {width} base-4 digits")]
    ValueTooWide { value: u64, width: usize },
    #[error("window start={start} len={len} out of bounds for sequence of length {seq_len}")]
    OutOfBounds {
        start: usize,
        len: usize,
        seq_len: usize,
    },
}

/// One nucleotide. Discriminants are the base-4 digit values, which also
/// fixes the total symbol order A < T < C < G.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Base {
    A = 0,
    T = 1,
    C = 2,
    G = 3,
}

impl Base {
    pub const ALL: [Base; 4] = [Base::A, Base::T, Base::C, Base::G];

    /// Watson-Crick partner: A <-> T, C <-> G.
    #[inline]
    pub fn complement(self) -> Base {
        match self {
            Base::A => Base::T,
            Base::T => Base::A,
            Base::C => Base::G,
            Base::G => Base::C,
        }
    }

    #[inline]
    pub fn digit(self) -> u8 {
        self as u8
    }

    #[inline]
    pub fn from_digit(digit: u8) -> Option<Base> {
        match digit {
            0 => Some(Base::A),
            1 => Some(Base::T),
            2 => Some(Base::C),
            3 => Some(Base::G),
            _ => None,
        }
    }

    pub fn from_ascii(byte: u8) -> Option<Base> {
        match byte {
            b'A' => Some(Base::A),
            b'T' => Some(Base::T),
            b'C' => Some(Base::C),
            b'G' => Some(Base::G),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Base::A => 'A',
            Base::T => 'T',
            Base::C => 'C',
            Base::G => 'G',
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Base::A => "A",
            Base::T => "T",
            Base::C => "C",
            Base::G => "G",
        })
    }
}

/// An ordered sequence over the DNA alphabet. The empty sequence is valid.
///
/// Comparison is lexicographic under the symbol order A < T < C < G.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DnaSeq(Vec<Base>);

impl DnaSeq {
    pub fn new() -> Self {
        DnaSeq(Vec::new())
    }

    pub fn with_capacity(cap: usize) -> Self {
        DnaSeq(Vec::with_capacity(cap))
    }

    /// Parses uppercase A/T/C/G text; one optional trailing newline is
    /// accepted, any other byte is an error.
    pub fn from_text(text: &[u8]) -> Result<Self, DnaError> {
        let text = text.strip_suffix(b"\n").unwrap_or(text);
        text.iter()
            .map(|&b| Base::from_ascii(b).ok_or(DnaError::InvalidSymbol(b)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Base] {
        &self.0
    }

    pub fn push(&mut self, base: Base) {
        self.0.push(base);
    }

    pub fn extend_from_slice(&mut self, bases: &[Base]) {
        self.0.extend_from_slice(bases);
    }

    /// Reverse the sequence and complement every symbol. An involution.
    pub fn revcomp(&self) -> DnaSeq {
        DnaSeq(self.0.iter().rev().map(|b| b.complement()).collect())
    }

    /// The `len` consecutive symbols starting at `start` (0-based).
    pub fn substring(&self, start: usize, len: usize) -> Result<DnaSeq, DnaError> {
        if start.checked_add(len).is_none_or(|end| end > self.len()) {
            return Err(DnaError::OutOfBounds {
                start,
                len,
                seq_len: self.len(),
            });
        }
        Ok(DnaSeq(self.0[start..start + len].to_vec()))
    }

    pub fn concat(&self, other: &DnaSeq) -> DnaSeq {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        DnaSeq(out)
    }

    /// The sequence (ab)^pairs.
    pub fn repeat_pair(a: Base, b: Base, pairs: usize) -> DnaSeq {
        let mut out = Vec::with_capacity(2 * pairs);
        for _ in 0..pairs {
            out.push(a);
            out.push(b);
        }
        DnaSeq(out)
    }
}

impl Deref for DnaSeq {
    type Target = [Base];

    fn deref(&self) -> &[Base] {
        &self.0
    }
}

impl From<Vec<Base>> for DnaSeq {
    fn from(bases: Vec<Base>) -> Self {
        DnaSeq(bases)
    }
}

impl From<&[Base]> for DnaSeq {
    fn from(bases: &[Base]) -> Self {
        DnaSeq(bases.to_vec())
    }
}

impl FromIterator<Base> for DnaSeq {
    fn from_iter<I: IntoIterator<Item = Base>>(iter: I) -> Self {
        DnaSeq(iter.into_iter().collect())
    }
}

impl fmt::Display for DnaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DnaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DnaSeq(\"{self}\")")
    }
}

impl FromStr for DnaSeq {
    type Err = DnaError;

    fn from_str(s: &str) -> Result<Self, DnaError> {
        DnaSeq::from_text(s.as_bytes())
    }
}

/// Fixed-width base-4 rendering of `value`, most significant digit first.
///
/// Requires `value < 4^width`.
pub fn dna_rep(value: u64, width: usize) -> Result<DnaSeq, DnaError> {
    if width < 32 && value >> (2 * width) != 0 {
        return Err(DnaError::ValueTooWide { value, width });
    }
    let mut out = Vec::with_capacity(width);
    for d in (0..width).rev() {
        let digit = if 2 * d >= 64 {
            0
        } else {
            ((value >> (2 * d)) & 3) as u8
        };
        out.push(Base::from_digit(digit).expect("digit < 4"));
    }
    Ok(DnaSeq(out))
}

/// Inverse of [`dna_rep`]; total on every sequence.
pub fn int_of_dna_rep(seq: &DnaSeq) -> BigUint {
    let mut acc = BigUint::zero();
    for &b in seq.iter() {
        acc = (acc << 2u8) + b.digit();
    }
    acc
}

/// Packed 2-bit code of a short slice, most significant symbol first.
#[cfg(test)]
pub(crate) fn code_of(bases: &[Base]) -> u64 {
    debug_assert!(bases.len() <= 32);
    bases
        .iter()
        .fold(0u64, |acc, &b| (acc << 2) | u64::from(b.digit()))
}

/// Reverse complement of a packed 2-bit code of `len` symbols.
///
/// Complementation is `digit ^ 1` under the A=0, T=1, C=2, G=3 mapping.
pub(crate) fn rc_code(code: u64, len: usize) -> u64 {
    let mut out = 0u64;
    for i in 0..len {
        let digit = (code >> (2 * (len - 1 - i))) & 3;
        out |= (digit ^ 1) << (2 * i);
    }
    out
}
