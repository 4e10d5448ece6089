//! Ground truth for the secondary-structure-avoidance property.
//!
//! A sequence is m-SSA when it contains no pair of non-overlapping
//! substrings of length >= m where one is the reverse complement of the
//! other. Checking window length exactly m suffices: a violating pair at
//! any length k > m contains one at length m (a prefix of the first window
//! against the matching suffix of the second).

use std::collections::HashMap;

use thiserror::Error;

use crate::dna::{dna_rep, rc_code, Base, DnaSeq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("word length {0} outside the exhaustive regime 1..=8")]
    OutOfExhaustiveRegime(usize),
}

/// A violating pair: `window(p) = revcomp(window(q))`, both of length
/// `len`, non-overlapping with the first window before the second
/// (`p + len <= q`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RcPairWitness {
    pub p: usize,
    pub q: usize,
    pub len: usize,
}

/// Finds the lexicographically minimal `(p, q)` pair of non-overlapping
/// windows of length exactly `len` where the first is the reverse
/// complement of the second.
///
/// This is the indexed implementation: window content is mapped to its
/// sorted start positions, then each candidate first window looks up its
/// reverse complement. [`find_rc_pair_quadratic`] is the all-pairs
/// reference; both return the identical witness.
pub fn find_rc_pair(x: &DnaSeq, len: usize) -> Option<RcPairWitness> {
    assert!(len >= 1, "window length must be positive");
    let n = x.len();
    if n < 2 * len {
        return None;
    }
    let mut index: HashMap<&[Base], Vec<usize>> = HashMap::new();
    for q in 0..=n - len {
        index.entry(&x[q..q + len]).or_default().push(q);
    }
    let mut rc = Vec::with_capacity(len);
    for p in 0..=n - 2 * len {
        rc.clear();
        rc.extend(x[p..p + len].iter().rev().map(|b| b.complement()));
        if let Some(starts) = index.get(rc.as_slice()) {
            // starts are ascending by construction
            let at = starts.partition_point(|&q| q < p + len);
            if at < starts.len() {
                return Some(RcPairWitness {
                    p,
                    q: starts[at],
                    len,
                });
            }
        }
    }
    None
}

/// All-pairs reference implementation of [`find_rc_pair`].
pub fn find_rc_pair_quadratic(x: &DnaSeq, len: usize) -> Option<RcPairWitness> {
    assert!(len >= 1, "window length must be positive");
    let n = x.len();
    if n < 2 * len {
        return None;
    }
    for p in 0..=n - 2 * len {
        for q in p + len..=n - len {
            if (0..len).all(|d| x[p + d] == x[q + len - 1 - d].complement()) {
                return Some(RcPairWitness { p, q, len });
            }
        }
    }
    None
}

/// True iff `x` contains no pair of non-overlapping reverse-complement
/// substrings of length >= m. Vacuously true when `m > x.len()`.
pub fn is_m_ssa(x: &DnaSeq, m: usize) -> bool {
    find_rc_pair(x, m).is_none()
}

/// A maximal even-length period-2 run `(ab)^t`. `end` is inclusive;
/// `a = b` is permitted (a homopolymer run).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Period2Run {
    pub start: usize,
    pub end: usize,
    pub a: Base,
    pub b: Base,
}

/// Finds the earliest-starting substring of the form `(ab)^t` with
/// `2t >= min_len`, extended to maximal even length at that start.
pub fn find_period2_run(x: &DnaSeq, min_len: usize) -> Option<Period2Run> {
    assert!(min_len >= 2, "period-2 run threshold must be at least 2");
    let n = x.len();
    if n < 2 {
        return None;
    }
    // match_run[i] = number of consecutive positions j >= i with x[j] == x[j+2]
    let mut match_run = vec![0usize; n];
    for i in (0..n.saturating_sub(2)).rev() {
        if x[i] == x[i + 2] {
            match_run[i] = 1 + match_run[i + 1];
        }
    }
    for i in 0..n - 1 {
        let stretch = (2 + match_run[i]).min(n - i);
        let even = stretch & !1;
        if even >= min_len {
            return Some(Period2Run {
                start: i,
                end: i + even - 1,
                a: x[i],
                b: x[i + 1],
            });
        }
    }
    None
}

/// A set of length-m words containing no word together with its reverse
/// complement (self-reverse-complementary words excluded).
#[derive(Debug, Clone)]
pub struct AntiRcSet {
    m: usize,
    members: Vec<DnaSeq>,
}

impl AntiRcSet {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Members in ascending lexicographic order.
    pub fn members(&self) -> &[DnaSeq] {
        &self.members
    }
}

/// Longest word length handled by the exhaustive sweeps below.
pub const EXHAUSTIVE_MAX_M: usize = 8;

/// Builds a maximum-cardinality anti-reverse-complement set of length-m
/// words: all self-reverse-complementary words are excluded and exactly one
/// word is kept from every remaining pair, deterministically the
/// lexicographically smaller. The size is (4^m - s)/2 with s = 4^(m/2) for
/// even m and s = 0 for odd m.
pub fn max_anti_rc_set(m: usize) -> Result<AntiRcSet, OracleError> {
    if m == 0 || m > EXHAUSTIVE_MAX_M {
        return Err(OracleError::OutOfExhaustiveRegime(m));
    }
    let mut members = Vec::new();
    for code in 0..1u64 << (2 * m) {
        let rc = rc_code(code, m);
        if code < rc {
            members.push(dna_rep(code, m).expect("code < 4^m"));
        }
    }
    Ok(AntiRcSet { m, members })
}

/// Capacity upper bounds in bits per nucleotide for m-SSA sequences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityBound {
    pub m: usize,
    /// Size of the maximum anti-reverse-complement set of length-m words.
    pub set_size: u64,
    /// (1/m) log2(set_size).
    pub exact: f64,
    /// (1/m) log2(4^m / 2) = 2 - 1/m, from the pairing argument alone.
    pub trivial: f64,
}

pub fn capacity_upper_bound(m: usize) -> Result<CapacityBound, OracleError> {
    let set = max_anti_rc_set(m)?;
    let size = set.size() as u64;
    Ok(CapacityBound {
        m,
        set_size: size,
        exact: (size as f64).log2() / m as f64,
        trivial: (2 * m - 1) as f64 / m as f64,
    })
}
