//! Sequence-replacement codec: one redundant symbol, stem threshold of
//! logarithmic order.
//!
//! For codeword length n = 4^p (p >= 3) the encoder maps n-1 source symbols
//! to n output symbols that are m-SSA for every m >= 6p + 4. It prepends an
//! A and, while the working sequence still contains a reverse-complement
//! window pair or a period-2 run at threshold m' = 3p + 2, deletes the
//! offending span and prepends a fixed-width pointer recording what was
//! removed and where:
//!
//! - Type I (`T` + three width-p indices): an RC pair y at `[i, j]`,
//!   z at `k`; the z window of length m' is deleted. Net length change is
//!   exactly -1.
//! - Type II (`C` + two symbols + two width-p indices): a period-2 run
//!   `(ab)^t` spanning `[i, j]` is deleted. Net change is at most -(p-1).
//!
//! Indices are 0-based positions in the working sequence immediately before
//! the deletion; the deleted span always lies at or after every recorded
//! read position, so decoding can strip pointers last-in-first-out and
//! re-insert spans at their recorded indices. The sequence shrinks at every
//! step, and afterwards it is padded back to length n with an AC pattern
//! the decoder never reads.

use thiserror::Error;

use crate::dna::{dna_rep, Base, DnaSeq};
use crate::oracle::{find_period2_run, find_rc_pair, is_m_ssa};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplacementError {
    #[error("codeword length {0} is not a power of four")]
    NotAPowerOfFour(usize),
    #[error("codeword length {0} is too short: need n = 4^p > 16")]
    TooShort(usize),
    #[error("message must be {expected} symbols, got {got}")]
    WrongMessageLength { expected: usize, got: usize },
    #[error("codeword must be {expected} symbols, got {got}")]
    WrongCodewordLength { expected: usize, got: usize },
    #[error("not a codeword: {0}")]
    NotACodeword(&'static str),
}

/// Validated parameter bundle for codeword length n = 4^p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodecParams {
    /// Codeword length, n = 4^p.
    pub n: usize,
    /// log4 of n; pointer indices are p symbols wide.
    pub p: usize,
    /// Scanning threshold m' = 1.5 log2(n) + 2 = 3p + 2.
    pub mprime: usize,
    /// Guaranteed stem bound m = 3 log2(n) + 4 = 6p + 4 = 2 m'.
    pub m_guarantee: usize,
}

pub fn validate_params(n: usize) -> Result<CodecParams, ReplacementError> {
    if !n.is_power_of_two() || !n.trailing_zeros().is_multiple_of(2) {
        return Err(ReplacementError::NotAPowerOfFour(n));
    }
    if n <= 16 {
        return Err(ReplacementError::TooShort(n));
    }
    let p = (n.trailing_zeros() / 2) as usize;
    Ok(CodecParams {
        n,
        p,
        mprime: 3 * p + 2,
        m_guarantee: 6 * p + 4,
    })
}

/// What one scanning pass found, if anything.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trigger {
    /// Reverse-complement window pair: y spans `[y_start, y_end]` (length
    /// exactly m'), z starts at `z_start`, and y = revcomp(z).
    RcPair {
        y_start: usize,
        y_end: usize,
        z_start: usize,
    },
    /// Period-2 run `(ab)^t` spanning `[start, end]`, even length >= m'.
    Run {
        start: usize,
        end: usize,
        a: Base,
        b: Base,
    },
}

/// Scans for the next replacement at threshold m'. The earlier start wins;
/// an RC pair wins ties.
pub fn scan_trigger(seq: &DnaSeq, params: &CodecParams) -> Option<Trigger> {
    scan_at(seq, params.mprime)
}

fn scan_at(seq: &DnaSeq, threshold: usize) -> Option<Trigger> {
    let pair = find_rc_pair(seq, threshold);
    let run = find_period2_run(seq, threshold);
    match (pair, run) {
        (Some(w), Some(r)) if r.start < w.p => Some(Trigger::Run {
            start: r.start,
            end: r.end,
            a: r.a,
            b: r.b,
        }),
        (Some(w), _) => Some(Trigger::RcPair {
            y_start: w.p,
            y_end: w.p + threshold - 1,
            z_start: w.q,
        }),
        (None, Some(r)) => Some(Trigger::Run {
            start: r.start,
            end: r.end,
            a: r.a,
            b: r.b,
        }),
        (None, None) => None,
    }
}

/// Deletes the triggered span and prepends the pointer that records it.
fn apply_trigger(seq: &DnaSeq, trigger: &Trigger, params: &CodecParams) -> DnaSeq {
    let p = params.p;
    let fits = |i: usize| i < params.n;
    match *trigger {
        Trigger::RcPair {
            y_start,
            y_end,
            z_start,
        } => {
            let window = y_end - y_start + 1;
            assert!(y_end < z_start && z_start + window <= seq.len());
            assert!(
                fits(y_start) && fits(y_end) && fits(z_start),
                "pointer indices must fit width p"
            );
            let mut out = DnaSeq::with_capacity(seq.len() + 3 * p);
            out.push(Base::T);
            out.extend_from_slice(&dna_rep(y_start as u64, p).expect("index fits"));
            out.extend_from_slice(&dna_rep(y_end as u64, p).expect("index fits"));
            out.extend_from_slice(&dna_rep(z_start as u64, p).expect("index fits"));
            out.extend_from_slice(&seq[..z_start]);
            out.extend_from_slice(&seq[z_start + window..]);
            out
        }
        Trigger::Run { start, end, a, b } => {
            assert!(start < end && end < seq.len() && (end - start + 1) % 2 == 0);
            assert!(fits(start) && fits(end), "pointer indices must fit width p");
            let mut out = DnaSeq::with_capacity(seq.len() + 2 * p);
            out.push(Base::C);
            out.push(a);
            out.push(b);
            out.extend_from_slice(&dna_rep(start as u64, p).expect("index fits"));
            out.extend_from_slice(&dna_rep(end as u64, p).expect("index fits"));
            out.extend_from_slice(&seq[..start]);
            out.extend_from_slice(&seq[end + 1..]);
            out
        }
    }
}

/// Runs the scan/replace loop to exhaustion. Returns the reduced sequence
/// and the number of replacement steps.
fn reduce(mut seq: DnaSeq, params: &CodecParams) -> (DnaSeq, usize) {
    let mut steps = 0usize;
    while let Some(trigger) = scan_at(&seq, params.mprime) {
        let next = apply_trigger(&seq, &trigger, params);
        debug_assert!(next.len() < seq.len(), "every replacement must shrink");
        seq = next;
        steps += 1;
    }
    (seq, steps)
}

/// Encodes n-1 source symbols into an n-symbol codeword that is m-SSA for
/// every m >= m_guarantee.
pub fn encode(x: &DnaSeq, params: &CodecParams) -> Result<DnaSeq, ReplacementError> {
    if x.len() != params.n - 1 {
        return Err(ReplacementError::WrongMessageLength {
            expected: params.n - 1,
            got: x.len(),
        });
    }
    let mut c = DnaSeq::with_capacity(params.n);
    c.push(Base::A);
    c.extend_from_slice(x);
    if !is_m_ssa(&c, params.m_guarantee) {
        let (reduced, _) = reduce(c, params);
        c = reduced;
        let missing = params.n - c.len();
        for i in 0..missing {
            c.push(if i % 2 == 0 { Base::A } else { Base::C });
        }
    }
    debug_assert_eq!(c.len(), params.n);
    debug_assert!(is_m_ssa(&c, params.m_guarantee));
    Ok(c)
}

fn parse_index(digits: &[Base]) -> usize {
    digits
        .iter()
        .fold(0usize, |acc, &b| (acc << 2) | b.digit() as usize)
}

/// Inverts [`encode`]: strips pointers last-in-first-out, re-inserting each
/// recorded span, until the leading symbol is A; the n-1 symbols after that
/// A are the message. Trailing padding is never read.
pub fn decode(c: &DnaSeq, params: &CodecParams) -> Result<DnaSeq, ReplacementError> {
    if c.len() != params.n {
        return Err(ReplacementError::WrongCodewordLength {
            expected: params.n,
            got: c.len(),
        });
    }
    let p = params.p;
    let mut work = c.to_vec();
    // each iteration strips one pointer; a valid codeword has fewer than n
    for _ in 0..=params.n {
        match work.first() {
            None => return Err(ReplacementError::NotACodeword("sequence exhausted")),
            Some(Base::A) => {
                if work.len() < params.n {
                    return Err(ReplacementError::NotACodeword("truncated payload"));
                }
                return Ok(DnaSeq::from(&work[1..params.n]));
            }
            Some(Base::T) => {
                let plen = 1 + 3 * p;
                if work.len() < plen {
                    return Err(ReplacementError::NotACodeword("truncated type-I pointer"));
                }
                let i = parse_index(&work[1..1 + p]);
                let j = parse_index(&work[1 + p..1 + 2 * p]);
                let k = parse_index(&work[1 + 2 * p..plen]);
                work.drain(..plen);
                if i > j || j >= work.len() || k > work.len() {
                    return Err(ReplacementError::NotACodeword(
                        "inconsistent type-I indices",
                    ));
                }
                let z: Vec<Base> = work[i..=j].iter().rev().map(|b| b.complement()).collect();
                work.splice(k..k, z);
            }
            Some(Base::C) => {
                let plen = 3 + 2 * p;
                if work.len() < plen {
                    return Err(ReplacementError::NotACodeword("truncated type-II pointer"));
                }
                let a = work[1];
                let b = work[2];
                let i = parse_index(&work[3..3 + p]);
                let j = parse_index(&work[3 + p..plen]);
                work.drain(..plen);
                if i > j || i > work.len() {
                    return Err(ReplacementError::NotACodeword(
                        "inconsistent type-II indices",
                    ));
                }
                let span = j - i + 1;
                if !span.is_multiple_of(2) {
                    return Err(ReplacementError::NotACodeword(
                        "inconsistent type-II indices",
                    ));
                }
                let run = DnaSeq::repeat_pair(a, b, span / 2);
                work.splice(i..i, run.iter().copied());
            }
            Some(Base::G) => {
                return Err(ReplacementError::NotACodeword("leading G"));
            }
        }
    }
    Err(ReplacementError::NotACodeword("replacement pointer loop"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> DnaSeq {
        s.parse().unwrap()
    }

    fn pattern(parts: &[(char, usize)]) -> DnaSeq {
        let mut out = String::new();
        for &(c, count) in parts {
            for _ in 0..count {
                out.push(c);
            }
        }
        seq(&out)
    }

    #[test]
    fn params_examples() {
        let p = validate_params(64).unwrap();
        assert_eq!((p.p, p.mprime, p.m_guarantee), (3, 11, 22));
        assert_eq!(p.m_guarantee, 2 * p.mprime);
        let p = validate_params(256).unwrap();
        assert_eq!((p.p, p.mprime, p.m_guarantee), (4, 14, 28));
        assert!(matches!(
            validate_params(60),
            Err(ReplacementError::NotAPowerOfFour(60))
        ));
        assert!(matches!(
            validate_params(128),
            Err(ReplacementError::NotAPowerOfFour(128))
        ));
        assert!(matches!(
            validate_params(16),
            Err(ReplacementError::TooShort(16))
        ));
    }

    #[test]
    fn scan_examples_at_reduced_threshold() {
        // production always scans at m'; reduced thresholds keep the
        // examples readable
        assert_eq!(
            scan_at(&seq("ACGT"), 2),
            Some(Trigger::RcPair {
                y_start: 0,
                y_end: 1,
                z_start: 2
            })
        );
        assert_eq!(
            scan_at(&seq("ACACAC"), 4),
            Some(Trigger::Run {
                start: 0,
                end: 5,
                a: Base::A,
                b: Base::C
            })
        );
        // AT is self-reverse-complementary: pair and run tie at start 0 and
        // the pair wins
        assert_eq!(
            scan_at(&seq("ATATAT"), 2),
            Some(Trigger::RcPair {
                y_start: 0,
                y_end: 1,
                z_start: 2
            })
        );
        assert_eq!(scan_at(&seq("AACC"), 4), None);
    }

    #[test]
    fn prepend_only_path() {
        let params = validate_params(64).unwrap();
        let x: DnaSeq = "AAC".repeat(21).parse().unwrap();
        let out = encode(&x, &params).unwrap();
        let mut want = DnaSeq::new();
        want.push(Base::A);
        want.extend_from_slice(&x);
        assert_eq!(out, want);
        assert_eq!(decode(&out, &params).unwrap(), x);
    }

    #[test]
    fn replacement_path_round_trip() {
        let params = validate_params(64).unwrap();
        let x = pattern(&[('A', 28), ('C', 3), ('A', 2), ('G', 3), ('T', 27)]);
        let out = encode(&x, &params).unwrap();
        assert_eq!(out.len(), 64);
        assert!(is_m_ssa(&out, 22));
        assert!(!is_m_ssa(
            &{
                let mut c = DnaSeq::new();
                c.push(Base::A);
                c.extend_from_slice(&x);
                c
            },
            22
        ));
        assert_eq!(decode(&out, &params).unwrap(), x);
    }

    #[test]
    fn output_length_is_always_n() {
        let params = validate_params(64).unwrap();
        for x in [
            pattern(&[('A', 63)]),
            pattern(&[('T', 63)]),
            pattern(&[('A', 20), ('T', 20), ('A', 23)]),
            "AT".repeat(31).parse::<DnaSeq>().unwrap().concat(&seq("A")),
        ] {
            let out = encode(&x, &params).unwrap();
            assert_eq!(out.len(), 64);
            assert_eq!(decode(&out, &params).unwrap(), x);
        }
    }

    #[test]
    fn wrong_lengths_error() {
        let params = validate_params(64).unwrap();
        assert!(matches!(
            encode(&pattern(&[('A', 64)]), &params),
            Err(ReplacementError::WrongMessageLength { .. })
        ));
        assert!(matches!(
            decode(&pattern(&[('A', 63)]), &params),
            Err(ReplacementError::WrongCodewordLength { .. })
        ));
    }

    #[test]
    fn leading_g_is_not_a_codeword() {
        let params = validate_params(64).unwrap();
        let mut c = DnaSeq::new();
        c.push(Base::G);
        c.extend_from_slice(&pattern(&[('A', 63)]));
        assert!(matches!(
            decode(&c, &params),
            Err(ReplacementError::NotACodeword("leading G"))
        ));
    }

    #[test]
    fn decode_iteration_cap_trips() {
        // A self-reproducing type-I pointer: it re-inserts an exact copy of
        // itself, so the working sequence never reaches a leading A.
        let params = validate_params(64).unwrap();
        let c = seq(&("TAAAACTAAA".to_owned() + "TTTAGTTTTA" + &"A".repeat(44)));
        assert_eq!(c.len(), 64);
        assert!(matches!(
            decode(&c, &params),
            Err(ReplacementError::NotACodeword("replacement pointer loop"))
        ));
    }

    #[test]
    fn decode_rejects_inconsistent_pointers() {
        let params = validate_params(64).unwrap();
        // type-I with j pointing past the stripped remainder
        let mut c = DnaSeq::new();
        c.push(Base::T);
        c.extend_from_slice(&dna_rep(0, 3).unwrap());
        c.extend_from_slice(&dna_rep(60, 3).unwrap());
        c.extend_from_slice(&dna_rep(0, 3).unwrap());
        c.extend_from_slice(&pattern(&[('A', 54)]));
        assert!(matches!(
            decode(&c, &params),
            Err(ReplacementError::NotACodeword(
                "inconsistent type-I indices"
            ))
        ));
        // type-II with an odd span
        let mut c = DnaSeq::new();
        c.push(Base::C);
        c.push(Base::A);
        c.push(Base::C);
        c.extend_from_slice(&dna_rep(0, 3).unwrap());
        c.extend_from_slice(&dna_rep(2, 3).unwrap());
        c.extend_from_slice(&pattern(&[('A', 55)]));
        assert!(matches!(
            decode(&c, &params),
            Err(ReplacementError::NotACodeword(
                "inconsistent type-II indices"
            ))
        ));
    }

    #[test]
    fn replacement_steps_make_progress() {
        let params = validate_params(64).unwrap();
        let inputs = [
            pattern(&[('A', 28), ('C', 3), ('A', 2), ('G', 3), ('T', 27)]),
            pattern(&[('A', 63)]),
            pattern(&[('G', 30), ('C', 33)]),
            "TA".repeat(31).parse::<DnaSeq>().unwrap().concat(&seq("T")),
        ];
        for x in inputs {
            let mut c = DnaSeq::new();
            c.push(Base::A);
            c.extend_from_slice(&x);
            let mut steps = 0usize;
            while let Some(trigger) = scan_at(&c, params.mprime) {
                let next = apply_trigger(&c, &trigger, &params);
                match trigger {
                    Trigger::RcPair { .. } => {
                        assert_eq!(next.len(), c.len() - 1, "type-I shrinks by exactly 1")
                    }
                    Trigger::Run { .. } => assert!(
                        next.len() + (params.p - 1) <= c.len(),
                        "type-II shrinks by at least p-1"
                    ),
                }
                // never a leading G at any stage
                assert_ne!(next.first(), Some(&Base::G));
                c = next;
                steps += 1;
            }
            assert!(steps <= params.n - params.mprime + 1);
        }
    }

    #[test]
    fn decoder_never_reads_the_padding() {
        let params = validate_params(64).unwrap();
        let x = pattern(&[('A', 28), ('C', 3), ('A', 2), ('G', 3), ('T', 27)]);
        let mut c = DnaSeq::new();
        c.push(Base::A);
        c.extend_from_slice(&x);
        assert!(!is_m_ssa(&c, params.m_guarantee));
        let (reduced, _) = reduce(c, &params);
        let n0 = reduced.len();
        assert!(n0 < params.n);
        let baseline = encode(&x, &params).unwrap();
        // rewrite the padding region with every homogeneous fill
        for fill in Base::ALL {
            let mut mutated: Vec<Base> = baseline.to_vec();
            for slot in mutated.iter_mut().skip(n0) {
                *slot = fill;
            }
            let mutated = DnaSeq::from(mutated);
            assert_eq!(decode(&mutated, &params).unwrap(), x);
        }
    }
}
