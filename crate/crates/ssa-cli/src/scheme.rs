//! Interchangeable coding schemes behind one byte-stream interface.
//!
//! Every scheme turns payload bytes into DNA codeword lines and back; they
//! are registered by name and selected at runtime with `--scheme`.

use std::path::PathBuf;

use num_bigint::BigUint;
use ssa_core::block::{benerjee_set, BlockSet};
use ssa_core::composition::{CompositionError, CountTable};
use ssa_core::dna::int_of_dna_rep;
use ssa_core::replacement::{self, CodecParams};
use ssa_core::DnaSeq;

use crate::bytes::{pack_bytes, unpack_bytes};
use crate::errors::CliError;

pub trait Scheme {
    fn encode(&self, input: &[u8]) -> Result<Vec<u8>, CliError>;
    fn decode(&self, input: &[u8]) -> Result<Vec<u8>, CliError>;
}

/// Options shared by every scheme constructor; each takes what it needs.
#[derive(Debug, Default, Clone)]
pub struct SchemeOptions {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub set_file: Option<PathBuf>,
    pub text: bool,
}

pub struct SchemeEntry {
    pub name: &'static str,
    pub summary: &'static str,
    build: fn(&SchemeOptions) -> Result<Box<dyn Scheme>, CliError>,
}

pub static REGISTRY: &[SchemeEntry] = &[
    SchemeEntry {
        name: "replacement",
        summary: "sequence-replacement codec, one redundant symbol (needs --n = 4^p > 16)",
        build: build_replacement,
    },
    SchemeEntry {
        name: "composition",
        summary: "enumerative codec over symbol-composition constrained words (needs --n, --m)",
        build: build_composition,
    },
    SchemeEntry {
        name: "block",
        summary: "block concatenation from a block-set file (--set-file, default baseline set)",
        build: build_block,
    },
];

pub fn build_scheme(name: &str, opts: &SchemeOptions) -> Result<Box<dyn Scheme>, CliError> {
    let entry = REGISTRY.iter().find(|e| e.name == name).ok_or_else(|| {
        let mut listing = String::new();
        for e in REGISTRY {
            listing.push_str(&format!("\n  {} - {}", e.name, e.summary));
        }
        CliError::Usage(format!("unknown scheme '{name}'; available:{listing}"))
    })?;
    (entry.build)(opts)
}

fn require_n(opts: &SchemeOptions) -> Result<usize, CliError> {
    opts.n
        .ok_or_else(|| CliError::Usage("this scheme needs --n".into()))
}

fn require_m(opts: &SchemeOptions) -> Result<usize, CliError> {
    opts.m
        .ok_or_else(|| CliError::Usage("this scheme needs --m".into()))
}

fn nonempty_lines(input: &[u8]) -> Result<Vec<&str>, CliError> {
    let text = std::str::from_utf8(input)
        .map_err(|_| CliError::Usage("input is not ASCII text".into()))?;
    Ok(text.lines().filter(|l| !l.is_empty()).collect())
}

// ---- replacement ----

/// Byte payloads are framed per codeword as
/// `length-header (h symbols) || packed bytes || A padding` where h is the
/// smallest width whose 4^h values cover the per-codeword byte capacity
/// (h = 2 at n = 64). Long payloads split into capacity-sized chunks, one
/// codeword per line.
struct ReplacementScheme {
    params: CodecParams,
    text: bool,
}

impl ReplacementScheme {
    fn header_width(&self) -> usize {
        let n = self.params.n;
        let mut h = 1usize;
        loop {
            let capacity = (n - 1 - h) / 4;
            if 4usize.pow(h as u32) > capacity {
                return h;
            }
            h += 1;
        }
    }

    fn capacity(&self) -> usize {
        (self.params.n - 1 - self.header_width()) / 4
    }

    fn encode_chunk(&self, chunk: &[u8]) -> Result<DnaSeq, CliError> {
        let h = self.header_width();
        let mut message = DnaSeq::with_capacity(self.params.n - 1);
        message.extend_from_slice(
            &ssa_core::dna::dna_rep(chunk.len() as u64, h).expect("chunk length fits the header"),
        );
        message.extend_from_slice(&pack_bytes(chunk));
        while message.len() < self.params.n - 1 {
            message.push(ssa_core::Base::A);
        }
        let codeword = replacement::encode(&message, &self.params)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(codeword)
    }

    fn decode_line(&self, line: &str) -> Result<Vec<u8>, CliError> {
        let codeword: DnaSeq = line
            .parse()
            .map_err(|e| CliError::NotACodeword(format!("{e}")))?;
        let message = replacement::decode(&codeword, &self.params)
            .map_err(|e| CliError::NotACodeword(e.to_string()))?;
        let h = self.header_width();
        let len = int_of_dna_rep(&message.substring(0, h).expect("header fits"));
        let len = usize::try_from(&len)
            .map_err(|_| CliError::NotACodeword("length header overflows".into()))?;
        if len > self.capacity() {
            return Err(CliError::NotACodeword(format!(
                "length header {len} exceeds capacity {}",
                self.capacity()
            )));
        }
        unpack_bytes(&message[h..h + 4 * len]).map_err(|e| CliError::NotACodeword(e.to_string()))
    }
}

impl Scheme for ReplacementScheme {
    fn encode(&self, input: &[u8]) -> Result<Vec<u8>, CliError> {
        let mut out = Vec::new();
        if self.text {
            for line in nonempty_lines(input)? {
                let message: DnaSeq = line.parse().map_err(CliError::from)?;
                let codeword = replacement::encode(&message, &self.params)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                out.extend_from_slice(codeword.to_string().as_bytes());
                out.push(b'\n');
            }
        } else {
            for chunk in input.chunks(self.capacity().max(1)) {
                let codeword = self.encode_chunk(chunk)?;
                out.extend_from_slice(codeword.to_string().as_bytes());
                out.push(b'\n');
            }
        }
        Ok(out)
    }

    fn decode(&self, input: &[u8]) -> Result<Vec<u8>, CliError> {
        let mut out = Vec::new();
        for line in nonempty_lines(input)? {
            if self.text {
                let codeword: DnaSeq = line
                    .parse()
                    .map_err(|e| CliError::NotACodeword(format!("{e}")))?;
                let message = replacement::decode(&codeword, &self.params)
                    .map_err(|e| CliError::NotACodeword(e.to_string()))?;
                out.extend_from_slice(message.to_string().as_bytes());
                out.push(b'\n');
            } else {
                out.extend_from_slice(&self.decode_line(line)?);
            }
        }
        Ok(out)
    }
}

fn build_replacement(opts: &SchemeOptions) -> Result<Box<dyn Scheme>, CliError> {
    let n = require_n(opts)?;
    let params = replacement::validate_params(n).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Box::new(ReplacementScheme {
        params,
        text: opts.text,
    }))
}

// ---- composition ----

/// Payloads are canonical big-endian byte strings interpreted as the rank of
/// a word in C_n(m); decoding emits the rank the same way.
struct CompositionScheme {
    table: CountTable,
    n: usize,
}

impl Scheme for CompositionScheme {
    fn encode(&self, input: &[u8]) -> Result<Vec<u8>, CliError> {
        let value = BigUint::from_bytes_be(input);
        let word = self.table.unrank(&value, self.n).map_err(|e| match e {
            CompositionError::IndexOutOfRange => CliError::Usage(format!(
                "payload {value} out of range: |C_{}({})| = {}",
                self.n,
                self.table.m(),
                self.table.count(self.n)
            )),
            other => CliError::Usage(other.to_string()),
        })?;
        let mut out = word.to_string().into_bytes();
        out.push(b'\n');
        Ok(out)
    }

    fn decode(&self, input: &[u8]) -> Result<Vec<u8>, CliError> {
        let lines = nonempty_lines(input)?;
        let [line] = lines.as_slice() else {
            return Err(CliError::Usage(format!(
                "expected exactly one codeword line, got {}",
                lines.len()
            )));
        };
        let word: DnaSeq = line
            .parse()
            .map_err(|e| CliError::NotACodeword(format!("{e}")))?;
        if word.len() != self.n {
            return Err(CliError::NotACodeword(format!(
                "codeword length {} does not match --n {}",
                word.len(),
                self.n
            )));
        }
        let value = self
            .table
            .rank(&word)
            .map_err(|e| CliError::NotACodeword(e.to_string()))?;
        Ok(value.to_bytes_be())
    }
}

fn build_composition(opts: &SchemeOptions) -> Result<Box<dyn Scheme>, CliError> {
    let n = require_n(opts)?;
    let m = require_m(opts)?;
    let table = CountTable::new(m, n).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Box::new(CompositionScheme { table, n }))
}

// ---- block ----

/// Messages are whitespace-separated decimal block indices.
struct BlockScheme {
    set: BlockSet,
}

impl Scheme for BlockScheme {
    fn encode(&self, input: &[u8]) -> Result<Vec<u8>, CliError> {
        let text = std::str::from_utf8(input)
            .map_err(|_| CliError::Usage("message must be ASCII indices".into()))?;
        let mut indices = Vec::new();
        for token in text.split_whitespace() {
            let index: usize = token
                .parse()
                .map_err(|_| CliError::Usage(format!("bad block index '{token}'")))?;
            indices.push(index);
        }
        let word = self
            .set
            .encode(&indices)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let mut out = word.to_string().into_bytes();
        out.push(b'\n');
        Ok(out)
    }

    fn decode(&self, input: &[u8]) -> Result<Vec<u8>, CliError> {
        let mut out = String::new();
        for line in nonempty_lines(input)? {
            let word: DnaSeq = line
                .parse()
                .map_err(|e| CliError::NotACodeword(format!("{e}")))?;
            let indices = self
                .set
                .decode(&word)
                .map_err(|e| CliError::NotACodeword(e.to_string()))?;
            let rendered: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
            out.push_str(&rendered.join(" "));
            out.push('\n');
        }
        Ok(out.into_bytes())
    }
}

fn build_block(opts: &SchemeOptions) -> Result<Box<dyn Scheme>, CliError> {
    let set = match &opts.set_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            BlockSet::from_text(&text).map_err(|e| CliError::Usage(e.to_string()))?
        }
        None => benerjee_set(),
    };
    Ok(Box::new(BlockScheme { set }))
}
