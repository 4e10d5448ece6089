//! Block-concatenation codes.
//!
//! A block set is a collection of length-m words such that no length-t
//! window of one block is the reverse complement of a length-t window of
//! another (or the same) block, with t = ceil(m/3). Concatenations of such
//! blocks are m-SSA. Two searches are provided: `exact` finds a
//! maximum-cardinality set as a maximum clique of the compatibility graph
//! (branch and bound with a greedy coloring bound over bitset rows, which
//! visits up to 4^m candidate blocks rather than the 2^m sometimes quoted
//! for set search), and `greedy` scans blocks in lexicographic order adding
//! whatever stays compatible.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dna::{dna_rep, rc_code, Base, DnaSeq};

/// Exhaustive clique search enumerates all 4^m blocks; keep it small.
pub const EXACT_MAX_M: usize = 6;
/// The greedy scan also enumerates 4^m blocks but needs no graph.
pub const GREEDY_MAX_M: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("block length must be at least 1")]
    EmptyBlocks,
    #[error("window length t={t} invalid for blocks of length {block_len}")]
    BadWindow { t: usize, block_len: usize },
    #[error("block length {m} exceeds the {method} search budget (max {max})")]
    SearchBudget {
        m: usize,
        method: SetMethod,
        max: usize,
    },
    #[error("block index {index} out of range for a set of {size} blocks")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("sequence length {len} is not a multiple of the block length {m}")]
    LengthNotMultiple { len: usize, m: usize },
    #[error("chunk {0} at offset {1} is not a block of this set")]
    NotACodeword(DnaSeq, usize),
    #[error("malformed block set file: {0}")]
    Parse(String),
}

/// How a block set was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetMethod {
    Exact,
    Greedy,
    Fixed,
}

impl fmt::Display for SetMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetMethod::Exact => "exact",
            SetMethod::Greedy => "greedy",
            SetMethod::Fixed => "fixed",
        })
    }
}

impl FromStr for SetMethod {
    type Err = BlockError;

    fn from_str(s: &str) -> Result<Self, BlockError> {
        match s {
            "exact" => Ok(SetMethod::Exact),
            "greedy" => Ok(SetMethod::Greedy),
            "fixed" => Ok(SetMethod::Fixed),
            other => Err(BlockError::Parse(format!("unknown method '{other}'"))),
        }
    }
}

/// True iff no length-t window of `x1` equals the reverse complement of a
/// length-t window of `x2`. Symmetric in `x1` and `x2`.
pub fn blocks_compatible(x1: &DnaSeq, x2: &DnaSeq, t: usize) -> Result<bool, BlockError> {
    if t == 0 || t > x1.len() || t > x2.len() {
        return Err(BlockError::BadWindow {
            t,
            block_len: x1.len().min(x2.len()),
        });
    }
    let first: HashSet<&[Base]> = x1.as_slice().windows(t).collect();
    let mut rc = Vec::with_capacity(t);
    for z in x2.as_slice().windows(t) {
        rc.clear();
        rc.extend(z.iter().rev().map(|b| b.complement()));
        if first.contains(rc.as_slice()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A self- and pairwise-compatible set of length-m blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSet {
    m: usize,
    t: usize,
    method: SetMethod,
    blocks: Vec<DnaSeq>,
}

impl BlockSet {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn method(&self) -> SetMethod {
        self.method
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[DnaSeq] {
        &self.blocks
    }

    /// Code rate log2(size)/m in bits per nucleotide.
    pub fn rate(&self) -> f64 {
        (self.size() as f64).log2() / self.m as f64
    }

    /// Concatenation of the indexed blocks.
    pub fn encode(&self, message: &[usize]) -> Result<DnaSeq, BlockError> {
        let mut out = DnaSeq::with_capacity(message.len() * self.m);
        for &index in message {
            let block = self.blocks.get(index).ok_or(BlockError::IndexOutOfRange {
                index,
                size: self.size(),
            })?;
            out.extend_from_slice(block);
        }
        Ok(out)
    }

    /// Inverse of [`BlockSet::encode`].
    pub fn decode(&self, x: &DnaSeq) -> Result<Vec<usize>, BlockError> {
        if !x.len().is_multiple_of(self.m) {
            return Err(BlockError::LengthNotMultiple {
                len: x.len(),
                m: self.m,
            });
        }
        let lookup: HashMap<&[Base], usize> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| (b.as_slice(), i))
            .collect();
        let mut out = Vec::with_capacity(x.len() / self.m);
        for (chunk_no, chunk) in x.as_slice().chunks(self.m).enumerate() {
            match lookup.get(chunk) {
                Some(&i) => out.push(i),
                None => {
                    return Err(BlockError::NotACodeword(
                        DnaSeq::from(chunk),
                        chunk_no * self.m,
                    ))
                }
            }
        }
        Ok(out)
    }

    /// Plain-text serialization: header line `m t size method`, then one
    /// block per line in set order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {} {}\n", self.m, self.t, self.size(), self.method);
        for b in &self.blocks {
            out.push_str(&b.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<BlockSet, BlockError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| BlockError::Parse("empty file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(BlockError::Parse(format!(
                "header must be 'm t size method', got '{header}'"
            )));
        }
        let m: usize = fields[0]
            .parse()
            .map_err(|_| BlockError::Parse(format!("bad m '{}'", fields[0])))?;
        let t: usize = fields[1]
            .parse()
            .map_err(|_| BlockError::Parse(format!("bad t '{}'", fields[1])))?;
        let size: usize = fields[2]
            .parse()
            .map_err(|_| BlockError::Parse(format!("bad size '{}'", fields[2])))?;
        let method: SetMethod = fields[3].parse()?;
        if m == 0 {
            return Err(BlockError::EmptyBlocks);
        }
        let mut blocks = Vec::with_capacity(size);
        for line in lines {
            let block: DnaSeq = line
                .parse()
                .map_err(|e| BlockError::Parse(format!("bad block '{line}': {e}")))?;
            if block.len() != m {
                return Err(BlockError::Parse(format!(
                    "block '{block}' has length {}, expected {m}",
                    block.len()
                )));
            }
            blocks.push(block);
        }
        if blocks.len() != size {
            return Err(BlockError::Parse(format!(
                "header promises {size} blocks, found {}",
                blocks.len()
            )));
        }
        let distinct: HashSet<&[Base]> = blocks.iter().map(|b| b.as_slice()).collect();
        if distinct.len() != blocks.len() {
            return Err(BlockError::Parse("duplicate block".into()));
        }
        Ok(BlockSet {
            m,
            t,
            method,
            blocks,
        })
    }
}

/// The fixed five-block baseline codebook {AA, CC, AC, CA, TC} in its
/// published order. Blocks have length 2 and pairwise windows of length 2
/// are complement-free; concatenations are 3-SSA and the rate is
/// log2(5)/2 = 1.1609 bits/nt.
pub fn benerjee_set() -> BlockSet {
    let blocks = ["AA", "CC", "AC", "CA", "TC"]
        .iter()
        .map(|s| s.parse().expect("fixed codebook"))
        .collect();
    BlockSet {
        m: 2,
        t: 2,
        method: SetMethod::Fixed,
        blocks,
    }
}

/// Searches for a block set of length-m blocks with t = ceil(m/3).
///
/// `Exact` returns a maximum-cardinality set, ties broken toward the
/// lexicographically smallest block list; `Greedy` returns a maximal set
/// from a single lexicographic scan. The greedy size never exceeds the
/// exact size.
pub fn build_block_set(m: usize, method: SetMethod) -> Result<BlockSet, BlockError> {
    if m == 0 {
        return Err(BlockError::EmptyBlocks);
    }
    let t = m.div_ceil(3);
    let codes = match method {
        SetMethod::Exact => {
            if m > EXACT_MAX_M {
                return Err(BlockError::SearchBudget {
                    m,
                    method,
                    max: EXACT_MAX_M,
                });
            }
            exact_search(m, t)
        }
        SetMethod::Greedy => {
            if m > GREEDY_MAX_M {
                return Err(BlockError::SearchBudget {
                    m,
                    method,
                    max: GREEDY_MAX_M,
                });
            }
            greedy_search(m, t)
        }
        SetMethod::Fixed => return Err(BlockError::Parse("fixed sets are built-in".into())),
    };
    let blocks = codes
        .into_iter()
        .map(|code| dna_rep(code, m).expect("code < 4^m"))
        .collect();
    Ok(BlockSet {
        m,
        t,
        method,
        blocks,
    })
}

/// Window bitmask over all 4^t length-t windows of a block, or None if the
/// block conflicts with itself. Also returns the reverse-complement image.
fn window_masks(code: u64, m: usize, t: usize) -> Option<(BitSet, BitSet)> {
    let mut windows = BitSet::empty(1 << (2 * t));
    let mut rc_windows = BitSet::empty(1 << (2 * t));
    let mask = (1u64 << (2 * t)) - 1;
    for j in 0..=m - t {
        let w = (code >> (2 * (m - t - j))) & mask;
        windows.insert(w as usize);
        rc_windows.insert(rc_code(w, t) as usize);
    }
    if windows.intersects(&rc_windows) {
        None
    } else {
        Some((windows, rc_windows))
    }
}

fn greedy_search(m: usize, t: usize) -> Vec<u64> {
    let mut chosen = Vec::new();
    // reverse-complement image of every window used by chosen blocks
    let mut used_rc = BitSet::empty(1 << (2 * t));
    for code in 0..1u64 << (2 * m) {
        if let Some((windows, rc_windows)) = window_masks(code, m, t) {
            if !windows.intersects(&used_rc) {
                used_rc.union_assign(&rc_windows);
                chosen.push(code);
            }
        }
    }
    chosen
}

fn exact_search(m: usize, t: usize) -> Vec<u64> {
    // vertices: self-compatible blocks in lexicographic (numeric) order
    let mut verts = Vec::new();
    let mut masks = Vec::new();
    for code in 0..1u64 << (2 * m) {
        if let Some(pair) = window_masks(code, m, t) {
            verts.push(code);
            masks.push(pair);
        }
    }
    let nv = verts.len();
    let mut adj = vec![BitSet::empty(nv); nv];
    for a in 0..nv {
        for b in a + 1..nv {
            // compatibility is symmetric: windows(a) hits rc(windows(b))
            // iff windows(b) hits rc(windows(a))
            if !masks[a].0.intersects(&masks[b].1) {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }

    let full = BitSet::full(nv);
    // greedy clique as a lower bound, then push the target up to the maximum
    let mut omega = {
        let mut cand = full.clone();
        let mut size = 0usize;
        while let Some(v) = cand.first() {
            size += 1;
            cand.intersect_assign(&adj[v]);
        }
        size
    };
    while exists_clique(&adj, &full, omega + 1) {
        omega += 1;
    }

    // lexicographically smallest maximum clique: take each vertex in
    // ascending order iff a maximum clique through it still exists
    let mut chosen = Vec::with_capacity(omega);
    let mut cand = full;
    while chosen.len() < omega {
        let v = cand.first().expect("a maximum clique remains reachable");
        let sub = cand.intersect(&adj[v]);
        if exists_clique(&adj, &sub, omega - chosen.len() - 1) {
            chosen.push(verts[v]);
            cand = sub;
        } else {
            cand.remove(v);
        }
    }
    chosen
}

/// Branch and bound: is there a clique of size `k` inside `cand`?
/// Candidates are greedily colored; a vertex of color c can only head a
/// clique of size <= c within the remaining set.
fn exists_clique(adj: &[BitSet], cand: &BitSet, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let mut order = Vec::new();
    {
        let mut uncolored = cand.clone();
        let mut color = 0usize;
        while !uncolored.is_empty() {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                uncolored.remove(v);
                avail.subtract_assign(&adj[v]);
                order.push((v, color));
            }
        }
    }
    if order.len() < k {
        return false;
    }
    let mut cand = cand.clone();
    for i in (0..order.len()).rev() {
        let (v, color) = order[i];
        if color < k {
            return false;
        }
        if exists_clique(adj, &cand.intersect(&adj[v]), k - 1) {
            return true;
        }
        cand.remove(v);
    }
    false
}

#[derive(Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    fn empty(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    fn full(len: usize) -> Self {
        let mut set = Self::empty(len);
        for i in 0..len {
            set.insert(i);
        }
        set
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|i| i * 64 + self.words[i].trailing_zeros() as usize)
    }

    fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
            len: self.len,
        }
    }

    fn intersect_assign(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    fn subtract_assign(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn union_assign(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }
}
