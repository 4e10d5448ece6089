//! Symbol-composition constrained codes.
//!
//! For k = 1 the code C_n(m) is the set of length-n words over {A, C, G}
//! in which every m-window contains an A, equivalently no run of non-A
//! symbols reaches length m. Words shorter than m only need to avoid T.
//! Such words are m-SSA: every long window contains an A, so its reverse
//! complement would need a T, and T never appears.
//!
//! Counting satisfies |C_i| = 3^i for i < m and
//! |C_n| = sum_{j=0}^{m-1} 2^j |C_{n-j-1}| for n >= m (condition on the
//! position of the first A). The enumerative codec ranks words in
//! lexicographic order (A < C < G) using a completion table indexed by the
//! trailing non-A run length. All counting is exact big-integer arithmetic;
//! no floating point touches the rank/unrank path.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::dna::{Base, DnaSeq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompositionError {
    #[error("window length m must be at least 1")]
    InvalidM,
    #[error("sequence is not a member of the constrained code")]
    NotAMember,
    #[error("index out of range for |C_n(m)|")]
    IndexOutOfRange,
    #[error("length {len} exceeds this table (built for n <= {n_max})")]
    TableTooSmall { len: usize, n_max: usize },
    #[error("exhaustive enumeration budget exceeded: n = {0} > 12")]
    BudgetExceeded(usize),
}

/// Membership in C_n(m, k): words of length >= m need at least k A's and at
/// most k-1 T's in every m-window; shorter words only respect the T budget
/// (which makes the short-length counts 3^i for k = 1).
pub fn is_member(x: &DnaSeq, m: usize, k: usize) -> bool {
    is_member_slice(x, m, k)
}

fn is_member_slice(x: &[Base], m: usize, k: usize) -> bool {
    assert!(k >= 1 && k <= m, "need 1 <= k <= m");
    if x.len() < m {
        return x.iter().filter(|&&b| b == Base::T).count() < k;
    }
    let mut a_count = x[..m].iter().filter(|&&b| b == Base::A).count();
    let mut t_count = x[..m].iter().filter(|&&b| b == Base::T).count();
    if a_count < k || t_count > k - 1 {
        return false;
    }
    for i in m..x.len() {
        match x[i - m] {
            Base::A => a_count -= 1,
            Base::T => t_count -= 1,
            _ => {}
        }
        match x[i] {
            Base::A => a_count += 1,
            Base::T => t_count += 1,
            _ => {}
        }
        if a_count < k || t_count > k - 1 {
            return false;
        }
    }
    true
}

/// Exact cardinalities of C_n(m) for k = 1, plus the completion counts used
/// by the enumerative codec.
///
/// `completions[r][l]` is the number of valid length-l continuations given
/// a current trailing non-A run of length r (0 <= r <= m-1): append A and
/// reset the run, or one of two non-A symbols if the run stays below m.
/// `completions[0][n]` must equal `count(n)`; the two tables are computed
/// from their own recurrences and the equality is enforced by tests, not
/// assumed.
#[derive(Debug, Clone)]
pub struct CountTable {
    m: usize,
    counts: Vec<BigUint>,
    completions: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn new(m: usize, n_max: usize) -> Result<CountTable, CompositionError> {
        if m == 0 {
            return Err(CompositionError::InvalidM);
        }
        let mut counts = Vec::with_capacity(n_max + 1);
        counts.push(BigUint::one());
        for n in 1..=n_max {
            if n < m {
                counts.push(BigUint::from(3u32).pow(n as u32));
            } else {
                let mut acc = BigUint::zero();
                for j in 0..m {
                    acc += &counts[n - j - 1] << j;
                }
                counts.push(acc);
            }
        }
        let mut completions = vec![vec![BigUint::zero(); n_max + 1]; m];
        for row in completions.iter_mut() {
            row[0] = BigUint::one();
        }
        for l in 1..=n_max {
            let mut column = Vec::with_capacity(m);
            for r in 0..m {
                let mut v = completions[0][l - 1].clone();
                if r + 1 < m {
                    v += &completions[r + 1][l - 1] << 1;
                }
                column.push(v);
            }
            for (r, v) in column.into_iter().enumerate() {
                completions[r][l] = v;
            }
        }
        Ok(CountTable {
            m,
            counts,
            completions,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n_max(&self) -> usize {
        self.counts.len() - 1
    }

    /// |C_n(m)| for k = 1.
    pub fn count(&self, n: usize) -> &BigUint {
        &self.counts[n]
    }

    /// Valid length-l continuations from trailing non-A run length r.
    pub fn completions(&self, r: usize, l: usize) -> &BigUint {
        &self.completions[r][l]
    }

    /// Position of `x` in the lexicographic order (A < C < G) of
    /// C_{len(x)}(m).
    pub fn rank(&self, x: &DnaSeq) -> Result<BigUint, CompositionError> {
        let n = x.len();
        if n > self.n_max() {
            return Err(CompositionError::TableTooSmall {
                len: n,
                n_max: self.n_max(),
            });
        }
        let mut acc = BigUint::zero();
        let mut run = 0usize;
        for (i, &b) in x.iter().enumerate() {
            let remaining = n - 1 - i;
            for s in [Base::A, Base::C, Base::G] {
                if s == b {
                    break;
                }
                let next_run = if s == Base::A { 0 } else { run + 1 };
                if next_run < self.m {
                    acc += &self.completions[next_run][remaining];
                }
            }
            run = match b {
                Base::A => 0,
                Base::C | Base::G => run + 1,
                Base::T => return Err(CompositionError::NotAMember),
            };
            if run >= self.m {
                return Err(CompositionError::NotAMember);
            }
        }
        Ok(acc)
    }

    /// The index-th member of C_n(m) in lexicographic order.
    pub fn unrank(&self, index: &BigUint, n: usize) -> Result<DnaSeq, CompositionError> {
        if n > self.n_max() {
            return Err(CompositionError::TableTooSmall {
                len: n,
                n_max: self.n_max(),
            });
        }
        if index >= self.count(n) {
            return Err(CompositionError::IndexOutOfRange);
        }
        let mut idx = index.clone();
        let mut run = 0usize;
        let mut out = DnaSeq::with_capacity(n);
        for i in 0..n {
            let remaining = n - 1 - i;
            let mut placed = false;
            for s in [Base::A, Base::C, Base::G] {
                let next_run = if s == Base::A { 0 } else { run + 1 };
                if next_run >= self.m {
                    continue;
                }
                let continuations = &self.completions[next_run][remaining];
                if &idx < continuations {
                    out.push(s);
                    run = next_run;
                    placed = true;
                    break;
                }
                idx -= continuations;
            }
            debug_assert!(placed, "index < count(n) guarantees a symbol fits");
        }
        Ok(out)
    }
}

/// |C_n(m)| for k = 1.
pub fn count(n: usize, m: usize) -> BigUint {
    let table = CountTable::new(m, n).expect("m >= 1");
    table.count(n).clone()
}

/// See [`CountTable::rank`].
pub fn rank(x: &DnaSeq, m: usize) -> Result<BigUint, CompositionError> {
    CountTable::new(m, x.len())?.rank(x)
}

/// See [`CountTable::unrank`].
pub fn unrank(index: &BigUint, n: usize, m: usize) -> Result<DnaSeq, CompositionError> {
    CountTable::new(m, n)?.unrank(index, n)
}

/// Largest real root of the characteristic polynomial of the counting
/// recurrence, h(x) = x^m - sum_{j=0}^{m-1} 2^j x^{m-1-j}, and the implied
/// asymptotic rate log2(lambda).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharRoot {
    pub m: usize,
    pub lambda: f64,
    pub rate: f64,
    pub residual: f64,
}

/// Bisection on [2 - eps, 3]: h(2) = 2^m - m 2^(m-1) <= 0 for m >= 2 and
/// h(3) = 2^m > 0, so the bracket always holds.
pub fn char_root(m: usize) -> CharRoot {
    assert!(m >= 2, "characteristic root needs m >= 2");
    let h = |x: f64| {
        let mut acc = 1.0f64;
        for j in 0..m {
            acc = acc * x - 2f64.powi(j as i32);
        }
        acc
    };
    let mut lo = 2.0 - 1e-6;
    let mut hi = 3.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lambda = 0.5 * (lo + hi);
    CharRoot {
        m,
        lambda,
        rate: lambda.log2(),
        residual: h(lambda),
    }
}

/// |{x in D^n : is_member(x, m, k)}| by full enumeration over the whole
/// four-letter alphabet. The probe for general k.
pub fn brute_count(n: usize, m: usize, k: usize) -> Result<u64, CompositionError> {
    assert!(k >= 1 && k <= m, "need 1 <= k <= m");
    if n > 12 {
        return Err(CompositionError::BudgetExceeded(n));
    }
    let mut buf = vec![Base::A; n];
    let mut hits = 0u64;
    for code in 0..4u64.pow(n as u32) {
        for (i, slot) in buf.iter_mut().enumerate() {
            let digit = ((code >> (2 * (n - 1 - i))) & 3) as u8;
            *slot = Base::from_digit(digit).expect("digit < 4");
        }
        if is_member_slice(&buf, m, k) {
            hits += 1;
        }
    }
    Ok(hits)
}

/// count(n+1, m) / count(n, m) as a real; approaches the characteristic
/// root geometrically.
pub fn rate_convergence(m: usize, n: usize) -> f64 {
    assert!(n >= m, "ratio needs n >= m");
    let table = CountTable::new(m, n + 1).expect("m >= 1");
    // scale before converting so the ratio survives counts beyond f64 range
    let scaled = (table.count(n + 1) << 64u32) / table.count(n);
    scaled.to_f64().expect("ratio is bounded") / 2f64.powi(64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::is_m_ssa;
    use proptest::prelude::*;

    fn seq(s: &str) -> DnaSeq {
        s.parse().unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(is_member(&seq("ACGACG"), 3, 1));
        assert!(!is_member(&seq("ACCG"), 3, 1));
        assert!(is_member(&seq("CC"), 3, 1));
        assert!(!is_member(&seq("CT"), 3, 1));
        assert!(is_member(&DnaSeq::new(), 3, 1));
        // general k: every 3-window needs two A's and tolerates one T
        assert!(is_member(&seq("AATAA"), 3, 2));
        assert!(!is_member(&seq("ATA"), 2, 2));
        assert!(!is_member(&seq("AATTA"), 3, 2));
    }

    #[test]
    fn count_examples() {
        assert_eq!(count(1, 3), BigUint::from(3u32));
        assert_eq!(count(2, 3), BigUint::from(9u32));
        assert_eq!(count(3, 3), BigUint::from(19u32));
        // 19 + 2*9 + 4*3, cross-checked by exhaustive enumeration
        assert_eq!(count(4, 3), BigUint::from(49u32));
        assert_eq!(count(0, 3), BigUint::one());
        assert_eq!(count(12, 3), BigUint::from(67537u32));
    }

    #[test]
    fn brute_count_examples() {
        assert_eq!(brute_count(3, 3, 1).unwrap(), 19);
        assert_eq!(brute_count(1, 2, 1).unwrap(), 3);
        // enumeration-derived: k = m = 3 forces all-A windows
        assert_eq!(brute_count(4, 3, 3).unwrap(), 1);
        assert!(brute_count(13, 3, 1).is_err());
    }

    #[test]
    fn counts_match_brute_small() {
        for m in [2usize, 3, 4] {
            let table = CountTable::new(m, 10).unwrap();
            for n in 0..=10usize {
                assert_eq!(
                    table.count(n).to_u64().unwrap(),
                    brute_count(n, m, 1).unwrap(),
                    "m={m} n={n}"
                );
            }
        }
    }

    // The 19 members of C_3(3) in lexicographic order, enumeration-derived.
    const C33: [&str; 19] = [
        "AAA", "AAC", "AAG", "ACA", "ACC", "ACG", "AGA", "AGC", "AGG", "CAA", "CAC", "CAG", "CCA",
        "CGA", "GAA", "GAC", "GAG", "GCA", "GGA",
    ];

    #[test]
    fn rank_unrank_examples() {
        let table = CountTable::new(3, 3).unwrap();
        assert_eq!(table.rank(&seq("AAA")).unwrap(), BigUint::zero());
        assert_eq!(table.rank(&seq("GGA")).unwrap(), BigUint::from(18u32));
        assert_eq!(table.unrank(&BigUint::zero(), 3).unwrap(), seq("AAA"));
        assert_eq!(table.unrank(&BigUint::from(18u32), 3).unwrap(), seq("GGA"));
        assert!(matches!(
            table.unrank(&BigUint::from(19u32), 3),
            Err(CompositionError::IndexOutOfRange)
        ));
        assert!(matches!(
            table.rank(&seq("CCC")),
            Err(CompositionError::NotAMember)
        ));
        assert!(matches!(
            table.rank(&seq("ATA")),
            Err(CompositionError::NotAMember)
        ));
    }

    #[test]
    fn enumeration_order_is_frozen() {
        let table = CountTable::new(3, 3).unwrap();
        for (i, want) in C33.iter().enumerate() {
            let x = table.unrank(&BigUint::from(i), 3).unwrap();
            assert_eq!(x, seq(want), "index {i}");
            assert_eq!(table.rank(&x).unwrap(), BigUint::from(i));
        }
    }

    #[test]
    fn unrank_is_strictly_monotone() {
        for n in 0..=8usize {
            let table = CountTable::new(3, n).unwrap();
            let total = table.count(n).to_u64().unwrap();
            let mut prev: Option<DnaSeq> = None;
            for i in 0..total {
                let x = table.unrank(&BigUint::from(i), n).unwrap();
                assert!(is_member(&x, 3, 1));
                if let Some(p) = &prev {
                    assert!(p < &x, "order violated at {i}");
                }
                prev = Some(x);
            }
        }
    }

    #[test]
    fn completion_table_agrees_with_counts() {
        for m in [2usize, 3, 5] {
            let table = CountTable::new(m, 512).unwrap();
            for n in 0..=512usize {
                assert_eq!(table.completions(0, n), table.count(n), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn char_root_examples() {
        let r3 = char_root(3);
        assert!((r3.lambda - 2.4675).abs() < 1e-3);
        assert!((r3.rate - 1.3031).abs() < 1e-3);
        // bisection-derived to full precision
        assert!((r3.lambda - 2.4675038571).abs() < 1e-9);
        assert!(r3.residual.abs() < 1e-9);
        let r2 = char_root(2);
        assert!((r2.lambda - 2.0).abs() < 1e-9);
        assert!((r2.rate - 1.0).abs() < 1e-9);
        // looser constraint at larger m
        for m in 2..8usize {
            assert!(char_root(m + 1).lambda > char_root(m).lambda);
        }
    }

    #[test]
    fn rate_convergence_examples() {
        assert!((rate_convergence(3, 200) - 2.4675038571).abs() < 1e-6);
        assert!((rate_convergence(2, 50) - 2.0).abs() < 1e-9);
        assert!((rate_convergence(3, 3) - 49.0 / 19.0).abs() < 1e-12);
    }

    #[test]
    fn members_are_ssa_small() {
        for m in [3usize, 4] {
            for n in 0..=10usize {
                let table = CountTable::new(m, n).unwrap();
                let total = table.count(n).to_u64().unwrap();
                for i in 0..total {
                    let x = table.unrank(&BigUint::from(i), n).unwrap();
                    assert!(is_m_ssa(&x, m), "m={m} {x}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn rank_unrank_inverse(m in 2usize..6, n in 0usize..40, salt: u64) {
            let table = CountTable::new(m, n).unwrap();
            let total = table.count(n);
            let index = BigUint::from(salt) % total;
            let x = table.unrank(&index, n).unwrap();
            prop_assert_eq!(x.len(), n);
            prop_assert!(is_member(&x, m, 1));
            prop_assert_eq!(table.rank(&x).unwrap(), index);
        }
    }
}
