use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Maximum supported permutation length.
///
/// Values are stored as `u8` and every search in this crate is exhaustive,
/// so the cap is deliberately small. Constructors that could exceed it
/// (`direct_sum`, `inflate`, parsing) return [`Error::LengthCap`] instead of
/// silently truncating.
pub const MAX_LEN: usize = 64;

/// A permutation in one-line notation: a sequence containing each of
/// `1..=n` exactly once. The empty permutation (`n = 0`) is a valid value
/// and is written `e` in the text format.
///
/// Ordering is by length first, then lexicographically by values, which is
/// the canonical order used for deterministic iteration and for
/// "shortest, then lexicographically least" winners in searches.
///
/// # Examples
///
/// ```
/// use permkit_core::Permutation;
///
/// let p: Permutation = "24387156".parse().unwrap();
/// assert_eq!(p.len(), 8);
/// assert_eq!(p.monotone_stats(), (4, 3));
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    values: Vec<u8>,
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.values.cmp(&other.values))
    }
}

/// Positions (0-based, strictly increasing) of an occurrence of a pattern
/// inside a host permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub indices: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from explicit one-line values, validating that
    /// they form a bijection onto `1..=n`.
    pub fn new(values: Vec<u8>) -> Result<Self> {
        let n = values.len();
        if n > MAX_LEN {
            return Err(Error::LengthCap { len: n, max: MAX_LEN });
        }
        let mut seen = [false; MAX_LEN + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "values must contain each of 1..={n} exactly once"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    /// The empty permutation.
    pub fn empty() -> Self {
        Permutation { values: Vec::new() }
    }

    /// The increasing permutation `12...n`.
    ///
    /// Panics if `n > MAX_LEN`; lengths arriving from user input are
    /// validated before they reach this constructor.
    pub fn increasing(n: usize) -> Self {
        assert!(n <= MAX_LEN, "length {n} exceeds MAX_LEN = {MAX_LEN}");
        Permutation {
            values: (1..=n as u8).collect(),
        }
    }

    /// The decreasing permutation `n(n-1)...1`.
    pub fn decreasing(n: usize) -> Self {
        assert!(n <= MAX_LEN, "length {n} exceeds MAX_LEN = {MAX_LEN}");
        Permutation {
            values: (1..=n as u8).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Standardization: the unique permutation order isomorphic to `seq`.
    ///
    /// Entries may be arbitrary ordered values but must be pairwise
    /// distinct; `[5, 9, 2]` standardizes to `231`.
    pub fn pattern_of<T: Ord + Copy>(seq: &[T]) -> Result<Self> {
        let n = seq.len();
        if n > MAX_LEN {
            return Err(Error::LengthCap { len: n, max: MAX_LEN });
        }
        let mut values = vec![0u8; n];
        for i in 0..n {
            let mut rank = 1u8;
            for j in 0..n {
                if i != j {
                    if seq[j] == seq[i] {
                        return Err(Error::InvalidPermutation(
                            "entries must be pairwise distinct".into(),
                        ));
                    }
                    if seq[j] < seq[i] {
                        rank += 1;
                    }
                }
            }
            values[i] = rank;
        }
        Ok(Permutation { values })
    }

    /// Standardization of a slice of already-distinct values.
    pub(crate) fn pattern_of_distinct(seq: &[u8]) -> Self {
        let n = seq.len();
        let mut values = vec![0u8; n];
        for i in 0..n {
            let mut rank = 1u8;
            for j in 0..n {
                if seq[j] < seq[i] {
                    rank += 1;
                }
            }
            values[i] = rank;
        }
        Permutation { values }
    }

    /// Searches `self` for an occurrence of `pattern`.
    ///
    /// Returns the lexicographically least embedding when one exists, so
    /// the result is deterministic. `None` means `self` avoids `pattern`.
    pub fn contains(&self, pattern: &Permutation) -> Option<Embedding> {
        let m = pattern.len();
        if m > self.len() {
            return None;
        }
        if m == 0 {
            return Some(Embedding { indices: vec![] });
        }
        let mut chosen = vec![0usize; m];
        if self.embed_from(pattern, 0, 0, &mut chosen) {
            Some(Embedding { indices: chosen })
        } else {
            None
        }
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        self.contains(pattern).is_none()
    }

    /// DFS in ascending index order; the first complete embedding found is
    /// lexicographically least.
    fn embed_from(&self, pattern: &Permutation, depth: usize, start: usize, chosen: &mut [usize]) -> bool {
        let m = pattern.len();
        let n = self.len();
        for i in start..n {
            if n - i < m - depth {
                return false;
            }
            let v = self.values[i];
            let p = pattern.values[depth];
            let ok = (0..depth).all(|t| {
                let u = self.values[chosen[t]];
                let q = pattern.values[t];
                (v > u) == (p > q)
            });
            if ok {
                chosen[depth] = i;
                if depth + 1 == m || self.embed_from(pattern, depth + 1, i + 1, chosen) {
                    return true;
                }
            }
        }
        false
    }

    /// Direct sum: `self` followed by `other` with all of `other`'s values
    /// shifted above `self`'s.
    pub fn direct_sum(&self, other: &Permutation) -> Result<Self> {
        let n = self.len() + other.len();
        if n > MAX_LEN {
            return Err(Error::LengthCap { len: n, max: MAX_LEN });
        }
        let k = self.len() as u8;
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|&v| v + k));
        Ok(Permutation { values })
    }

    /// Skew sum: `self` followed by `other` with all of `self`'s values
    /// shifted above `other`'s.
    pub fn skew_sum(&self, other: &Permutation) -> Result<Self> {
        let n = self.len() + other.len();
        if n > MAX_LEN {
            return Err(Error::LengthCap { len: n, max: MAX_LEN });
        }
        let k = other.len() as u8;
        let mut values: Vec<u8> = self.values.iter().map(|&v| v + k).collect();
        values.extend_from_slice(&other.values);
        Ok(Permutation { values })
    }

    /// Reversal: position `i` maps to position `n+1-i`.
    pub fn reverse(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Permutation { values }
    }

    /// Group inverse, mapping values back to positions.
    pub fn inverse(&self) -> Self {
        let mut values = vec![0u8; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            values[v as usize - 1] = i as u8 + 1;
        }
        Permutation { values }
    }

    /// Composition `(self ∘ other)_i = self[other_i]`; both permutations
    /// must have the same length.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let values = other
            .values
            .iter()
            .map(|&b| self.values[b as usize - 1])
            .collect();
        Ok(Permutation { values })
    }

    /// Inflation: replaces the `i`-th entry of `self` by a block order
    /// isomorphic to `blocks[i]`, block value ranges ordered as the entries
    /// of `self`. Every block must be nonempty; to delete slots, take a
    /// pattern of the skeleton first.
    pub fn inflate(&self, blocks: &[Permutation]) -> Result<Self> {
        let n = self.len();
        if blocks.len() != n {
            return Err(Error::ArityMismatch {
                skeleton: n,
                blocks: blocks.len(),
            });
        }
        if let Some(index) = blocks.iter().position(|b| b.is_empty()) {
            return Err(Error::EmptyBlock { index });
        }
        let total: usize = blocks.iter().map(|b| b.len()).sum();
        if total > MAX_LEN {
            return Err(Error::LengthCap { len: total, max: MAX_LEN });
        }
        // Block i gets the value range starting above every block whose
        // skeleton entry is smaller.
        let offsets: Vec<u8> = self
            .values
            .iter()
            .map(|&vi| {
                self.values
                    .iter()
                    .zip(blocks)
                    .filter(|&(&vj, _)| vj < vi)
                    .map(|(_, block)| block.len() as u8)
                    .sum()
            })
            .collect();
        let mut values = Vec::with_capacity(total);
        for i in 0..n {
            values.extend(blocks[i].values.iter().map(|&v| v + offsets[i]));
        }
        Ok(Permutation { values })
    }

    /// Lengths of the longest increasing and longest decreasing
    /// subsequences.
    pub fn monotone_stats(&self) -> (usize, usize) {
        let n = self.len();
        if n == 0 {
            return (0, 0);
        }
        let mut inc = vec![1usize; n];
        let mut dec = vec![1usize; n];
        for i in 0..n {
            for j in 0..i {
                if self.values[j] < self.values[i] {
                    inc[i] = inc[i].max(inc[j] + 1);
                } else {
                    dec[i] = dec[i].max(dec[j] + 1);
                }
            }
        }
        (
            inc.iter().copied().max().unwrap(),
            dec.iter().copied().max().unwrap(),
        )
    }
}

/// All permutations of length `n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    assert!(n <= MAX_LEN, "length {n} exceeds MAX_LEN = {MAX_LEN}");
    if n == 0 {
        return vec![Permutation::empty()];
    }
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=n as u8).collect();
    loop {
        out.push(Permutation { values: cur.clone() });
        if !next_permutation(&mut cur) {
            break;
        }
    }
    out
}

fn next_permutation(values: &mut [u8]) -> bool {
    let n = values.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    /// Contiguous digits for `n <= 9`, comma-separated values above, `e`
    /// for the empty permutation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "e");
        }
        if self.len() <= 9 {
            for &v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "e" {
            return Ok(Permutation::empty());
        }
        if s.is_empty() {
            return Err(Error::InvalidPermutation("empty string".into()));
        }
        let values: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|tok| {
                    tok.trim().parse::<u8>().map_err(|_| {
                        Error::InvalidPermutation(format!("bad value {tok:?}"))
                    })
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| match c.to_digit(10) {
                    Some(d) if d >= 1 => Ok(d as u8),
                    _ => Err(Error::InvalidPermutation(format!(
                        "bad digit {c:?} in {s:?}"
                    ))),
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}
