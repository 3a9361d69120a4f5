//! Merges, splittability certificates, and exact splittings.
//!
//! A permutation `sigma` is a merge of `alpha` and `beta` when its
//! positions can be 2-colored so that the two color classes are order
//! isomorphic to `alpha` and `beta`. [`Coloring`] is the certificate
//! object; searches return the lexicographically least certificate so
//! results are deterministic.

use std::collections::BTreeSet;
use std::fmt;

use crate::budget::Meter;
use crate::class::finite::{subclass_upto, FiniteClass};
use crate::class::realize::realize_with;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::ClassExpr;

/// An assignment of each position of a host permutation to one of
/// `num_colors` color indices. Color class `i`, read in position order,
/// is the `i`-th part of the merge.
///
/// The text form is one digit per position (`"01100"`), which limits
/// certificates to ten colors; the searches in this crate never need more.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u8>,
    num_colors: u8,
}

impl Coloring {
    pub fn new(colors: Vec<u8>, num_colors: u8) -> Result<Self> {
        if num_colors == 0 || num_colors > 10 {
            return Err(Error::Domain(format!(
                "color count {num_colors} outside 1..=10"
            )));
        }
        if let Some(&bad) = colors.iter().find(|&&c| c >= num_colors) {
            return Err(Error::Domain(format!(
                "color {bad} out of range for {num_colors} colors"
            )));
        }
        Ok(Coloring { colors, num_colors })
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn num_colors(&self) -> u8 {
        self.num_colors
    }

    /// Values of `host` carried by color class `color`, in position order.
    pub fn part_values(&self, host: &Permutation, color: u8) -> Vec<u8> {
        host.values()
            .iter()
            .zip(&self.colors)
            .filter(|&(_, &c)| c == color)
            .map(|(&v, _)| v)
            .collect()
    }

    /// Pattern of color class `color`.
    pub fn part_pattern(&self, host: &Permutation, color: u8) -> Permutation {
        Permutation::pattern_of_distinct(&self.part_values(host, color))
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.colors.is_empty() {
            return write!(f, "e");
        }
        for &c in &self.colors {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Searches for a 2-coloring of `host` whose color-0 part is order
/// isomorphic to `a` and color-1 part to `b`. Returns the
/// lexicographically least such coloring, or `None` if `host` is not a
/// merge of `a` and `b`.
pub fn is_merge(host: &Permutation, a: &Permutation, b: &Permutation) -> Result<Option<Coloring>> {
    is_merge_with(host, a, b, &mut Meter::default())
}

pub fn is_merge_with(
    host: &Permutation,
    a: &Permutation,
    b: &Permutation,
    meter: &mut Meter,
) -> Result<Option<Coloring>> {
    let n = host.len();
    if a.len() + b.len() != n {
        return Err(Error::LengthMismatch {
            left: a.len() + b.len(),
            right: n,
        });
    }
    meter.check_host(n)?;
    let mut search = MergeSearch {
        host: host.values(),
        parts: [a.values(), b.values()],
        chosen: [Vec::with_capacity(a.len()), Vec::with_capacity(b.len())],
        colors: Vec::with_capacity(n),
    };
    if search.dfs(0, meter)? {
        Ok(Some(Coloring::new(search.colors, 2)?))
    } else {
        Ok(None)
    }
}

struct MergeSearch<'a> {
    host: &'a [u8],
    parts: [&'a [u8]; 2],
    /// Host values already assigned to each color, in position order.
    chosen: [Vec<u8>; 2],
    colors: Vec<u8>,
}

impl MergeSearch<'_> {
    /// Extending a color class must keep it order isomorphic to the prefix
    /// of its target pattern, so each branch dies as early as possible.
    fn extend_ok(&self, color: usize, v: u8) -> bool {
        let chosen = &self.chosen[color];
        let pat = self.parts[color];
        let j = chosen.len();
        if j >= pat.len() {
            return false;
        }
        chosen
            .iter()
            .enumerate()
            .all(|(t, &u)| (v > u) == (pat[j] > pat[t]))
    }

    fn dfs(&mut self, i: usize, meter: &mut Meter) -> Result<bool> {
        if i == self.host.len() {
            return Ok(true);
        }
        meter.charge(1)?;
        let v = self.host[i];
        for color in 0..2usize {
            if self.extend_ok(color, v) {
                self.chosen[color].push(v);
                self.colors.push(color as u8);
                if self.dfs(i + 1, meter)? {
                    return Ok(true);
                }
                self.colors.pop();
                self.chosen[color].pop();
            }
        }
        Ok(false)
    }
}

/// Searches for a `k`-coloring of `host` whose color-`i` pattern is a
/// member of `parts[i]`. Each part class must be realized to at least
/// `|host|`. Partial color classes are pruned by membership, which is
/// sound because the part classes are downward closed.
pub fn in_merge_class(
    host: &Permutation,
    parts: &[&FiniteClass],
    meter: &mut Meter,
) -> Result<Option<Coloring>> {
    let n = host.len();
    if parts.is_empty() {
        return Err(Error::Domain("no part classes given".into()));
    }
    for part in parts {
        if part.cap() < n {
            return Err(Error::OutOfRange {
                len: n,
                cap: part.cap(),
            });
        }
    }
    meter.check_host(n)?;
    let mut search = ClassMergeSearch {
        host: host.values(),
        parts,
        chosen: vec![Vec::new(); parts.len()],
        colors: Vec::with_capacity(n),
    };
    if search.dfs(0, meter)? {
        Ok(Some(Coloring::new(search.colors, parts.len() as u8)?))
    } else {
        Ok(None)
    }
}

struct ClassMergeSearch<'a> {
    host: &'a [u8],
    parts: &'a [&'a FiniteClass],
    chosen: Vec<Vec<u8>>,
    colors: Vec<u8>,
}

impl ClassMergeSearch<'_> {
    fn dfs(&mut self, i: usize, meter: &mut Meter) -> Result<bool> {
        if i == self.host.len() {
            return Ok(true);
        }
        meter.charge(1)?;
        let v = self.host[i];
        for color in 0..self.parts.len() {
            self.chosen[color].push(v);
            let partial = Permutation::pattern_of_distinct(&self.chosen[color]);
            if self.parts[color].contains(&partial) {
                self.colors.push(color as u8);
                if self.dfs(i + 1, meter)? {
                    return Ok(true);
                }
                self.colors.pop();
            }
            self.chosen[color].pop();
        }
        Ok(false)
    }
}

/// Truncation of the iterated merge `parts[0] ⊙ parts[1] ⊙ ...`, built by
/// folding binary merges and truncating at each step (sound because part
/// lengths only add). Every part must be realized to at least `cap`.
pub fn merge_classes_upto(
    parts: &[&FiniteClass],
    cap: usize,
    meter: &mut Meter,
) -> Result<FiniteClass> {
    let Some((first, rest)) = parts.split_first() else {
        return Err(Error::Domain("no part classes given".into()));
    };
    for part in parts {
        if part.cap() < cap {
            return Err(Error::OutOfRange {
                len: cap,
                cap: part.cap(),
            });
        }
    }
    let mut acc = first.truncate(cap);
    for part in rest {
        acc = binary_merge(&acc, part, cap, meter)?;
    }
    Ok(acc)
}

/// All merges of a member of `x` with a member of `y`, up to `cap`. A merge
/// is determined by the set of positions and the set of values handed to
/// the `x`-part, so both subsets are enumerated directly.
fn binary_merge(
    x: &FiniteClass,
    y: &FiniteClass,
    cap: usize,
    meter: &mut Meter,
) -> Result<FiniteClass> {
    let mut levels: Vec<BTreeSet<Permutation>> = vec![BTreeSet::new(); cap + 1];
    let mut out = vec![0u8; cap];
    for la in 0..=cap {
        for lb in 0..=cap - la {
            let n = la + lb;
            if x.level(la).is_empty() || y.level(lb).is_empty() {
                continue;
            }
            let mut positions = Subsets::new(n, la);
            while let Some(pos) = positions.next() {
                let pos_rest = complement(pos, n);
                let mut values = Subsets::new(n, la);
                while let Some(vals) = values.next() {
                    let vals_rest = complement(vals, n);
                    for alpha in x.level(la) {
                        for beta in y.level(lb) {
                            meter.charge(1)?;
                            for (j, &av) in alpha.values().iter().enumerate() {
                                out[pos[j]] = vals[av as usize - 1] as u8 + 1;
                            }
                            for (j, &bv) in beta.values().iter().enumerate() {
                                out[pos_rest[j]] = vals_rest[bv as usize - 1] as u8 + 1;
                            }
                            let merged = Permutation::new(out[..n].to_vec())
                                .expect("disjoint value sets form a bijection");
                            levels[n].insert(merged);
                        }
                    }
                }
            }
        }
    }
    Ok(FiniteClass::from_levels(cap, levels))
}

/// Enumerates k-element subsets of `0..n` in lexicographic order without
/// allocating per item.
struct Subsets {
    n: usize,
    k: usize,
    cur: Vec<usize>,
    started: bool,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            k,
            cur: (0..k).collect(),
            started: false,
            done: k > n,
        }
    }

    fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.cur);
        }
        if self.k == 0 {
            self.done = true;
            return None;
        }
        let mut i = self.k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.cur[i] + (self.k - i) < self.n {
                self.cur[i] += 1;
                for j in i + 1..self.k {
                    self.cur[j] = self.cur[j - 1] + 1;
                }
                return Some(&self.cur);
            }
        }
    }
}

fn complement(subset: &[usize], n: usize) -> Vec<usize> {
    let mut in_subset = vec![false; n];
    for &i in subset {
        in_subset[i] = true;
    }
    (0..n).filter(|&i| !in_subset[i]).collect()
}

/// Checks whether every 2-coloring of `sigma` has a color-0 part containing
/// `pi` or a color-1 part containing `pi2`. Returns `None` when that holds
/// (so `sigma` witnesses against any split separating `pi` from `pi2`),
/// otherwise the lexicographically least violating coloring.
pub fn split_witness_check(
    sigma: &Permutation,
    pi: &Permutation,
    pi2: &Permutation,
) -> Result<Option<Coloring>> {
    split_witness_check_with(sigma, pi, pi2, &mut Meter::unlimited())
}

pub fn split_witness_check_with(
    sigma: &Permutation,
    pi: &Permutation,
    pi2: &Permutation,
    meter: &mut Meter,
) -> Result<Option<Coloring>> {
    // Every part contains the empty pattern, so no coloring can violate.
    if pi.is_empty() || pi2.is_empty() {
        return Ok(None);
    }
    let mut search = SplitSearch {
        host: sigma.values(),
        forbidden: [pi, pi2],
        chosen: [Vec::new(), Vec::new()],
        colors: Vec::with_capacity(sigma.len()),
    };
    if search.dfs(0, meter)? {
        Ok(Some(Coloring::new(search.colors, 2)?))
    } else {
        Ok(None)
    }
}

/// DFS for a coloring whose color-`i` part avoids `forbidden[i]`; a branch
/// is cut as soon as a part contains its forbidden pattern, since parts
/// only grow.
struct SplitSearch<'a> {
    host: &'a [u8],
    forbidden: [&'a Permutation; 2],
    chosen: [Vec<u8>; 2],
    colors: Vec<u8>,
}

impl SplitSearch<'_> {
    fn dfs(&mut self, i: usize, meter: &mut Meter) -> Result<bool> {
        if i == self.host.len() {
            return Ok(true);
        }
        meter.charge(1)?;
        let v = self.host[i];
        for color in 0..2usize {
            self.chosen[color].push(v);
            let part = Permutation::pattern_of_distinct(&self.chosen[color]);
            if part.avoids(self.forbidden[color]) {
                self.colors.push(color as u8);
                if self.dfs(i + 1, meter)? {
                    return Ok(true);
                }
                self.colors.pop();
            }
            self.chosen[color].pop();
        }
        Ok(false)
    }
}

/// Shortest (then lexicographically least) member of `c` that passes
/// [`split_witness_check`] for `(pi, pi2)`, searching lengths `0..=maxlen`.
/// `None` only means no witness exists within the bound; it is never
/// evidence that the class splits.
pub fn find_unsplittability_witness(
    c: &FiniteClass,
    pi: &Permutation,
    pi2: &Permutation,
    maxlen: usize,
    meter: &mut Meter,
) -> Result<Option<Permutation>> {
    if maxlen > c.cap() {
        return Err(Error::OutOfRange {
            len: maxlen,
            cap: c.cap(),
        });
    }
    for n in 0..=maxlen {
        for sigma in c.level(n) {
            if split_witness_check_with(sigma, pi, pi2, meter)?.is_none() {
                return Ok(Some(sigma.clone()));
            }
        }
    }
    Ok(None)
}

/// Checks `c ⊆ a ⊙ b` on all members of length at most `upto`, returning
/// the first member with no certifying coloring. Both parts must be proper
/// subclasses of `c` within the cap.
pub fn split_check_upto(
    c: &FiniteClass,
    a: &FiniteClass,
    b: &FiniteClass,
    upto: usize,
    meter: &mut Meter,
) -> Result<Option<Permutation>> {
    require_proper_subclass(a, c, upto, "first part")?;
    require_proper_subclass(b, c, upto, "second part")?;
    for sigma in c.iter_upto(upto) {
        if in_merge_class(sigma, &[a, b], meter)?.is_none() {
            return Ok(Some(sigma.clone()));
        }
    }
    Ok(None)
}

fn require_proper_subclass(
    part: &FiniteClass,
    c: &FiniteClass,
    upto: usize,
    side: &str,
) -> Result<()> {
    if subclass_upto(part, c, upto)?.is_some() || part.equal_upto(c, upto) {
        return Err(Error::NotProperSubclass {
            side: side.to_string(),
            cap: upto,
        });
    }
    Ok(())
}

/// Outcome of an exact-splitting comparison: members of the target class
/// missing from the merge, and merge elements outside the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSplit {
    pub missing: Vec<Permutation>,
    pub extra: Vec<Permutation>,
}

impl ExactSplit {
    pub fn is_exact(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Compares `c` with the iterated merge of `parts`, exactly, on lengths
/// `0..=upto`.
pub fn exact_split_check(
    c: &FiniteClass,
    parts: &[&FiniteClass],
    upto: usize,
    meter: &mut Meter,
) -> Result<ExactSplit> {
    let merged = merge_classes_upto(parts, upto, meter)?;
    let (missing, extra) = c.diff_upto(&merged, upto);
    Ok(ExactSplit { missing, extra })
}

/// All permutations obtained by partitioning the positions of `p` into at
/// most `n` classes and re-interleaving the extracted value subsequences in
/// every order that preserves each subsequence.
pub fn demerge_remerge_set(p: &Permutation, n: usize) -> Result<BTreeSet<Permutation>> {
    if n == 0 {
        return Err(Error::Domain("need at least one part".into()));
    }
    let m = p.len();
    let mut out = BTreeSet::new();
    if m == 0 {
        out.insert(Permutation::empty());
        return Ok(out);
    }
    // Partitions are enumerated as restricted-growth strings so each set
    // partition is visited once.
    let mut assignment = vec![0u8; m];
    enumerate_partitions(p, n, 1, &mut assignment, &mut out);
    Ok(out)
}

fn enumerate_partitions(
    p: &Permutation,
    max_parts: usize,
    pos: usize,
    assignment: &mut Vec<u8>,
    out: &mut BTreeSet<Permutation>,
) {
    if pos == p.len() {
        let parts_used = *assignment.iter().max().unwrap() as usize + 1;
        let mut seqs: Vec<Vec<u8>> = vec![Vec::new(); parts_used];
        for (i, &v) in p.values().iter().enumerate() {
            seqs[assignment[i] as usize].push(v);
        }
        let mut buf = Vec::with_capacity(p.len());
        let mut cursors = vec![0usize; seqs.len()];
        interleave(&seqs, &mut cursors, &mut buf, out);
        return;
    }
    let next_free = assignment[..pos].iter().max().unwrap() + 1;
    for c in 0..=next_free.min(max_parts as u8 - 1) {
        assignment[pos] = c;
        enumerate_partitions(p, max_parts, pos + 1, assignment, out);
    }
    assignment[pos] = 0;
}

/// Shuffle product of the value sequences: at each step any sequence with
/// remaining entries may supply the next value.
fn interleave(
    seqs: &[Vec<u8>],
    cursors: &mut [usize],
    buf: &mut Vec<u8>,
    out: &mut BTreeSet<Permutation>,
) {
    if seqs.iter().enumerate().all(|(s, seq)| cursors[s] == seq.len()) {
        out.insert(Permutation::new(buf.clone()).expect("interleaving permutes the same values"));
        return;
    }
    for s in 0..seqs.len() {
        if cursors[s] < seqs[s].len() {
            buf.push(seqs[s][cursors[s]]);
            cursors[s] += 1;
            interleave(seqs, cursors, buf, out);
            cursors[s] -= 1;
            buf.pop();
        }
    }
}

/// Audit flag: does [`demerge_remerge_set`] agree with composing `p` by
/// every equal-length member of `I_n`?
pub fn demerge_matches_compose(p: &Permutation, n: usize, meter: &mut Meter) -> Result<bool> {
    let lhs = demerge_remerge_set(p, n)?;
    let eta_class = realize_with(&ClassExpr::Im(n), p.len(), meter)?;
    let mut rhs = BTreeSet::new();
    for eta in eta_class.level(p.len()) {
        rhs.insert(p.compose(eta)?);
    }
    Ok(lhs == rhs)
}
