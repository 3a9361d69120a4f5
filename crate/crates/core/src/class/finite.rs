use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::perm::{all_permutations, Permutation, MAX_LEN};

/// A set of permutations graded by length up to a cap: the computable
/// stand-in for an infinite permutation class.
///
/// Members are stored sorted and deduplicated per length, so iteration
/// order is deterministic (length, then lexicographic). Realizations of
/// class expressions are downward closed by construction — every pattern of
/// a member is a member — with one documented exception: `compose(A,B)`
/// denotes a raw set that need not be hereditary. Use
/// [`FiniteClass::downward_closure_violation`] to audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteClass {
    cap: usize,
    levels: Vec<Vec<Permutation>>,
}

impl FiniteClass {
    pub fn empty(cap: usize) -> Self {
        FiniteClass {
            cap,
            levels: vec![Vec::new(); cap + 1],
        }
    }

    /// Builds from per-length sets; `levels` may be shorter than `cap + 1`.
    pub fn from_levels(cap: usize, levels: Vec<BTreeSet<Permutation>>) -> Self {
        let mut out = Vec::with_capacity(cap + 1);
        for n in 0..=cap {
            match levels.get(n) {
                Some(set) => out.push(set.iter().cloned().collect()),
                None => out.push(Vec::new()),
            }
        }
        FiniteClass { cap, levels: out }
    }

    /// Collects an arbitrary iterator of members, dropping nothing: lengths
    /// above `cap` are an error.
    pub fn from_members<I: IntoIterator<Item = Permutation>>(cap: usize, members: I) -> Result<Self> {
        let mut levels = vec![BTreeSet::new(); cap + 1];
        for p in members {
            if p.len() > cap {
                return Err(Error::OutOfRange { len: p.len(), cap });
            }
            levels[p.len()].insert(p);
        }
        Ok(FiniteClass::from_levels(cap, levels))
    }

    /// All permutations of length at most `cap`.
    pub fn all_upto(cap: usize) -> Self {
        let levels = (0..=cap)
            .map(|n| all_permutations(n).into_iter().collect())
            .collect();
        FiniteClass::from_levels(cap, levels)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn level(&self, len: usize) -> &[Permutation] {
        self.levels.get(len).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, len: usize) -> usize {
        self.level(len).len()
    }

    /// Per-length member counts for lengths `0..=cap`.
    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// Members in canonical order (length, then lexicographic).
    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.levels.iter().flatten()
    }

    pub fn iter_upto(&self, upto: usize) -> impl Iterator<Item = &Permutation> {
        self.levels.iter().take(upto + 1).flatten()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.len() <= self.cap && self.level(p.len()).binary_search(p).is_ok()
    }

    /// Membership query; unlike [`FiniteClass::contains`], a permutation
    /// longer than the cap is an error rather than `false`.
    pub fn member(&self, p: &Permutation) -> Result<bool> {
        if p.len() > self.cap {
            return Err(Error::OutOfRange {
                len: p.len(),
                cap: self.cap,
            });
        }
        Ok(self.contains(p))
    }

    /// Copy truncated to a (smaller or equal) cap.
    pub fn truncate(&self, cap: usize) -> FiniteClass {
        let cap = cap.min(self.cap);
        FiniteClass {
            cap,
            levels: self.levels[..=cap].to_vec(),
        }
    }

    /// First member (in canonical order) whose one-point deletions are not
    /// all members, together with the missing pattern. `None` means the set
    /// is downward closed: closure under one-point deletions at every
    /// length implies closure under all patterns.
    pub fn downward_closure_violation(&self) -> Option<(Permutation, Permutation)> {
        for p in self.iter() {
            if p.is_empty() {
                continue;
            }
            for missing in one_point_deletions(p) {
                if !self.contains(&missing) {
                    return Some((p.clone(), missing));
                }
            }
        }
        if self.total() > 0 && self.count(0) == 0 {
            // Nonempty but missing the empty permutation.
            let p = self.iter().next().unwrap().clone();
            return Some((p, Permutation::empty()));
        }
        None
    }

    /// Levelwise equality up to `upto`.
    pub fn equal_upto(&self, other: &FiniteClass, upto: usize) -> bool {
        (0..=upto).all(|n| self.level(n) == other.level(n))
    }

    /// Members of `self` missing from `other` and vice versa, lengths
    /// `0..=upto`, both sides in canonical order.
    pub fn diff_upto(&self, other: &FiniteClass, upto: usize) -> (Vec<Permutation>, Vec<Permutation>) {
        let mut missing = Vec::new();
        let mut extra = Vec::new();
        for n in 0..=upto {
            for p in self.level(n) {
                if !other.contains(p) {
                    missing.push(p.clone());
                }
            }
            for p in other.level(n) {
                if !self.contains(p) {
                    extra.push(p.clone());
                }
            }
        }
        (missing, extra)
    }

    /// Line-oriented export: a `# class <label> cap <N>` header, then one
    /// permutation per line grouped by length.
    pub fn to_text(&self, label: &str) -> String {
        let mut out = format!("# class {label} cap {}\n", self.cap);
        for p in self.iter() {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    /// Inverse of [`FiniteClass::to_text`]; returns the label alongside the
    /// class. Input lines need not be sorted.
    pub fn from_text(text: &str) -> Result<(String, FiniteClass)> {
        let mut lines = text.lines();
        let header = lines.next().unwrap_or("");
        let rest = header.strip_prefix("# class ").ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "expected a '# class <label> cap <N>' header".into(),
        })?;
        let (label, cap) = rest.rsplit_once(" cap ").ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "header is missing the cap".into(),
        })?;
        let cap: usize = cap.trim().parse().map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("bad cap {cap:?}"),
        })?;
        if cap > MAX_LEN {
            return Err(Error::LengthCap { len: cap, max: MAX_LEN });
        }
        let mut members = Vec::new();
        for line in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            members.push(line.parse()?);
        }
        Ok((label.to_string(), FiniteClass::from_members(cap, members)?))
    }
}

/// All patterns obtained by deleting a single point.
pub fn one_point_deletions(p: &Permutation) -> Vec<Permutation> {
    let vals = p.values();
    let mut out = Vec::with_capacity(vals.len());
    let mut buf = Vec::with_capacity(vals.len().saturating_sub(1));
    for skip in 0..vals.len() {
        buf.clear();
        buf.extend(vals.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
        out.push(Permutation::pattern_of_distinct(&buf));
    }
    out.sort();
    out.dedup();
    out
}

/// Is every length-`<= upto` member of `a` a member of `b`? Returns the
/// first (shortest, then lexicographically least) counterexample otherwise.
pub fn subclass_upto(a: &FiniteClass, b: &FiniteClass, upto: usize) -> Result<Option<Permutation>> {
    check_cap(a, upto)?;
    check_cap(b, upto)?;
    for p in a.iter_upto(upto) {
        if !b.contains(p) {
            return Ok(Some(p.clone()));
        }
    }
    Ok(None)
}

/// Minimal avoided patterns of the class truncation: non-members all of
/// whose proper patterns are members, lengths `1..=upto`.
pub fn basis_upto(c: &FiniteClass, upto: usize) -> Result<Vec<Permutation>> {
    check_cap(c, upto)?;
    let mut basis = Vec::new();
    for n in 1..=upto {
        for p in all_permutations(n) {
            if !c.contains(&p) && one_point_deletions(&p).iter().all(|q| c.contains(q)) {
                basis.push(p);
            }
        }
    }
    Ok(basis)
}

/// Checks that every pair of members of length `<= pair_len` has a joint
/// superpattern in `c` of length `<= witness_len`; returns the first
/// failing pair otherwise.
pub fn atomic_upto(
    c: &FiniteClass,
    pair_len: usize,
    witness_len: usize,
) -> Result<Option<(Permutation, Permutation)>> {
    if pair_len > witness_len {
        return Err(Error::OutOfRange {
            len: pair_len,
            cap: witness_len,
        });
    }
    check_cap(c, witness_len)?;
    let pairs: Vec<&Permutation> = c.iter_upto(pair_len).collect();
    for (i, &alpha) in pairs.iter().enumerate() {
        for &beta in &pairs[i..] {
            let lower = alpha.len().max(beta.len());
            let found = (lower..=witness_len).any(|n| {
                c.level(n)
                    .iter()
                    .any(|sigma| sigma.contains(alpha).is_some() && sigma.contains(beta).is_some())
            });
            if !found {
                return Ok(Some((alpha.clone(), beta.clone())));
            }
        }
    }
    Ok(None)
}

fn check_cap(c: &FiniteClass, upto: usize) -> Result<()> {
    if upto > c.cap() {
        return Err(Error::OutOfRange {
            len: upto,
            cap: c.cap(),
        });
    }
    Ok(())
}
