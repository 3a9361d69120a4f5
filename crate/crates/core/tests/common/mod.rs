//! Brute-force oracles, independent of the library's search code: direct
//! pairwise order-isomorphism checks plus exhaustive subset and coloring
//! enumeration. The suites compare library results against these.
//!
//! Shared by several test targets, each of which uses a subset.
#![allow(dead_code)]

use std::collections::BTreeMap;

use permkit_core::Permutation;

/// Rank-based standardization by pairwise comparison.
pub fn standardize(vals: &[u8]) -> Vec<u8> {
    vals.iter()
        .map(|&v| 1 + vals.iter().filter(|&&u| u < v).count() as u8)
        .collect()
}

pub fn order_iso(a: &[u8], b: &[u8]) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] < a[j]) == (b[i] < b[j])))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets_lex(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Least embedding of `pattern` in `host` by exhaustive subset
/// enumeration, or `None`.
pub fn contains_oracle(host: &Permutation, pattern: &Permutation) -> Option<Vec<usize>> {
    let hv = host.values();
    let pv = pattern.values();
    if pv.len() > hv.len() {
        return None;
    }
    for subset in subsets_lex(hv.len(), pv.len()) {
        let picked: Vec<u8> = subset.iter().map(|&i| hv[i]).collect();
        if order_iso(&picked, pv) {
            return Some(subset);
        }
    }
    None
}

/// Every pattern of `host` mapped to its least embedding.
pub fn pattern_table(host: &Permutation) -> BTreeMap<Permutation, Vec<usize>> {
    let hv = host.values();
    let mut table = BTreeMap::new();
    for m in 0..=hv.len() {
        for subset in subsets_lex(hv.len(), m) {
            let picked: Vec<u8> = subset.iter().map(|&i| hv[i]).collect();
            let pat = Permutation::new(standardize(&picked)).unwrap();
            table.entry(pat).or_insert(subset);
        }
    }
    table
}

/// Iterates the `2^n` two-colorings of `host` in lexicographic order of
/// the color string and returns, for every `(a, b)` realized as (color-0
/// pattern, color-1 pattern), the least coloring realizing it.
pub fn merge_table(host: &Permutation) -> BTreeMap<(Permutation, Permutation), String> {
    let hv = host.values();
    let n = hv.len();
    let mut table = BTreeMap::new();
    for mask in 0u32..1 << n {
        let colors: Vec<u8> = (0..n).map(|i| (mask >> (n - 1 - i)) as u8 & 1).collect();
        let red: Vec<u8> = (0..n).filter(|&i| colors[i] == 0).map(|i| hv[i]).collect();
        let blue: Vec<u8> = (0..n).filter(|&i| colors[i] == 1).map(|i| hv[i]).collect();
        let key = (
            Permutation::new(standardize(&red)).unwrap(),
            Permutation::new(standardize(&blue)).unwrap(),
        );
        let rendered: String = if colors.is_empty() {
            "e".into()
        } else {
            colors.iter().map(|c| char::from(b'0' + c)).collect()
        };
        table.entry(key).or_insert(rendered);
    }
    table
}

/// Is there a 2-coloring of `sigma` whose color-0 part avoids `pi` and
/// color-1 part avoids `pi2`? Exhaustive over all colorings.
pub fn split_violation_oracle(sigma: &Permutation, pi: &Permutation, pi2: &Permutation) -> bool {
    let sv = sigma.values();
    let n = sv.len();
    (0u32..1 << n).any(|mask| {
        let red: Vec<u8> = (0..n).filter(|&i| mask >> (n - 1 - i) & 1 == 0).map(|i| sv[i]).collect();
        let blue: Vec<u8> = (0..n).filter(|&i| mask >> (n - 1 - i) & 1 == 1).map(|i| sv[i]).collect();
        let red = Permutation::new(standardize(&red)).unwrap();
        let blue = Permutation::new(standardize(&blue)).unwrap();
        contains_oracle(&red, pi).is_none() && contains_oracle(&blue, pi2).is_none()
    })
}

/// Avoiders of every basis element among all permutations of length `n`,
/// by oracle filtering.
pub fn avoiders_oracle(basis: &[Permutation], n: usize) -> Vec<Permutation> {
    permkit_core::all_permutations(n)
        .into_iter()
        .filter(|p| basis.iter().all(|b| contains_oracle(p, b).is_none()))
        .collect()
}
