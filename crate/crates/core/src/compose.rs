//! Class composition and the structural decomposition of `I[D[I]]`.

use std::collections::BTreeSet;

use crate::budget::Meter;
use crate::class::finite::{subclass_upto, FiniteClass};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Maximal decomposition of a permutation into sum-indecomposable
/// components: `direct_sum` over the components reproduces the original,
/// and no component is itself a nontrivial direct sum. The empty
/// permutation decomposes into zero components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumDecomposition {
    pub components: Vec<Permutation>,
}

impl SumDecomposition {
    pub fn lengths(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.len()).collect()
    }

    pub fn reassemble(&self) -> Result<Permutation> {
        let mut acc = Permutation::empty();
        for c in &self.components {
            acc = acc.direct_sum(c)?;
        }
        Ok(acc)
    }
}

/// Splits at every index where the prefix holds exactly the values
/// `1..=i`; the segments between cuts are the sum-indecomposable
/// components.
pub fn sum_decompose(p: &Permutation) -> SumDecomposition {
    let vals = p.values();
    let mut components = Vec::new();
    let mut start = 0usize;
    let mut max = 0u8;
    for (i, &v) in vals.iter().enumerate() {
        max = max.max(v);
        if max as usize == i + 1 {
            let segment: Vec<u8> = vals[start..=i].iter().map(|&v| v - start as u8).collect();
            components.push(Permutation::new(segment).expect("prefix cut preserves bijection"));
            start = i + 1;
        }
    }
    SumDecomposition { components }
}

/// Skew analogue: splits where the prefix holds exactly the top values.
pub fn skew_decompose(p: &Permutation) -> Vec<Permutation> {
    let vals = p.values();
    let n = vals.len();
    let mut components = Vec::new();
    let mut start = 0usize;
    let mut min = u8::MAX;
    for (i, &v) in vals.iter().enumerate() {
        min = min.min(v);
        if min as usize == n - i {
            let offset = (n - i - 1) as u8;
            let segment: Vec<u8> = vals[start..=i].iter().map(|&v| v - offset).collect();
            components.push(Permutation::new(segment).expect("suffix cut preserves bijection"));
            start = i + 1;
            min = u8::MAX;
        }
    }
    components
}

/// A layered permutation is a direct sum of decreasing blocks.
pub fn is_layered(p: &Permutation) -> bool {
    sum_decompose(p)
        .components
        .iter()
        .all(|c| *c == Permutation::decreasing(c.len()))
}

/// Membership in `D[I]`: a skew sum of increasing blocks.
fn is_colayered(p: &Permutation) -> bool {
    skew_decompose(p)
        .iter()
        .all(|c| *c == Permutation::increasing(c.len()))
}

/// Structural membership in `I[D[I]]`: every sum-indecomposable component
/// is a skew sum of increasing blocks.
pub fn idi_member(p: &Permutation) -> bool {
    sum_decompose(p).components.iter().all(is_colayered)
}

/// Factors a member `p` of `I[D[I]]` as a composition of two layered
/// permutations: with sum components `p = p_1 ⊕ ... ⊕ p_m`, take
/// `alpha = p_1^r ⊕ ... ⊕ p_m^r` and `beta = d_{k_1} ⊕ ... ⊕ d_{k_m}`
/// (`k_i = |p_i|`, `d` decreasing). Reversing a skew sum of increasing
/// blocks gives a direct sum of decreasing blocks, so both factors are
/// layered, and composing them plays each component's reversal backwards,
/// recovering `p`.
pub fn layered_decomposition(p: &Permutation) -> Result<(Permutation, Permutation)> {
    if !idi_member(p) {
        return Err(Error::Domain(format!("{p} is not a member of I[D[I]]")));
    }
    let mut alpha = Permutation::empty();
    let mut beta = Permutation::empty();
    for component in sum_decompose(p).components {
        alpha = alpha.direct_sum(&component.reverse())?;
        beta = beta.direct_sum(&Permutation::decreasing(component.len()))?;
    }
    Ok((alpha, beta))
}

/// Raw composition set of two realized classes plus its hereditarity
/// audit. Unlike merges, the composition of two classes need not be
/// downward closed, so the set is reported as-is.
#[derive(Debug, Clone)]
pub struct ComposeClassResult {
    pub set: FiniteClass,
    /// Whether the raw set happened to pass the downward-closure audit.
    pub hereditary: bool,
}

/// All compositions of equal-length members, lengths `0..=cap`.
pub fn compose_classes_upto(
    a: &FiniteClass,
    b: &FiniteClass,
    cap: usize,
    meter: &mut Meter,
) -> Result<ComposeClassResult> {
    for part in [a, b] {
        if part.cap() < cap {
            return Err(Error::OutOfRange {
                len: cap,
                cap: part.cap(),
            });
        }
    }
    let mut levels: Vec<BTreeSet<Permutation>> = vec![BTreeSet::new(); cap + 1];
    for (n, level) in levels.iter_mut().enumerate() {
        for alpha in a.level(n) {
            for beta in b.level(n) {
                meter.charge(1)?;
                level.insert(alpha.compose(beta)?);
            }
        }
    }
    let set = FiniteClass::from_levels(cap, levels);
    let hereditary = set.downward_closure_violation().is_none();
    Ok(ComposeClassResult { set, hereditary })
}

/// Outcome of the exhaustive monotone-composition bound check.
#[derive(Debug, Clone)]
pub struct MonotoneBoundOutcome {
    /// Equal-length pairs composed.
    pub pairs: u64,
    /// First composition containing the forbidden decreasing pattern, as
    /// `(alpha, beta, alpha ∘ beta)`.
    pub counterexample: Option<(Permutation, Permutation, Permutation)>,
}

/// Which pair of monotone-bounded classes to compose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonotoneCase {
    /// Compose avoiders of `d_{k+1}` with avoiders of `d_{l+1}`.
    Increasing,
    /// Compose avoiders of `i_{k+1}` with avoiders of `i_{l+1}`.
    Decreasing,
}

/// Exhaustively composes all equal-length pairs from the two bounded
/// classes and checks that every result avoids the decreasing permutation
/// of length `k*l + 1`.
pub fn monotone_composition_bound_check(
    k: usize,
    l: usize,
    cap: usize,
    case: MonotoneCase,
    meter: &mut Meter,
) -> Result<MonotoneBoundOutcome> {
    use crate::class::realize::realize_with;
    use crate::ClassExpr;

    if k == 0 || l == 0 {
        return Err(Error::Domain("k and l must be at least 1".into()));
    }
    let (ea, eb) = match case {
        MonotoneCase::Increasing => (ClassExpr::Im(k), ClassExpr::Im(l)),
        MonotoneCase::Decreasing => (ClassExpr::Dm(k), ClassExpr::Dm(l)),
    };
    let a = realize_with(&ea, cap, meter)?;
    let b = realize_with(&eb, cap, meter)?;
    let forbidden = Permutation::decreasing((k * l + 1).min(crate::perm::MAX_LEN));
    let mut pairs = 0u64;
    for n in 0..=cap {
        for alpha in a.level(n) {
            for beta in b.level(n) {
                meter.charge(1)?;
                pairs += 1;
                let gamma = alpha.compose(beta)?;
                if gamma.contains(&forbidden).is_some() {
                    return Ok(MonotoneBoundOutcome {
                        pairs,
                        counterexample: Some((alpha.clone(), beta.clone(), gamma)),
                    });
                }
            }
        }
    }
    Ok(MonotoneBoundOutcome {
        pairs,
        counterexample: None,
    })
}

/// Checks that every member of `c` of length at most `cap` factors as an
/// iterated composition with the `i`-th factor drawn from `parts[i]`;
/// returns the first member that does not. All parts must be proper
/// subclasses of `c` within the cap.
pub fn composability_check_upto(
    c: &FiniteClass,
    parts: &[&FiniteClass],
    cap: usize,
    meter: &mut Meter,
) -> Result<Option<Permutation>> {
    if parts.is_empty() {
        return Err(Error::Domain("no part classes given".into()));
    }
    for (i, part) in parts.iter().enumerate() {
        if subclass_upto(part, c, cap)?.is_some() || part.equal_upto(c, cap) {
            return Err(Error::NotProperSubclass {
                side: format!("part {i}"),
                cap,
            });
        }
    }
    for target in c.iter_upto(cap) {
        if !factors_through(target, parts, meter)? {
            return Ok(Some(target.clone()));
        }
    }
    Ok(None)
}

/// Does `target` equal `a_0 ∘ a_1 ∘ ... ∘ a_{k-1}` with `a_i` an
/// equal-length member of `parts[i]`? Peeling the first factor turns the
/// question into the same one for `a_0^{-1} ∘ target` and the remaining
/// factors.
fn factors_through(
    target: &Permutation,
    parts: &[&FiniteClass],
    meter: &mut Meter,
) -> Result<bool> {
    let n = target.len();
    if parts.len() == 1 {
        return Ok(parts[0].contains(target));
    }
    for alpha in parts[0].level(n) {
        meter.charge(1)?;
        let rest = alpha.inverse().compose(target)?;
        if factors_through(&rest, &parts[1..], meter)? {
            return Ok(true);
        }
    }
    Ok(false)
}
