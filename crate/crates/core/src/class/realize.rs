use std::collections::BTreeSet;

use crate::budget::Meter;
use crate::class::expr::ClassExpr;
use crate::class::finite::FiniteClass;
use crate::error::{Error, Result};
use crate::perm::{Permutation, MAX_LEN};
use crate::{compose, merge};

/// Realizes a class expression as the set of all its members of length at
/// most `cap`, using a default work budget.
pub fn realize(expr: &ClassExpr, cap: usize) -> Result<FiniteClass> {
    realize_with(expr, cap, &mut Meter::default())
}

/// [`realize`] with an explicit meter; heavy constructors (inflations,
/// merges, compositions, generator closures) charge one unit per candidate
/// they build and abort with [`Error::Budget`] when the meter runs out.
///
/// Every constructor except `compose` produces a downward-closed set.
/// Class composition is a raw pairing of equal-length members and is kept
/// raw here; audit with [`FiniteClass::downward_closure_violation`] if
/// hereditarity matters.
pub fn realize_with(expr: &ClassExpr, cap: usize, meter: &mut Meter) -> Result<FiniteClass> {
    if cap > MAX_LEN {
        return Err(Error::LengthCap { len: cap, max: MAX_LEN });
    }
    match expr {
        ClassExpr::I => Ok(monotone_chain(cap, Permutation::increasing)),
        ClassExpr::D => Ok(monotone_chain(cap, Permutation::decreasing)),
        ClassExpr::Im(m) => realize_av(&[basis_elem(*m, Permutation::decreasing)?], cap, meter),
        ClassExpr::Dm(m) => realize_av(&[basis_elem(*m, Permutation::increasing)?], cap, meter),
        ClassExpr::L => {
            let skeletons = monotone_chain(cap, Permutation::increasing);
            let blocks = monotone_chain(cap, Permutation::decreasing);
            mixed_inflate(&skeletons, &blocks, cap, meter)
        }
        ClassExpr::Lk(k) => {
            let skeletons = monotone_chain(cap.min(*k), Permutation::increasing);
            let blocks = monotone_chain(cap, Permutation::decreasing);
            mixed_inflate(&skeletons, &blocks, cap, meter)
        }
        ClassExpr::Idi => {
            let inner = ClassExpr::inflate(ClassExpr::D, ClassExpr::I);
            let di = realize_with(&inner, cap, meter)?;
            let skeletons = monotone_chain(cap, Permutation::increasing);
            mixed_inflate(&skeletons, &di, cap, meter)
        }
        ClassExpr::Av(basis) => realize_av(basis, cap, meter),
        ClassExpr::G(gens) => realize_generated(gens, cap, meter),
        ClassExpr::Inflate(a, b) => {
            let fa = realize_with(a, cap, meter)?;
            let fb = realize_with(b, cap, meter)?;
            mixed_inflate(&fa, &fb, cap, meter)
        }
        ClassExpr::Merge(a, b) => {
            let fa = realize_with(a, cap, meter)?;
            let fb = realize_with(b, cap, meter)?;
            merge::merge_classes_upto(&[&fa, &fb], cap, meter)
        }
        ClassExpr::Compose(a, b) => {
            let fa = realize_with(a, cap, meter)?;
            let fb = realize_with(b, cap, meter)?;
            Ok(compose::compose_classes_upto(&fa, &fb, cap, meter)?.set)
        }
        ClassExpr::Union(a, b) => {
            let fa = realize_with(a, cap, meter)?;
            let fb = realize_with(b, cap, meter)?;
            let mut levels: Vec<BTreeSet<Permutation>> = vec![BTreeSet::new(); cap + 1];
            for p in fa.iter().chain(fb.iter()) {
                levels[p.len()].insert(p.clone());
            }
            Ok(FiniteClass::from_levels(cap, levels))
        }
    }
}

fn basis_elem(m: usize, make: fn(usize) -> Permutation) -> Result<Permutation> {
    if m + 1 > MAX_LEN {
        return Err(Error::LengthCap { len: m + 1, max: MAX_LEN });
    }
    Ok(make(m + 1))
}

/// `{e, f(1), f(2), ..., f(cap)}` — the increasing or decreasing chain.
fn monotone_chain(cap: usize, make: fn(usize) -> Permutation) -> FiniteClass {
    let levels = (0..=cap).map(|n| BTreeSet::from([make(n)])).collect();
    FiniteClass::from_levels(cap, levels)
}

/// Avoiders of `basis`, generated lengthwise: every avoider of length `n`
/// arises uniquely by inserting the maximal value into an avoider of
/// length `n - 1` (deleting the maximum from an avoider yields an avoider).
fn realize_av(basis: &[Permutation], cap: usize, meter: &mut Meter) -> Result<FiniteClass> {
    let mut levels: Vec<BTreeSet<Permutation>> = vec![BTreeSet::new(); cap + 1];
    let empty = Permutation::empty();
    if basis.iter().all(|b| !b.is_empty()) {
        levels[0].insert(empty.clone());
    }
    let mut frontier = vec![empty];
    for (n, level) in levels.iter_mut().enumerate().skip(1) {
        let mut next = Vec::new();
        for parent in &frontier {
            let vals = parent.values();
            for pos in 0..=vals.len() {
                meter.charge(1)?;
                let mut candidate = Vec::with_capacity(n);
                candidate.extend_from_slice(&vals[..pos]);
                candidate.push(n as u8);
                candidate.extend_from_slice(&vals[pos..]);
                let candidate = Permutation::new(candidate).expect("insertion keeps bijection");
                if basis.iter().all(|b| candidate.avoids(b)) {
                    next.push(candidate);
                }
            }
        }
        level.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(FiniteClass::from_levels(cap, levels))
}

/// Downward closure of a finite generating set: all patterns of all
/// generators, enumerated by position subsets.
fn realize_generated(gens: &[Permutation], cap: usize, meter: &mut Meter) -> Result<FiniteClass> {
    let mut levels: Vec<BTreeSet<Permutation>> = vec![BTreeSet::new(); cap + 1];
    levels[0].insert(Permutation::empty());
    let mut buf = Vec::new();
    for g in gens {
        let vals = g.values();
        let n = vals.len();
        for mask in 1u64..(1u64 << n) {
            meter.charge(1)?;
            buf.clear();
            for (i, &v) in vals.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    buf.push(v);
                }
            }
            if buf.len() <= cap {
                levels[buf.len()].insert(Permutation::pattern_of_distinct(&buf));
            }
        }
    }
    Ok(FiniteClass::from_levels(cap, levels))
}

/// The mixed-inflation class `{ pi[s_1, ..., s_n] : pi in A, s_i in B
/// nonempty }`, plus the empty permutation. With hereditary `A` and `B`
/// this is itself hereditary: a pattern of an inflation is an inflation of
/// a pattern of the skeleton by patterns of the blocks.
pub(crate) fn mixed_inflate(
    skeletons: &FiniteClass,
    blocks: &FiniteClass,
    cap: usize,
    meter: &mut Meter,
) -> Result<FiniteClass> {
    let mut levels: Vec<BTreeSet<Permutation>> = vec![BTreeSet::new(); cap + 1];
    if skeletons.count(0) > 0 {
        levels[0].insert(Permutation::empty());
    }
    let mut chosen: Vec<&Permutation> = Vec::new();
    for n in 1..=cap.min(skeletons.cap()) {
        for skeleton in skeletons.level(n) {
            chosen.clear();
            fill_blocks(skeleton, blocks, cap, &mut chosen, &mut levels, meter)?;
        }
    }
    Ok(FiniteClass::from_levels(cap, levels))
}

/// DFS over block tuples whose total length stays within the cap, with one
/// slot per skeleton entry and every block nonempty.
fn fill_blocks<'a>(
    skeleton: &Permutation,
    blocks: &'a FiniteClass,
    cap: usize,
    chosen: &mut Vec<&'a Permutation>,
    levels: &mut [BTreeSet<Permutation>],
    meter: &mut Meter,
) -> Result<()> {
    let slots = skeleton.len();
    let filled = chosen.len();
    if filled == slots {
        meter.charge(1)?;
        let blocks_owned: Vec<Permutation> = chosen.iter().map(|&b| b.clone()).collect();
        let inflated = skeleton.inflate(&blocks_owned)?;
        levels[inflated.len()].insert(inflated);
        return Ok(());
    }
    let used: usize = chosen.iter().map(|b| b.len()).sum();
    let reserve = slots - filled - 1; // each remaining slot needs at least one point
    let max_here = cap - used - reserve;
    for k in 1..=max_here.min(blocks.cap()) {
        for b in blocks.level(k) {
            chosen.push(b);
            fill_blocks(skeleton, blocks, cap, chosen, levels, meter)?;
            chosen.pop();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn members(c: &FiniteClass) -> Vec<String> {
        c.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn realize_increasing_chain() {
        let c = realize(&ClassExpr::I, 5).unwrap();
        assert_eq!(members(&c), ["e", "1", "12", "123", "1234", "12345"]);
    }

    #[test]
    fn av12_is_the_decreasing_chain() {
        let c = realize(&ClassExpr::av(vec![p("12")]).unwrap(), 4).unwrap();
        assert_eq!(members(&c), ["e", "1", "21", "321", "4321"]);
    }

    #[test]
    fn av132_counts_match() {
        let c = realize(&ClassExpr::av(vec![p("132")]).unwrap(), 5).unwrap();
        assert_eq!(c.counts(), vec![1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn layered_counts_double() {
        let c = realize(&ClassExpr::L, 4).unwrap();
        assert_eq!(c.counts(), vec![1, 1, 2, 4, 8]);
        assert_eq!(c.count(4), 8);
    }

    #[test]
    fn generated_class_closes_downward() {
        let e = ClassExpr::generated(vec![p("132"), p("213"), p("231"), p("312")]).unwrap();
        let c = realize(&e, 3).unwrap();
        assert_eq!(
            members(&c),
            ["e", "1", "12", "21", "132", "213", "231", "312"]
        );
    }

    #[test]
    fn lk_bounds_the_layer_count() {
        let l2 = realize(&ClassExpr::Lk(2), 6).unwrap();
        // At most two layers: counts are the compositions into <= 2 parts.
        assert_eq!(l2.counts(), vec![1, 1, 2, 3, 4, 5, 6]);
        assert!(l2.contains(&p("2143")));
        assert!(!l2.contains(&p("214365"))); // three layers
        let l = realize(&ClassExpr::L, 6).unwrap();
        assert_eq!(crate::class::finite::subclass_upto(&l2, &l, 6).unwrap(), None);
    }

    #[test]
    fn im_equals_av_of_decreasing() {
        for m in 1..=3 {
            let im = realize(&ClassExpr::Im(m), 6).unwrap();
            let av = realize(
                &ClassExpr::av(vec![Permutation::decreasing(m + 1)]).unwrap(),
                6,
            )
            .unwrap();
            assert!(im.equal_upto(&av, 6), "I_{m} != Av(delta_{})", m + 1);
        }
    }

    #[test]
    fn idi_realization_is_hereditary() {
        let c = realize(&ClassExpr::Idi, 6).unwrap();
        assert_eq!(c.downward_closure_violation(), None);
        assert!(c.contains(&p("2143")));
        assert!(!c.contains(&p("2413")));
    }

    #[test]
    fn union_realizes_both_sides() {
        let c = realize(&ClassExpr::union(ClassExpr::I, ClassExpr::D), 4).unwrap();
        assert_eq!(c.counts(), vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn budget_is_enforced() {
        let mut meter = Meter::new(10);
        let err = realize_with(&ClassExpr::Idi, 7, &mut meter).unwrap_err();
        assert!(matches!(err, Error::Budget { limit: 10 }));
    }

    #[test]
    fn cap_above_max_len_is_rejected() {
        assert!(matches!(
            realize(&ClassExpr::I, MAX_LEN + 1),
            Err(Error::LengthCap { .. })
        ));
    }
}
