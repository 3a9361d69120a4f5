//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the sweep sizes it covered. Run with `cargo test --test acceptance`
//! (add `-- --nocapture` to see the lines).

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;

use permkit_core::class::finite::subclass_upto;
use permkit_core::class::realize::realize;
use permkit_core::checks::all_but_extremes;
use permkit_core::compose::{
    layered_decomposition, monotone_composition_bound_check, MonotoneCase,
};
use permkit_core::merge::{
    demerge_remerge_set, exact_split_check, is_merge_with, merge_classes_upto,
    split_check_upto, split_witness_check,
};
use permkit_core::{all_permutations, ClassExpr, FiniteClass, Meter, Permutation};

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn meter() -> Meter {
    Meter::unlimited()
}

/// Criterion 1: the inflation of 2413 by 132, 21, 1, 12 is 24387156,
/// bit-exact and fast.
#[test]
fn criterion_1_inflation_example() {
    let skeleton = p("2413");
    let blocks = [p("132"), p("21"), p("1"), p("12")];
    // Warm-up to keep allocator startup out of the timing.
    let _ = skeleton.inflate(&blocks).unwrap();
    let started = Instant::now();
    let inflated = skeleton.inflate(&blocks).unwrap();
    let elapsed = started.elapsed();
    assert_eq!(inflated, p("24387156"));
    assert_eq!(inflated.to_string(), "24387156");
    assert!(
        elapsed.as_micros() < 1000,
        "inflation took {elapsed:?}, expected < 1ms"
    );
    println!("PASS criterion 1: inflate(2413; 132,21,1,12) = 24387156 in {elapsed:?}");
}

/// Criterion 2: every member of I[D[I]] up to length 8 factors as a
/// composition of two layered permutations via the constructive
/// decomposition.
#[test]
fn criterion_2_idi_constructive_composability() {
    let idi = realize(&ClassExpr::Idi, 8).unwrap();
    let layered = realize(&ClassExpr::L, 8).unwrap();
    let mut members = 0u64;
    for q in idi.iter() {
        members += 1;
        let (alpha, beta) = layered_decomposition(q).unwrap();
        assert!(layered.contains(&alpha), "alpha {alpha} not layered for {q}");
        assert!(layered.contains(&beta), "beta {beta} not layered for {q}");
        assert_eq!(alpha.compose(&beta).unwrap(), *q, "composition mismatch for {q}");
    }
    println!("PASS criterion 2: layered decomposition verified for {members} members of I[D[I]] up to length 8");
}

/// Criterion 3: compositions of avoider classes stay inside the monotone
/// bound for (k, l) in {1,2}^2, both directions, cap 7.
#[test]
fn criterion_3_monotone_composition_bound() {
    let mut pairs = 0u64;
    for k in 1..=2 {
        for l in 1..=2 {
            for case in [MonotoneCase::Increasing, MonotoneCase::Decreasing] {
                let out = monotone_composition_bound_check(k, l, 7, case, &mut meter()).unwrap();
                assert!(
                    out.counterexample.is_none(),
                    "counterexample at k={k} l={l} case={case:?}: {:?}",
                    out.counterexample
                );
                pairs += out.pairs;
            }
        }
    }
    println!("PASS criterion 3: {pairs} equal-length compositions all within the monotone bound");
}

/// Criterion 4: the length-6 class with both extremes removed has two
/// different exact splittings into downward closures.
#[test]
fn criterion_4_double_exact_splitting() {
    let class = all_but_extremes(6);
    assert_eq!(class.total(), 872, "871 nonempty members plus the empty one");

    let g = |gens: &[&str]| {
        let perms = gens.iter().map(|s| p(s)).collect();
        realize(&ClassExpr::generated(perms).unwrap(), 6).unwrap()
    };
    let g1 = g(&["1"]);
    let g12 = g(&["12"]);
    let g21 = g(&["21"]);
    let g4 = g(&["132", "213", "231", "312"]);

    let first = exact_split_check(&class, &[&g1, &g1, &g12, &g21], 6, &mut meter()).unwrap();
    assert!(
        first.is_exact(),
        "first split differs: missing {:?} extra {:?}",
        first.missing,
        first.extra
    );
    let second = exact_split_check(&class, &[&g1, &g1, &g1, &g4], 6, &mut meter()).unwrap();
    assert!(
        second.is_exact(),
        "second split differs: missing {:?} extra {:?}",
        second.missing,
        second.extra
    );
    println!("PASS criterion 4: both exact splittings of the 872-member class hold");
}

/// Criterion 5: the merge of two increasing chains equals the 321-avoiders
/// exactly at cap 7.
#[test]
fn criterion_5_merge_identity() {
    let i = realize(&ClassExpr::I, 7).unwrap();
    let merged = merge_classes_upto(&[&i, &i], 7, &mut meter()).unwrap();
    let av321 = realize(&ClassExpr::Av(vec![p("321")]), 7).unwrap();
    assert!(merged.equal_upto(&av321, 7));
    assert_eq!(merged.counts(), vec![1, 1, 2, 5, 14, 42, 132, 429]);
    println!("PASS criterion 5: merge(I,I) = Av(321) exactly up to length 7 ({} members)", merged.total());
}

/// Criterion 6: every 1324-avoider up to length 7 is a merge of a
/// 132-avoider and a 213-avoider.
#[test]
fn criterion_6_av1324_split() {
    let c = realize(&ClassExpr::Av(vec![p("1324")]), 7).unwrap();
    let a = realize(&ClassExpr::Av(vec![p("132")]), 7).unwrap();
    let b = realize(&ClassExpr::Av(vec![p("213")]), 7).unwrap();
    let counterexample = split_check_upto(&c, &a, &b, 7, &mut meter()).unwrap();
    assert_eq!(counterexample, None);
    println!(
        "PASS criterion 6: all {} members of Av(1324) up to length 7 split into Av(132) ⊙ Av(213)",
        c.total()
    );
}

/// Criterion 7: de-merging into two parts and re-merging agrees with
/// composing by equal-length 321-avoiders, for every permutation up to
/// length 5.
#[test]
fn criterion_7_demerge_compose_equivalence() {
    let eta_class = realize(&ClassExpr::Im(2), 5).unwrap();
    let mut swept = 0u64;
    for n in 0..=5usize {
        for q in all_permutations(n) {
            swept += 1;
            let lhs = demerge_remerge_set(&q, 2).unwrap();
            let rhs: BTreeSet<Permutation> = eta_class
                .level(n)
                .iter()
                .map(|eta| q.compose(eta).unwrap())
                .collect();
            assert_eq!(lhs, rhs, "mismatch for {q}");
        }
    }
    println!("PASS criterion 7: de-merge/re-merge equals composition with I_2 members for {swept} permutations");
}

/// Criterion 8a: the containment search agrees with the subset-enumeration
/// oracle on every (host, pattern) pair with |host| <= 7, including the
/// least embedding.
#[test]
fn criterion_8a_contains_oracle_equivalence() {
    let tables: Vec<Vec<Permutation>> = (0..=7).map(all_permutations).collect();
    let mut pairs = 0u64;
    for n in 0..=7usize {
        let checked: u64 = tables[n]
            .par_iter()
            .map(|host| {
                let oracle = common::pattern_table(host);
                let mut local = 0u64;
                for table in tables.iter().take(n + 1) {
                    for pat in table {
                        local += 1;
                        match (host.contains(pat), oracle.get(pat)) {
                            (Some(emb), Some(expected)) => {
                                assert_eq!(&emb.indices, expected, "embedding for {pat} in {host}")
                            }
                            (None, None) => {}
                            (got, expected) => panic!(
                                "disagreement for pattern {pat} in host {host}: {got:?} vs {expected:?}"
                            ),
                        }
                    }
                }
                local
            })
            .sum();
        pairs += checked;
    }
    println!("PASS criterion 8a: contains matches the subset oracle on {pairs} (host, pattern) pairs");
}

/// Criterion 8b: the merge search agrees with the 2^n-coloring oracle on
/// every (host, a, b) triple with |host| <= 7, including the least
/// coloring.
#[test]
fn criterion_8b_merge_oracle_equivalence() {
    let tables: Vec<Vec<Permutation>> = (0..=7).map(all_permutations).collect();
    let mut triples = 0u64;
    for n in 0..=7usize {
        let checked: u64 = tables[n]
            .par_iter()
            .map(|host| {
                let oracle = common::merge_table(host);
                let mut local_meter = Meter::unlimited();
                let mut local = 0u64;
                for la in 0..=n {
                    for a in &tables[la] {
                        for b in &tables[n - la] {
                            local += 1;
                            let got = is_merge_with(host, a, b, &mut local_meter).unwrap();
                            match (got, oracle.get(&(a.clone(), b.clone()))) {
                                (Some(coloring), Some(expected)) => {
                                    assert_eq!(&coloring.to_string(), expected, "coloring for {host} = {a} + {b}")
                                }
                                (None, None) => {}
                                (got, expected) => panic!(
                                    "disagreement for {host} = {a} + {b}: {got:?} vs {expected:?}"
                                ),
                            }
                        }
                    }
                }
                local
            })
            .sum();
        triples += checked;
    }
    println!("PASS criterion 8b: is_merge matches the coloring oracle on {triples} (host, a, b) triples");
}

/// Criterion 8c: realized Av(132) counts match the oracle-filtered counts,
/// the Catalan numbers observed rather than assumed.
#[test]
fn criterion_8c_av132_counts() {
    let realized = realize(&ClassExpr::Av(vec![p("132")]), 6).unwrap();
    let basis = [p("132")];
    let oracle_counts: Vec<usize> = (0..=6)
        .map(|n| common::avoiders_oracle(&basis, n).len())
        .collect();
    assert_eq!(oracle_counts, vec![1, 1, 2, 5, 14, 42, 132]);
    assert_eq!(realized.counts(), oracle_counts);
    for n in 0..=6 {
        let oracle_members = common::avoiders_oracle(&basis, n);
        assert_eq!(realized.level(n), &oracle_members[..], "members at length {n}");
    }
    println!("PASS criterion 8c: Av(132) realization matches oracle filtering, counts 1,1,2,5,14,42,132");
}

/// Criterion 9a: every realized class in the corpus passes the
/// downward-closure audit at cap 6.
#[test]
fn criterion_9a_hereditary_audits() {
    let exprs = [
        "I",
        "D",
        "I_2",
        "I_3",
        "D_2",
        "L",
        "L_2",
        "L_3",
        "IDI",
        "Av(132)",
        "Av(213)",
        "Av(321)",
        "Av(1324)",
        "Av(132,213)",
        "G(1)",
        "G(12)",
        "G(21)",
        "G(132,213,231,312)",
        "merge(I,I)",
        "merge(D,D)",
        "merge(Av(132),Av(213))",
        "I|D",
        "L[D]",
        "(I|D)[G(12)]",
    ];
    for text in exprs {
        let expr = permkit_core::class::expr::parse_class_expr(text).unwrap();
        let class = realize(&expr, 6).unwrap();
        assert_eq!(
            class.downward_closure_violation(),
            None,
            "closure violation in {text}"
        );
    }
    // The compose constructor stays raw; its audit flag is reported
    // instead. These two happen to be hereditary and the flag says so.
    for text in ["compose(I,I)", "compose(D,D)"] {
        let expr = permkit_core::class::expr::parse_class_expr(text).unwrap();
        let class = realize(&expr, 6).unwrap();
        assert_eq!(class.downward_closure_violation(), None, "{text}");
    }
    println!("PASS criterion 9a: downward-closure audit green for {} realized classes", exprs.len() + 2);
}

/// Criterion 9b: the split-witness search agrees with the complementary
/// coloring oracle for every sigma up to length 6 and patterns up to
/// length 3.
#[test]
fn criterion_9b_split_witness_duality() {
    let sigmas: Vec<Permutation> = (0..=6).flat_map(all_permutations).collect();
    let patterns: Vec<Permutation> = (0..=3).flat_map(all_permutations).collect();
    let total: u64 = sigmas
        .par_iter()
        .map(|sigma| {
            let mut local = 0u64;
            for pi in &patterns {
                for pi2 in &patterns {
                    local += 1;
                    let holds = split_witness_check(sigma, pi, pi2).unwrap().is_none();
                    let violated = common::split_violation_oracle(sigma, pi, pi2);
                    assert_eq!(
                        holds, !violated,
                        "duality mismatch for sigma={sigma} pi={pi} pi2={pi2}"
                    );
                }
            }
            local
        })
        .sum();
    println!("PASS criterion 9b: split-witness duality verified on {total} (sigma, pi, pi2) triples");
}

/// Companion sanity check used by criterion 9a's corpus: merges and
/// unions of realized classes keep the empty permutation and respect
/// subclass relations used elsewhere in the suite.
#[test]
fn corpus_subclass_spot_checks() {
    let l = realize(&ClassExpr::L, 6).unwrap();
    let idi = realize(&ClassExpr::Idi, 6).unwrap();
    assert_eq!(subclass_upto(&l, &idi, 6).unwrap(), None);
    let i2 = realize(&ClassExpr::Im(2), 6).unwrap();
    let merged = merge_classes_upto(
        &[&realize(&ClassExpr::I, 6).unwrap(), &realize(&ClassExpr::I, 6).unwrap()],
        6,
        &mut meter(),
    )
    .unwrap();
    assert!(merged.equal_upto(&i2, 6));
    assert!(FiniteClass::all_upto(0).contains(&Permutation::empty()));
}
