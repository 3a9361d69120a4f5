//! The named verification checks behind `permkit verify`.
//!
//! Each check realizes the classes it needs, sweeps them exhaustively at
//! the requested cap, and returns a deterministic [`VerificationReport`].
//! A check can only pass, fail with a counterexample, or (for bounded
//! witness searches) come back inconclusive.

use std::time::Instant;

use crate::budget::Meter;
use crate::class::expr::{parse_class_expr, ClassExpr};
use crate::class::finite::FiniteClass;
use crate::class::realize::realize_with;
use crate::compose::{self, MonotoneCase};
use crate::error::{Error, Result};
use crate::merge;
use crate::perm::{all_permutations, Permutation};
use crate::report::{Counterexample, Verdict, VerificationReport};

/// Names accepted by [`run_check`].
pub const CHECK_NAMES: &[&str] = &[
    "lemma-decreasing",
    "idi-composable",
    "exact-split-example",
    "im-merge",
    "av1324-split",
    "demerge-equiv",
];

/// Optional parameters for a named check; unset fields fall back to the
/// per-check defaults documented on [`run_check`].
#[derive(Debug, Clone, Default)]
pub struct CheckParams {
    pub maxlen: Option<usize>,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub mode: Option<ModeParam>,
}

/// Which side of the monotone-composition bound to exercise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModeParam {
    Increasing,
    Decreasing,
    #[default]
    Both,
}

impl std::fmt::Display for ModeParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ModeParam::Increasing => "increasing",
            ModeParam::Decreasing => "decreasing",
            ModeParam::Both => "both",
        })
    }
}

impl std::str::FromStr for ModeParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "increasing" => Ok(ModeParam::Increasing),
            "decreasing" => Ok(ModeParam::Decreasing),
            "both" => Ok(ModeParam::Both),
            other => Err(Error::Domain(format!(
                "mode {other:?} is not one of increasing, decreasing, both"
            ))),
        }
    }
}

/// Runs a named check. Defaults: `lemma-decreasing` k=2 l=2 maxlen=7
/// mode=both; `idi-composable` maxlen=7; `exact-split-example` maxlen=6;
/// `im-merge` m=2 maxlen=7; `av1324-split` maxlen=7; `demerge-equiv`
/// maxlen=5 n=2.
pub fn run_check(name: &str, params: &CheckParams, meter: &mut Meter) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = match name {
        "lemma-decreasing" => check_lemma_decreasing(params, meter),
        "idi-composable" => check_idi_composable(params, meter),
        "exact-split-example" => check_exact_split_example(params, meter),
        "im-merge" => check_im_merge(params, meter),
        "av1324-split" => check_av1324_split(params, meter),
        "demerge-equiv" => check_demerge_equiv(params, meter),
        other => Err(Error::UnknownCheck(other.to_string())),
    }?;
    report.elapsed_ms = started.elapsed().as_millis() as u64;
    report = report.stat("units", meter.used());
    Ok(report)
}

fn check_lemma_decreasing(params: &CheckParams, meter: &mut Meter) -> Result<VerificationReport> {
    let k = params.k.unwrap_or(2);
    let l = params.l.unwrap_or(2);
    let maxlen = params.maxlen.unwrap_or(7);
    let mode = params.mode.unwrap_or_default();
    let cases: &[MonotoneCase] = match mode {
        ModeParam::Increasing => &[MonotoneCase::Increasing],
        ModeParam::Decreasing => &[MonotoneCase::Decreasing],
        ModeParam::Both => &[MonotoneCase::Increasing, MonotoneCase::Decreasing],
    };
    let mut report = VerificationReport::new("lemma-decreasing", Verdict::Pass)
        .param("k", k)
        .param("l", l)
        .param("maxlen", maxlen)
        .param("mode", mode);
    for case in cases {
        let outcome = compose::monotone_composition_bound_check(k, l, maxlen, *case, meter)?;
        let label = match case {
            MonotoneCase::Increasing => "pairs_increasing",
            MonotoneCase::Decreasing => "pairs_decreasing",
        };
        report = report.stat(label, outcome.pairs);
        if let Some((alpha, beta, gamma)) = outcome.counterexample {
            return Ok(report
                .counterexample(Counterexample::permutation(&gamma))
                .note(format!("{alpha} composed with {beta} contains the forbidden pattern"))
                .with_verdict(Verdict::Fail));
        }
    }
    Ok(report)
}

fn check_idi_composable(params: &CheckParams, meter: &mut Meter) -> Result<VerificationReport> {
    let maxlen = params.maxlen.unwrap_or(7);
    let idi = realize_with(&ClassExpr::Idi, maxlen, meter)?;
    let layered = realize_with(&ClassExpr::L, maxlen, meter)?;
    let mut members = 0u64;
    let report = VerificationReport::new("idi-composable", Verdict::Pass).param("maxlen", maxlen);
    for p in idi.iter() {
        members += 1;
        let (alpha, beta) = compose::layered_decomposition(p)?;
        let ok = layered.contains(&alpha)
            && layered.contains(&beta)
            && alpha.compose(&beta)? == *p;
        if !ok {
            return Ok(report
                .stat("members", members)
                .counterexample(Counterexample::permutation(p))
                .note(format!("decomposition gave {alpha} and {beta}"))
                .with_verdict(Verdict::Fail));
        }
    }
    Ok(report.stat("members", members))
}

fn check_exact_split_example(params: &CheckParams, meter: &mut Meter) -> Result<VerificationReport> {
    let maxlen = params.maxlen.unwrap_or(6);
    let class = all_but_extremes(maxlen);
    let mut g = |gens: &[&str]| -> Result<FiniteClass> {
        let perms = gens.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>()?;
        realize_with(&ClassExpr::generated(perms)?, maxlen, meter)
    };
    let g1 = g(&["1"])?;
    let g12 = g(&["12"])?;
    let g21 = g(&["21"])?;
    let g4 = g(&["132", "213", "231", "312"])?;

    let mut report = VerificationReport::new("exact-split-example", Verdict::Pass)
        .param("maxlen", maxlen)
        .stat("class_total", class.total() as u64);
    for (label, parts) in [
        ("split_1x1x12x21", vec![&g1, &g1, &g12, &g21]),
        ("split_1x1x1xlen3", vec![&g1, &g1, &g1, &g4]),
    ] {
        let outcome = merge::exact_split_check(&class, &parts, maxlen, meter)?;
        if !outcome.is_exact() {
            let (cx, direction) = match outcome.missing.first() {
                Some(p) => (p.clone(), "missing from the merge"),
                None => (outcome.extra[0].clone(), "outside the class"),
            };
            return Ok(report
                .counterexample(Counterexample::permutation(&cx))
                .note(format!("{label}: {cx} is {direction}"))
                .with_verdict(Verdict::Fail));
        }
        report = report.stat(label, 1);
    }
    Ok(report)
}

/// All permutations of length at most `cap` except the increasing and
/// decreasing ones of length exactly `cap`.
pub fn all_but_extremes(cap: usize) -> FiniteClass {
    let all = FiniteClass::all_upto(cap);
    let inc = Permutation::increasing(cap);
    let dec = Permutation::decreasing(cap);
    FiniteClass::from_members(
        cap,
        all.iter().filter(|&p| *p != inc && *p != dec).cloned(),
    )
    .expect("filtered members stay within the cap")
}

fn check_im_merge(params: &CheckParams, meter: &mut Meter) -> Result<VerificationReport> {
    let m = params.m.unwrap_or(2);
    let maxlen = params.maxlen.unwrap_or(7);
    if m == 0 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    let i = realize_with(&ClassExpr::I, maxlen, meter)?;
    let parts: Vec<&FiniteClass> = std::iter::repeat_n(&i, m).collect();
    let merged = merge::merge_classes_upto(&parts, maxlen, meter)?;
    let target = realize_with(
        &ClassExpr::av(vec![Permutation::decreasing(m + 1)])?,
        maxlen,
        meter,
    )?;
    let report = VerificationReport::new("im-merge", Verdict::Pass)
        .param("m", m)
        .param("maxlen", maxlen)
        .stat("merged_total", merged.total() as u64)
        .stat("target_total", target.total() as u64);
    let (missing, extra) = target.diff_upto(&merged, maxlen);
    if let Some(cx) = missing.first().or(extra.first()) {
        let side = if !missing.is_empty() {
            "missing from the merge"
        } else {
            "outside the avoidance class"
        };
        return Ok(report
            .counterexample(Counterexample::permutation(cx))
            .note(format!("{cx} is {side}"))
            .with_verdict(Verdict::Fail));
    }
    Ok(report)
}

fn check_av1324_split(params: &CheckParams, meter: &mut Meter) -> Result<VerificationReport> {
    let maxlen = params.maxlen.unwrap_or(7);
    let mut av = |s: &str| -> Result<FiniteClass> {
        realize_with(&ClassExpr::av(vec![s.parse()?])?, maxlen, meter)
    };
    let c = av("1324")?;
    let a = av("132")?;
    let b = av("213")?;
    let report = VerificationReport::new("av1324-split", Verdict::Pass)
        .param("maxlen", maxlen)
        .stat("members", c.total() as u64);
    match merge::split_check_upto(&c, &a, &b, maxlen, meter)? {
        None => Ok(report),
        Some(cx) => Ok(report
            .counterexample(Counterexample::permutation(&cx))
            .note(format!("{cx} is not a merge of a 132-avoider and a 213-avoider"))
            .with_verdict(Verdict::Fail)),
    }
}

fn check_demerge_equiv(params: &CheckParams, meter: &mut Meter) -> Result<VerificationReport> {
    let maxlen = params.maxlen.unwrap_or(5);
    let n = params.n.unwrap_or(2);
    let mut count = 0u64;
    let report = VerificationReport::new("demerge-equiv", Verdict::Pass)
        .param("maxlen", maxlen)
        .param("n", n);
    for len in 0..=maxlen {
        for p in all_permutations(len) {
            count += 1;
            meter.charge(1)?;
            if !merge::demerge_matches_compose(&p, n, meter)? {
                return Ok(report
                    .stat("permutations", count)
                    .counterexample(Counterexample::permutation(&p))
                    .with_verdict(Verdict::Fail));
            }
        }
    }
    Ok(report.stat("permutations", count))
}

/// Report for the bounded unsplittability-witness search behind
/// `permkit witness`.
pub fn witness_report(
    class_text: &str,
    pi: &Permutation,
    pi2: &Permutation,
    maxlen: usize,
    meter: &mut Meter,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let expr = parse_class_expr(class_text)?;
    let class = realize_with(&expr, maxlen, meter)?;
    let found = merge::find_unsplittability_witness(&class, pi, pi2, maxlen, meter)?;
    let mut report = VerificationReport::new("witness", Verdict::Pass)
        .param("class", &expr)
        .param("pi", pi)
        .param("pi2", pi2)
        .param("maxlen", maxlen)
        .stat("units", meter.used());
    report = match found {
        Some(sigma) => report.witness(Counterexample::permutation(&sigma)),
        None => report
            .note(format!(
                "no witness of length <= {maxlen}; this is not evidence of splittability"
            ))
            .with_verdict(Verdict::Inconclusive),
    };
    report.elapsed_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

impl VerificationReport {
    fn with_verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }
}
