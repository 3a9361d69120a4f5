//! `permkit`: evaluate class expressions, run named verifications, and
//! search for unsplittability witnesses, with deterministic text or JSON
//! output.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use permkit_core::budget::DEFAULT_BUDGET;
use permkit_core::checks::{self, CheckParams};
use permkit_core::class::expr::parse_class_expr;
use permkit_core::class::realize::realize_with;
use permkit_core::merge;
use permkit_core::report::{Counterexample, Verdict, VerificationReport};
use permkit_core::{Error, Meter, Permutation};

#[derive(Debug, Parser)]
#[command(name = "permkit", version)]
#[command(about = "Permutation-pattern workbench: classes, merges, compositions, verifications")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Work budget: total candidates built and colorings visited before a
    /// command aborts with exit code 4.
    #[arg(long, global = true, env = "PERMKIT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Realize a class expression and print per-length counts or members.
    Eval {
        /// Class expression, e.g. "I[D]", "Av(132,213)", "merge(I,I)".
        expr: String,

        /// Realize members up to this length.
        #[arg(long, default_value_t = 6)]
        maxlen: usize,

        /// Print per-length counts only (the default).
        #[arg(long)]
        count: bool,

        /// Print the members themselves, grouped by length.
        #[arg(long)]
        members: bool,
    },

    /// Run a named verification check.
    Verify {
        /// One of: lemma-decreasing, idi-composable, exact-split-example,
        /// im-merge, av1324-split, demerge-equiv.
        #[arg(long)]
        check: String,

        #[arg(long)]
        maxlen: Option<usize>,

        /// Monotone bound for the first composed class (lemma-decreasing).
        #[arg(long)]
        k: Option<usize>,

        /// Monotone bound for the second composed class (lemma-decreasing).
        #[arg(long)]
        l: Option<usize>,

        /// Number of merged copies (im-merge).
        #[arg(long)]
        m: Option<usize>,

        /// Number of de-merge parts (demerge-equiv).
        #[arg(long)]
        n: Option<usize>,

        /// increasing | decreasing | both (lemma-decreasing).
        #[arg(long)]
        mode: Option<String>,
    },

    /// Search a class for an unsplittability witness for (pi, pi2).
    Witness {
        /// Class expression to search.
        #[arg(long)]
        class: String,

        #[arg(long)]
        pi: String,

        #[arg(long)]
        pi2: String,

        #[arg(long, default_value_t = 8)]
        maxlen: usize,
    },

    /// Decide whether HOST is a merge of A and B; prints the coloring.
    MergeCheck { host: String, a: String, b: String },

    /// Compose two equal-length permutations.
    Compose { a: String, b: String },

    /// Inflate a skeleton permutation by one block per entry.
    Inflate {
        skeleton: String,
        #[arg(required = true)]
        blocks: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Budget { .. } => ExitCode::from(4),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn verdict_exit(verdict: Verdict) -> ExitCode {
    match verdict {
        Verdict::Pass => ExitCode::SUCCESS,
        Verdict::Fail => ExitCode::from(1),
        Verdict::Inconclusive => ExitCode::from(3),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let format = cli.format;
    let mut meter = Meter::new(cli.budget);
    match cli.command {
        Command::Eval {
            expr,
            maxlen,
            count: _,
            members,
        } => {
            let parsed = parse_class_expr(&expr)?;
            let class = realize_with(&parsed, maxlen, &mut meter)?;
            match format {
                Format::Text => {
                    if members {
                        print!("{}", class.to_text(&parsed.to_string()));
                    } else {
                        println!("# class {parsed} cap {maxlen}");
                        for (n, c) in class.counts().iter().enumerate() {
                            println!("len {n}: {c}");
                        }
                        println!("total: {}", class.total());
                    }
                }
                Format::Json => {
                    let mut doc = serde_json::json!({
                        "expr": parsed.to_string(),
                        "cap": maxlen,
                        "counts": class.counts(),
                        "total": class.total(),
                    });
                    if members {
                        let levels: Vec<Vec<String>> = (0..=maxlen)
                            .map(|n| class.level(n).iter().map(|p| p.to_string()).collect())
                            .collect();
                        doc["members"] = serde_json::json!(levels);
                    }
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify {
            check,
            maxlen,
            k,
            l,
            m,
            n,
            mode,
        } => {
            let params = CheckParams {
                maxlen,
                k,
                l,
                m,
                n,
                mode: mode.as_deref().map(str::parse).transpose()?,
            };
            let report = checks::run_check(&check, &params, &mut meter)?;
            emit(&report, format);
            Ok(verdict_exit(report.verdict))
        }

        Command::Witness {
            class,
            pi,
            pi2,
            maxlen,
        } => {
            let pi: Permutation = pi.parse()?;
            let pi2: Permutation = pi2.parse()?;
            let report = checks::witness_report(&class, &pi, &pi2, maxlen, &mut meter)?;
            emit(&report, format);
            Ok(verdict_exit(report.verdict))
        }

        Command::MergeCheck { host, a, b } => {
            let host: Permutation = host.parse()?;
            let a: Permutation = a.parse()?;
            let b: Permutation = b.parse()?;
            let found = merge::is_merge_with(&host, &a, &b, &mut meter)?;
            let mut report = VerificationReport::new(
                "merge-check",
                if found.is_some() { Verdict::Pass } else { Verdict::Fail },
            )
            .param("host", &host)
            .param("a", &a)
            .param("b", &b)
            .stat("units", meter.used());
            match &found {
                Some(coloring) => {
                    report = report.witness(Counterexample::coloring(coloring));
                    if format == Format::Text {
                        println!("{coloring}");
                    }
                }
                None => {
                    report = report.counterexample(Counterexample::permutation(&host));
                    if format == Format::Text {
                        println!("none");
                    }
                }
            }
            if format == Format::Json {
                emit(&report, format);
            }
            Ok(verdict_exit(report.verdict))
        }

        Command::Compose { a, b } => {
            let a: Permutation = a.parse()?;
            let b: Permutation = b.parse()?;
            let result = a.compose(&b)?;
            print_result(&result, format);
            Ok(ExitCode::SUCCESS)
        }

        Command::Inflate { skeleton, blocks } => {
            let skeleton: Permutation = skeleton.parse()?;
            let blocks = blocks
                .iter()
                .map(|s| s.parse())
                .collect::<Result<Vec<Permutation>, _>>()?;
            let result = skeleton.inflate(&blocks)?;
            print_result(&result, format);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_result(p: &Permutation, format: Format) {
    match format {
        Format::Text => println!("{p}"),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({ "result": p.to_string() })).unwrap()
        ),
    }
}

fn emit(report: &VerificationReport, format: Format) {
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => println!("{}", serde_json::to_string_pretty(report).unwrap()),
    }
}
