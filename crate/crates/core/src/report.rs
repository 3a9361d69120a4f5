use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// Outcome of a named check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Only bounded searches may be inconclusive (e.g. no witness found
    /// below the length bound).
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// A permutation and/or coloring attached to a report, rendered in the
/// standard text forms (digits or comma-separated values; digit strings
/// for colorings).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coloring: Option<String>,
}

impl Counterexample {
    pub fn permutation(p: impl fmt::Display) -> Self {
        Counterexample {
            permutation: Some(p.to_string()),
            coloring: None,
        }
    }

    pub fn coloring(c: impl fmt::Display) -> Self {
        Counterexample {
            permutation: None,
            coloring: Some(c.to_string()),
        }
    }

    pub fn both(p: impl fmt::Display, c: impl fmt::Display) -> Self {
        Counterexample {
            permutation: Some(p.to_string()),
            coloring: Some(c.to_string()),
        }
    }
}

/// Machine-readable outcome of a named check.
///
/// Reports are deterministic: parameters and statistics live in ordered
/// maps and the verdict body carries no timestamps. `elapsed_ms` is the
/// one field excluded from the byte-for-byte reproducibility contract.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub stats: BTreeMap<String, u64>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>, verdict: Verdict) -> Self {
        VerificationReport {
            check: check.into(),
            params: BTreeMap::new(),
            verdict,
            witness: None,
            counterexample: None,
            note: None,
            stats: BTreeMap::new(),
            elapsed_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn stat(mut self, key: &str, value: u64) -> Self {
        self.stats.insert(key.to_string(), value);
        self
    }

    pub fn witness(mut self, w: Counterexample) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn counterexample(mut self, cx: Counterexample) -> Self {
        self.counterexample = Some(cx);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Deterministic text rendering; `elapsed_ms` is printed last so the
    /// reproducible body is a prefix of the output.
    pub fn render_text(&self) -> String {
        let mut out = format!("check: {}\n", self.check);
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("params: {}\n", params.join(" ")));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness:{}\n", render_evidence(w)));
        }
        if let Some(cx) = &self.counterexample {
            out.push_str(&format!("counterexample:{}\n", render_evidence(cx)));
        }
        if let Some(note) = &self.note {
            out.push_str(&format!("note: {note}\n"));
        }
        let stats: Vec<String> = self.stats.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("stats: {}\n", stats.join(" ")));
        out.push_str(&format!("elapsed_ms: {}\n", self.elapsed_ms));
        out
    }
}

fn render_evidence(e: &Counterexample) -> String {
    let mut out = String::new();
    if let Some(p) = &e.permutation {
        out.push_str(&format!(" permutation={p}"));
    }
    if let Some(c) = &e.coloring {
        out.push_str(&format!(" coloring={c}"));
    }
    out
}
