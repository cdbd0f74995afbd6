use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::{summarize, GridConfig, GridOutcome, Summary, VerifyReport};

pub const TOOL: &str = "tribonacci";

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentSummary {
    pub primary: Summary,
    pub informational: Summary,
}

/// Everything a `verify` run emits. Contains no timestamps or host data, so
/// identical configurations produce identical bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub config: GridConfig,
    pub reports: Vec<VerifyReport>,
    pub informational: Vec<VerifyReport>,
    pub summary: DocumentSummary,
}

impl ReportDocument {
    pub fn new(config: GridConfig, outcome: GridOutcome) -> Self {
        let summary = DocumentSummary {
            primary: summarize(&outcome.primary),
            informational: summarize(&outcome.informational),
        };
        ReportDocument {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            reports: outcome.primary,
            informational: outcome.informational,
            summary,
        }
    }

    /// Recomputes the summary from the report lists.
    pub fn recount(&self) -> DocumentSummary {
        DocumentSummary {
            primary: summarize(&self.reports),
            informational: summarize(&self.informational),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Validation(e.to_string());
        w.write_record(["section", "id", "variant", "status", "params", "lhs", "rhs", "note"])
            .map_err(io)?;
        for (section, list) in [("primary", &self.reports), ("informational", &self.informational)] {
            for r in list {
                w.write_record([
                    section,
                    r.id.as_str(),
                    r.variant.as_str(),
                    r.status.as_str(),
                    &r.params.to_string(),
                    &opt(&r.lhs),
                    &opt(&r.rhs),
                    &r.note,
                ])
                .map_err(io)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Validation(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        for (title, list) in [("primary", &self.reports), ("informational", &self.informational)] {
            if list.is_empty() {
                continue;
            }
            let _ = writeln!(out, "== {title}");
            let id_w = list.iter().map(|r| r.id.as_str().len()).max().unwrap_or(0);
            for r in list {
                let _ = write!(
                    out,
                    "{:<id_w$}  {:<21}  {:<20}  {}",
                    r.id.as_str(),
                    r.variant.as_str(),
                    r.status.as_str(),
                    r.params
                );
                if r.is_counterexample() {
                    let _ = write!(out, "  lhs={} rhs={}", opt(&r.lhs), opt(&r.rhs));
                }
                let _ = writeln!(out, "  ({})", r.note);
            }
        }
        let line = |s: &Summary| {
            let (mut v, mut c, mut k) = (0, 0, 0);
            for counts in s.values() {
                v += counts.verified;
                c += counts.counterexample;
                k += counts.skipped_precondition;
            }
            format!("{v} verified, {c} counterexample, {k} skipped")
        };
        let _ = writeln!(
            out,
            "summary: primary {}; informational {}",
            line(&self.summary.primary),
            line(&self.summary.informational)
        );
        out
    }
}

fn opt(x: &Option<crate::arith::Rational>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}
