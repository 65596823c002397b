//! Text and JSON renderings of a run.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use twistlab_core::tensor::Vector;
use twistlab_core::DiagramReport;

use crate::runner::{CheckRecord, RunReport};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Serialize)]
struct Document<'a> {
    schema: u32,
    kind: &'a str,
    source: &'a str,
    field: Option<&'a str>,
    parameters: BTreeMap<&'a str, &'a str>,
    checks: Vec<CheckDoc<'a>>,
    summary: Summary,
}

#[derive(Serialize)]
struct CheckDoc<'a> {
    check: &'a str,
    arguments: &'a [String],
    subject: Option<&'a str>,
    claim: Option<&'a str>,
    status: &'a str,
    expected: Option<&'a str>,
    met: bool,
    citation: Option<&'a str>,
    diagrams: Vec<DiagramDoc<'a>>,
    notes: &'a [String],
    error: Option<&'a str>,
}

#[derive(Serialize)]
struct DiagramDoc<'a> {
    name: &'a str,
    status: &'a str,
    mismatches: usize,
    witness: Option<WitnessDoc>,
    note: Option<&'a str>,
}

#[derive(Serialize)]
struct WitnessDoc {
    basis: String,
    left: Vec<(String, String)>,
    right: Vec<(String, String)>,
}

#[derive(Serialize)]
struct Summary {
    total: usize,
    passed: usize,
    failed: usize,
    errors: usize,
    expectations_met: bool,
}

fn summary(run: &RunReport) -> Summary {
    let count = |s: &str| run.records.iter().filter(|r| r.status().as_str() == s).count();
    Summary {
        total: run.records.len(),
        passed: count("pass"),
        failed: count("fail"),
        errors: count("error"),
        expectations_met: run.expectations_met(),
    }
}

fn diagram_doc(d: &DiagramReport) -> DiagramDoc<'_> {
    DiagramDoc {
        name: &d.name,
        status: d.status.as_str(),
        mismatches: d.mismatches,
        witness: d.witness.as_ref().map(|w| WitnessDoc {
            basis: w.label.to_string(),
            left: w.left.terms(),
            right: w.right.terms(),
        }),
        note: d.note.as_deref(),
    }
}

fn check_doc(r: &CheckRecord) -> CheckDoc<'_> {
    let report = r.outcome.as_ref().ok();
    CheckDoc {
        check: &r.check,
        arguments: &r.arguments,
        subject: report.map(|x| x.subject.as_str()),
        claim: report.map(|x| x.claim.as_str()),
        status: r.status().as_str(),
        expected: r.expected.map(|e| e.as_str()),
        met: r.met(),
        citation: report.map(|x| x.citation.as_str()),
        diagrams: report.map(|x| x.diagrams.iter().map(diagram_doc).collect()).unwrap_or_default(),
        notes: report.map(|x| x.notes.as_slice()).unwrap_or_default(),
        error: r.outcome.as_ref().err().map(String::as_str),
    }
}

/// Pretty JSON; the same run always renders to the same bytes.
pub fn render_json(run: &RunReport) -> String {
    let doc = Document {
        schema: SCHEMA,
        kind: run.kind,
        source: &run.source,
        field: run.field.as_deref(),
        parameters: run.parameters.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect(),
        checks: run.records.iter().map(check_doc).collect(),
        summary: summary(run),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
    out.push('\n');
    out
}

fn vector_text(v: &Vector) -> String {
    let s = v.to_string();
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

/// An aligned table, one row per check, with failing diagrams spelled out below their row.
pub fn render_text(run: &RunReport) -> String {
    let mut out = String::new();
    let _ = write!(out, "{} {}", run.kind, run.source);
    if let Some(f) = &run.field {
        let _ = write!(out, " over {f}");
    }
    out.push('\n');
    for (k, v) in &run.parameters {
        let _ = writeln!(out, "  {k} = {v}");
    }
    let title = |r: &CheckRecord| {
        if r.arguments.is_empty() {
            r.check.clone()
        } else {
            format!("{}({})", r.check, r.arguments.join(", "))
        }
    };
    let width = run.records.iter().map(|r| title(r).chars().count()).max().unwrap_or(0);
    for r in &run.records {
        let t = title(r);
        let pad = width - t.chars().count();
        let expected = r.expected.map_or(String::new(), |e| format!(" expected {}", e.as_str()));
        let mark = if r.met() { "ok" } else { "UNMET" };
        let _ = writeln!(
            out,
            "{t}{} {:<5} {:<5}{expected}  {:.1?}",
            " ".repeat(pad),
            r.status().as_str(),
            mark,
            r.elapsed
        );
        match &r.outcome {
            Ok(report) => {
                let _ = writeln!(out, "    claim: {}", report.claim);
                if !report.citation.is_empty() {
                    let _ = writeln!(out, "    statement: {}", report.citation);
                }
                for d in report.diagrams.iter().filter(|d| !d.status.is_pass()) {
                    let _ = writeln!(out, "    fails: {} ({} mismatches)", d.name, d.mismatches);
                    if let Some(w) = &d.witness {
                        let _ = writeln!(out, "      at {}", w.label);
                        let _ = writeln!(out, "      left  = {}", vector_text(&w.left));
                        let _ = writeln!(out, "      right = {}", vector_text(&w.right));
                    }
                    if let Some(n) = &d.note {
                        let _ = writeln!(out, "      {n}");
                    }
                }
                for n in &report.notes {
                    let _ = writeln!(out, "    note: {n}");
                }
            }
            Err(e) => {
                let _ = writeln!(out, "    error: {e}");
            }
        }
    }
    let s = summary(run);
    let _ = writeln!(
        out,
        "{} checks: {} pass, {} fail, {} error; expectations {}",
        s.total,
        s.passed,
        s.failed,
        s.errors,
        if s.expectations_met { "met" } else { "NOT met" }
    );
    out
}

pub fn render(run: &RunReport, format: Format) -> String {
    match format {
        Format::Text => render_text(run),
        Format::Json => render_json(run),
    }
}
