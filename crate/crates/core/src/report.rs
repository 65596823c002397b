//! Per-diagram verification reports.

use crate::error::Result;
use crate::tensor::{compare_paths, maps_equal, Comparison, DiagramPath, LinearMap, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// One named diagram or property with its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramReport {
    pub name: String,
    pub status: Status,
    pub witness: Option<Witness>,
    /// Number of basis elements on which the two sides differ.
    pub mismatches: usize,
    pub note: Option<String>,
}

/// Outcome of one check: a verdict plus the diagrams that support it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub subject: String,
    /// The claim the verdict answers, e.g. "twisted product is a bialgebra".
    pub claim: String,
    pub verdict: Status,
    pub diagrams: Vec<DiagramReport>,
    pub notes: Vec<String>,
    /// The mathematical statement the check exercises.
    pub citation: String,
}

impl Report {
    pub fn new(subject: impl Into<String>, claim: impl Into<String>, citation: impl Into<String>) -> Report {
        Report {
            subject: subject.into(),
            claim: claim.into(),
            verdict: Status::Pass,
            diagrams: Vec::new(),
            notes: Vec::new(),
            citation: citation.into(),
        }
    }

    pub fn push_comparison(&mut self, name: impl Into<String>, cmp: Comparison) -> bool {
        let ok = cmp.holds();
        self.diagrams.push(DiagramReport {
            name: name.into(),
            status: Status::from_bool(ok),
            witness: cmp.witness,
            mismatches: cmp.mismatches,
            note: None,
        });
        ok
    }

    /// Compares two parallel paths and records the outcome.
    pub fn push_paths(&mut self, name: impl Into<String>, left: &DiagramPath, right: &DiagramPath) -> Result<bool> {
        let cmp = compare_paths(left, right)?;
        Ok(self.push_comparison(name, cmp))
    }

    pub fn push_maps(&mut self, name: impl Into<String>, left: &LinearMap, right: &LinearMap) -> Result<bool> {
        let cmp = maps_equal(left, right)?;
        Ok(self.push_comparison(name, cmp))
    }

    pub fn push_flag(&mut self, name: impl Into<String>, ok: bool, note: Option<String>) -> bool {
        self.diagrams.push(DiagramReport {
            name: name.into(),
            status: Status::from_bool(ok),
            witness: None,
            mismatches: usize::from(!ok),
            note,
        });
        ok
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Appends another report's diagrams under a prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut d in other.diagrams {
            d.name = format!("{prefix}: {}", d.name);
            self.diagrams.push(d);
        }
        self.notes.extend(other.notes);
    }

    pub fn all_pass(&self) -> bool {
        self.diagrams.iter().all(|d| d.status.is_pass())
    }

    pub fn diagram(&self, name: &str) -> Option<&DiagramReport> {
        self.diagrams.iter().find(|d| d.name == name)
    }

    /// True when the named diagram exists and passed.
    pub fn passed(&self, name: &str) -> bool {
        self.diagram(name).is_some_and(|d| d.status.is_pass())
    }

    /// Sets the verdict to whether every recorded diagram passed.
    pub fn conclude(mut self) -> Report {
        self.verdict = Status::from_bool(self.all_pass());
        self
    }

    pub fn conclude_with(mut self, ok: bool) -> Report {
        self.verdict = Status::from_bool(ok);
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict.is_pass()
    }
}
