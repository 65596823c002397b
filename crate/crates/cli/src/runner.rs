//! Resolves and runs the checks of a scenario.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use twistlab_core::gallery::{frobenius_roundtrip, DemoOutcome};
use twistlab_core::structures::{
    check_algebra, check_bialgebra, check_coalgebra, check_frobenius, check_nondegenerate, check_separable,
    check_special, check_symmetric, pairing_from_frobenius, AlgebraData, CoalgebraData, FrobeniusData,
    SeparabilitySection,
};
use twistlab_core::twist::{
    build_twisted_algebra, check_bialgebra_obstruction, check_coalgebra_compat, check_frobenius_inheritance,
    check_nakayama_candidates, check_separability_transfer, check_special_transfer, check_twisting, iterated_twist,
    twisted_pairing, TwistingMap,
};
use twistlab_core::{Error, Report, Status};

use crate::error::InputError;
use crate::scenario::{locate, CheckEntry, Expected, Scenario};
use crate::workspace::Workspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Algebra,
    Coalgebra,
    Section,
    Twist,
}

impl Kind {
    fn as_str(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Coalgebra => "coalgebra",
            Kind::Section => "section",
            Kind::Twist => "twist",
        }
    }
}

use Kind::{Algebra as A, Coalgebra as C, Section as S, Twist as T};

/// Check names, their argument kinds and a one-line description.
pub const CHECKS: &[(&str, &[Kind], &str)] = &[
    ("algebra", &[A], "associativity and unit laws"),
    ("coalgebra", &[C], "coassociativity and counit laws"),
    ("bialgebra", &[A, C], "comultiplication and counit are algebra maps"),
    ("frobenius", &[A, C], "comultiplication is a bimodule map"),
    ("nondegenerate", &[A, C], "the pairing ε∇ is non-degenerate"),
    ("symmetric", &[A, C], "the pairing ε∇ is symmetric"),
    ("special", &[A, C], "∇Δ = id"),
    ("separable", &[A, S], "the section splits the multiplication as a bimodule map"),
    ("pairing-roundtrip", &[A, C], "(Δ, ε) is recovered from its pairing"),
    ("twisting", &[T], "bijectivity, unit squares and the multiplication hexagon"),
    ("coalgebra-compat", &[T, C, C], "counit squares and the comultiplication hexagon"),
    ("twisted-bialgebra", &[T, C, C], "the twisted product with the induced coalgebra is a bialgebra"),
    ("bialgebra-obstruction", &[T, C, C], "a twisted product of bialgebras is a bialgebra only for the flip"),
    ("frobenius-inheritance", &[T, C, C], "the twisted product inherits the Frobenius structure"),
    ("twisted-symmetric", &[T, C, C], "the inherited pairing is symmetric"),
    ("nakayama-candidates", &[T, C, C], "both candidate Nakayama diagrams commute"),
    ("separability-transfer", &[T, S, S], "the transferred section makes the twisted product separable"),
    ("special-transfer", &[T, C, C], "the twisted product is special Frobenius"),
    ("iterated-twist", &[T], "τ_{i,j} is well defined and compatible with the multiplications"),
];

/// One executed check.
#[derive(Clone, Debug)]
pub struct CheckRecord {
    pub check: String,
    pub arguments: Vec<String>,
    pub expected: Option<Expected>,
    pub outcome: Result<Report, String>,
    pub elapsed: Duration,
}

impl CheckRecord {
    pub fn status(&self) -> Expected {
        match &self.outcome {
            Ok(r) if r.holds() => Expected::Pass,
            Ok(_) => Expected::Fail,
            Err(_) => Expected::Error,
        }
    }

    /// The expectation, or "pass" when none is given.
    pub fn met(&self) -> bool {
        self.status() == self.expected.unwrap_or(Expected::Pass)
    }
}

/// The outcome of a scenario or demo, in declaration order.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub kind: &'static str,
    pub source: String,
    pub field: Option<String>,
    pub parameters: Vec<(String, String)>,
    pub records: Vec<CheckRecord>,
}

impl RunReport {
    pub fn expectations_met(&self) -> bool {
        self.records.iter().all(CheckRecord::met)
    }

    pub fn exit_code(&self) -> i32 {
        if self.expectations_met() {
            0
        } else {
            1
        }
    }
}

struct Planned<'a> {
    entry: &'a CheckEntry,
    i: usize,
    j: usize,
}

/// Resolves every check before running any, so name errors stop the run early.
fn plan<'a>(source: &str, scenario: &'a Scenario, ws: &Workspace) -> Result<Vec<Planned<'a>>, InputError> {
    let mut out = Vec::new();
    for entry in &scenario.checks {
        let Some((_, kinds, _)) = CHECKS.iter().find(|(n, _, _)| *n == entry.check) else {
            let (line, column) = locate(source, &entry.check);
            return Err(InputError::UnknownPreset {
                kind: "check",
                preset: entry.check.clone(),
                line,
                column,
            });
        };
        if entry.args.len() != kinds.len() {
            let (line, column) = locate(source, &entry.check);
            return Err(InputError::Parse {
                line,
                column,
                message: format!(
                    "check `{}` takes {} arguments ({}), got {}",
                    entry.check,
                    kinds.len(),
                    kinds.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(", "),
                    entry.args.len()
                ),
            });
        }
        for (name, kind) in entry.args.iter().zip(kinds.iter()) {
            let known = match kind {
                A => ws.algebras.contains_key(name),
                C => ws.coalgebras.contains_key(name),
                S => ws.sections.contains_key(name),
                T => ws.twists.contains_key(name),
            };
            if !known {
                let (line, column) = locate(source, name);
                return Err(InputError::NameResolution {
                    kind: kind.as_str(),
                    name: name.clone(),
                    line,
                    column,
                });
            }
        }
        let (mut i, mut j) = (2, 2);
        for (key, value) in &entry.params {
            let slot = match key.as_str() {
                "i" if entry.check == "iterated-twist" => &mut i,
                "j" if entry.check == "iterated-twist" => &mut j,
                _ => {
                    let (line, column) = locate(source, key);
                    return Err(InputError::Parse {
                        line,
                        column,
                        message: format!("check `{}` has no parameter `{key}`", entry.check),
                    });
                }
            };
            *slot = value.as_u64().filter(|&v| (1..=6).contains(&v)).ok_or_else(|| {
                let (line, column) = locate(source, key);
                InputError::Parse {
                    line,
                    column,
                    message: format!("parameter `{key}` must be an integer in 1..=6"),
                }
            })? as usize;
        }
        out.push(Planned { entry, i, j });
    }
    Ok(out)
}

/// Runs the scenario's checks, concurrently when asked; records keep declaration order.
pub fn run_scenario(
    source: &str,
    label: &str,
    scenario: &Scenario,
    ws: &Workspace,
    parallel: bool,
) -> Result<RunReport, InputError> {
    let planned = plan(source, scenario, ws)?;
    let run = |p: &Planned| run_one(ws, p);
    let results: Vec<Result<CheckRecord, InputError>> = if parallel {
        planned.par_iter().map(run).collect()
    } else {
        planned.iter().map(run).collect()
    };
    let records = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(RunReport {
        kind: "scenario",
        source: label.to_string(),
        field: Some(ws.field.to_string()),
        parameters: scenario.name.iter().map(|n| ("name".to_string(), n.clone())).collect(),
        records,
    })
}

fn run_one(ws: &Workspace, p: &Planned) -> Result<CheckRecord, InputError> {
    let start = Instant::now();
    let outcome = match execute(ws, p) {
        Ok(r) => Ok(r),
        Err(e @ Error::DimensionCap { .. }) => return Err(InputError::Core(e)),
        Err(e) => Err(e.to_string()),
    };
    Ok(CheckRecord {
        check: p.entry.check.clone(),
        arguments: p.entry.args.clone(),
        expected: p.entry.expect,
        outcome,
        elapsed: start.elapsed(),
    })
}

fn algebra(ws: &Workspace, name: &str) -> Result<AlgebraData, Error> {
    ws.algebras[name].clone()
}

fn coalgebra(ws: &Workspace, name: &str) -> Result<CoalgebraData, Error> {
    ws.coalgebras[name].clone()
}

fn section(ws: &Workspace, name: &str) -> Result<SeparabilitySection, Error> {
    ws.sections[name].clone()
}

fn twist(ws: &Workspace, name: &str) -> Result<TwistingMap, Error> {
    ws.twists[name].clone()
}

fn frobenius(a: &AlgebraData, c: CoalgebraData) -> Result<FrobeniusData, Error> {
    FrobeniusData::new(a.clone(), c)
}

fn execute(ws: &Workspace, p: &Planned) -> Result<Report, Error> {
    let args = &p.entry.args;
    let arg = |k: usize| args[k].as_str();
    let mut report = match p.entry.check.as_str() {
        "algebra" => check_algebra(&algebra(ws, arg(0))?)?,
        "coalgebra" => check_coalgebra(&coalgebra(ws, arg(0))?)?,
        "bialgebra" => check_bialgebra(&algebra(ws, arg(0))?, &coalgebra(ws, arg(1))?)?,
        "frobenius" | "nondegenerate" | "symmetric" | "special" | "pairing-roundtrip" => {
            let a = algebra(ws, arg(0))?;
            let f = frobenius(&a, coalgebra(ws, arg(1))?)?;
            match p.entry.check.as_str() {
                "frobenius" => check_frobenius(&f)?,
                "nondegenerate" => check_nondegenerate(&pairing_from_frobenius(&f)?)?,
                "symmetric" => check_symmetric(&pairing_from_frobenius(&f)?)?,
                "special" => check_special(&f)?,
                _ => frobenius_roundtrip(arg(0), &f)?,
            }
        }
        "separable" => check_separable(&algebra(ws, arg(0))?, &section(ws, arg(1))?)?,
        "twisting" => check_twisting(&twist(ws, arg(0))?)?,
        "iterated-twist" => iterated_twist(&twist(ws, arg(0))?, p.i, p.j)?.report,
        "separability-transfer" => {
            check_separability_transfer(&twist(ws, arg(0))?, &section(ws, arg(1))?, &section(ws, arg(2))?)?
        }
        name => {
            let t = twist(ws, arg(0))?;
            let (ca, cb) = (coalgebra(ws, arg(1))?, coalgebra(ws, arg(2))?);
            match name {
                "coalgebra-compat" => check_coalgebra_compat(&t, &ca, &cb)?,
                "bialgebra-obstruction" => check_bialgebra_obstruction(&t, &ca, &cb)?,
                "twisted-bialgebra" => {
                    let product = build_twisted_algebra(&t, Some((&ca, &cb)))?;
                    let co = product.coalgebra.expect("coalgebras supplied");
                    let mut r = check_bialgebra(&product.algebra, &co)?;
                    r.subject = "twisted tensor product".into();
                    r
                }
                _ => {
                    let (fa, fb) = (frobenius(&t.a, ca)?, frobenius(&t.b, cb)?);
                    match name {
                        "frobenius-inheritance" => check_frobenius_inheritance(&t, &fa, &fb)?,
                        "twisted-symmetric" => {
                            let mut r = check_symmetric(&twisted_pairing(&t, &fa, &fb)?)?;
                            r.subject = "twisted tensor product".into();
                            r
                        }
                        "nakayama-candidates" => check_nakayama_candidates(&t, &fa, &fb)?,
                        "special-transfer" => check_special_transfer(&t, &fa, &fb)?,
                        other => unreachable!("unplanned check {other}"),
                    }
                }
            }
        }
    };
    if report.subject.is_empty() {
        report.subject = args.join(", ");
    }
    Ok(report)
}

/// A demo outcome in the same record form as a scenario run.
pub fn demo_report(outcome: DemoOutcome, elapsed: Duration) -> RunReport {
    let n = outcome.checks.len().max(1) as u32;
    let records = outcome
        .checks
        .into_iter()
        .map(|c| CheckRecord {
            check: c.report.subject.clone(),
            arguments: Vec::new(),
            expected: c.expected.map(|s| match s {
                Status::Pass => Expected::Pass,
                Status::Fail => Expected::Fail,
            }),
            outcome: Ok(c.report),
            elapsed: elapsed / n,
        })
        .collect();
    RunReport {
        kind: "demo",
        source: outcome.name,
        field: outcome.parameters.get("field").cloned(),
        parameters: outcome.parameters.into_iter().collect(),
        records,
    }
}
