use crate::error::{Error, Result};
use crate::report::Report;
use crate::structures::{
    check_algebra, id, path, tensor, AlgebraData, CoalgebraData, SeparabilitySection,
};
use crate::tensor::{left_unitor, left_unitor_inv, maps_equal, tensor_space, LinearMap, Space, Stage};

use super::checks::require_algebra;
use super::TwistingMap;

/// A⊗_τB, optionally with the coalgebra induced from coalgebras on A and B.
#[derive(Clone, Debug)]
pub struct TwistedAlgebra {
    pub twist: TwistingMap,
    pub algebra: AlgebraData,
    pub coalgebra: Option<CoalgebraData>,
}

/// ∇ = (∇_A⊗∇_B)(1⊗τ⊗1), η = η_A⊗η_B; with coalgebras Δ = (1⊗τ⁻¹⊗1)(Δ_A⊗Δ_B), ε = ε_A⊗ε_B.
pub fn build_twisted_algebra(
    t: &TwistingMap,
    coalgebras: Option<(&CoalgebraData, &CoalgebraData)>,
) -> Result<TwistedAlgebra> {
    if t.verified() != Some(true) {
        return Err(Error::UncheckedTwist);
    }
    let (a, b) = (&t.a.space, &t.b.space);
    let k = Space::ground(a.field());
    let ab = tensor_space(a, b)?;
    let mul = path(vec![
        tensor(vec![id(a), Stage::from(t.map()), id(b)])?,
        tensor(vec![Stage::from(&t.a.mul), Stage::from(&t.b.mul)])?,
    ])?
    .materialize()?;
    let unit = path(vec![
        Stage::from(left_unitor_inv(&k)),
        tensor(vec![Stage::from(&t.a.unit), Stage::from(&t.b.unit)])?,
    ])?
    .materialize()?;
    let algebra = AlgebraData::new(&ab, mul, unit)?;
    require_algebra(check_algebra(&algebra)?)?;
    let coalgebra = match coalgebras {
        Some((ca, cb)) => Some(induced_coalgebra(t, ca, cb)?),
        None => None,
    };
    Ok(TwistedAlgebra {
        twist: t.clone(),
        algebra,
        coalgebra,
    })
}

pub(crate) fn induced_coalgebra(t: &TwistingMap, ca: &CoalgebraData, cb: &CoalgebraData) -> Result<CoalgebraData> {
    let (a, b) = (&t.a.space, &t.b.space);
    let k = Space::ground(a.field());
    let comul = path(vec![
        tensor(vec![Stage::from(&ca.comul), Stage::from(&cb.comul)])?,
        tensor(vec![id(a), Stage::from(t.inverse()?), id(b)])?,
    ])?
    .materialize()?;
    let counit = path(vec![
        tensor(vec![Stage::from(&ca.counit), Stage::from(&cb.counit)])?,
        Stage::from(left_unitor(&k)),
    ])?
    .materialize()?;
    CoalgebraData::new(&tensor_space(a, b)?, comul, counit)
}

/// Γ = (1⊗τ⁻¹⊗1)(Γ_A⊗Γ_B).
pub(crate) fn transferred_section(
    t: &TwistingMap,
    ga: &SeparabilitySection,
    gb: &SeparabilitySection,
) -> Result<SeparabilitySection> {
    let (a, b) = (&t.a.space, &t.b.space);
    let gamma = path(vec![
        tensor(vec![Stage::from(&ga.gamma), Stage::from(&gb.gamma)])?,
        tensor(vec![id(a), Stage::from(t.inverse()?), id(b)])?,
    ])?
    .materialize()?;
    Ok(SeparabilitySection { gamma })
}

/// τ_{i,j} : B^{⊗i}⊗A^{⊗j} → A^{⊗j}⊗B^{⊗i} with the report of its consistency checks.
#[derive(Clone, Debug)]
pub struct IteratedTwist {
    pub map: LinearMap,
    pub report: Report,
}

fn power(v: &Space, n: usize) -> Vec<Space> {
    vec![v.clone(); n]
}

fn ids(spaces: &[Space]) -> Vec<Stage> {
    spaces.iter().map(id).collect()
}

/// Tensor of the given stages; a single stage stays as is.
fn row(parts: Vec<Stage>) -> Result<Stage> {
    if parts.len() == 1 {
        return Ok(parts.into_iter().next().expect("one part"));
    }
    tensor(parts)
}

/// τ_{B,j} : B⊗A^{⊗j} → A^{⊗j}⊗B, moving one b rightwards past j factors.
fn past_a(t: &TwistingMap, j: usize) -> Result<Stage> {
    let a = &t.a.space;
    let tau = Stage::from(t.map());
    let mut stages = Vec::new();
    for p in 0..j {
        let mut parts = ids(&power(a, p));
        parts.push(tau.clone());
        parts.extend(ids(&power(a, j - p - 1)));
        stages.push(row(parts)?);
    }
    Ok(Stage::from(path(stages)?))
}

/// τ_{i,A} : B^{⊗i}⊗A → A⊗B^{⊗i}, moving one a leftwards past i factors.
fn past_b(t: &TwistingMap, i: usize) -> Result<Stage> {
    let b = &t.b.space;
    let tau = Stage::from(t.map());
    let mut stages = Vec::new();
    for p in (0..i).rev() {
        let mut parts = ids(&power(b, p));
        parts.push(tau.clone());
        parts.extend(ids(&power(b, i - p - 1)));
        stages.push(row(parts)?);
    }
    Ok(Stage::from(path(stages)?))
}

/// Moves the B factors one at a time, last first.
fn by_b_factors(t: &TwistingMap, i: usize, j: usize) -> Result<crate::tensor::DiagramPath> {
    let b = &t.b.space;
    let step = past_a(t, j)?;
    let mut stages = Vec::new();
    for p in (0..i).rev() {
        let mut parts = ids(&power(b, p));
        parts.push(step.clone());
        parts.extend(ids(&power(b, i - p - 1)));
        stages.push(row(parts)?);
    }
    path(stages)
}

/// Moves the A factors one at a time, first first.
fn by_a_factors(t: &TwistingMap, i: usize, j: usize) -> Result<crate::tensor::DiagramPath> {
    let a = &t.a.space;
    let step = past_b(t, i)?;
    let mut stages = Vec::new();
    for p in 0..j {
        let mut parts = ids(&power(a, p));
        parts.push(step.clone());
        parts.extend(ids(&power(a, j - p - 1)));
        stages.push(row(parts)?);
    }
    path(stages)
}

/// τ_{i,j} built in both bracketings, compared, and checked against the multiplications.
pub fn iterated_twist(t: &TwistingMap, i: usize, j: usize) -> Result<IteratedTwist> {
    if i == 0 || j == 0 {
        return Err(Error::UnsupportedParameters("iterated twists need i, j ≥ 1".into()));
    }
    let (a, b) = (&t.a.space, &t.b.space);
    let mut report = Report::new(
        "iterated twist",
        format!("τ_{{{i},{j}}} is well defined"),
        "iterated twisting maps do not depend on the bracketing",
    );
    let first = by_b_factors(t, i, j)?;
    let second = by_a_factors(t, i, j)?;
    let map = first.materialize()?;
    let other = second.materialize()?;
    let cmp = maps_equal(&map, &other)?;
    if let Some(w) = &cmp.witness {
        return Err(Error::PathDisagreement(format!("at {}: {} vs {}", w.label, w.left, w.right)));
    }
    report.push_comparison("bracketings agree", cmp);
    if i + j > 2 {
        let merge_b = i >= 2;
        let merge_a = j >= 2;
        let (i2, j2) = (i - usize::from(merge_b), j - usize::from(merge_a));
        let smaller = if (i2, j2) == (1, 1) {
            Stage::from(t.map())
        } else {
            Stage::from(by_b_factors(t, i2, j2)?)
        };
        let (ma, mb) = (Stage::from(&t.a.mul), Stage::from(&t.b.mul));
        // merge the first two B factors and the last two A factors
        let mut before = Vec::new();
        if merge_b {
            before.push(mb.clone());
            before.extend(ids(&power(b, i - 2)));
        } else {
            before.extend(ids(&power(b, i)));
        }
        if merge_a {
            before.extend(ids(&power(a, j - 2)));
            before.push(ma.clone());
        } else {
            before.extend(ids(&power(a, j)));
        }
        let mut after = Vec::new();
        if merge_a {
            after.extend(ids(&power(a, j - 2)));
            after.push(ma);
        } else {
            after.extend(ids(&power(a, j)));
        }
        if merge_b {
            after.push(mb);
            after.extend(ids(&power(b, i - 2)));
        } else {
            after.extend(ids(&power(b, i)));
        }
        let ok = report.push_paths(
            "multiplication square",
            &path(vec![row(before)?, smaller])?,
            &path(vec![Stage::from(&map), row(after)?])?,
        )?;
        if !ok && t.verified() == Some(true) {
            return Err(Error::InvariantViolation(
                "an iterated twist of a twisting map must commute with the multiplications".into(),
            ));
        }
    }
    Ok(IteratedTwist {
        map,
        report: report.conclude(),
    })
}
