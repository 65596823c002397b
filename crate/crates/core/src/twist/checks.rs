use crate::error::{Error, Result};
use crate::report::Report;
use crate::structures::{
    check_bialgebra, check_coalgebra, check_separable, check_special, id, path, tensor,
    CoalgebraData, FrobeniusData, SeparabilitySection,
};
use crate::tensor::{DiagramPath, Space, Stage, Vector};

use super::product::{build_twisted_algebra, transferred_section};
use super::TwistingMap;

fn flip(first: &Space, second: &Space) -> Result<Stage> {
    Stage::permute(&[first.clone(), second.clone()], &[1, 0])
}

fn ground(t: &TwistingMap) -> Space {
    Space::ground(t.a.space.field())
}

/// Unit squares, the multiplication hexagon and the two one-sided multiplication squares.
pub fn check_twisting(t: &TwistingMap) -> Result<Report> {
    let (a, b, k) = (&t.a.space, &t.b.space, ground(t));
    let tau = Stage::from(t.map());
    let (ma, mb) = (Stage::from(&t.a.mul), Stage::from(&t.b.mul));
    let (ua, ub) = (Stage::from(&t.a.unit), Stage::from(&t.b.unit));
    let mut r = Report::new("twisting map", "τ is a twisting map", "twisting map axioms: unit squares and multiplication hexagon");
    let bijective = r.push_flag(
        "bijective",
        t.is_bijective(),
        (!t.is_bijective()).then(|| "τ has no inverse".to_string()),
    );
    let unit_a = r.push_paths(
        "unit square A",
        &path(vec![tensor(vec![id(b), ua.clone()])?, tau.clone()])?,
        &path(vec![flip(b, &k)?, tensor(vec![ua, id(b)])?])?,
    )?;
    let unit_b = r.push_paths(
        "unit square B",
        &path(vec![tensor(vec![ub.clone(), id(a)])?, tau.clone()])?,
        &path(vec![flip(&k, a)?, tensor(vec![id(a), ub])?])?,
    )?;
    let hex = r.push_paths(
        "multiplication hexagon",
        &path(vec![tensor(vec![mb.clone(), ma.clone()])?, tau.clone()])?,
        &path(vec![
            tensor(vec![id(b), tau.clone(), id(a)])?,
            tensor(vec![tau.clone(), tau.clone()])?,
            tensor(vec![id(a), tau.clone(), id(b)])?,
            tensor(vec![ma.clone(), mb.clone()])?,
        ])?,
    )?;
    let sq_a = r.push_paths(
        "A multiplication square",
        &path(vec![tensor(vec![id(b), ma.clone()])?, tau.clone()])?,
        &path(vec![
            tensor(vec![tau.clone(), id(a)])?,
            tensor(vec![id(a), tau.clone()])?,
            tensor(vec![ma, id(b)])?,
        ])?,
    )?;
    let sq_b = r.push_paths(
        "B multiplication square",
        &path(vec![tensor(vec![mb.clone(), id(a)])?, tau.clone()])?,
        &path(vec![
            tensor(vec![id(b), tau.clone()])?,
            tensor(vec![tau, id(b)])?,
            tensor(vec![id(a), mb])?,
        ])?,
    )?;
    let units = unit_a && unit_b;
    if (units && hex) != (units && sq_a && sq_b) {
        return Err(Error::InvariantViolation(
            "with the unit squares, the hexagon must agree with the two multiplication squares".into(),
        ));
    }
    let ok = bijective && units && hex;
    t.record_twisting(ok);
    Ok(r.conclude_with(ok))
}

/// Counit squares, the comultiplication hexagon and the two one-sided comultiplication squares.
pub fn check_coalgebra_compat(t: &TwistingMap, ca: &CoalgebraData, cb: &CoalgebraData) -> Result<Report> {
    let (a, b, k) = (&t.a.space, &t.b.space, ground(t));
    if &ca.space != a || &cb.space != b {
        return Err(Error::ShapeMismatch("coalgebras live on different spaces than the algebras".into()));
    }
    let tau = Stage::from(t.map());
    let (da, db) = (Stage::from(&ca.comul), Stage::from(&cb.comul));
    let (ea, eb) = (Stage::from(&ca.counit), Stage::from(&cb.counit));
    let mut r = Report::new(
        "twisting map",
        "τ is compatible with the coalgebras",
        "counit squares and comultiplication hexagon for a twisting map",
    );
    let counit_a = r.push_paths(
        "counit square A",
        &path(vec![tau.clone(), tensor(vec![ea.clone(), id(b)])?])?,
        &path(vec![tensor(vec![id(b), ea])?, flip(b, &k)?])?,
    )?;
    let counit_b = r.push_paths(
        "counit square B",
        &path(vec![tau.clone(), tensor(vec![id(a), eb.clone()])?])?,
        &path(vec![tensor(vec![eb, id(a)])?, flip(&k, a)?])?,
    )?;
    let hex = r.push_paths(
        "comultiplication hexagon",
        &path(vec![tau.clone(), tensor(vec![da.clone(), db.clone()])?])?,
        &path(vec![
            tensor(vec![db.clone(), da.clone()])?,
            tensor(vec![id(b), tau.clone(), id(a)])?,
            tensor(vec![tau.clone(), tau.clone()])?,
            tensor(vec![id(a), tau.clone(), id(b)])?,
        ])?,
    )?;
    let sq_a = r.push_paths(
        "A comultiplication square",
        &path(vec![tau.clone(), tensor(vec![da.clone(), id(b)])?])?,
        &path(vec![
            tensor(vec![id(b), da])?,
            tensor(vec![tau.clone(), id(a)])?,
            tensor(vec![id(a), tau.clone()])?,
        ])?,
    )?;
    let sq_b = r.push_paths(
        "B comultiplication square",
        &path(vec![tau.clone(), tensor(vec![id(a), db.clone()])?])?,
        &path(vec![
            tensor(vec![db, id(a)])?,
            tensor(vec![id(b), tau.clone()])?,
            tensor(vec![tau, id(b)])?,
        ])?,
    )?;
    let counits = counit_a && counit_b;
    if counits && hex != (sq_a && sq_b) {
        return Err(Error::InvariantViolation(
            "with the counit squares, the comultiplication hexagon must agree with the two comultiplication squares".into(),
        ));
    }
    if t.is_bijective() {
        let induced = super::product::induced_coalgebra(t, ca, cb)?;
        let coalgebra = check_coalgebra(&induced)?.holds();
        r.push_flag(
            "induced coalgebra",
            coalgebra,
            Some("(1⊗τ⁻¹⊗1)(Δ_A⊗Δ_B) with ε_A⊗ε_B".into()),
        );
        if coalgebra != (counits && hex) {
            return Err(Error::InvariantViolation(
                "the induced coalgebra must be counital and coassociative exactly when the counit squares and hexagon commute".into(),
            ));
        }
    } else {
        r.note("τ is not bijective, so no induced comultiplication");
    }
    Ok(r.conclude_with(counits && hex))
}

/// Decides whether A⊗_τB with the induced coalgebra is a bialgebra, for bialgebras A and B.
pub fn check_bialgebra_obstruction(t: &TwistingMap, ca: &CoalgebraData, cb: &CoalgebraData) -> Result<Report> {
    if !check_bialgebra(&t.a, ca)?.holds() || !check_bialgebra(&t.b, cb)?.holds() {
        return Err(Error::NotBialgebraInputs);
    }
    let product = build_twisted_algebra(t, Some((ca, cb)))?;
    let coalgebra = product.coalgebra.as_ref().expect("coalgebras supplied");
    let (a, b) = (&t.a.space, &t.b.space);
    let (da, db) = (Stage::from(&ca.comul), Stage::from(&cb.comul));
    let inv = Stage::from(t.inverse()?);
    let tau = Stage::from(t.map());
    let mut r = Report::new(
        "twisted tensor product",
        "twisted product is a bialgebra",
        "a twisted tensor product of bialgebras is a bialgebra only for the trivial twist",
    );
    let co = check_coalgebra(coalgebra)?;
    let bialgebra = check_bialgebra(&product.algebra, coalgebra)?;
    let is_bialgebra = co.holds() && bialgebra.holds();
    r.absorb("coalgebra", co);
    r.absorb("bialgebra", bialgebra);
    let trivial = t.is_trivial()?;
    r.push_flag("τ is the flip", trivial, None);
    let sq_ab = r.push_paths(
        "obstruction square AB",
        &path(vec![tensor(vec![da.clone(), db.clone()])?, tensor(vec![id(a), inv, id(b)])?])?,
        &path(vec![
            tensor(vec![da.clone(), db.clone()])?,
            Stage::permute(&[a.clone(), a.clone(), b.clone(), b.clone()], &[0, 2, 1, 3])?,
        ])?,
    )?;
    let sq_ba = r.push_paths(
        "obstruction square BA",
        &path(vec![tensor(vec![db.clone(), da.clone()])?, tensor(vec![id(b), tau, id(a)])?])?,
        &path(vec![
            tensor(vec![db, da])?,
            Stage::permute(&[b.clone(), b.clone(), a.clone(), a.clone()], &[0, 2, 1, 3])?,
        ])?,
    )?;
    if is_bialgebra && !(sq_ab && sq_ba) {
        return Err(Error::InvariantViolation("a bialgebra twisted product must satisfy both obstruction squares".into()));
    }
    if is_bialgebra != trivial {
        return Err(Error::InvariantViolation(
            "the twisted product of bialgebras must be a bialgebra exactly for the flip".into(),
        ));
    }
    Ok(r.conclude_with(is_bialgebra))
}

/// Left and right images of one element, and their difference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointwiseDifference {
    pub element: Vector,
    pub left: Vector,
    pub right: Vector,
    pub difference: Vector,
}

impl PointwiseDifference {
    pub fn differs(&self) -> bool {
        !self.difference.is_zero()
    }
}

/// Evaluates two paths on one element; undefined columns of partial stages are errors.
pub fn pointwise_difference(left: &DiagramPath, right: &DiagramPath, element: &Vector) -> Result<PointwiseDifference> {
    let l = left.evaluate(element)?;
    let r = right.evaluate(element)?;
    if l.space() != r.space() {
        return Err(Error::ShapeMismatch("paths end in different spaces".into()));
    }
    Ok(PointwiseDifference {
        element: element.clone(),
        difference: l.sub(&r)?,
        left: l,
        right: r,
    })
}

/// A report whose verdict is "the paths differ at this element".
pub fn check_pointwise_counterexample(
    name: &str,
    left: &DiagramPath,
    right: &DiagramPath,
    element: &Vector,
) -> Result<(Report, PointwiseDifference)> {
    let d = pointwise_difference(left, right, element)?;
    let mut r = Report::new(
        name,
        "the diagram fails at the probe element",
        "a twisting map on truncations fails the comultiplication hexagon",
    );
    r.push_flag(
        format!("paths agree at {}", element),
        !d.differs(),
        Some(format!("left {} ; right {} ; difference {}", d.left, d.right, d.difference)),
    );
    Ok((r.conclude_with(d.differs()), d))
}

fn require_sections(t: &TwistingMap, ga: &SeparabilitySection, gb: &SeparabilitySection) -> Result<()> {
    if !check_separable(&t.a, ga)?.holds() || !check_separable(&t.b, gb)?.holds() {
        return Err(Error::NotSeparableInputs);
    }
    Ok(())
}

/// Section squares for Γ_A and Γ_B, against separability of A⊗_τB with the transferred section.
pub fn check_separability_transfer(
    t: &TwistingMap,
    ga: &SeparabilitySection,
    gb: &SeparabilitySection,
) -> Result<Report> {
    require_sections(t, ga, gb)?;
    let (a, b) = (&t.a.space, &t.b.space);
    let tau = Stage::from(t.map());
    let (sa, sb) = (Stage::from(&ga.gamma), Stage::from(&gb.gamma));
    let mut r = Report::new(
        "twisted tensor product",
        "twisted product is separable with the transferred section",
        "separability transfers along a twist exactly when the section squares commute",
    );
    let sq_a = r.push_paths(
        "section square A",
        &path(vec![tau.clone(), tensor(vec![sa.clone(), id(b)])?])?,
        &path(vec![
            tensor(vec![id(b), sa])?,
            tensor(vec![tau.clone(), id(a)])?,
            tensor(vec![id(a), tau.clone()])?,
        ])?,
    )?;
    let sq_b = r.push_paths(
        "section square B",
        &path(vec![tau.clone(), tensor(vec![id(a), sb.clone()])?])?,
        &path(vec![
            tensor(vec![sb, id(a)])?,
            tensor(vec![id(b), tau.clone()])?,
            tensor(vec![tau, id(b)])?,
        ])?,
    )?;
    let product = build_twisted_algebra(t, None)?;
    let gamma = transferred_section(t, ga, gb)?;
    let sep = check_separable(&product.algebra, &gamma)?;
    let separable = sep.holds();
    r.absorb("twisted product", sep);
    if separable != (sq_a && sq_b) {
        return Err(Error::InvariantViolation(
            "the transferred section must work exactly when both section squares commute".into(),
        ));
    }
    Ok(r.conclude_with(separable))
}

/// Special Frobenius structure on A⊗_τB inherited from special A and B.
pub fn check_special_transfer(t: &TwistingMap, fa: &FrobeniusData, fb: &FrobeniusData) -> Result<Report> {
    if !check_special(fa)?.holds() || !check_special(fb)?.holds() {
        return Err(Error::NotSpecialInputs);
    }
    let inherited = super::frobenius::inherit_frobenius(t, fa, fb)?;
    let mut r = Report::new(
        "twisted tensor product",
        "twisted product is special Frobenius",
        "special Frobenius structure transfers along a twist compatible with both structures",
    );
    let sp = check_special(&inherited)?;
    let ok = sp.holds();
    r.absorb("inherited structure", sp);
    Ok(r.conclude_with(ok))
}

pub(crate) fn require_algebra(report: Report) -> Result<()> {
    if !report.holds() {
        return Err(Error::InvariantViolation(
            "the twisted product of a twisting map is not a unital associative algebra".into(),
        ));
    }
    Ok(())
}
