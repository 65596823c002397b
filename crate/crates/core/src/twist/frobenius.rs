use crate::error::{Error, Result};
use crate::report::Report;
use crate::structures::{
    check_coalgebra, check_frobenius, copairing_from_frobenius, id, nakayama_from_pairing, pairing_from_frobenius, path, tensor,
    Copairing, FrobeniusData, Pairing,
};
use crate::tensor::{
    compose, left_unitor, left_unitor_inv, maps_equal, tensor_map, tensor_space, Space, Stage,
};

use super::checks::check_coalgebra_compat;
use super::product::build_twisted_algebra;
use super::TwistingMap;

fn require_frobenius(fa: &FrobeniusData, fb: &FrobeniusData) -> Result<()> {
    if !check_frobenius(fa)?.holds() || !check_frobenius(fb)?.holds() {
        return Err(Error::NotFrobeniusInputs);
    }
    Ok(())
}

/// Checks whether τ is compatible with both Frobenius structures, and that compatibility
/// decides whether the induced structure on A⊗_τB is Frobenius.
pub fn check_frobenius_inheritance(t: &TwistingMap, fa: &FrobeniusData, fb: &FrobeniusData) -> Result<Report> {
    require_frobenius(fa, fb)?;
    let mut r = Report::new(
        "twisted tensor product",
        "twisted product inherits a Frobenius structure",
        "a twisting map compatible with both Frobenius structures induces one on the twisted product",
    );
    let compat = check_coalgebra_compat(t, &fa.coalgebra, &fb.coalgebra)?;
    let compatible = compat.holds();
    r.absorb("compatibility", compat);
    let product = build_twisted_algebra(t, Some((&fa.coalgebra, &fb.coalgebra)))?;
    let coalgebra = product.coalgebra.expect("coalgebras supplied");
    if compatible {
        let f = FrobeniusData::new(product.algebra, coalgebra)?;
        let frob = check_frobenius(&f)?;
        if !frob.holds() {
            return Err(Error::InvariantViolation(
                "a compatible twist must induce a Frobenius structure".into(),
            ));
        }
        r.absorb("inherited structure", frob);
        r.note("the twisted product is Frobenius, hence self-injective");
    } else if check_coalgebra(&coalgebra)?.holds() {
        return Err(Error::InvariantViolation(
            "an incompatible twist must not induce a coalgebra".into(),
        ));
    } else {
        r.note("the induced comultiplication is not a counital coassociative coalgebra");
    }
    Ok(r.conclude_with(compatible))
}

/// The Frobenius structure on A⊗_τB, when τ is compatible with both structures.
pub fn inherit_frobenius(t: &TwistingMap, fa: &FrobeniusData, fb: &FrobeniusData) -> Result<FrobeniusData> {
    require_frobenius(fa, fb)?;
    if t.verified() != Some(true) {
        return Err(Error::UncheckedTwist);
    }
    if !check_coalgebra_compat(t, &fa.coalgebra, &fb.coalgebra)?.holds() {
        return Err(Error::NoInheritedStructure);
    }
    let product = build_twisted_algebra(t, Some((&fa.coalgebra, &fb.coalgebra)))?;
    let f = FrobeniusData::new(product.algebra, product.coalgebra.expect("coalgebras supplied"))?;
    if !check_frobenius(&f)?.holds() {
        return Err(Error::InvariantViolation("a compatible twist must induce a Frobenius structure".into()));
    }
    Ok(f)
}

/// β = (β_A⊗β_B)(1⊗τ⊗1), agreeing with ε∇ of the inherited structure.
pub fn twisted_pairing(t: &TwistingMap, fa: &FrobeniusData, fb: &FrobeniusData) -> Result<Pairing> {
    let inherited = inherit_frobenius(t, fa, fb)?;
    let (a, b) = (&t.a.space, &t.b.space);
    let k = Space::ground(a.field());
    let (ba, bb) = (pairing_from_frobenius(fa)?, pairing_from_frobenius(fb)?);
    let map = path(vec![
        tensor(vec![id(a), Stage::from(t.map()), id(b)])?,
        tensor(vec![Stage::from(&ba.map), Stage::from(&bb.map)])?,
        Stage::from(left_unitor(&k)),
    ])?
    .materialize()?;
    let beta = Pairing::new(&tensor_space(a, b)?, map)?;
    if beta != pairing_from_frobenius(&inherited)? {
        return Err(Error::InvariantViolation("twisted pairing differs from ε∇ of the inherited structure".into()));
    }
    Ok(beta)
}

/// α = (1⊗τ⁻¹⊗1)(α_A⊗α_B), agreeing with Δη of the inherited structure.
pub fn twisted_copairing(t: &TwistingMap, fa: &FrobeniusData, fb: &FrobeniusData) -> Result<Copairing> {
    let inherited = inherit_frobenius(t, fa, fb)?;
    let (a, b) = (&t.a.space, &t.b.space);
    let k = Space::ground(a.field());
    let (aa, ab) = (copairing_from_frobenius(fa)?.map, copairing_from_frobenius(fb)?.map);
    let map = path(vec![
        Stage::from(left_unitor_inv(&k)),
        tensor(vec![Stage::from(aa), Stage::from(ab)])?,
        tensor(vec![id(a), Stage::from(t.inverse()?), id(b)])?,
    ])?
    .materialize()?;
    let alpha = Copairing::new(&tensor_space(a, b)?, map)?;
    let expected = compose(&inherited.coalgebra.comul, &inherited.algebra.unit)?;
    if alpha.map != expected {
        return Err(Error::InvariantViolation("twisted copairing differs from Δη of the inherited structure".into()));
    }
    Ok(alpha)
}

/// Evaluates the two candidate Nakayama diagrams for A⊗_τB: Θ_A⊗Θ_B and τ(Θ_B⊗Θ_A)τ⁻¹.
pub fn check_nakayama_candidates(t: &TwistingMap, fa: &FrobeniusData, fb: &FrobeniusData) -> Result<Report> {
    let inherited = inherit_frobenius(t, fa, fb)?;
    let beta = twisted_pairing(t, fa, fb)?;
    let theta = nakayama_from_pairing(&inherited.algebra, &beta)?.theta;
    let ta = nakayama_from_pairing(&fa.algebra, &pairing_from_frobenius(fa)?)?.theta;
    let tb = nakayama_from_pairing(&fb.algebra, &pairing_from_frobenius(fb)?)?.theta;
    let ab = tensor_space(&t.a.space, &t.b.space)?;
    let first = tensor_map(&ta, &tb)?;
    let second = compose(t.map(), &compose(&tensor_map(&tb, &ta)?, &t.inverse()?)?)?;
    let mut r = Report::new(
        "twisted tensor product",
        "both Nakayama candidate diagrams commute",
        "candidate Nakayama automorphisms of a twisted Frobenius algebra",
    );
    let swap = Stage::permute(&[ab.clone(), ab.clone()], &[1, 0])?;
    let mut ok = true;
    for (name, cand) in [("Θ_A⊗Θ_B", &first), ("τ(Θ_B⊗Θ_A)τ⁻¹", &second)] {
        ok &= r.push_paths(
            format!("{name} diagram"),
            &path(vec![tensor(vec![Stage::from(cand), id(&ab)])?, Stage::from(&beta.map)])?,
            &path(vec![swap.clone(), Stage::from(&beta.map)])?,
        )?;
        let eq = maps_equal(cand, &theta)?.holds();
        r.note(format!("{name} equals Θ: {eq}"));
    }
    r.note(format!("Θ is the identity: {}", theta == crate::tensor::identity(&ab)));
    Ok(r.conclude_with(ok))
}
