//! Algebras, coalgebras, bialgebras and Frobenius algebras with checks of their axioms.

use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::tensor::{
    compare_paths, compose, identity, invert, left_unitor, left_unitor_inv, maps_equal, right_unitor,
    right_unitor_inv, tensor_space, transposition, DiagramPath, LinearMap, Space, Stage, Vector,
};

pub(crate) fn path(stages: Vec<Stage>) -> Result<DiagramPath> {
    DiagramPath::new(stages)
}

pub(crate) fn tensor(parts: Vec<Stage>) -> Result<Stage> {
    Stage::tensor(parts)
}

pub(crate) fn id(v: &Space) -> Stage {
    Stage::identity(v)
}

fn expect_map(f: &LinearMap, dom: &Space, cod: &Space, what: &str) -> Result<()> {
    if f.domain() != dom || f.codomain() != cod {
        return Err(Error::ShapeMismatch(format!(
            "{what} has shape {:?} -> {:?}, expected {:?} -> {:?}",
            f.domain(),
            f.codomain(),
            dom,
            cod
        )));
    }
    Ok(())
}

/// (A, ∇, η).
#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub space: Space,
    pub mul: LinearMap,
    pub unit: LinearMap,
}

impl AlgebraData {
    pub fn new(space: &Space, mul: LinearMap, unit: LinearMap) -> Result<AlgebraData> {
        let k = Space::ground(space.field());
        expect_map(&mul, &tensor_space(space, space)?, space, "multiplication")?;
        expect_map(&unit, &k, space, "unit")?;
        Ok(AlgebraData {
            space: space.clone(),
            mul,
            unit,
        })
    }

    pub fn multiply(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        self.mul.apply(&a.tensor(b)?)
    }

    /// The unit element η(1).
    pub fn one(&self) -> Vector {
        self.unit.column(0)
    }

    pub fn basis(&self, label: &str) -> Result<Vector> {
        Vector::basis_named(&self.space, label)
    }
}

/// (C, Δ, ε).
#[derive(Clone, Debug)]
pub struct CoalgebraData {
    pub space: Space,
    pub comul: LinearMap,
    pub counit: LinearMap,
}

impl CoalgebraData {
    pub fn new(space: &Space, comul: LinearMap, counit: LinearMap) -> Result<CoalgebraData> {
        let k = Space::ground(space.field());
        expect_map(&comul, space, &tensor_space(space, space)?, "comultiplication")?;
        expect_map(&counit, space, &k, "counit")?;
        Ok(CoalgebraData {
            space: space.clone(),
            comul,
            counit,
        })
    }
}

/// An algebra and a coalgebra on the same space.
#[derive(Clone, Debug)]
pub struct FrobeniusData {
    pub algebra: AlgebraData,
    pub coalgebra: CoalgebraData,
}

impl FrobeniusData {
    pub fn new(algebra: AlgebraData, coalgebra: CoalgebraData) -> Result<FrobeniusData> {
        if algebra.space != coalgebra.space {
            return Err(Error::ShapeMismatch("algebra and coalgebra live on different spaces".into()));
        }
        Ok(FrobeniusData { algebra, coalgebra })
    }

    pub fn space(&self) -> &Space {
        &self.algebra.space
    }
}

/// β : A⊗A → k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub space: Space,
    pub map: LinearMap,
}

impl Pairing {
    pub fn new(space: &Space, map: LinearMap) -> Result<Pairing> {
        let k = Space::ground(space.field());
        expect_map(&map, &tensor_space(space, space)?, &k, "pairing")?;
        Ok(Pairing {
            space: space.clone(),
            map,
        })
    }

    /// β(x⊗y).
    pub fn value(&self, x: &Vector, y: &Vector) -> Result<Scalar> {
        Ok(self.map.apply(&x.tensor(y)?)?.coefficient(0))
    }

    /// B_ij = β(e_i⊗e_j) as a map A → A with entry (i, j) = B_ij.
    fn gram(&self) -> LinearMap {
        let n = self.space.dim();
        let trip = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter_map(|(i, j)| {
            let v = self.map.entry(0, i * n + j);
            (!v.is_zero()).then_some((i, j, v))
        });
        LinearMap::from_triplets(&self.space, &self.space, trip).expect("gram shape")
    }
}

/// α : k → A⊗A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Copairing {
    pub space: Space,
    pub map: LinearMap,
}

impl Copairing {
    pub fn new(space: &Space, map: LinearMap) -> Result<Copairing> {
        let k = Space::ground(space.field());
        expect_map(&map, &k, &tensor_space(space, space)?, "copairing")?;
        Ok(Copairing {
            space: space.clone(),
            map,
        })
    }

    /// α(1).
    pub fn element(&self) -> Vector {
        self.map.column(0)
    }
}

/// A right inverse Γ : A → A⊗A of the multiplication.
#[derive(Clone, Debug)]
pub struct SeparabilitySection {
    pub gamma: LinearMap,
}

/// Which slot the Nakayama automorphism acts in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NakayamaConvention {
    /// β(x⊗y) = β(y⊗Θ(x)).
    RightSlot,
}

#[derive(Clone, Debug)]
pub struct NakayamaAuto {
    pub theta: LinearMap,
    pub convention: NakayamaConvention,
}

/// Unit squares through the unitors and the associativity square.
pub fn check_algebra(a: &AlgebraData) -> Result<Report> {
    let v = &a.space;
    let m = Stage::from(&a.mul);
    let mut r = Report::new("algebra", "unital associative algebra", "unit and associativity axioms");
    r.push_paths(
        "left unit",
        &path(vec![tensor(vec![Stage::from(&a.unit), id(v)])?, m.clone()])?,
        &path(vec![Stage::from(left_unitor(v))])?,
    )?;
    r.push_paths(
        "right unit",
        &path(vec![tensor(vec![id(v), Stage::from(&a.unit)])?, m.clone()])?,
        &path(vec![Stage::from(right_unitor(v))])?,
    )?;
    r.push_paths(
        "associativity",
        &path(vec![tensor(vec![m.clone(), id(v)])?, m.clone()])?,
        &path(vec![tensor(vec![id(v), m.clone()])?, m])?,
    )?;
    Ok(r.conclude())
}

/// Counit triangles and the coassociativity square.
pub fn check_coalgebra(c: &CoalgebraData) -> Result<Report> {
    let v = &c.space;
    let d = Stage::from(&c.comul);
    let mut r = Report::new("coalgebra", "counital coassociative coalgebra", "counit and coassociativity axioms");
    r.push_paths(
        "right counit",
        &path(vec![d.clone(), tensor(vec![id(v), Stage::from(&c.counit)])?])?,
        &path(vec![Stage::from(right_unitor_inv(v))])?,
    )?;
    r.push_paths(
        "left counit",
        &path(vec![d.clone(), tensor(vec![Stage::from(&c.counit), id(v)])?])?,
        &path(vec![Stage::from(left_unitor_inv(v))])?,
    )?;
    r.push_paths(
        "coassociativity",
        &path(vec![d.clone(), tensor(vec![d.clone(), id(v)])?])?,
        &path(vec![d.clone(), tensor(vec![id(v), d])?])?,
    )?;
    Ok(r.conclude())
}

/// The four compatibility diagrams between (∇, η) and (Δ, ε).
pub fn check_bialgebra(a: &AlgebraData, c: &CoalgebraData) -> Result<Report> {
    if a.space != c.space {
        return Err(Error::ShapeMismatch("algebra and coalgebra live on different spaces".into()));
    }
    let v = &a.space;
    let k = Space::ground(v.field());
    let (m, u, d, e) = (
        Stage::from(&a.mul),
        Stage::from(&a.unit),
        Stage::from(&c.comul),
        Stage::from(&c.counit),
    );
    let mut r = Report::new("bialgebra", "bialgebra", "bialgebra compatibility diagrams");
    r.push_paths(
        "counit multiplicative",
        &path(vec![m.clone(), e.clone()])?,
        &path(vec![tensor(vec![e.clone(), e.clone()])?, Stage::from(left_unitor(&k))])?,
    )?;
    r.push_paths(
        "comultiplication unital",
        &path(vec![u.clone(), d.clone()])?,
        &path(vec![Stage::from(left_unitor_inv(&k)), tensor(vec![u.clone(), u.clone()])?])?,
    )?;
    r.push_paths(
        "counit of unit",
        &path(vec![u, e])?,
        &path(vec![id(&k)])?,
    )?;
    let four = [v.clone(), v.clone(), v.clone(), v.clone()];
    r.push_paths(
        "multiplication and comultiplication",
        &path(vec![m.clone(), d.clone()])?,
        &path(vec![
            tensor(vec![d.clone(), d])?,
            Stage::permute(&four, &[0, 2, 1, 3])?,
            tensor(vec![m.clone(), m])?,
        ])?,
    )?;
    Ok(r.conclude())
}

/// The two squares making Δ a bimodule map.
pub fn check_frobenius(f: &FrobeniusData) -> Result<Report> {
    let v = f.space();
    let (m, d) = (Stage::from(&f.algebra.mul), Stage::from(&f.coalgebra.comul));
    let mut r = Report::new("Frobenius algebra", "Frobenius algebra", "Frobenius compatibility squares");
    r.push_paths(
        "left Frobenius square",
        &path(vec![m.clone(), d.clone()])?,
        &path(vec![tensor(vec![d.clone(), id(v)])?, tensor(vec![id(v), m.clone()])?])?,
    )?;
    r.push_paths(
        "right Frobenius square",
        &path(vec![m.clone(), d.clone()])?,
        &path(vec![tensor(vec![id(v), d])?, tensor(vec![m, id(v)])?])?,
    )?;
    Ok(r.conclude())
}

/// β = ε∘∇.
pub fn pairing_from_frobenius(f: &FrobeniusData) -> Result<Pairing> {
    Pairing::new(f.space(), compose(&f.coalgebra.counit, &f.algebra.mul)?)
}

/// α = Δ∘η.
pub fn copairing_from_frobenius(f: &FrobeniusData) -> Result<Copairing> {
    Copairing::new(f.space(), compose(&f.coalgebra.comul, &f.algebra.unit)?)
}

/// (1⊗β)(α⊗1) against the identity, through the unitors.
fn snake(beta: &Pairing, alpha: &Copairing) -> Result<crate::tensor::Comparison> {
    let v = &beta.space;
    let lhs = path(vec![
        tensor(vec![Stage::from(&alpha.map), id(v)])?,
        tensor(vec![id(v), Stage::from(&beta.map)])?,
    ])?;
    let rhs = path(vec![Stage::from(left_unitor(v)), Stage::from(right_unitor_inv(v))])?;
    compare_paths(&lhs, &rhs)
}

/// The copairing partner of β when its Gram matrix is invertible, verified by the snake identity.
pub fn nondegenerate_copairing(beta: &Pairing) -> Result<Option<Copairing>> {
    let v = &beta.space;
    let c = match invert(&beta.gram()) {
        Ok(c) => c,
        Err(Error::Singular) => return Ok(None),
        Err(e) => return Err(e),
    };
    let n = v.dim();
    let vv = tensor_space(v, v)?;
    let k = Space::ground(v.field());
    let col: Vec<(usize, Scalar)> = c.triplets().into_iter().map(|(i, j, x)| (i * n + j, x)).collect();
    let alpha = Copairing::new(v, LinearMap::new(&k, &vv, vec![col])?)?;
    if !snake(beta, &alpha)?.holds() {
        return Err(Error::InvariantViolation("copairing from the inverse Gram matrix fails the snake identity".into()));
    }
    Ok(Some(alpha))
}

pub fn check_nondegenerate(beta: &Pairing) -> Result<Report> {
    let mut r = Report::new("pairing", "non-degenerate pairing", "snake identity for a pairing and copairing");
    match nondegenerate_copairing(beta)? {
        Some(alpha) => {
            r.push_comparison("snake identity", snake(beta, &alpha)?);
            r.note(format!("copairing α(1) = {}", alpha.element()));
        }
        None => {
            r.push_flag("Gram matrix invertible", false, None);
        }
    }
    Ok(r.conclude())
}

pub fn check_associative_pairing(beta: &Pairing, a: &AlgebraData) -> Result<Report> {
    if beta.space != a.space {
        return Err(Error::ShapeMismatch("pairing and algebra live on different spaces".into()));
    }
    let v = &a.space;
    let (m, b) = (Stage::from(&a.mul), Stage::from(&beta.map));
    let mut r = Report::new("pairing", "associative pairing", "associativity of a pairing");
    r.push_paths(
        "associativity",
        &path(vec![tensor(vec![id(v), m.clone()])?, b.clone()])?,
        &path(vec![tensor(vec![m, id(v)])?, b])?,
    )?;
    Ok(r.conclude())
}

fn require_associative_nondegenerate(a: &AlgebraData, beta: &Pairing) -> Result<Copairing> {
    let assoc = check_associative_pairing(beta, a)?;
    if !assoc.holds() {
        let w = assoc.diagrams[0].witness.as_ref().map(|w| w.label.to_string()).unwrap_or_default();
        return Err(Error::NonAssociativePairing(w));
    }
    nondegenerate_copairing(beta)?.ok_or(Error::DegeneratePairing)
}

/// Δ and ε from an associative non-degenerate pairing; both composite forms must agree.
pub fn frobenius_from_pairing(a: &AlgebraData, beta: &Pairing) -> Result<FrobeniusData> {
    let alpha = require_associative_nondegenerate(a, beta)?;
    let v = &a.space;
    let (m, al, b, u) = (
        Stage::from(&a.mul),
        Stage::from(&alpha.map),
        Stage::from(&beta.map),
        Stage::from(&a.unit),
    );
    let comul_right = path(vec![
        Stage::from(right_unitor_inv(v)),
        tensor(vec![id(v), al.clone()])?,
        tensor(vec![m.clone(), id(v)])?,
    ])?
    .materialize()?;
    let comul_left = path(vec![
        Stage::from(left_unitor_inv(v)),
        tensor(vec![al, id(v)])?,
        tensor(vec![id(v), m])?,
    ])?
    .materialize()?;
    if let Some(w) = maps_equal(&comul_right, &comul_left)?.witness {
        return Err(Error::CompositeMismatch(format!(
            "comultiplication at {}: {} vs {}",
            w.label, w.left, w.right
        )));
    }
    let counit_right = path(vec![
        Stage::from(right_unitor_inv(v)),
        tensor(vec![id(v), u.clone()])?,
        b.clone(),
    ])?
    .materialize()?;
    let counit_left = path(vec![Stage::from(left_unitor_inv(v)), tensor(vec![u, id(v)])?, b])?.materialize()?;
    if let Some(w) = maps_equal(&counit_right, &counit_left)?.witness {
        return Err(Error::CompositeMismatch(format!(
            "counit at {}: {} vs {}",
            w.label, w.left, w.right
        )));
    }
    let f = FrobeniusData::new(a.clone(), CoalgebraData::new(v, comul_right, counit_right)?)?;
    let report = check_frobenius(&f)?;
    if !report.holds() {
        return Err(Error::InvariantViolation(
            "structure built from an associative non-degenerate pairing is not Frobenius".into(),
        ));
    }
    Ok(f)
}

/// β∘σ₁₂ = β.
pub fn check_symmetric(beta: &Pairing) -> Result<Report> {
    let v = &beta.space;
    let swap = transposition(&[v.clone(), v.clone()], 0, 1)?;
    let mut r = Report::new("pairing", "symmetric pairing", "symmetry of a pairing");
    r.push_maps("symmetry", &compose(&beta.map, &swap)?, &beta.map)?;
    Ok(r.conclude())
}

/// ∇∘Δ = id.
pub fn check_special(f: &FrobeniusData) -> Result<Report> {
    let mut r = Report::new("Frobenius algebra", "special Frobenius algebra", "special Frobenius condition");
    r.push_maps(
        "multiplication after comultiplication",
        &compose(&f.algebra.mul, &f.coalgebra.comul)?,
        &identity(f.space()),
    )?;
    Ok(r.conclude())
}

/// ∇∘Γ = id and the bimodule square for Γ.
pub fn check_separable(a: &AlgebraData, section: &SeparabilitySection) -> Result<Report> {
    let v = &a.space;
    expect_map(&section.gamma, v, &tensor_space(v, v)?, "section")?;
    let (m, g) = (Stage::from(&a.mul), Stage::from(&section.gamma));
    let mut r = Report::new("algebra", "separable algebra", "separability section conditions");
    r.push_paths("right inverse", &path(vec![g.clone(), m.clone()])?, &path(vec![id(v)])?)?;
    r.push_paths(
        "bimodule square",
        &path(vec![tensor(vec![id(v), m.clone()])?, m.clone(), g.clone()])?,
        &path(vec![tensor(vec![id(v), g, id(v)])?, tensor(vec![m.clone(), m])?])?,
    )?;
    Ok(r.conclude())
}

/// The unique Θ with β(x⊗y) = β(y⊗Θ(x)), solved from the Gram matrix.
pub fn nakayama_from_pairing(a: &AlgebraData, beta: &Pairing) -> Result<NakayamaAuto> {
    require_associative_nondegenerate(a, beta)?;
    let gram = beta.gram();
    // Θ = B⁻¹Bᵀ in the basis, since β(e_j⊗Θe_i) = (BΘ)_ji
    let theta = compose(&invert(&gram)?, &gram.transpose())?;
    let v = &beta.space;
    let swap = transposition(&[v.clone(), v.clone()], 0, 1)?;
    let lhs = compose(&beta.map, &swap)?;
    let rhs = compose(&beta.map, &crate::tensor::tensor_map(&identity(v), &theta)?)?;
    if !maps_equal(&lhs, &rhs)?.holds() {
        return Err(Error::InvariantViolation("Nakayama automorphism fails its defining identity".into()));
    }
    Ok(NakayamaAuto {
        theta,
        convention: NakayamaConvention::RightSlot,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{cyclic_group, group_algebra, truncated_polynomial};
    use crate::scalar::FieldSpec;
    use crate::tensor::Label;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn kc(n: usize) -> crate::gallery::GroupAlgebra {
        group_algebra(&cyclic_group(n), &q()).unwrap()
    }

    fn s(text: &str) -> Scalar {
        Scalar::parse(&q(), text).unwrap()
    }

    #[test]
    fn group_algebras_and_truncations_are_algebras() {
        assert!(check_algebra(&kc(2).algebra).unwrap().holds());
        let t = truncated_polynomial(3, "x", &q()).unwrap();
        assert!(check_algebra(&t.algebra).unwrap().holds());
    }

    #[test]
    fn corrupted_unit_fails_with_witness_g() {
        let mut a = kc(2).algebra;
        let g = a.basis("g").unwrap();
        let k = Space::ground(&q());
        a.unit = LinearMap::from_fn(&k, &a.space, |_| Ok(g.clone())).unwrap();
        let r = check_algebra(&a).unwrap();
        assert!(!r.holds());
        let d = r.diagram("left unit").unwrap();
        assert_eq!(d.witness.as_ref().unwrap().label.to_string(), "1⊗1");
        let right = r.diagram("right unit").unwrap();
        assert!(!right.status.is_pass());
        let w = &d.witness.as_ref().unwrap();
        assert_eq!(w.right.to_string(), "1");
        assert_eq!(w.left.to_string(), "g");
    }

    #[test]
    fn coalgebra_examples() {
        let c2 = kc(2);
        assert!(check_coalgebra(&c2.frobenius.coalgebra).unwrap().holds());
        assert!(check_coalgebra(&c2.grouplike).unwrap().holds());
        let g = c2.algebra.basis("g").unwrap();
        assert_eq!(c2.frobenius.coalgebra.comul.apply(&g).unwrap().to_string(), "1⊗g + g⊗1");
        let t = truncated_polynomial(2, "x", &q()).unwrap();
        assert!(check_coalgebra(&t.frobenius.coalgebra).unwrap().holds());
        let one = t.algebra.basis("1").unwrap();
        assert_eq!(t.frobenius.coalgebra.comul.apply(&one).unwrap().to_string(), "1⊗x + x⊗1");
        let x = t.algebra.basis("x").unwrap();
        assert_eq!(t.frobenius.coalgebra.comul.apply(&x).unwrap().to_string(), "x⊗x");
    }

    #[test]
    fn bialgebra_examples() {
        let c2 = kc(2);
        assert!(check_bialgebra(&c2.algebra, &c2.grouplike).unwrap().holds());
        let r = check_bialgebra(&c2.algebra, &c2.frobenius.coalgebra).unwrap();
        assert!(!r.passed("counit multiplicative"));
        let w = r.diagram("counit multiplicative").unwrap().witness.clone().unwrap();
        assert_eq!(w.label.to_string(), "g⊗g");
        assert_eq!((w.left.to_string(), w.right.to_string()), ("1".to_string(), "0".to_string()));
    }

    #[test]
    fn frobenius_examples() {
        assert!(check_frobenius(&kc(2).frobenius).unwrap().holds());
        assert!(check_frobenius(&kc(3).frobenius).unwrap().holds());
        let t = truncated_polynomial(3, "x", &q()).unwrap();
        assert!(check_frobenius(&t.frobenius).unwrap().holds());
        let c2 = kc(2);
        let wrong = FrobeniusData::new(c2.algebra.clone(), c2.grouplike.clone()).unwrap();
        assert!(!check_frobenius(&wrong).unwrap().holds());
    }

    #[test]
    fn pairings_of_examples() {
        let c2 = kc(2);
        let beta = pairing_from_frobenius(&c2.frobenius).unwrap();
        for (a, b, v) in [("1", "1", "1"), ("1", "g", "0"), ("g", "1", "0"), ("g", "g", "1")] {
            let x = c2.algebra.basis(a).unwrap();
            let y = c2.algebra.basis(b).unwrap();
            assert_eq!(beta.value(&x, &y).unwrap(), s(v));
        }
        let alpha = copairing_from_frobenius(&c2.frobenius).unwrap();
        assert_eq!(alpha.element().to_string(), "1⊗1 + g⊗g");
        assert_eq!(nondegenerate_copairing(&beta).unwrap().unwrap(), alpha);

        let t = truncated_polynomial(2, "x", &q()).unwrap();
        let bt = pairing_from_frobenius(&t.frobenius).unwrap();
        let gram: Vec<String> = (0..4).map(|j| bt.map.entry(0, j).to_string()).collect();
        assert_eq!(gram, ["0", "1", "1", "0"]);
        assert!(check_nondegenerate(&bt).unwrap().holds());
    }

    #[test]
    fn zero_pairing_is_degenerate_associative_and_symmetric() {
        let c2 = kc(2);
        let v = &c2.algebra.space;
        let zero = Pairing::new(v, LinearMap::zero(&tensor_space(v, v).unwrap(), &Space::ground(&q())).unwrap()).unwrap();
        assert!(!check_nondegenerate(&zero).unwrap().holds());
        assert!(check_associative_pairing(&zero, &c2.algebra).unwrap().holds());
        assert!(check_symmetric(&zero).unwrap().holds());
        assert_eq!(frobenius_from_pairing(&c2.algebra, &zero).unwrap_err(), Error::DegeneratePairing);
    }

    #[test]
    fn non_associative_pairing_is_caught() {
        // β(a⊗b) = δ_{a,b}: on kC₂ this is δ_{ab,1} too, so use kC₃ where g⊗g pairs to 1 but g·g ≠ 1
        let c3 = kc(3);
        let v = &c3.algebra.space;
        let k = Space::ground(&q());
        let vv = tensor_space(v, v).unwrap();
        let beta = LinearMap::from_fn(&vv, &k, |j| {
            let p = vv.split(j);
            Ok(if p[0] == p[1] { Vector::basis(&k, 0) } else { Vector::zero(&k) })
        })
        .unwrap();
        let beta = Pairing::new(v, beta).unwrap();
        let r = check_associative_pairing(&beta, &c3.algebra).unwrap();
        assert!(!r.holds());
        assert!(r.diagrams[0].witness.is_some());
        assert!(matches!(frobenius_from_pairing(&c3.algebra, &beta), Err(Error::NonAssociativePairing(_))));
    }

    #[test]
    fn skewed_pairing_is_not_symmetric() {
        let field = FieldSpec::Cyclotomic(3);
        let t = truncated_polynomial(2, "x", &field).unwrap();
        let v = &t.algebra.space;
        let k = Space::ground(&field);
        let vv = tensor_space(v, v).unwrap();
        let z = Scalar::zeta(&field).unwrap();
        let beta = LinearMap::from_triplets(
            &vv,
            &k,
            [(0, vv.lookup("1⊗x").unwrap(), Scalar::one(&field)), (0, vv.lookup("x⊗1").unwrap(), z)],
        )
        .unwrap();
        assert!(!check_symmetric(&Pairing::new(v, beta).unwrap()).unwrap().holds());
    }

    #[test]
    fn special_and_separable() {
        let c2 = kc(2);
        let r = check_special(&c2.frobenius).unwrap();
        assert!(!r.holds());
        let w = r.diagrams[0].witness.clone().unwrap();
        assert_eq!(w.label, Label::element("1"));
        assert_eq!(w.left.to_string(), "2*1");
        let sp = c2.special.clone().unwrap();
        assert!(check_special(&sp).unwrap().holds());
        let gamma = SeparabilitySection { gamma: sp.coalgebra.comul.clone() };
        assert!(check_separable(&c2.algebra, &gamma).unwrap().holds());

        let t = truncated_polynomial(2, "x", &q()).unwrap();
        let v = &t.algebra.space;
        let vv = tensor_space(v, v).unwrap();
        let one_one = Vector::basis_named(&vv, "1⊗1").unwrap();
        let x_one = Vector::basis_named(&vv, "x⊗1").unwrap();
        let naive = LinearMap::from_fn(v, &vv, |j| Ok(if j == 0 { one_one.clone() } else { x_one.clone() })).unwrap();
        let r = check_separable(&t.algebra, &SeparabilitySection { gamma: naive }).unwrap();
        assert!(r.passed("right inverse"));
        assert!(!r.passed("bimodule square"));
    }

    #[test]
    fn separability_idempotent_needs_invertible_order() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(Scalar::from_ratio(&f2, 1, 2).unwrap_err(), Error::DivisionByZero);
        assert!(group_algebra(&cyclic_group(2), &f2).unwrap().special.is_none());
    }

    #[test]
    fn roundtrip_and_nakayama() {
        for f in [
            kc(2).frobenius,
            kc(3).frobenius,
            truncated_polynomial(2, "x", &q()).unwrap().frobenius,
            truncated_polynomial(3, "x", &q()).unwrap().frobenius,
        ] {
            let beta = pairing_from_frobenius(&f).unwrap();
            let back = frobenius_from_pairing(&f.algebra, &beta).unwrap();
            assert_eq!(back.coalgebra.comul, f.coalgebra.comul);
            assert_eq!(back.coalgebra.counit, f.coalgebra.counit);
            let theta = nakayama_from_pairing(&f.algebra, &beta).unwrap();
            assert_eq!(theta.theta == identity(f.space()), check_symmetric(&beta).unwrap().holds());
        }
    }
}
