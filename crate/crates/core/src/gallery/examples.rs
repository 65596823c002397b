use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::{root_of_unity, FieldSpec, Scalar};
use crate::structures::{
    check_frobenius, path, tensor, AlgebraData, CoalgebraData, FrobeniusData, Pairing,
};
use crate::tensor::{
    tensor_space, GradingGroup, Label, LinearMap, PartialLinearMap, Space, Stage, Vector,
};
use crate::twist::{
    bicharacter_twist, build_twisted_algebra, check_coalgebra_compat, check_twisting, extend_twist_from_generators,
    pointwise_difference, twisted_pairing, Bicharacter, MonomialBasis, PointwiseDifference, TwistingMap,
};

use super::algebras::{algebra_from_products, coalgebra_from_rule, group_algebra, truncated_polynomial, GroupAlgebra, TruncatedPolynomial};
use super::groups::{cyclic_group, cyclic_group_named, FiniteGroup};

fn term(space: &Space, label: &str, c: Scalar) -> Result<Vector> {
    Ok(Vector::basis_named(space, label)?.scale(&c))
}

/// A seed on B⊗A: the identity flip on columns involving a unit, plus the given columns.
pub fn seed_with_units(a: &AlgebraData, b: &AlgebraData, columns: &[(&str, Vector)]) -> Result<PartialLinearMap> {
    let ba = tensor_space(&b.space, &a.space)?;
    let ab = tensor_space(&a.space, &b.space)?;
    let (na, nb) = (a.space.dim(), b.space.dim());
    let ua = unit_index(a)?;
    let ub = unit_index(b)?;
    let mut seed = PartialLinearMap::new(&ba, &ab)?;
    for bi in 0..nb {
        for ai in 0..na {
            if ai == ua || bi == ub {
                seed.define(bi * na + ai, &Vector::basis(&ab, ai * nb + bi))?;
            }
        }
    }
    for (label, image) in columns {
        seed.define(ba.lookup(label)?, image)?;
    }
    Ok(seed)
}

fn unit_index(a: &AlgebraData) -> Result<usize> {
    match a.one().entries() {
        [(i, c)] if c.is_one() => Ok(*i),
        _ => Err(Error::InvalidMonomialBasis("the unit is not a basis element".into())),
    }
}

/// A seed defined only on the given columns.
pub fn seed_columns(a: &AlgebraData, b: &AlgebraData, columns: &[(&str, Vector)]) -> Result<PartialLinearMap> {
    let ba = tensor_space(&b.space, &a.space)?;
    let ab = tensor_space(&a.space, &b.space)?;
    let mut seed = PartialLinearMap::new(&ba, &ab)?;
    for (label, image) in columns {
        seed.define(ba.lookup(label)?, image)?;
    }
    Ok(seed)
}

/// Left: (Δ_A⊗Δ_B)∘τ. Right: (1⊗τ⊗1)(τ⊗τ)(1⊗τ⊗1)(Δ_B⊗Δ_A). τ may be partial.
pub fn comultiplication_hexagon_paths(
    seed: &Arc<PartialLinearMap>,
    ca: &CoalgebraData,
    cb: &CoalgebraData,
) -> Result<(crate::tensor::DiagramPath, crate::tensor::DiagramPath)> {
    let (a, b) = (&ca.space, &cb.space);
    let tau = Stage::partial(seed);
    let (da, db) = (Stage::from(&ca.comul), Stage::from(&cb.comul));
    let left = path(vec![tau.clone(), tensor(vec![da.clone(), db.clone()])?])?;
    let right = path(vec![
        tensor(vec![db, da])?,
        tensor(vec![Stage::identity(b), tau.clone(), Stage::identity(a)])?,
        tensor(vec![tau.clone(), tau.clone()])?,
        tensor(vec![Stage::identity(a), tau, Stage::identity(b)])?,
    ])?;
    Ok((left, right))
}

/// A pointwise probe of the comultiplication hexagon for a partially specified twist.
#[derive(Clone, Debug)]
pub struct PointwiseExample {
    pub name: String,
    pub seed: Arc<PartialLinearMap>,
    pub coalgebra_a: CoalgebraData,
    pub coalgebra_b: CoalgebraData,
    pub element: Vector,
}

impl PointwiseExample {
    pub fn evaluate(&self) -> Result<PointwiseDifference> {
        let (l, r) = comultiplication_hexagon_paths(&self.seed, &self.coalgebra_a, &self.coalgebra_b)?;
        pointwise_difference(&l, &r, &self.element)
    }

    pub fn report(&self) -> Result<Report> {
        let (l, r) = comultiplication_hexagon_paths(&self.seed, &self.coalgebra_a, &self.coalgebra_b)?;
        Ok(crate::twist::check_pointwise_counterexample(&self.name, &l, &r, &self.element)?.0)
    }
}

/// k[x]/(x^D) and k[y]/(y^D) with binomial coalgebras and τ(y⊗x) = x⊗y + c·x²⊗1 + d·1⊗1.
fn polynomial_probe(name: &str, field: &FieldSpec, degree: usize, c: i64, d: i64) -> Result<PointwiseExample> {
    if degree < 3 {
        return Err(Error::UnsupportedParameters("truncation degree must be at least 3".into()));
    }
    let x = truncated_polynomial(degree, "x", field)?;
    let y = truncated_polynomial(degree, "y", field)?;
    let ab = tensor_space(&x.algebra.space, &y.algebra.space)?;
    let image = term(&ab, "x⊗y", Scalar::one(field))?
        .add(&term(&ab, "x^2⊗1", Scalar::from_int(field, c))?)?
        .add(&term(&ab, "1⊗1", Scalar::from_int(field, d))?)?;
    let seed = seed_with_units(&x.algebra, &y.algebra, &[("y⊗x", image)])?;
    let ba = tensor_space(&y.algebra.space, &x.algebra.space)?;
    Ok(PointwiseExample {
        name: name.to_string(),
        seed: Arc::new(seed),
        coalgebra_a: x.binomial,
        coalgebra_b: y.binomial,
        element: Vector::basis_named(&ba, "y⊗x")?,
    })
}

/// yx = xy + x², probed at y⊗x.
pub fn jordan_probe(field: &FieldSpec, degree: usize) -> Result<PointwiseExample> {
    polynomial_probe("Jordan plane", field, degree, 1, 0)
}

/// yx = xy − 1, probed at y⊗x.
pub fn weyl_probe(field: &FieldSpec, degree: usize) -> Result<PointwiseExample> {
    polynomial_probe("Weyl algebra", field, degree, 0, -1)
}

/// The small quantum Borel part: E^ℓ = 0, K^ℓ = 1, KE = q²EK, with Δ(E) = 1⊗E + E⊗K, Δ(K) = K⊗K.
pub fn quantum_borel(ell: usize, q: &Scalar) -> Result<(AlgebraData, CoalgebraData)> {
    let field = q.field();
    let q2 = q.pow(2)?;
    let labels = (0..ell * ell)
        .map(|i| Label::Monomial(vec![("E".into(), (i / ell) as u32), ("K".into(), (i % ell) as u32)]))
        .collect();
    let v = Space::new(&field, labels)?;
    let idx = |a: usize, b: usize| a * ell + b;
    let alg = algebra_from_products(&v, 0, |i, j| {
        let (a, b) = (i / ell, i % ell);
        let (c, d) = (j / ell, j % ell);
        if a + c >= ell {
            return Ok(Vector::zero(&v));
        }
        Ok(Vector::basis(&v, idx(a + c, (b + d) % ell)).scale(&q2.pow((b * c) as i64)?))
    })?;
    let vv = tensor_space(&v, &v)?;
    let e_image = Vector::basis(&vv, idx(0, 0) * ell * ell + idx(1, 0)).add(&Vector::basis(&vv, idx(1, 0) * ell * ell + idx(0, 1)))?;
    let k_image = Vector::basis(&vv, idx(0, 1) * ell * ell + idx(0, 1));
    let one_image = Vector::basis(&vv, 0);
    let co = coalgebra_from_rule(
        &v,
        |i| {
            let (a, b) = (i / ell, i % ell);
            let mut out = one_image.clone();
            for _ in 0..a {
                out = tensor_product_multiply(&alg, &out, &e_image)?;
            }
            for _ in 0..b {
                out = tensor_product_multiply(&alg, &out, &k_image)?;
            }
            Ok(out)
        },
        |i| if i / ell == 0 { Scalar::one(&field) } else { Scalar::zero(&field) },
    )?;
    Ok((alg, co))
}

/// Product in A⊗A with (a⊗b)(c⊗d) = ac⊗bd.
pub fn tensor_product_multiply(alg: &AlgebraData, u: &Vector, w: &Vector) -> Result<Vector> {
    let v = &alg.space;
    let n = v.dim();
    let vv = tensor_space(v, v)?;
    let mut terms = Vec::new();
    for (i, c) in u.entries() {
        for (j, d) in w.entries() {
            let left = alg.multiply(&Vector::basis(v, i / n), &Vector::basis(v, j / n))?;
            let right = alg.multiply(&Vector::basis(v, i % n), &Vector::basis(v, j % n))?;
            let cd = c * d;
            for (p, x) in left.entries() {
                for (r, y) in right.entries() {
                    terms.push((p * n + r, &(&cd * x) * y));
                }
            }
        }
    }
    Vector::from_terms(&vv, terms)
}

/// τ(K⊗F) = q⁻²F⊗K, τ(E⊗F) = F⊗E − (1⊗K − 1⊗K⁻¹)/(q − q⁻¹), probed at E⊗F.
pub fn quantum_borel_probe(ell: usize, degree: usize) -> Result<PointwiseExample> {
    if ell < 2 || degree < 2 {
        return Err(Error::UnsupportedParameters("need ℓ ≥ 2 and truncation degree ≥ 2".into()));
    }
    let field = FieldSpec::cyclotomic(ell as u64)?;
    let q = root_of_unity(&field, ell as u64)?;
    let (borel, borel_co) = quantum_borel(ell, &q)?;
    let f = truncated_polynomial(degree, "F", &field)?;
    let ab = tensor_space(&f.algebra.space, &borel.space)?;
    let kinv = if ell == 2 { "K".to_string() } else { format!("K^{}", ell - 1) };
    let denom = (&q - &q.inv()?).inv()?;
    let k_f = term(&ab, "F⊗K", q.pow(-2)?)?;
    let e_f = term(&ab, "F⊗E", Scalar::one(&field))?
        .sub(&term(&ab, "1⊗K", denom.clone())?)?
        .add(&term(&ab, &format!("1⊗{kinv}"), denom)?)?;
    let seed = seed_with_units(&f.algebra, &borel, &[("K⊗F", k_f), ("E⊗F", e_f)])?;
    let ba = tensor_space(&borel.space, &f.algebra.space)?;
    Ok(PointwiseExample {
        name: "quantum Borel".into(),
        seed: Arc::new(seed),
        coalgebra_a: f.binomial,
        coalgebra_b: borel_co,
        element: Vector::basis_named(&ba, "E⊗F")?,
    })
}

/// Extends τ(y⊗x) = x⊗y + x²⊗1 to k[x]/(x^dx) and k[y]/(y^dy).
pub fn jordan_twist(field: &FieldSpec, dx: usize, dy: usize) -> Result<TwistingMap> {
    relation_twist(field, dx, dy, 1, 0)
}

/// Extends τ(y⊗x) = x⊗y − 1⊗1 to k[x]/(x^dx) and k[y]/(y^dy).
pub fn weyl_twist(field: &FieldSpec, dx: usize, dy: usize) -> Result<TwistingMap> {
    relation_twist(field, dx, dy, 0, -1)
}

fn relation_twist(field: &FieldSpec, dx: usize, dy: usize, c: i64, d: i64) -> Result<TwistingMap> {
    if dx < 2 || dy < 2 {
        return Err(Error::UnsupportedParameters("truncation degrees must be at least 2".into()));
    }
    let x = truncated_polynomial(dx, "x", field)?;
    let y = truncated_polynomial(dy, "y", field)?;
    let ab = tensor_space(&x.algebra.space, &y.algebra.space)?;
    let mut image = term(&ab, "x⊗y", Scalar::one(field))?.add(&term(&ab, "1⊗1", Scalar::from_int(field, d))?)?;
    if dx > 2 {
        image = image.add(&term(&ab, "x^2⊗1", Scalar::from_int(field, c))?)?;
    }
    let seed = seed_columns(&x.algebra, &y.algebra, &[("y⊗x", image)])?;
    let bx = MonomialBasis::generated_by(&x.algebra, &["x"])?;
    let by = MonomialBasis::generated_by(&y.algebra, &["y"])?;
    extend_twist_from_generators(&x.algebra, &y.algebra, &bx, &by, &seed)
}

/// kC₂⊗_t kC₂ with t(g, h) = −1.
#[derive(Clone, Debug)]
pub struct SymmetricC2C2 {
    pub left: GroupAlgebra,
    pub right: GroupAlgebra,
    pub twist: TwistingMap,
    pub frobenius: Option<FrobeniusData>,
    pub pairing: Option<Pairing>,
}

pub fn c2_c2_symmetric(field: &FieldSpec) -> Result<SymmetricC2C2> {
    let left = group_algebra(&cyclic_group(2), field)?;
    let right = group_algebra(&cyclic_group_named(2, "h"), field)?;
    let t = Bicharacter::new(field, GradingGroup::new(vec![2]), GradingGroup::new(vec![2]), vec![vec![Scalar::from_int(field, -1)]])?;
    let twist = bicharacter_twist(&left.algebra, &right.algebra, &t)?;
    check_twisting(&twist)?;
    let compatible = check_coalgebra_compat(&twist, &left.frobenius.coalgebra, &right.frobenius.coalgebra)?.holds();
    let (frobenius, pairing) = if compatible {
        let f = crate::twist::inherit_frobenius(&twist, &left.frobenius, &right.frobenius)?;
        let p = twisted_pairing(&twist, &left.frobenius, &right.frobenius)?;
        (Some(f), Some(p))
    } else {
        (None, None)
    };
    Ok(SymmetricC2C2 {
        left,
        right,
        twist,
        frobenius,
        pairing,
    })
}

/// The semidirect product H⋊G with (h, g)(h', g') = (h·φ_g(h'), gg'), elements ordered as H×G.
pub fn semidirect_product(h: &FiniteGroup, g: &FiniteGroup, action: &[Vec<usize>]) -> Result<FiniteGroup> {
    validate_action(h, g, action)?;
    let (m, n) = (h.order(), g.order());
    let names = (0..m * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            match (x == h.identity(), y == g.identity()) {
                (true, true) => "1".to_string(),
                (true, false) => g.name(y).to_string(),
                (false, true) => h.name(x).to_string(),
                (false, false) => format!("{}·{}", h.name(x), g.name(y)),
            }
        })
        .collect();
    let table = (0..m * n)
        .map(|i| {
            (0..m * n)
                .map(|j| {
                    let (x, y) = (i / n, i % n);
                    let (x2, y2) = (j / n, j % n);
                    h.mul(x, action[y][x2]) * n + g.mul(y, y2)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(names, table)
}

/// Each φ_g must be an automorphism of H and g ↦ φ_g a homomorphism.
pub fn validate_action(h: &FiniteGroup, g: &FiniteGroup, action: &[Vec<usize>]) -> Result<()> {
    if action.len() != g.order() || action.iter().any(|p| p.len() != h.order()) {
        return Err(Error::NotAnAction("one permutation of H per element of G".into()));
    }
    let autos = h.automorphisms();
    for (x, p) in action.iter().enumerate() {
        if !autos.contains(p) {
            return Err(Error::NotAnAction(format!("φ({}) is not an automorphism", g.name(x))));
        }
    }
    for x in 0..g.order() {
        for y in 0..g.order() {
            let composed: Vec<usize> = (0..h.order()).map(|e| action[x][action[y][e]]).collect();
            if composed != action[g.mul(x, y)] {
                return Err(Error::NotAnAction(format!("φ({}·{}) ≠ φ({})φ({})", g.name(x), g.name(y), g.name(x), g.name(y))));
            }
        }
    }
    Ok(())
}

/// τ : kG⊗kH → kH⊗kG, g⊗h ↦ φ_g(h)⊗g, for the twisted product kH⊗_τkG ≅ k[H⋊G].
#[derive(Clone, Debug)]
pub struct SkewGroupExample {
    pub kh: GroupAlgebra,
    pub kg: GroupAlgebra,
    pub semidirect: GroupAlgebra,
    pub twist: TwistingMap,
}

pub fn skew_group_twist(h: &FiniteGroup, g: &FiniteGroup, action: &[Vec<usize>], field: &FieldSpec) -> Result<SkewGroupExample> {
    validate_action(h, g, action)?;
    let kh = group_algebra(h, field)?;
    let kg = group_algebra(g, field)?;
    let semidirect = group_algebra(&semidirect_product(h, g, action)?, field)?;
    let ba = tensor_space(&kg.algebra.space, &kh.algebra.space)?;
    let ab = tensor_space(&kh.algebra.space, &kg.algebra.space)?;
    let (m, n) = (h.order(), g.order());
    let map = LinearMap::from_fn(&ba, &ab, |j| {
        let (y, x) = (j / m, j % m);
        Ok(Vector::basis(&ab, action[y][x] * n + y))
    })?;
    let twist = TwistingMap::new(&kh.algebra, &kg.algebra, map)?;
    if !check_twisting(&twist)?.holds() {
        return Err(Error::InvariantViolation("a group action must give a twisting map".into()));
    }
    Ok(SkewGroupExample { kh, kg, semidirect, twist })
}

impl SkewGroupExample {
    /// Twisting axioms, agreement with the semidirect product, and Frobenius inheritance.
    pub fn check(&self) -> Result<Report> {
        let mut r = Report::new(
            "skew group algebra",
            "kH⊗_τkG is the group algebra of H⋊G with its Frobenius structure",
            "twisted tensor products of group algebras by an action",
        );
        let tw = check_twisting(&self.twist)?;
        let ok = tw.holds();
        r.absorb("twisting", tw);
        if !ok {
            return Ok(r.conclude());
        }
        let (fh, fg) = (&self.kh.frobenius, &self.kg.frobenius);
        let compat = check_coalgebra_compat(&self.twist, &fh.coalgebra, &fg.coalgebra)?;
        let compatible = compat.holds();
        r.absorb("compatibility", compat);
        let product = build_twisted_algebra(&self.twist, Some((&fh.coalgebra, &fg.coalgebra)))?;
        let sp = &product.algebra.space;
        let spsp = tensor_space(sp, sp)?;
        let mul = self.semidirect.algebra.mul.relabel(&spsp, sp)?;
        r.push_maps("multiplication is the semidirect product", &product.algebra.mul, &mul)?;
        let co = product.coalgebra.expect("coalgebras supplied");
        let comul = self.semidirect.frobenius.coalgebra.comul.relabel(sp, &spsp)?;
        r.push_maps("comultiplication is the group-algebra one", &co.comul, &comul)?;
        if compatible {
            let f = FrobeniusData::new(product.algebra.clone(), co)?;
            r.absorb("inherited structure", check_frobenius(&f)?);
        }
        Ok(r.conclude())
    }
}

/// C₃ = {1, h, h²} acted on by C₂ = {1, g} through inversion.
pub fn inversion_action_example(field: &FieldSpec) -> Result<SkewGroupExample> {
    let h = cyclic_group_named(3, "h");
    let g = cyclic_group(2);
    let action = vec![vec![0, 1, 2], vec![0, 2, 1]];
    skew_group_twist(&h, &g, &action, field)
}

/// Two truncated polynomial bialgebras in characteristic p twisted by q.
pub fn obstruction_example(p: u64, q: i64) -> Result<(TruncatedPolynomial, TruncatedPolynomial, TwistingMap)> {
    let field = FieldSpec::prime(p)?;
    let n = p as usize;
    let x = truncated_polynomial(n, "x", &field)?;
    let y = truncated_polynomial(n, "y", &field)?;
    let t = Bicharacter::new(&field, GradingGroup::free(1), GradingGroup::free(1), vec![vec![Scalar::from_int(&field, q)]])?;
    let tau = bicharacter_twist(&x.algebra, &y.algebra, &t)?;
    check_twisting(&tau)?;
    Ok((x, y, tau))
}

/// kC_m and kC_n (generators g, h) over ℚ(ζ₆) with τ(h^j⊗g^i) = ζ₆^{e[j][i]} g^i⊗h^j.
/// Entries involving an identity element are forced to 1.
pub fn sixth_root_lambda_twist(
    order_a: usize,
    order_b: usize,
    exponents: &[Vec<u32>],
) -> Result<(GroupAlgebra, GroupAlgebra, TwistingMap)> {
    if order_a > 6 || order_b > 6 || exponents.len() != order_b || exponents.iter().any(|r| r.len() != order_a) {
        return Err(Error::UnsupportedParameters("exponent table must be order_b × order_a".into()));
    }
    let field = FieldSpec::cyclotomic(6)?;
    let zeta = root_of_unity(&field, 6)?;
    let a = group_algebra(&cyclic_group(order_a), &field)?;
    let b = group_algebra(&cyclic_group_named(order_b, "h"), &field)?;
    let lambda = exponents
        .iter()
        .enumerate()
        .map(|(j, row)| {
            row.iter()
                .enumerate()
                .map(|(i, &e)| if i == 0 || j == 0 { Ok(Scalar::one(&field)) } else { zeta.pow(i64::from(e % 6)) })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let tau = crate::twist::graded_group_twist(&a.algebra, &b.algebra, &lambda)?;
    Ok((a, b, tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twist::check_bialgebra_obstruction;

    #[test]
    fn jordan_probe_differs_by_the_expected_element() {
        let d = jordan_probe(&FieldSpec::Rational, 4).unwrap().evaluate().unwrap();
        assert!(d.differs());
        assert_eq!(d.difference.scale(&Scalar::from_int(&FieldSpec::Rational, -1)).to_string(), "1⊗x^2⊗1⊗1 - 2*x⊗x⊗1⊗1 + x^2⊗1⊗1⊗1");
    }

    #[test]
    fn trivial_seed_agrees() {
        let q = FieldSpec::Rational;
        let d = polynomial_probe("flip", &q, 4, 0, 0).unwrap().evaluate().unwrap();
        assert!(!d.differs());
    }

    #[test]
    fn weyl_and_borel_probes_differ() {
        assert!(weyl_probe(&FieldSpec::Rational, 4).unwrap().evaluate().unwrap().differs());
        assert!(quantum_borel_probe(3, 3).unwrap().evaluate().unwrap().differs());
    }

    #[test]
    fn quantum_borel_is_a_bialgebra() {
        let q = root_of_unity(&FieldSpec::Cyclotomic(3), 3).unwrap();
        let (alg, co) = quantum_borel(3, &q).unwrap();
        assert!(crate::structures::check_algebra(&alg).unwrap().holds());
        assert!(crate::structures::check_bialgebra(&alg, &co).unwrap().holds());
    }

    #[test]
    fn jordan_extension_needs_positive_characteristic() {
        let err = jordan_twist(&FieldSpec::Rational, 4, 4).unwrap_err();
        assert!(matches!(err, Error::InconsistentExtension { .. }), "{err:?}");
        let t = jordan_twist(&FieldSpec::Prime(3), 4, 3).unwrap();
        assert_eq!(t.verified(), Some(true));
        let f2 = jordan_twist(&FieldSpec::Prime(2), 4, 2).unwrap();
        assert_eq!(f2.verified(), Some(true));
    }

    #[test]
    fn weyl_extension_fails_at_the_truncation() {
        let err = weyl_twist(&FieldSpec::Rational, 3, 3).unwrap_err();
        match err {
            Error::InconsistentExtension { left, right, .. } => assert_ne!(left, right),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn c2_c2_pairing_and_symmetry() {
        let q = FieldSpec::Rational;
        let e = c2_c2_symmetric(&q).unwrap();
        let beta = e.pairing.unwrap();
        assert!(crate::structures::check_symmetric(&beta).unwrap().holds());
        let v = &beta.space;
        let val = |a: &str, b: &str| beta.value(&Vector::basis_named(v, a).unwrap(), &Vector::basis_named(v, b).unwrap()).unwrap();
        assert_eq!(val("g⊗h", "g⊗h"), Scalar::from_int(&q, -1));
        assert_eq!(val("g⊗1", "g⊗1"), Scalar::one(&q));
        assert_eq!(val("1⊗h", "1⊗h"), Scalar::one(&q));
        assert_eq!(val("1⊗1", "1⊗1"), Scalar::one(&q));
        assert!(val("g⊗1", "1⊗h").is_zero());
    }

    #[test]
    fn skew_group_is_the_semidirect_product() {
        let e = inversion_action_example(&FieldSpec::Rational).unwrap();
        let r = e.check().unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(!e.semidirect.group.is_abelian());
    }

    #[test]
    fn non_actions_are_rejected() {
        let h = cyclic_group_named(3, "h");
        let g = cyclic_group(2);
        assert!(matches!(validate_action(&h, &g, &[vec![0, 1, 2], vec![1, 0, 2]]), Err(Error::NotAnAction(_))));
        let c3 = cyclic_group(3);
        assert!(matches!(validate_action(&h, &c3, &[vec![0, 1, 2], vec![0, 2, 1], vec![0, 2, 1]]), Err(Error::NotAnAction(_))));
    }

    #[test]
    fn obstruction_in_characteristic_three() {
        let (x, y, tau) = obstruction_example(3, 2).unwrap();
        let r = check_bialgebra_obstruction(&tau, &x.binomial, &y.binomial).unwrap();
        assert!(!r.holds());
        let (x, y, flip) = obstruction_example(3, 1).unwrap();
        assert!(check_bialgebra_obstruction(&flip, &x.binomial, &y.binomial).unwrap().holds());
    }
}
