use proptest::prelude::*;

use super::*;
use crate::gallery::{
    c2_c2_symmetric, cyclic_group, cyclic_group_named, group_algebra, jordan_twist, sixth_root_lambda_twist,
    truncated_polynomial,
};
use crate::structures::check_algebra;
use crate::tensor::{identity, invert, Space};

fn q() -> FieldSpec {
    FieldSpec::Rational
}

fn c2_pair(value: i64) -> (crate::gallery::GroupAlgebra, crate::gallery::GroupAlgebra, TwistingMap) {
    let a = group_algebra(&cyclic_group(2), &q()).unwrap();
    let b = group_algebra(&cyclic_group_named(2, "h"), &q()).unwrap();
    let t = Bicharacter::new(
        &q(),
        GradingGroup::new(vec![2]),
        GradingGroup::new(vec![2]),
        vec![vec![Scalar::from_int(&q(), value)]],
    )
    .unwrap();
    let tau = bicharacter_twist(&a.algebra, &b.algebra, &t).unwrap();
    (a, b, tau)
}

#[test]
fn trivial_twist_is_a_twisting_map() {
    let a = truncated_polynomial(3, "x", &q()).unwrap();
    let b = truncated_polynomial(2, "y", &q()).unwrap();
    let t = trivial_twist(&a.algebra, &b.algebra).unwrap();
    assert_eq!(t.verified(), None);
    assert!(check_twisting(&t).unwrap().holds());
    assert_eq!(t.verified(), Some(true));
    assert!(t.is_trivial().unwrap());
    assert_eq!(t.image("y", "x^2").unwrap().to_string(), "x^2⊗y");
}

#[test]
fn analytic_inverse_matches_elimination() {
    let (_, _, tau) = c2_pair(-1);
    let analytic = tau.inverse().unwrap();
    assert_eq!(analytic, invert(tau.map()).unwrap());
    let composite = crate::tensor::compose(tau.map(), &analytic).unwrap();
    assert_eq!(composite, identity(tau.map().codomain()));
    assert_eq!(tau.image("h", "g").unwrap().to_string(), "-g⊗h");
}

#[test]
fn bicharacter_validation() {
    let f = q();
    let bad = Bicharacter::new(&f, GradingGroup::new(vec![2]), GradingGroup::new(vec![2]), vec![vec![Scalar::from_int(&f, 2)]]);
    assert!(matches!(bad, Err(Error::InconsistentBicharacter(_))));
    let shape = Bicharacter::new(&f, GradingGroup::new(vec![2]), GradingGroup::free(1), vec![]);
    assert!(matches!(shape, Err(Error::InconsistentBicharacter(_))));
    let a = group_algebra(&cyclic_group(2), &f).unwrap();
    let x = truncated_polynomial(2, "x", &f).unwrap();
    let t = Bicharacter::new(&f, GradingGroup::new(vec![2]), GradingGroup::new(vec![2]), vec![vec![Scalar::one(&f)]]).unwrap();
    assert!(matches!(bicharacter_twist(&a.algebra, &x.algebra, &t), Err(Error::InconsistentBicharacter(_))));
}

#[test]
fn zero_lambda_is_rejected() {
    let f = q();
    let a = group_algebra(&cyclic_group(2), &f).unwrap();
    let b = group_algebra(&cyclic_group_named(2, "h"), &f).unwrap();
    let mut lambda = vec![vec![Scalar::one(&f); 2]; 2];
    lambda[1][1] = Scalar::zero(&f);
    match graded_group_twist(&a.algebra, &b.algebra, &lambda) {
        Err(Error::NonInvertibleLambda(at)) => assert_eq!(at, "h⊗g"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn singular_map_is_not_a_twisting_map() {
    let f = q();
    let a = group_algebra(&cyclic_group(2), &f).unwrap();
    let ba = crate::tensor::tensor_space(&a.algebra.space, &a.algebra.space).unwrap();
    let zero = LinearMap::zero(&ba, &ba).unwrap();
    let t = TwistingMap::new(&a.algebra, &a.algebra, zero).unwrap();
    assert!(matches!(t.inverse(), Err(Error::NotBijective)));
    let r = check_twisting(&t).unwrap();
    assert!(!r.holds());
    assert!(!r.passed("bijective"));
    assert!(matches!(build_twisted_algebra(&t, None), Err(Error::UncheckedTwist)));
}

#[test]
fn wrong_shape_is_rejected() {
    let f = q();
    let a = group_algebra(&cyclic_group(2), &f).unwrap();
    let k = Space::ground(&f);
    assert!(matches!(
        TwistingMap::new(&a.algebra, &a.algebra, identity(&k)),
        Err(Error::ShapeMismatch(_))
    ));
}

#[test]
fn unchecked_twists_cannot_be_used() {
    let (_, _, tau) = c2_pair(-1);
    assert!(matches!(build_twisted_algebra(&tau, None), Err(Error::UncheckedTwist)));
    check_twisting(&tau).unwrap();
    let product = build_twisted_algebra(&tau, None).unwrap();
    assert!(check_algebra(&product.algebra).unwrap().holds());
}

#[test]
fn bialgebra_obstruction_needs_bialgebras() {
    let (a, b, tau) = c2_pair(-1);
    check_twisting(&tau).unwrap();
    assert!(matches!(
        check_bialgebra_obstruction(&tau, &a.frobenius.coalgebra, &b.grouplike),
        Err(Error::NotBialgebraInputs)
    ));
    let r = check_bialgebra_obstruction(&tau, &a.grouplike, &b.grouplike).unwrap();
    assert!(!r.holds());
    assert!(!r.passed("τ is the flip"));
}

#[test]
fn frobenius_inheritance_and_nakayama_for_c2_c2() {
    let e = c2_c2_symmetric(&q()).unwrap();
    let (fa, fb) = (&e.left.frobenius, &e.right.frobenius);
    assert!(check_frobenius_inheritance(&e.twist, fa, fb).unwrap().holds());
    let alpha = twisted_copairing(&e.twist, fa, fb).unwrap();
    assert_eq!(alpha.element().to_string(), "1⊗1⊗1⊗1 + 1⊗h⊗1⊗h + g⊗1⊗g⊗1 - g⊗h⊗g⊗h");
    let r = check_nakayama_candidates(&e.twist, fa, fb).unwrap();
    assert!(r.holds(), "{r:?}");
    assert!(r.notes.iter().any(|n| n == "Θ is the identity: true"));
    assert!(r.notes.iter().any(|n| n == "Θ_A⊗Θ_B equals Θ: true"));
}

#[test]
fn grouplike_structure_is_not_frobenius() {
    let (a, b, tau) = c2_pair(-1);
    check_twisting(&tau).unwrap();
    let wrong = crate::structures::FrobeniusData::new(a.algebra.clone(), a.grouplike.clone()).unwrap();
    assert!(matches!(
        check_frobenius_inheritance(&tau, &wrong, &b.frobenius),
        Err(Error::NotFrobeniusInputs)
    ));
}

#[test]
fn separability_needs_sections() {
    let f = FieldSpec::Prime(2);
    let a = group_algebra(&cyclic_group(2), &f).unwrap();
    let b = group_algebra(&cyclic_group_named(2, "h"), &f).unwrap();
    let tau = trivial_twist(&a.algebra, &b.algebra).unwrap();
    let fake = crate::structures::SeparabilitySection {
        gamma: a.frobenius.coalgebra.comul.clone(),
    };
    assert!(matches!(
        check_separability_transfer(&tau, &fake, &fake),
        Err(Error::NotSeparableInputs)
    ));
}

#[test]
fn iterated_twists_agree_in_both_bracketings() {
    let (_, _, tau) = c2_pair(-1);
    check_twisting(&tau).unwrap();
    for i in 1..=3 {
        for j in 1..=3 {
            let it = iterated_twist(&tau, i, j).unwrap();
            assert!(it.report.holds(), "({i},{j}) {:?}", it.report);
        }
    }
    let one = iterated_twist(&tau, 1, 1).unwrap();
    assert_eq!(&one.map, tau.map());
    assert!(matches!(iterated_twist(&tau, 0, 1), Err(Error::UnsupportedParameters(_))));
}

#[test]
fn extension_of_the_jordan_seed() {
    let t = jordan_twist(&FieldSpec::Prime(3), 4, 3).unwrap();
    assert_eq!(t.image("y", "x").unwrap().to_string(), "x⊗y + x^2⊗1");
    assert_eq!(t.image("y", "x^2").unwrap().to_string(), "x^2⊗y - x^3⊗1");
    let product = build_twisted_algebra(&t, None).unwrap();
    assert!(check_algebra(&product.algebra).unwrap().holds());
}

#[test]
fn monomial_basis_degrees() {
    let x = truncated_polynomial(4, "x", &q()).unwrap();
    let basis = MonomialBasis::generated_by(&x.algebra, &["x"]).unwrap();
    assert_eq!((0..4).map(|i| basis.degree(i)).collect::<Vec<_>>(), [0, 1, 2, 3]);
    let g = group_algebra(&cyclic_group(3), &q()).unwrap();
    let b = MonomialBasis::generated_by(&g.algebra, &["g"]).unwrap();
    assert_eq!(b.degree(2), 2);
}

fn exponents(order_a: usize, order_b: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..6, order_a), order_b)
}

/// Random exponent tables, and bicharacter-shaped ones so that genuine twists also occur.
fn lambda_case() -> impl Strategy<Value = (usize, usize, Vec<Vec<u32>>)> {
    (2usize..=3, 2usize..=3, any::<bool>(), 0u32..6).prop_flat_map(|(m, n, bichar, c)| {
        exponents(m, n).prop_map(move |e| {
            if bichar {
                let allowed: Vec<u32> = (0..6).filter(|k| k * m as u32 % 6 == 0 && k * n as u32 % 6 == 0).collect();
                let c = allowed[c as usize % allowed.len()];
                let table = (0..n).map(|j| (0..m).map(|i| (c * (i * j) as u32) % 6).collect()).collect();
                (m, n, table)
            } else {
                (m, n, e)
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, .. ProptestConfig::default() })]

    #[test]
    fn random_lambda_tables_keep_every_equivalence((m, n, e) in lambda_case()) {
        let (a, b, tau) = sixth_root_lambda_twist(m, n, &e).unwrap();
        let tw = check_twisting(&tau).unwrap();
        let squares = tw.passed("unit square A") && tw.passed("unit square B")
            && tw.passed("A multiplication square") && tw.passed("B multiplication square");
        prop_assert_eq!(tw.holds(), squares);
        let compat = check_coalgebra_compat(&tau, &a.frobenius.coalgebra, &b.frobenius.coalgebra).unwrap();
        let induced = compat.passed("induced coalgebra");
        prop_assert_eq!(induced, compat.holds());
        if tw.holds() {
            let obstruction = check_bialgebra_obstruction(&tau, &a.grouplike, &b.grouplike).unwrap();
            prop_assert_eq!(obstruction.holds(), tau.is_trivial().unwrap());
            check_frobenius_inheritance(&tau, &a.frobenius, &b.frobenius).unwrap();
            let it = iterated_twist(&tau, 2, 2).unwrap();
            prop_assert!(it.report.holds());
        }
    }

    #[test]
    fn bicharacter_twists_of_truncations_are_twisting_maps(da in 1usize..4, db in 1usize..4, neg in any::<bool>()) {
        let f = q();
        let x = truncated_polynomial(da, "x", &f).unwrap();
        let y = truncated_polynomial(db, "y", &f).unwrap();
        let v = Scalar::from_int(&f, if neg { -1 } else { 1 });
        let t = Bicharacter::new(&f, GradingGroup::free(1), GradingGroup::free(1), vec![vec![v]]).unwrap();
        let tau = bicharacter_twist(&x.algebra, &y.algebra, &t).unwrap();
        prop_assert!(check_twisting(&tau).unwrap().holds());
        let product = build_twisted_algebra(&tau, None).unwrap();
        prop_assert_eq!(product.algebra.space.dim(), da * db);
        prop_assert!(check_coalgebra_compat(&tau, &x.binomial, &y.binomial).unwrap().holds());
    }
}
