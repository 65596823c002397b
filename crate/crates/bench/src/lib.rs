//! Fixtures shared by the benchmarks.

use twistlab_core::gallery::{
    cyclic_group, cyclic_group_named, default_variables, group_algebra, quantum_complete_intersection, uniform_q,
    GroupAlgebra, QuantumCompleteIntersection,
};
use twistlab_core::scalar::root_of_unity;
use twistlab_core::tensor::GradingGroup;
use twistlab_core::twist::{bicharacter_twist, check_twisting, Bicharacter, TwistingMap};
use twistlab_core::{FieldSpec, Result, Scalar};

/// kC_n⊗kC_n over ℚ(ζ_n) with t(g, h) = ζ_n, twisting verified.
pub fn cyclic_pair(n: usize) -> Result<(GroupAlgebra, GroupAlgebra, TwistingMap)> {
    let field = if n <= 2 { FieldSpec::Rational } else { FieldSpec::cyclotomic(n as u64)? };
    let a = group_algebra(&cyclic_group(n), &field)?;
    let b = group_algebra(&cyclic_group_named(n, "h"), &field)?;
    let modulus = vec![n as u64];
    let t = Bicharacter::new(
        &field,
        GradingGroup::new(modulus.clone()),
        GradingGroup::new(modulus),
        vec![vec![root_of_unity(&field, n as u64)?]],
    )?;
    let tau = bicharacter_twist(&a.algebra, &b.algebra, &t)?;
    check_twisting(&tau)?;
    Ok((a, b, tau))
}

/// A quantum complete intersection with uniform q = −1 over ℚ.
pub fn sign_qci(m: &[usize]) -> Result<QuantumCompleteIntersection> {
    let f = FieldSpec::Rational;
    let q = uniform_q(&Scalar::from_int(&f, -1), m.len())?;
    quantum_complete_intersection(m, &q, &f, &default_variables(m.len()))
}
