use num_bigint::BigInt;
use num_integer::binomial;

use crate::error::Result;
use crate::scalar::{FieldSpec, Scalar};
use crate::structures::{AlgebraData, CoalgebraData, FrobeniusData, SeparabilitySection};
use crate::tensor::{tensor_space, GradingGroup, Label, LinearMap, Space, Vector};

use super::groups::FiniteGroup;

/// An algebra from a product rule on basis indices and the index of the unit.
pub fn algebra_from_products(
    space: &Space,
    unit: usize,
    product: impl Fn(usize, usize) -> Result<Vector>,
) -> Result<AlgebraData> {
    let n = space.dim();
    let vv = tensor_space(space, space)?;
    let mul = LinearMap::from_fn(&vv, space, |j| product(j / n, j % n))?;
    let k = Space::ground(space.field());
    let one = Vector::basis(space, unit);
    let unit_map = LinearMap::from_fn(&k, space, |_| Ok(one.clone()))?;
    AlgebraData::new(space, mul, unit_map)
}

/// A coalgebra from a coproduct rule on basis indices and counit values.
pub fn coalgebra_from_rule(
    space: &Space,
    comul: impl Fn(usize) -> Result<Vector>,
    counit: impl Fn(usize) -> Scalar,
) -> Result<CoalgebraData> {
    let vv = tensor_space(space, space)?;
    let k = Space::ground(space.field());
    let d = LinearMap::from_fn(space, &vv, comul)?;
    let e = LinearMap::from_fn(space, &k, |j| Vector::from_terms(&k, [(0, counit(j))]))?;
    CoalgebraData::new(space, d, e)
}

/// kG with its grouplike bialgebra structure and Frobenius structures.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    pub group: FiniteGroup,
    pub algebra: AlgebraData,
    /// Δ(g) = g⊗g, ε(g) = 1.
    pub grouplike: CoalgebraData,
    /// Δ(g) = Σ_r gr⊗r⁻¹, ε(g) = δ_{g,1}.
    pub frobenius: FrobeniusData,
    /// Δ/|G| with ε·|G|, present when |G| is invertible.
    pub special: Option<FrobeniusData>,
    /// Γ(g) = (1/|G|) Σ_r gr⊗r⁻¹, present when |G| is invertible.
    pub section: Option<SeparabilitySection>,
}

pub fn group_space(group: &FiniteGroup, field: &FieldSpec) -> Result<Space> {
    let labels = group.names().iter().map(Label::element).collect();
    match group.grading() {
        Some((gg, grades)) => Space::graded(field, labels, gg.clone(), grades.clone()),
        None => Space::new(field, labels),
    }
}

pub fn group_algebra(group: &FiniteGroup, field: &FieldSpec) -> Result<GroupAlgebra> {
    field.validate()?;
    let v = group_space(group, field)?;
    let n = group.order();
    let vv = tensor_space(&v, &v)?;
    let one = Scalar::one(field);
    let zero = Scalar::zero(field);
    let algebra = algebra_from_products(&v, group.identity(), |x, y| Ok(Vector::basis(&v, group.mul(x, y))))?;
    let grouplike = coalgebra_from_rule(&v, |x| Ok(Vector::basis(&vv, x * n + x)), |_| one.clone())?;
    let frob_comul = |x: usize| {
        Vector::from_terms(
            &vv,
            (0..n).map(|r| (group.mul(x, r) * n + group.inv(r), one.clone())),
        )
    };
    let counit = |x: usize| if x == group.identity() { one.clone() } else { zero.clone() };
    let frobenius = FrobeniusData::new(algebra.clone(), coalgebra_from_rule(&v, frob_comul, counit)?)?;
    let order = Scalar::from_int(field, n as i64);
    let (special, section) = match order.inv() {
        Ok(inv) => {
            let comul = frobenius.coalgebra.comul.scale(&inv);
            let counit = frobenius.coalgebra.counit.scale(&order);
            let sp = FrobeniusData::new(algebra.clone(), CoalgebraData::new(&v, comul.clone(), counit)?)?;
            (Some(sp), Some(SeparabilitySection { gamma: comul }))
        }
        Err(_) => (None, None),
    };
    Ok(GroupAlgebra {
        group: group.clone(),
        algebra,
        grouplike,
        frobenius,
        special,
        section,
    })
}

/// k[x]/(x^n), graded by degree.
#[derive(Clone, Debug)]
pub struct TruncatedPolynomial {
    pub n: usize,
    pub var: String,
    pub algebra: AlgebraData,
    /// Δ(x^i) = Σ_j x^{i+j}⊗x^{n-1-j}, ε(x^i) = δ_{i,n-1}; Δ has degree n−1.
    pub frobenius: FrobeniusData,
    /// Δ(x^i) = Σ_j C(i,j) x^j⊗x^{i-j}, ε(x^i) = δ_{i,0}.
    pub binomial: CoalgebraData,
}

impl TruncatedPolynomial {
    /// Degree of the Frobenius comultiplication.
    pub fn comul_degree(&self) -> i64 {
        self.n as i64 - 1
    }
}

pub fn truncated_space(n: usize, var: &str, field: &FieldSpec) -> Result<Space> {
    Space::graded(
        field,
        (0..n).map(|i| Label::monomial(var, i as u32)).collect(),
        GradingGroup::free(1),
        (0..n).map(|i| vec![i as i64]).collect(),
    )
}

pub fn truncated_polynomial(n: usize, var: &str, field: &FieldSpec) -> Result<TruncatedPolynomial> {
    field.validate()?;
    if n == 0 {
        return Err(crate::error::Error::UnsupportedParameters("truncation degree must be positive".into()));
    }
    let v = truncated_space(n, var, field)?;
    let vv = tensor_space(&v, &v)?;
    let one = Scalar::one(field);
    let zero = Scalar::zero(field);
    let algebra = algebra_from_products(&v, 0, |i, j| {
        Ok(if i + j < n { Vector::basis(&v, i + j) } else { Vector::zero(&v) })
    })?;
    let frob = coalgebra_from_rule(
        &v,
        |i| Vector::from_terms(&vv, (0..n - i).map(|j| ((i + j) * n + (n - 1 - j), one.clone()))),
        |i| if i == n - 1 { one.clone() } else { zero.clone() },
    )?;
    let binomial_co = coalgebra_from_rule(
        &v,
        |i| {
            Vector::from_terms(
                &vv,
                (0..=i).map(|j| (j * n + (i - j), Scalar::from_bigint(field, &binomial(BigInt::from(i), BigInt::from(j))))),
            )
        },
        |i| if i == 0 { one.clone() } else { zero.clone() },
    )?;
    Ok(TruncatedPolynomial {
        n,
        var: var.to_string(),
        frobenius: FrobeniusData::new(algebra.clone(), frob)?,
        algebra,
        binomial: binomial_co,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{cyclic_group, symmetric_group_3};
    use crate::structures::{check_algebra, check_bialgebra, check_coalgebra, check_frobenius, check_separable, check_special};

    #[test]
    fn nonabelian_group_algebra_is_frobenius() {
        let s3 = group_algebra(&symmetric_group_3(), &FieldSpec::Rational).unwrap();
        assert!(check_algebra(&s3.algebra).unwrap().holds());
        assert!(check_frobenius(&s3.frobenius).unwrap().holds());
        assert!(check_special(s3.special.as_ref().unwrap()).unwrap().holds());
        assert!(check_separable(&s3.algebra, s3.section.as_ref().unwrap()).unwrap().holds());
        assert!(check_bialgebra(&s3.algebra, &s3.grouplike).unwrap().holds());
    }

    #[test]
    fn binomial_coalgebra_is_a_bialgebra_only_in_matching_characteristic() {
        let q = truncated_polynomial(3, "x", &FieldSpec::Rational).unwrap();
        assert!(check_coalgebra(&q.binomial).unwrap().holds());
        assert!(!check_bialgebra(&q.algebra, &q.binomial).unwrap().holds());
        let f3 = truncated_polynomial(3, "x", &FieldSpec::Prime(3)).unwrap();
        assert!(check_bialgebra(&f3.algebra, &f3.binomial).unwrap().holds());
    }

    #[test]
    fn group_algebra_in_characteristic_dividing_order() {
        let f2 = FieldSpec::Prime(2);
        let c2 = group_algebra(&cyclic_group(2), &f2).unwrap();
        assert!(check_frobenius(&c2.frobenius).unwrap().holds());
        assert!(c2.section.is_none());
    }
}
