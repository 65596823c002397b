//! Twisting maps τ : B⊗A → A⊗B, the twisted tensor product A⊗_τB and the transfer
//! of coalgebra, Frobenius, separable and special structure along τ.

mod checks;
mod extend;
mod frobenius;
mod product;

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};
use crate::structures::AlgebraData;
use crate::tensor::{invert, maps_equal, tensor_space, transposition, GradingGroup, LinearMap, Vector};

pub use checks::{
    check_bialgebra_obstruction, check_coalgebra_compat, check_pointwise_counterexample,
    check_separability_transfer, check_special_transfer, check_twisting, pointwise_difference,
    PointwiseDifference,
};
pub use extend::{extend_twist_from_generators, MonomialBasis};
pub use frobenius::{
    check_frobenius_inheritance, check_nakayama_candidates, inherit_frobenius, twisted_copairing,
    twisted_pairing,
};
pub use product::{build_twisted_algebra, iterated_twist, IteratedTwist, TwistedAlgebra};

/// A linear map τ : B⊗A → A⊗B between two algebras.
#[derive(Clone, Debug)]
pub struct TwistingMap {
    pub a: AlgebraData,
    pub b: AlgebraData,
    map: LinearMap,
    inverse: Arc<OnceLock<Result<LinearMap>>>,
    twisting: Arc<OnceLock<bool>>,
}

impl TwistingMap {
    /// Wraps an explicit map B⊗A → A⊗B.
    pub fn new(a: &AlgebraData, b: &AlgebraData, map: LinearMap) -> Result<TwistingMap> {
        let dom = tensor_space(&b.space, &a.space)?;
        let cod = tensor_space(&a.space, &b.space)?;
        if map.domain() != &dom || map.codomain() != &cod {
            return Err(Error::ShapeMismatch("twisting map must send B⊗A to A⊗B".into()));
        }
        Ok(TwistingMap {
            a: a.clone(),
            b: b.clone(),
            map,
            inverse: Arc::new(OnceLock::new()),
            twisting: Arc::new(OnceLock::new()),
        })
    }

    fn with_inverse(self, inv: LinearMap) -> TwistingMap {
        let _ = self.inverse.set(Ok(inv));
        self
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    /// τ⁻¹, computed once.
    pub fn inverse(&self) -> Result<LinearMap> {
        self.inverse
            .get_or_init(|| match invert(&self.map) {
                Err(Error::Singular) => Err(Error::NotBijective),
                other => other,
            })
            .clone()
    }

    pub fn is_bijective(&self) -> bool {
        self.inverse().is_ok()
    }

    /// Outcome of the last [`check_twisting`], if it has run.
    pub fn verified(&self) -> Option<bool> {
        self.twisting.get().copied()
    }

    pub(crate) fn record_twisting(&self, ok: bool) {
        let _ = self.twisting.set(ok);
    }

    /// Equality with the flip b⊗a ↦ a⊗b.
    pub fn is_trivial(&self) -> Result<bool> {
        let flip = transposition(&[self.b.space.clone(), self.a.space.clone()], 0, 1)?;
        Ok(maps_equal(&self.map, &flip)?.holds())
    }

    /// τ(b⊗a) for basis labels.
    pub fn image(&self, b: &str, a: &str) -> Result<Vector> {
        let j = self.map.domain().lookup(&format!("{b}⊗{a}"))?;
        Ok(self.map.column(j))
    }
}

/// The flip b⊗a ↦ a⊗b.
pub fn trivial_twist(a: &AlgebraData, b: &AlgebraData) -> Result<TwistingMap> {
    let flip = transposition(&[b.space.clone(), a.space.clone()], 0, 1)?;
    let back = transposition(&[a.space.clone(), b.space.clone()], 0, 1)?;
    Ok(TwistingMap::new(a, b, flip)?.with_inverse(back))
}

/// t : G_A × G_B → k^×, multiplicative in each argument, stored by its values on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicharacter {
    pub field: FieldSpec,
    pub group_a: GradingGroup,
    pub group_b: GradingGroup,
    /// values[i][j] = t(e_i, f_j) for the standard generators.
    pub values: Vec<Vec<Scalar>>,
}

impl Bicharacter {
    pub fn new(
        field: &FieldSpec,
        group_a: GradingGroup,
        group_b: GradingGroup,
        values: Vec<Vec<Scalar>>,
    ) -> Result<Bicharacter> {
        if values.len() != group_a.rank() || values.iter().any(|row| row.len() != group_b.rank()) {
            return Err(Error::InconsistentBicharacter(format!(
                "expected a {}×{} table of values",
                group_a.rank(),
                group_b.rank()
            )));
        }
        for (i, row) in values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.is_zero() {
                    return Err(Error::InconsistentBicharacter(format!("value ({i}, {j}) is zero")));
                }
                for m in [group_a.moduli()[i], group_b.moduli()[j]] {
                    if m > 0 && !v.pow(m as i64)?.is_one() {
                        return Err(Error::InconsistentBicharacter(format!(
                            "value ({i}, {j}) = {v} has order not dividing {m}"
                        )));
                    }
                }
            }
        }
        Ok(Bicharacter {
            field: field.clone(),
            group_a,
            group_b,
            values,
        })
    }

    /// t(g, h) = ∏ values[i][j]^(g_i h_j).
    pub fn eval(&self, g: &[i64], h: &[i64]) -> Result<Scalar> {
        let mut out = Scalar::one(&self.field);
        for (i, gi) in g.iter().enumerate() {
            for (j, hj) in h.iter().enumerate() {
                if gi * hj != 0 {
                    out = &out * &self.values[i][j].pow(gi * hj)?;
                }
            }
        }
        Ok(out)
    }
}

/// τ(b⊗a) = t(|a|, |b|) a⊗b for graded A and B.
pub fn bicharacter_twist(a: &AlgebraData, b: &AlgebraData, t: &Bicharacter) -> Result<TwistingMap> {
    let ga = a.space.grading_group().ok_or(Error::UngradedAlgebra)?;
    let gb = b.space.grading_group().ok_or(Error::UngradedAlgebra)?;
    if ga != t.group_a || gb != t.group_b {
        return Err(Error::InconsistentBicharacter("grading groups do not match the algebras".into()));
    }
    diagonal_twist(a, b, |bi, ai| {
        t.eval(&a.space.grade(ai).expect("graded"), &b.space.grade(bi).expect("graded"))
    })
}

/// τ(h⊗g) = λ(h, g) g⊗h with λ indexed by basis positions of B then A.
pub fn graded_group_twist(a: &AlgebraData, b: &AlgebraData, lambda: &[Vec<Scalar>]) -> Result<TwistingMap> {
    if lambda.len() != b.space.dim() || lambda.iter().any(|r| r.len() != a.space.dim()) {
        return Err(Error::ShapeMismatch("λ table must be dim B × dim A".into()));
    }
    for (bi, row) in lambda.iter().enumerate() {
        for (ai, v) in row.iter().enumerate() {
            if v.is_zero() {
                return Err(Error::NonInvertibleLambda(format!(
                    "{}⊗{}",
                    b.space.label(bi),
                    a.space.label(ai)
                )));
            }
        }
    }
    diagonal_twist(a, b, |bi, ai| Ok(lambda[bi][ai].clone()))
}

fn diagonal_twist(
    a: &AlgebraData,
    b: &AlgebraData,
    scale: impl Fn(usize, usize) -> Result<Scalar>,
) -> Result<TwistingMap> {
    let (na, nb) = (a.space.dim(), b.space.dim());
    let dom = tensor_space(&b.space, &a.space)?;
    let cod = tensor_space(&a.space, &b.space)?;
    let mut cols = Vec::with_capacity(na * nb);
    let mut inv_cols = vec![Vec::new(); na * nb];
    for bi in 0..nb {
        for ai in 0..na {
            let c = scale(bi, ai)?;
            inv_cols[ai * nb + bi] = vec![(bi * na + ai, c.inv()?)];
            cols.push(vec![(ai * nb + bi, c)]);
        }
    }
    let map = LinearMap::new(&dom, &cod, cols)?;
    let inv = LinearMap::new(&cod, &dom, inv_cols)?;
    Ok(TwistingMap::new(a, b, map)?.with_inverse(inv))
}

#[cfg(test)]
mod tests;
