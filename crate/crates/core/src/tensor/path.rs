use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::map::{
    check_cap, kron_cols, permutation_spaces, permute_index, Comparison, LinearMap,
    PartialLinearMap, Witness,
};
use super::space::{tensor_spaces, Space};
use super::vector::{accumulate, Col, Vector};

/// One arrow in a diagram path, evaluated lazily column by column.
#[derive(Clone, Debug)]
pub enum Stage {
    Map(LinearMap),
    Partial(Arc<PartialLinearMap>),
    /// Factorwise tensor product of stages.
    Tensor {
        parts: Vec<Stage>,
        domain: Space,
        codomain: Space,
    },
    /// A reordering of tensor factors, see [`super::map::permutation`].
    Permute {
        factors: Vec<Space>,
        perm: Vec<usize>,
        domain: Space,
        codomain: Space,
    },
    Identity(Space),
    Path(Box<DiagramPath>),
}

impl From<LinearMap> for Stage {
    fn from(f: LinearMap) -> Stage {
        Stage::Map(f)
    }
}

impl From<&LinearMap> for Stage {
    fn from(f: &LinearMap) -> Stage {
        Stage::Map(f.clone())
    }
}

impl From<DiagramPath> for Stage {
    fn from(p: DiagramPath) -> Stage {
        Stage::Path(Box::new(p))
    }
}

impl Stage {
    pub fn partial(p: &Arc<PartialLinearMap>) -> Stage {
        Stage::Partial(p.clone())
    }

    pub fn identity(v: &Space) -> Stage {
        Stage::Identity(v.clone())
    }

    pub fn tensor(parts: Vec<Stage>) -> Result<Stage> {
        if parts.is_empty() {
            return Err(Error::ShapeMismatch("empty tensor of stages".into()));
        }
        let doms: Vec<Space> = parts.iter().map(|s| s.domain().clone()).collect();
        let cods: Vec<Space> = parts.iter().map(|s| s.codomain().clone()).collect();
        let domain = tensor_spaces(&doms.iter().collect::<Vec<_>>())?;
        let codomain = tensor_spaces(&cods.iter().collect::<Vec<_>>())?;
        Ok(Stage::Tensor {
            parts,
            domain,
            codomain,
        })
    }

    /// Output position i carries input factor `perm[i]`.
    pub fn permute(factors: &[Space], perm: &[usize]) -> Result<Stage> {
        let (domain, codomain) = permutation_spaces(factors, perm)?;
        Ok(Stage::Permute {
            factors: factors.to_vec(),
            perm: perm.to_vec(),
            domain,
            codomain,
        })
    }

    pub fn domain(&self) -> &Space {
        match self {
            Stage::Map(f) => f.domain(),
            Stage::Partial(p) => p.domain(),
            Stage::Tensor { domain, .. } | Stage::Permute { domain, .. } => domain,
            Stage::Identity(v) => v,
            Stage::Path(p) => p.domain(),
        }
    }

    pub fn codomain(&self) -> &Space {
        match self {
            Stage::Map(f) => f.codomain(),
            Stage::Partial(p) => p.codomain(),
            Stage::Tensor { codomain, .. } | Stage::Permute { codomain, .. } => codomain,
            Stage::Identity(v) => v,
            Stage::Path(p) => p.codomain(),
        }
    }

    /// Image of a basis vector.
    fn basis_image(&self, index: usize) -> Result<Col> {
        let one = || Scalar::one(self.domain().field());
        match self {
            Stage::Map(f) => Ok(f.col(index).clone()),
            Stage::Partial(p) => p.col(index).cloned(),
            Stage::Identity(_) => Ok(vec![(index, one())]),
            Stage::Permute { factors, perm, .. } => {
                Ok(vec![(permute_index(factors, perm, index), one())])
            }
            Stage::Path(p) => p.evaluate_col(vec![(index, one())]),
            Stage::Tensor { parts, domain, .. } => {
                let multi = domain.split(index);
                let mut offset = 0;
                let mut out: Col = vec![(0, one())];
                for part in parts {
                    let pd = part.domain();
                    let n = pd.factor_count();
                    let sub = pd.join(&multi[offset..offset + n]);
                    offset += n;
                    let img = part.basis_image(sub)?;
                    out = kron_cols(&out, &img, part.codomain().dim());
                    if out.is_empty() {
                        break;
                    }
                }
                Ok(out)
            }
        }
    }

    fn apply_col(&self, v: &[(usize, Scalar)]) -> Result<Col> {
        match self {
            Stage::Map(f) => Ok(f.apply_col(v)),
            Stage::Identity(_) => Ok(v.to_vec()),
            _ => {
                let mut terms = Vec::new();
                for (j, c) in v {
                    for (i, x) in self.basis_image(*j)? {
                        terms.push((i, c * &x));
                    }
                }
                Ok(accumulate(terms))
            }
        }
    }
}

/// A chain of stages applied first to last.
#[derive(Clone, Debug)]
pub struct DiagramPath {
    stages: Vec<Stage>,
    domain: Space,
    codomain: Space,
}

impl DiagramPath {
    pub fn new(stages: Vec<Stage>) -> Result<DiagramPath> {
        let first = stages
            .first()
            .ok_or_else(|| Error::ShapeMismatch("empty diagram path".into()))?;
        for (k, w) in stages.windows(2).enumerate() {
            if w[0].codomain() != w[1].domain() {
                return Err(Error::ShapeMismatch(format!(
                    "stage {} ends in {:?} but stage {} starts in {:?}",
                    k,
                    w[0].codomain(),
                    k + 1,
                    w[1].domain()
                )));
            }
        }
        Ok(DiagramPath {
            domain: first.domain().clone(),
            codomain: stages.last().expect("non-empty").codomain().clone(),
            stages,
        })
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub(crate) fn evaluate_col(&self, mut v: Col) -> Result<Col> {
        for s in &self.stages {
            if v.is_empty() {
                break;
            }
            v = s.apply_col(&v)?;
        }
        Ok(v)
    }

    pub fn evaluate(&self, v: &Vector) -> Result<Vector> {
        if v.space() != &self.domain {
            return Err(Error::ShapeMismatch("vector outside the path domain".into()));
        }
        Ok(Vector::from_col(&self.codomain, self.evaluate_col(v.entries().to_vec())?))
    }

    /// The composite as a matrix.
    pub fn materialize(&self) -> Result<LinearMap> {
        check_cap(self.domain.dim())?;
        let one = Scalar::one(self.domain.field());
        let cols = (0..self.domain.dim())
            .map(|j| self.evaluate_col(vec![(j, one.clone())]))
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearMap::from_cols_unchecked(&self.domain, &self.codomain, cols))
    }
}

pub fn evaluate_path(path: &DiagramPath, v: &Vector) -> Result<Vector> {
    path.evaluate(v)
}

/// Compares two parallel paths on every basis vector of their common domain.
pub fn compare_paths(left: &DiagramPath, right: &DiagramPath) -> Result<Comparison> {
    if left.domain != right.domain || left.codomain != right.codomain {
        return Err(Error::ShapeMismatch(format!(
            "paths {:?} -> {:?} and {:?} -> {:?} are not parallel",
            left.domain, left.codomain, right.domain, right.codomain
        )));
    }
    check_cap(left.domain.dim())?;
    let one = Scalar::one(left.domain.field());
    let mut out = Comparison::equal();
    for j in 0..left.domain.dim() {
        let a = left.evaluate_col(vec![(j, one.clone())])?;
        let b = right.evaluate_col(vec![(j, one.clone())])?;
        if a != b {
            out.mismatches += 1;
            if out.witness.is_none() {
                out.witness = Some(Witness {
                    index: j,
                    label: left.domain.label(j),
                    left: Vector::from_col(&left.codomain, a),
                    right: Vector::from_col(&left.codomain, b),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;
    use crate::tensor::map::{compose, identity, permutation, tensor_map, tensor_maps};
    use crate::tensor::Label;
    use proptest::prelude::*;

    fn space(n: usize, prefix: &str) -> Space {
        Space::new(
            &FieldSpec::Rational,
            (0..n).map(|i| Label::element(format!("{prefix}{i}"))).collect(),
        )
        .unwrap()
    }

    fn build(dom: &Space, cod: &Space, xs: &[i64]) -> LinearMap {
        let d = dom.dim();
        LinearMap::from_triplets(
            dom,
            cod,
            xs.iter()
                .enumerate()
                .map(|(k, &x)| (k / d, k % d, Scalar::from_int(&FieldSpec::Rational, x))),
        )
        .unwrap()
    }

    #[test]
    fn chain_is_checked() {
        let a = space(2, "a");
        let b = space(3, "b");
        let err = DiagramPath::new(vec![Stage::identity(&a), Stage::identity(&b)]);
        assert!(matches!(err, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn partial_stage_reports_undefined_column() {
        let a = space(2, "a");
        let mut p = PartialLinearMap::new(&a, &a).unwrap();
        p.define(0, &Vector::basis(&a, 0)).unwrap();
        let path = DiagramPath::new(vec![Stage::partial(&Arc::new(p))]).unwrap();
        assert!(path.evaluate(&Vector::basis(&a, 0)).is_ok());
        assert_eq!(
            path.evaluate(&Vector::basis(&a, 1)),
            Err(Error::UndefinedColumn("a1".into()))
        );
    }

    proptest! {
        #[test]
        fn lazy_paths_match_materialized_composites(
            f in prop::collection::vec(-2i64..3, 4),
            g in prop::collection::vec(-2i64..3, 6),
            h in prop::collection::vec(-2i64..3, 9),
        ) {
            let (a, b) = (space(2, "a"), space(3, "b"));
            let f = build(&a, &a, &f);
            let g = build(&a, &b, &g);
            let h = build(&b, &b, &h);
            let fs = [a.clone(), b.clone(), a.clone()];
            let lazy = DiagramPath::new(vec![
                Stage::tensor(vec![Stage::from(&f), Stage::from(&h), Stage::identity(&a)]).unwrap(),
                Stage::permute(&fs, &[2, 0, 1]).unwrap(),
                Stage::tensor(vec![Stage::from(&g), Stage::identity(&a), Stage::from(&h)]).unwrap(),
            ]).unwrap();
            let strict = compose(
                &tensor_maps(&[&g, &identity(&a), &h]).unwrap(),
                &compose(
                    &permutation(&fs, &[2, 0, 1]).unwrap(),
                    &tensor_maps(&[&f, &h, &identity(&a)]).unwrap(),
                ).unwrap(),
            ).unwrap();
            prop_assert_eq!(lazy.materialize().unwrap(), strict.clone());
            let whole = DiagramPath::new(vec![Stage::from(&strict)]).unwrap();
            prop_assert!(compare_paths(&lazy, &whole).unwrap().holds());
            let nested = DiagramPath::new(vec![
                Stage::tensor(vec![Stage::from(lazy.clone()), Stage::identity(&a)]).unwrap(),
            ]).unwrap();
            prop_assert_eq!(nested.materialize().unwrap(), tensor_map(&strict, &identity(&a)).unwrap());
        }
    }
}
