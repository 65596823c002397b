use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::FieldSpec;

/// A basis label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// The basis vector of the ground field.
    Unit,
    /// A named element, e.g. a group element.
    Element(String),
    /// A monomial given by (variable, exponent) pairs.
    Monomial(Vec<(String, u32)>),
    /// A pure tensor of factor labels.
    Tensor(Vec<Label>),
}

impl Label {
    pub fn element(name: impl Into<String>) -> Label {
        Label::Element(name.into())
    }

    pub fn monomial(var: &str, exp: u32) -> Label {
        Label::Monomial(vec![(var.to_string(), exp)])
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Unit => write!(f, "1"),
            Label::Element(s) => write!(f, "{s}"),
            Label::Monomial(parts) => {
                let mut any = false;
                for (v, e) in parts {
                    match e {
                        0 => continue,
                        1 => write!(f, "{v}")?,
                        _ => write!(f, "{v}^{e}")?,
                    }
                    any = true;
                }
                if !any {
                    write!(f, "1")?;
                }
                Ok(())
            }
            Label::Tensor(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "⊗")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

/// A finitely generated abelian group ⊕ ℤ/mᵢ, with mᵢ = 0 meaning ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradingGroup {
    moduli: Vec<u64>,
}

/// Coordinates of a grade in a [`GradingGroup`].
pub type Grade = Vec<i64>;

impl GradingGroup {
    pub fn new(moduli: Vec<u64>) -> GradingGroup {
        GradingGroup { moduli }
    }

    /// ℤ^rank.
    pub fn free(rank: usize) -> GradingGroup {
        GradingGroup {
            moduli: vec![0; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn reduce(&self, g: &mut Grade) {
        for (x, &m) in g.iter_mut().zip(&self.moduli) {
            if m > 0 {
                *x = x.rem_euclid(m as i64);
            }
        }
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Grade {
        let mut out: Grade = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&mut out);
        out
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Grade {
        let mut out: Grade = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.reduce(&mut out);
        out
    }

    /// The direct sum of two grading groups.
    pub fn direct_sum(&self, other: &GradingGroup) -> GradingGroup {
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&other.moduli);
        GradingGroup { moduli }
    }
}

#[derive(Debug)]
struct Factor {
    labels: Vec<Label>,
    by_label: HashMap<Label, usize>,
    by_name: HashMap<String, usize>,
    grading: Option<(GradingGroup, Vec<Grade>)>,
}

impl PartialEq for Factor {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.grading == other.grading
    }
}

impl Factor {
    fn new(labels: Vec<Label>, grading: Option<(GradingGroup, Vec<Grade>)>) -> Result<Factor> {
        if labels.is_empty() {
            return Err(Error::InvalidSpace("a space needs at least one basis vector".into()));
        }
        let mut by_label = HashMap::new();
        let mut by_name = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if by_label.insert(l.clone(), i).is_some() || by_name.insert(l.to_string(), i).is_some()
            {
                return Err(Error::InvalidSpace(format!("duplicate basis label {l}")));
            }
        }
        if let Some((group, grades)) = &grading {
            if grades.len() != labels.len() || grades.iter().any(|g| g.len() != group.rank()) {
                return Err(Error::InvalidSpace("grading does not match the basis".into()));
            }
        }
        let grading = grading.map(|(group, mut grades)| {
            grades.iter_mut().for_each(|g| group.reduce(g));
            (group, grades)
        });
        Ok(Factor {
            labels,
            by_label,
            by_name,
            grading,
        })
    }
}

/// A finite-dimensional vector space with an ordered labelled basis.
///
/// Tensor products are stored as flat lists of factors, so the associator is the
/// identity and the basis order is row-major (first factor varies slowest).
#[derive(Clone)]
pub struct Space {
    inner: Arc<SpaceInner>,
}

struct SpaceInner {
    field: FieldSpec,
    factors: Vec<Arc<Factor>>,
    dims: Vec<usize>,
    dim: usize,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return true;
        }
        let (a, b) = (&self.inner, &other.inner);
        a.field == b.field
            && a.factors.len() == b.factors.len()
            && a
                .factors
                .iter()
                .zip(&b.factors)
                .all(|(x, y)| Arc::ptr_eq(x, y) || **x == **y)
    }
}

impl Eq for Space {}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Space[{}; dim {}; ", self.inner.field, self.dim())?;
        for (i, fac) in self.inner.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊗ ")?;
            }
            let shown: Vec<String> = fac.labels.iter().take(4).map(|l| l.to_string()).collect();
            write!(f, "<{}", shown.join(","))?;
            if fac.labels.len() > 4 {
                write!(f, ",…")?;
            }
            write!(f, ">")?;
        }
        write!(f, "]")
    }
}

impl Space {
    fn from_factors(field: FieldSpec, factors: Vec<Arc<Factor>>) -> Space {
        let dims: Vec<usize> = factors.iter().map(|f| f.labels.len()).collect();
        let dim = dims.iter().product();
        Space {
            inner: Arc::new(SpaceInner {
                field,
                factors,
                dims,
                dim,
            }),
        }
    }

    /// An ungraded space with the given distinct labels.
    pub fn new(field: &FieldSpec, labels: Vec<Label>) -> Result<Space> {
        let factor = Factor::new(labels, None)?;
        Ok(Space::from_factors(field.clone(), vec![Arc::new(factor)]))
    }

    /// A space graded by `group`, one grade per label.
    pub fn graded(
        field: &FieldSpec,
        labels: Vec<Label>,
        group: GradingGroup,
        grades: Vec<Grade>,
    ) -> Result<Space> {
        let factor = Factor::new(labels, Some((group, grades)))?;
        Ok(Space::from_factors(field.clone(), vec![Arc::new(factor)]))
    }

    /// The ground field k as a one-dimensional space labelled "1", graded by the trivial group.
    pub fn ground(field: &FieldSpec) -> Space {
        Space::graded(field, vec![Label::Unit], GradingGroup::default(), vec![vec![]])
            .expect("ground space is valid")
    }

    pub fn field(&self) -> &FieldSpec {
        &self.inner.field
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn factor_count(&self) -> usize {
        self.inner.factors.len()
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.inner.dims
    }

    /// The i-th tensor factor as a space of its own.
    pub fn factor(&self, i: usize) -> Space {
        Space::from_factors(self.inner.field.clone(), vec![self.inner.factors[i].clone()])
    }

    pub fn factors(&self) -> Vec<Space> {
        (0..self.factor_count()).map(|i| self.factor(i)).collect()
    }

    /// True for the ground field itself (not for k⊗k).
    pub fn is_ground(&self) -> bool {
        self.factor_count() == 1 && self.inner.factors[0].labels == [Label::Unit]
    }

    /// Row-major multi-index of a basis index.
    pub fn split(&self, mut index: usize) -> Vec<usize> {
        let dims = &self.inner.dims;
        let mut out = vec![0; dims.len()];
        for k in (0..dims.len()).rev() {
            out[k] = index % dims[k];
            index /= dims[k];
        }
        out
    }

    pub fn join(&self, parts: &[usize]) -> usize {
        parts
            .iter()
            .zip(&self.inner.dims)
            .fold(0, |acc, (&p, &d)| acc * d + p)
    }

    pub fn label(&self, index: usize) -> Label {
        let factors = &self.inner.factors;
        if factors.len() == 1 {
            return factors[0].labels[index].clone();
        }
        let parts = self.split(index);
        Label::Tensor(
            parts
                .iter()
                .zip(factors)
                .map(|(&i, f)| f.labels[i].clone())
                .collect(),
        )
    }

    pub fn labels(&self) -> Vec<Label> {
        (0..self.dim()).map(|i| self.label(i)).collect()
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        let factors = &self.inner.factors;
        if factors.len() == 1 {
            return factors[0].by_label.get(label).copied();
        }
        match label {
            Label::Tensor(parts) if parts.len() == factors.len() => {
                let idx: Option<Vec<usize>> = parts
                    .iter()
                    .zip(factors)
                    .map(|(p, f)| f.by_label.get(p).copied())
                    .collect();
                idx.map(|v| self.join(&v))
            }
            _ => None,
        }
    }

    /// Looks a basis vector up by its printed label; factors are separated by `⊗` or `,`.
    pub fn find(&self, text: &str) -> Option<usize> {
        let factors = &self.inner.factors;
        let parts: Vec<&str> = text.split(['⊗', ',']).map(str::trim).collect();
        if parts.len() != factors.len() {
            return None;
        }
        let idx: Option<Vec<usize>> = parts
            .iter()
            .zip(factors)
            .map(|(p, f)| f.by_name.get(*p).copied())
            .collect();
        idx.map(|v| self.join(&v))
    }

    /// Like [`Space::find`] but with an error naming the label.
    pub fn lookup(&self, text: &str) -> Result<usize> {
        self.find(text)
            .ok_or_else(|| Error::UnknownLabel(text.to_string()))
    }

    /// The grading group, present when every factor is graded.
    pub fn grading_group(&self) -> Option<GradingGroup> {
        let mut group = GradingGroup::default();
        for f in &self.inner.factors {
            group = group.direct_sum(&f.grading.as_ref()?.0);
        }
        Some(group)
    }

    /// Grade of a basis vector: the concatenation of its factor grades.
    pub fn grade(&self, index: usize) -> Option<Grade> {
        let parts = self.split(index);
        let mut out = Vec::new();
        for (f, i) in self.inner.factors.iter().zip(parts) {
            out.extend_from_slice(&f.grading.as_ref()?.1[i]);
        }
        Some(out)
    }

    pub fn is_graded(&self) -> bool {
        self.inner.factors.iter().all(|f| f.grading.is_some())
    }
}

/// V ⊗ W with row-major basis order.
pub fn tensor_space(v: &Space, w: &Space) -> Result<Space> {
    if v.field() != w.field() {
        return Err(Error::FieldMismatch(v.field().clone(), w.field().clone()));
    }
    let mut factors = v.inner.factors.clone();
    factors.extend(w.inner.factors.iter().cloned());
    Ok(Space::from_factors(v.field().clone(), factors))
}

/// The tensor product of a non-empty list of spaces.
pub fn tensor_spaces(spaces: &[&Space]) -> Result<Space> {
    let (first, rest) = spaces
        .split_first()
        .ok_or_else(|| Error::ShapeMismatch("empty tensor product".into()))?;
    rest.iter()
        .try_fold((*first).clone(), |acc, s| tensor_space(&acc, s))
}
