use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::space::{tensor_space, tensor_spaces, Label, Space};
use super::vector::{accumulate, Col, Vector};

static DIMENSION_CAP: AtomicUsize = AtomicUsize::new(usize::MAX);

/// Caps the domain dimension of every materialized map (unlimited by default).
pub fn set_dimension_cap(cap: usize) {
    DIMENSION_CAP.store(cap, Ordering::Relaxed);
}

pub fn dimension_cap() -> usize {
    DIMENSION_CAP.load(Ordering::Relaxed)
}

pub(crate) fn check_cap(dim: usize) -> Result<()> {
    let cap = dimension_cap();
    if dim > cap {
        return Err(Error::DimensionCap { dim, cap });
    }
    Ok(())
}

/// An exact sparse matrix between two spaces, stored by columns.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap {
    domain: Space,
    codomain: Space,
    cols: Arc<Vec<Col>>,
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinearMap {:?} -> {:?}", self.domain, self.codomain)?;
        for (j, col) in self.cols.iter().enumerate() {
            let v = Vector::from_col(&self.codomain, col.clone());
            writeln!(f, "  {} ↦ {}", self.domain.label(j), v)?;
        }
        Ok(())
    }
}

impl LinearMap {
    /// Builds a map from column lists; duplicate entries are summed and zeros dropped.
    pub fn new(domain: &Space, codomain: &Space, cols: Vec<Vec<(usize, Scalar)>>) -> Result<Self> {
        if domain.field() != codomain.field() {
            return Err(Error::FieldMismatch(domain.field().clone(), codomain.field().clone()));
        }
        if cols.len() != domain.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{} columns for a domain of dimension {}",
                cols.len(),
                domain.dim()
            )));
        }
        check_cap(domain.dim())?;
        let mut out = Vec::with_capacity(cols.len());
        for col in cols {
            let col = accumulate(col);
            for (i, c) in &col {
                if *i >= codomain.dim() {
                    return Err(Error::ShapeMismatch(format!(
                        "row {i} out of range for codomain dimension {}",
                        codomain.dim()
                    )));
                }
                if c.field() != *domain.field() {
                    return Err(Error::FieldMismatch(c.field(), domain.field().clone()));
                }
            }
            out.push(col);
        }
        Ok(LinearMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            cols: Arc::new(out),
        })
    }

    /// Columns from a closure returning the image of each basis vector.
    pub fn from_fn(
        domain: &Space,
        codomain: &Space,
        mut image: impl FnMut(usize) -> Result<Vector>,
    ) -> Result<Self> {
        check_cap(domain.dim())?;
        let mut cols = Vec::with_capacity(domain.dim());
        for j in 0..domain.dim() {
            let v = image(j)?;
            if v.space() != codomain {
                return Err(Error::ShapeMismatch("image outside the codomain".into()));
            }
            cols.push(v.into_col());
        }
        Ok(LinearMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            cols: Arc::new(cols),
        })
    }

    /// From (row, column, value) triplets.
    pub fn from_triplets(
        domain: &Space,
        codomain: &Space,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut cols = vec![Vec::new(); domain.dim()];
        for (r, c, x) in triplets {
            if c >= domain.dim() {
                return Err(Error::ShapeMismatch(format!("column {c} out of range")));
            }
            cols[c].push((r, x));
        }
        LinearMap::new(domain, codomain, cols)
    }

    pub fn zero(domain: &Space, codomain: &Space) -> Result<Self> {
        LinearMap::new(domain, codomain, vec![Vec::new(); domain.dim()])
    }

    pub(crate) fn from_cols_unchecked(domain: &Space, codomain: &Space, cols: Vec<Col>) -> Self {
        LinearMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            cols: Arc::new(cols),
        }
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::from_col(&self.codomain, self.cols[j].clone())
    }

    pub(crate) fn col(&self, j: usize) -> &Col {
        &self.cols[j]
    }

    pub fn entry(&self, row: usize, col: usize) -> Scalar {
        self.column(col).coefficient(row)
    }

    /// Number of stored non-zero entries.
    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// All non-zero entries as (row, column, value).
    pub fn triplets(&self) -> Vec<(usize, usize, Scalar)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, x)| (*i, j, x.clone())))
            .collect()
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        if v.space() != &self.domain {
            return Err(Error::ShapeMismatch("vector outside the domain".into()));
        }
        Ok(Vector::from_col(&self.codomain, self.apply_col(v.entries())))
    }

    pub(crate) fn apply_col(&self, v: &[(usize, Scalar)]) -> Col {
        accumulate(
            v.iter()
                .flat_map(|(j, c)| self.cols[*j].iter().map(move |(i, x)| (*i, c * x))),
        )
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        let cols = self
            .cols
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(i, x)| (*i, x * c))
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        LinearMap::from_cols_unchecked(&self.domain, &self.codomain, cols)
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        same_shape(self, other)?;
        let cols = self
            .cols
            .iter()
            .zip(other.cols.iter())
            .map(|(a, b)| accumulate(a.iter().chain(b).cloned()))
            .collect();
        Ok(LinearMap::from_cols_unchecked(&self.domain, &self.codomain, cols))
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        self.add(&other.scale(&Scalar::from_int(self.domain.field(), -1)))
    }

    /// Transpose with domain and codomain swapped.
    pub fn transpose(&self) -> LinearMap {
        let mut cols = vec![Vec::new(); self.codomain.dim()];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col {
                cols[*i].push((j, x.clone()));
            }
        }
        LinearMap::from_cols_unchecked(&self.codomain, &self.domain, cols)
    }

    /// The same matrix between two spaces of matching dimensions.
    pub fn relabel(&self, domain: &Space, codomain: &Space) -> Result<LinearMap> {
        if domain.dim() != self.domain.dim() || codomain.dim() != self.codomain.dim() {
            return Err(Error::ShapeMismatch("relabel changes dimensions".into()));
        }
        Ok(LinearMap::from_cols_unchecked(domain, codomain, self.cols.to_vec()))
    }
}

fn same_shape(f: &LinearMap, g: &LinearMap) -> Result<()> {
    if f.domain != g.domain || f.codomain != g.codomain {
        return Err(Error::ShapeMismatch(format!(
            "maps {:?} -> {:?} and {:?} -> {:?}",
            f.domain, f.codomain, g.domain, g.codomain
        )));
    }
    Ok(())
}

/// The identity map of a space.
pub fn identity(v: &Space) -> LinearMap {
    let one = Scalar::one(v.field());
    let cols = (0..v.dim()).map(|i| vec![(i, one.clone())]).collect();
    LinearMap::from_cols_unchecked(v, v, cols)
}

/// f ∘ g.
pub fn compose(f: &LinearMap, g: &LinearMap) -> Result<LinearMap> {
    if g.codomain != f.domain {
        return Err(Error::ShapeMismatch(format!(
            "cannot compose: codomain {:?} is not domain {:?}",
            g.codomain, f.domain
        )));
    }
    check_cap(g.domain.dim())?;
    let cols = g.cols.iter().map(|col| f.apply_col(col)).collect();
    Ok(LinearMap::from_cols_unchecked(&g.domain, &f.codomain, cols))
}

/// Composite of a list of maps in application order: `maps[0]` is applied first.
pub fn compose_all(maps: &[&LinearMap]) -> Result<LinearMap> {
    let (first, rest) = maps
        .split_first()
        .ok_or_else(|| Error::ShapeMismatch("empty composite".into()))?;
    rest.iter()
        .try_fold((*first).clone(), |acc, f| compose(f, &acc))
}

pub(crate) fn kron_cols(a: &Col, b: &Col, b_dim: usize) -> Col {
    a.iter()
        .flat_map(|(i, x)| b.iter().map(move |(j, y)| (i * b_dim + j, x * y)))
        .collect()
}

/// The Kronecker product f ⊗ g.
pub fn tensor_map(f: &LinearMap, g: &LinearMap) -> Result<LinearMap> {
    let domain = tensor_space(&f.domain, &g.domain)?;
    let codomain = tensor_space(&f.codomain, &g.codomain)?;
    check_cap(domain.dim())?;
    let gd = g.codomain.dim();
    let mut cols = Vec::with_capacity(domain.dim());
    for a in f.cols.iter() {
        for b in g.cols.iter() {
            cols.push(kron_cols(a, b, gd));
        }
    }
    Ok(LinearMap::from_cols_unchecked(&domain, &codomain, cols))
}

/// f₁ ⊗ f₂ ⊗ … ⊗ fₙ.
pub fn tensor_maps(maps: &[&LinearMap]) -> Result<LinearMap> {
    let (first, rest) = maps
        .split_first()
        .ok_or_else(|| Error::ShapeMismatch("empty tensor product".into()))?;
    rest.iter()
        .try_fold((*first).clone(), |acc, f| tensor_map(&acc, f))
}

pub(crate) fn permutation_spaces(factors: &[Space], perm: &[usize]) -> Result<(Space, Space)> {
    let mut seen = vec![false; factors.len()];
    if perm.len() != factors.len() {
        return Err(Error::ShapeMismatch("permutation length differs from factor count".into()));
    }
    for &p in perm {
        if p >= factors.len() || seen[p] {
            return Err(Error::ShapeMismatch(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    let dom: Vec<&Space> = factors.iter().collect();
    let cod: Vec<&Space> = perm.iter().map(|&p| &factors[p]).collect();
    Ok((tensor_spaces(&dom)?, tensor_spaces(&cod)?))
}

pub(crate) fn permute_index(factors: &[Space], perm: &[usize], index: usize) -> usize {
    let dims: Vec<usize> = factors.iter().map(Space::dim).collect();
    let mut parts = vec![0; dims.len()];
    let mut rest = index;
    for k in (0..dims.len()).rev() {
        parts[k] = rest % dims[k];
        rest /= dims[k];
    }
    perm.iter().fold(0, |acc, &p| acc * dims[p] + parts[p])
}

/// Reorders tensor factors; in one-line notation, output position i carries input factor `perm[i]`.
///
/// With four factors, `perm = [0, 2, 1, 3]` is σ₂₃: a⊗b⊗c⊗d ↦ a⊗c⊗b⊗d.
pub fn permutation(factors: &[Space], perm: &[usize]) -> Result<LinearMap> {
    let (domain, codomain) = permutation_spaces(factors, perm)?;
    check_cap(domain.dim())?;
    let one = Scalar::one(domain.field());
    let cols = (0..domain.dim())
        .map(|i| vec![(permute_index(factors, perm, i), one.clone())])
        .collect();
    Ok(LinearMap::from_cols_unchecked(&domain, &codomain, cols))
}

/// The swap of factors i and j (0-based).
pub fn transposition(factors: &[Space], i: usize, j: usize) -> Result<LinearMap> {
    let mut perm: Vec<usize> = (0..factors.len()).collect();
    if i >= perm.len() || j >= perm.len() {
        return Err(Error::ShapeMismatch("transposition index out of range".into()));
    }
    perm.swap(i, j);
    permutation(factors, &perm)
}

fn relabel_identity(domain: &Space, codomain: &Space) -> LinearMap {
    let one = Scalar::one(domain.field());
    let cols = (0..domain.dim()).map(|i| vec![(i, one.clone())]).collect();
    LinearMap::from_cols_unchecked(domain, codomain, cols)
}

fn ground_tensor(v: &Space, left: bool) -> Space {
    let k = Space::ground(v.field());
    let (a, b) = if left { (&k, v) } else { (v, &k) };
    tensor_space(a, b).expect("same field")
}

/// k ⊗ V → V.
pub fn left_unitor(v: &Space) -> LinearMap {
    relabel_identity(&ground_tensor(v, true), v)
}

/// V → k ⊗ V.
pub fn left_unitor_inv(v: &Space) -> LinearMap {
    relabel_identity(v, &ground_tensor(v, true))
}

/// V ⊗ k → V.
pub fn right_unitor(v: &Space) -> LinearMap {
    relabel_identity(&ground_tensor(v, false), v)
}

/// V → V ⊗ k.
pub fn right_unitor_inv(v: &Space) -> LinearMap {
    relabel_identity(v, &ground_tensor(v, false))
}

/// Exact inverse by sparse Gauss–Jordan elimination, verified before return.
pub fn invert(f: &LinearMap) -> Result<LinearMap> {
    let n = f.domain.dim();
    if f.codomain.dim() != n {
        return Err(Error::ShapeMismatch("only square maps can be inverted".into()));
    }
    let field = f.domain.field().clone();
    // rows of [M | I]; columns n.. hold the identity block
    let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); n];
    for (j, col) in f.cols.iter().enumerate() {
        for (i, x) in col {
            rows[*i].insert(j, x.clone());
        }
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row.insert(n + i, Scalar::one(&field));
    }
    let mut used = vec![false; n];
    let mut pivot_row = vec![usize::MAX; n];
    for c in 0..n {
        let p = (0..n)
            .filter(|&r| !used[r] && rows[r].contains_key(&c))
            .min_by_key(|&r| rows[r].len())
            .ok_or(Error::Singular)?;
        used[p] = true;
        pivot_row[c] = p;
        let inv = rows[p][&c].inv()?;
        if !inv.is_one() {
            for x in rows[p].values_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot = rows[p].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == p {
                continue;
            }
            let factor = match row.get(&c) {
                Some(x) => x.clone(),
                None => continue,
            };
            for (k, x) in &pivot {
                let delta = x * &factor;
                let slot = row.entry(*k).or_insert_with(|| Scalar::zero(&field));
                *slot = &*slot - &delta;
                if slot.is_zero() {
                    row.remove(k);
                }
            }
        }
    }
    // inverse maps codomain → domain; column j of the inverse is column n+j of the reduced block
    let mut cols: Vec<Col> = vec![Vec::new(); n];
    for c in 0..n {
        for (k, x) in &rows[pivot_row[c]] {
            if *k >= n {
                cols[k - n].push((c, x.clone()));
            }
        }
    }
    for col in &mut cols {
        col.sort_by_key(|e| e.0);
    }
    let inv = LinearMap::from_cols_unchecked(&f.codomain, &f.domain, cols);
    if compose(f, &inv)? != identity(&f.codomain) || compose(&inv, f)? != identity(&f.domain) {
        return Err(Error::InvariantViolation("inverse failed verification".into()));
    }
    Ok(inv)
}

/// A basis element on which two maps differ, with both images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub index: usize,
    pub label: Label,
    pub left: Vector,
    pub right: Vector,
}

/// Outcome of comparing two maps column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    /// The first differing basis element, if any.
    pub witness: Option<Witness>,
    /// How many basis elements have differing images.
    pub mismatches: usize,
}

impl Comparison {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    pub(crate) fn equal() -> Comparison {
        Comparison {
            witness: None,
            mismatches: 0,
        }
    }
}

/// Entrywise equality with a witness on failure.
pub fn maps_equal(f: &LinearMap, g: &LinearMap) -> Result<Comparison> {
    same_shape(f, g)?;
    let mut out = Comparison::equal();
    for (j, (a, b)) in f.cols.iter().zip(g.cols.iter()).enumerate() {
        if a != b {
            out.mismatches += 1;
            if out.witness.is_none() {
                out.witness = Some(Witness {
                    index: j,
                    label: f.domain.label(j),
                    left: f.column(j),
                    right: g.column(j),
                });
            }
        }
    }
    Ok(out)
}

/// A linear map some of whose columns are left undefined.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialLinearMap {
    domain: Space,
    codomain: Space,
    cols: Vec<Option<Col>>,
}

impl fmt::Debug for PartialLinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PartialLinearMap {:?} -> {:?}", self.domain, self.codomain)?;
        for (j, col) in self.cols.iter().enumerate() {
            if let Some(col) = col {
                let v = Vector::from_col(&self.codomain, col.clone());
                writeln!(f, "  {} ↦ {}", self.domain.label(j), v)?;
            }
        }
        Ok(())
    }
}

impl PartialLinearMap {
    /// Every column undefined.
    pub fn new(domain: &Space, codomain: &Space) -> Result<Self> {
        if domain.field() != codomain.field() {
            return Err(Error::FieldMismatch(domain.field().clone(), codomain.field().clone()));
        }
        check_cap(domain.dim())?;
        Ok(PartialLinearMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            cols: vec![None; domain.dim()],
        })
    }

    pub fn from_map(f: &LinearMap) -> Self {
        PartialLinearMap {
            domain: f.domain.clone(),
            codomain: f.codomain.clone(),
            cols: f.cols.iter().cloned().map(Some).collect(),
        }
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    pub fn define(&mut self, index: usize, image: &Vector) -> Result<()> {
        if image.space() != &self.codomain {
            return Err(Error::ShapeMismatch("image outside the codomain".into()));
        }
        if index >= self.domain.dim() {
            return Err(Error::ShapeMismatch(format!("column {index} out of range")));
        }
        self.cols[index] = Some(image.entries().to_vec());
        Ok(())
    }

    pub fn is_defined(&self, index: usize) -> bool {
        self.cols[index].is_some()
    }

    pub fn defined_count(&self) -> usize {
        self.cols.iter().filter(|c| c.is_some()).count()
    }

    pub fn column(&self, index: usize) -> Result<Vector> {
        Ok(Vector::from_col(&self.codomain, self.col(index)?.clone()))
    }

    pub(crate) fn col(&self, index: usize) -> Result<&Col> {
        self.cols[index]
            .as_ref()
            .ok_or_else(|| Error::UndefinedColumn(self.domain.label(index).to_string()))
    }

    /// The full map, if every column is defined.
    pub fn complete(&self) -> Result<LinearMap> {
        let cols = (0..self.cols.len())
            .map(|j| self.col(j).cloned())
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearMap::from_cols_unchecked(&self.domain, &self.codomain, cols))
    }
}
