use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::space::{tensor_space, Space};

/// Sparse coordinates: sorted indices, no zero entries.
pub(crate) type Col = Vec<(usize, Scalar)>;

/// Sums duplicate indices and drops zeros.
pub(crate) fn accumulate(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Col {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, c) in terms {
        match acc.get_mut(&i) {
            Some(slot) => *slot = &*slot + &c,
            None => {
                acc.insert(i, c);
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// A vector in a [`Space`], stored sparsely.
#[derive(Clone, PartialEq, Eq)]
pub struct Vector {
    space: Space,
    entries: Col,
}

impl Vector {
    pub fn zero(space: &Space) -> Vector {
        Vector {
            space: space.clone(),
            entries: Vec::new(),
        }
    }

    pub fn basis(space: &Space, index: usize) -> Vector {
        assert!(index < space.dim(), "basis index out of range");
        Vector {
            space: space.clone(),
            entries: vec![(index, Scalar::one(space.field()))],
        }
    }

    /// Basis vector by printed label.
    pub fn basis_named(space: &Space, label: &str) -> Result<Vector> {
        Ok(Vector::basis(space, space.lookup(label)?))
    }

    pub fn from_terms(
        space: &Space,
        terms: impl IntoIterator<Item = (usize, Scalar)>,
    ) -> Result<Vector> {
        let entries = accumulate(terms);
        for (i, c) in &entries {
            if *i >= space.dim() {
                return Err(Error::ShapeMismatch(format!(
                    "index {i} out of range for dimension {}",
                    space.dim()
                )));
            }
            if c.field() != *space.field() {
                return Err(Error::FieldMismatch(c.field(), space.field().clone()));
            }
        }
        Ok(Vector {
            space: space.clone(),
            entries,
        })
    }

    pub(crate) fn from_col(space: &Space, entries: Col) -> Vector {
        Vector {
            space: space.clone(),
            entries,
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    /// Non-zero (index, coefficient) pairs in increasing index order.
    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub(crate) fn into_col(self) -> Col {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coefficient(&self, index: usize) -> Scalar {
        self.entries
            .binary_search_by_key(&index, |e| e.0)
            .map(|k| self.entries[k].1.clone())
            .unwrap_or_else(|_| Scalar::zero(self.space.field()))
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        if self.space != other.space {
            return Err(Error::ShapeMismatch("adding vectors of different spaces".into()));
        }
        Ok(Vector {
            space: self.space.clone(),
            entries: accumulate(self.entries.iter().chain(&other.entries).cloned()),
        })
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.add(&other.scale(&Scalar::from_int(self.space.field(), -1)))
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector {
            space: self.space.clone(),
            entries: self
                .entries
                .iter()
                .map(|(i, x)| (*i, x * c))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    /// v ⊗ w in the tensor product space.
    pub fn tensor(&self, other: &Vector) -> Result<Vector> {
        let space = tensor_space(&self.space, &other.space)?;
        let d = other.space.dim();
        let entries = self
            .entries
            .iter()
            .flat_map(|(i, a)| other.entries.iter().map(move |(j, b)| (i * d + j, a * b)))
            .collect();
        Ok(Vector { space, entries })
    }

    /// (printed label, printed coefficient) pairs, the serialized form.
    pub fn terms(&self) -> Vec<(String, String)> {
        self.entries
            .iter()
            .map(|(i, c)| (self.space.label(*i).to_string(), c.to_string()))
            .collect()
    }
}

fn coefficient_prefix(c: &Scalar) -> String {
    if c.is_one() {
        return String::new();
    }
    if (-c).is_one() {
        return "-".into();
    }
    let s = c.to_string();
    if s.contains(' ') {
        format!("({s})*")
    } else {
        format!("{s}*")
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, c)) in self.entries.iter().enumerate() {
            let term = format!("{}{}", coefficient_prefix(c), self.space.label(*i));
            match (k, term.strip_prefix('-')) {
                (0, _) => write!(f, "{term}")?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
