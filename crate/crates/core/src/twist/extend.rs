use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::structures::AlgebraData;
use crate::tensor::{tensor_space, LinearMap, PartialLinearMap, Space, Vector};

use super::{check_twisting, TwistingMap};

/// A monomial basis: every basis element is the unit, a generator, or a nonzero multiple
/// of a generator times a basis element of lower degree.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    unit: usize,
    degree: Vec<u32>,
    /// For degree ≥ 2: (g, r, c) with ∇(g⊗r) = c·m.
    split: Vec<Option<(usize, usize, Scalar)>>,
}

impl MonomialBasis {
    /// Builds the splitting by multiplying generators onto lower-degree monomials.
    pub fn generated_by(alg: &AlgebraData, generators: &[&str]) -> Result<MonomialBasis> {
        let v = &alg.space;
        let n = v.dim();
        let one = alg.one();
        let unit = match one.entries() {
            [(i, c)] if c.is_one() => *i,
            _ => return Err(Error::InvalidMonomialBasis("the unit is not a basis element".into())),
        };
        let gens = generators.iter().map(|g| v.lookup(g)).collect::<Result<Vec<_>>>()?;
        let mut degree: Vec<Option<u32>> = vec![None; n];
        let mut split = vec![None; n];
        degree[unit] = Some(0);
        for &g in &gens {
            if degree[g].is_some() {
                return Err(Error::InvalidMonomialBasis(format!("generator {} repeats the unit or another generator", v.label(g))));
            }
            degree[g] = Some(1);
        }
        let mut layer: Vec<usize> = gens.clone();
        let mut d = 1;
        while !layer.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &r in &layer {
                for &g in &gens {
                    let p = alg.multiply(&Vector::basis(v, g), &Vector::basis(v, r))?;
                    if let [(m, c)] = p.entries() {
                        if degree[*m].is_none() {
                            degree[*m] = Some(d);
                            split[*m] = Some((g, r, c.clone()));
                            next.push(*m);
                        }
                    }
                }
            }
            layer = next;
        }
        let degree = degree
            .into_iter()
            .enumerate()
            .map(|(i, d)| d.ok_or_else(|| Error::InvalidMonomialBasis(format!("{} is not reached from the generators", v.label(i)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialBasis { unit, degree, split })
    }

    pub fn degree(&self, index: usize) -> u32 {
        self.degree[index]
    }
}

struct Extender<'a> {
    a: &'a AlgebraData,
    b: &'a AlgebraData,
    ma: &'a MonomialBasis,
    mb: &'a MonomialBasis,
    seed: &'a PartialLinearMap,
    ab: Space,
    memo: HashMap<(usize, usize), Vector>,
    active: Vec<(usize, usize)>,
}

impl Extender<'_> {
    fn na(&self) -> usize {
        self.a.space.dim()
    }

    fn nb(&self) -> usize {
        self.b.space.dim()
    }

    /// Σ c·(x_i⊗y_i) ↦ Σ c·f(x_i, y_i) over the terms of an A⊗B vector.
    fn each_term(&mut self, v: &Vector, mut f: impl FnMut(&mut Self, usize, usize) -> Result<Vector>) -> Result<Vector> {
        let nb = self.nb();
        let mut out: Option<Vector> = None;
        for (idx, c) in v.entries().to_vec() {
            let w = f(self, idx / nb, idx % nb)?.scale(&c);
            out = Some(match out {
                Some(o) => o.add(&w)?,
                None => w,
            });
        }
        Ok(out.unwrap_or_else(|| Vector::zero(&self.ab)))
    }

    fn pure(&self, ai: usize, bi: usize) -> Vector {
        Vector::basis(&self.ab, ai * self.nb() + bi)
    }

    /// (x⊗y) ↦ x⊗(y·b).
    fn mul_b_right(&self, v: &Vector, b: usize) -> Result<Vector> {
        let bv = Vector::basis(&self.b.space, b);
        let mut terms = Vec::new();
        for (idx, c) in v.entries() {
            let (x, y) = (idx / self.nb(), idx % self.nb());
            let p = self.b.multiply(&Vector::basis(&self.b.space, y), &bv)?;
            for (k, d) in p.entries() {
                terms.push((x * self.nb() + k, c * d));
            }
        }
        Vector::from_terms(&self.ab, terms)
    }

    /// (x⊗y) ↦ (a·x)⊗y.
    fn mul_a_left(&self, a: usize, v: &Vector) -> Result<Vector> {
        let av = Vector::basis(&self.a.space, a);
        let mut terms = Vec::new();
        for (idx, c) in v.entries() {
            let (x, y) = (idx / self.nb(), idx % self.nb());
            let p = self.a.multiply(&av, &Vector::basis(&self.a.space, x))?;
            for (k, d) in p.entries() {
                terms.push((k * self.nb() + y, c * d));
            }
        }
        Vector::from_terms(&self.ab, terms)
    }

    /// τ(b⊗a) by the unit rules, the seed, and the two multiplication squares.
    fn tau(&mut self, b: usize, a: usize) -> Result<Vector> {
        if let Some(v) = self.memo.get(&(b, a)) {
            return Ok(v.clone());
        }
        if self.active.contains(&(b, a)) {
            return Err(Error::InvalidMonomialBasis(format!(
                "recursion for τ({}⊗{}) does not terminate",
                self.b.space.label(b),
                self.a.space.label(a)
            )));
        }
        self.active.push((b, a));
        let out = self.tau_uncached(b, a);
        self.active.pop();
        let out = out?;
        self.memo.insert((b, a), out.clone());
        Ok(out)
    }

    fn tau_uncached(&mut self, b: usize, a: usize) -> Result<Vector> {
        let col = b * self.na() + a;
        if a == self.ma.unit {
            return Ok(self.pure(a, b));
        }
        if b == self.mb.unit {
            return Ok(self.pure(a, b));
        }
        if self.seed.is_defined(col) {
            return self.seed.column(col);
        }
        if let Some((g, r, c)) = self.ma.split[a].clone() {
            // τ(b⊗g·r) = (∇⊗1)(1⊗τ)(τ⊗1)(b⊗g⊗r)
            let first = self.tau(b, g)?;
            let v = self.each_term(&first, |s, x, y| {
                let inner = s.tau(y, r)?;
                s.mul_a_left(x, &inner)
            })?;
            return Ok(v.scale(&c.inv()?));
        }
        if let Some((h, s_, c)) = self.mb.split[b].clone() {
            // τ(h·s⊗a) = (1⊗∇)(τ⊗1)(1⊗τ)(h⊗s⊗a)
            let first = self.tau(s_, a)?;
            let v = self.each_term(&first, |s, x, y| {
                let inner = s.tau(h, x)?;
                s.mul_b_right(&inner, y)
            })?;
            return Ok(v.scale(&c.inv()?));
        }
        Err(Error::UndefinedColumn(format!("{}⊗{}", self.b.space.label(b), self.a.space.label(a))))
    }
}

/// Extends τ given on generator pairs to all of B⊗A, then checks the multiplication squares,
/// bijectivity and the twisting axioms.
pub fn extend_twist_from_generators(
    a: &AlgebraData,
    b: &AlgebraData,
    basis_a: &MonomialBasis,
    basis_b: &MonomialBasis,
    seed: &PartialLinearMap,
) -> Result<TwistingMap> {
    let ba = tensor_space(&b.space, &a.space)?;
    let ab = tensor_space(&a.space, &b.space)?;
    if seed.domain() != &ba || seed.codomain() != &ab {
        return Err(Error::ShapeMismatch("seed must send B⊗A to A⊗B".into()));
    }
    let mut ext = Extender {
        a,
        b,
        ma: basis_a,
        mb: basis_b,
        seed,
        ab: ab.clone(),
        memo: HashMap::new(),
        active: Vec::new(),
    };
    let (na, nb) = (a.space.dim(), b.space.dim());
    let mut cols = Vec::with_capacity(na * nb);
    for bi in 0..nb {
        for ai in 0..na {
            cols.push(ext.tau(bi, ai)?.entries().to_vec());
        }
    }
    // the extension must satisfy both squares on every triple
    for bi in 0..nb {
        for x in 0..na {
            for y in 0..na {
                let left = {
                    let p = a.multiply(&Vector::basis(&a.space, x), &Vector::basis(&a.space, y))?;
                    let mut acc = Vector::zero(&ab);
                    for (k, c) in p.entries() {
                        acc = acc.add(&ext.tau(bi, *k)?.scale(c))?;
                    }
                    acc
                };
                let first = ext.tau(bi, x)?;
                let right = ext.each_term(&first, |s, u, w| {
                    let inner = s.tau(w, y)?;
                    s.mul_a_left(u, &inner)
                })?;
                if left != right {
                    return Err(Error::InconsistentExtension {
                        monomial: format!("{}⊗{}⊗{}", b.space.label(bi), a.space.label(x), a.space.label(y)),
                        left: left.to_string(),
                        right: right.to_string(),
                    });
                }
            }
        }
    }
    for ai in 0..na {
        for x in 0..nb {
            for y in 0..nb {
                let left = {
                    let p = b.multiply(&Vector::basis(&b.space, x), &Vector::basis(&b.space, y))?;
                    let mut acc = Vector::zero(&ab);
                    for (k, c) in p.entries() {
                        acc = acc.add(&ext.tau(*k, ai)?.scale(c))?;
                    }
                    acc
                };
                let first = ext.tau(y, ai)?;
                let right = ext.each_term(&first, |s, u, w| {
                    let inner = s.tau(x, u)?;
                    s.mul_b_right(&inner, w)
                })?;
                if left != right {
                    return Err(Error::InconsistentExtension {
                        monomial: format!("{}⊗{}⊗{}", b.space.label(x), b.space.label(y), a.space.label(ai)),
                        left: left.to_string(),
                        right: right.to_string(),
                    });
                }
            }
        }
    }
    let t = TwistingMap::new(a, b, LinearMap::new(&ba, &ab, cols)?)?;
    if !t.is_bijective() {
        return Err(Error::NotBijective);
    }
    check_twisting(&t)?;
    Ok(t)
}
