use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::{FieldSpec, Scalar};
use crate::structures::{path, tensor, AlgebraData, CoalgebraData, FrobeniusData};
use crate::tensor::{maps_equal, tensor_space, GradingGroup, LinearMap, Space, Stage, Vector};
use crate::twist::{
    bicharacter_twist, build_twisted_algebra, check_coalgebra_compat, check_twisting, Bicharacter, TwistingMap,
};

use super::algebras::{truncated_polynomial, TruncatedPolynomial};

/// Λ = k⟨x₁,…,xₙ⟩/(x_i^{m_i}, x_i x_j − q_ij x_j x_i), built as iterated twisted tensor products.
#[derive(Clone, Debug)]
pub struct QuantumCompleteIntersection {
    pub m: Vec<usize>,
    pub q: Vec<Vec<Scalar>>,
    pub factors: Vec<TruncatedPolynomial>,
    /// twists[k−1] twists the product of the first k factors with factor k.
    pub twists: Vec<TwistingMap>,
    pub algebra: AlgebraData,
    /// The inherited Frobenius structure, when every step is compatible.
    pub frobenius: Option<FrobeniusData>,
    /// Per step: the twisting report and, while the structure survives, the compatibility report.
    pub reports: Vec<Report>,
}

/// Checks q_ii = 1 and q_ij q_ji = 1.
pub fn validate_q(q: &[Vec<Scalar>], n: usize) -> Result<()> {
    if q.len() != n || q.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidQMatrix(format!("expected a {n}×{n} matrix")));
    }
    for i in 0..n {
        if !q[i][i].is_one() {
            return Err(Error::InvalidQMatrix(format!("q_{{{0}{0}}} = {1} is not 1", i + 1, q[i][i])));
        }
        for j in 0..n {
            if !(&q[i][j] * &q[j][i]).is_one() {
                return Err(Error::InvalidQMatrix(format!(
                    "q_{{{0}{1}}} q_{{{1}{0}}} = {2} is not 1",
                    i + 1,
                    j + 1,
                    &q[i][j] * &q[j][i]
                )));
            }
        }
    }
    Ok(())
}

/// q with q_ij = q for i > j and q_ij = q⁻¹ for i < j.
pub fn uniform_q(q: &Scalar, n: usize) -> Result<Vec<Vec<Scalar>>> {
    let inv = q.inv()?;
    let one = Scalar::one(&q.field());
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => one.clone(),
                    std::cmp::Ordering::Greater => q.clone(),
                    std::cmp::Ordering::Less => inv.clone(),
                })
                .collect()
        })
        .collect())
}

/// The grading condition under which step k keeps the Frobenius structure:
/// q_kj^{m_k−1} = 1 for every j < k, and ∏_j q_kj^{m_j−1} = 1.
pub fn degree_condition(m: &[usize], q: &[Vec<Scalar>], k: usize) -> Result<bool> {
    let field = q[0][0].field();
    let mut prod = Scalar::one(&field);
    for j in 0..k {
        if m[j] >= 2 && !q[k][j].pow(m[k] as i64 - 1)?.is_one() {
            return Ok(false);
        }
        prod = &prod * &q[k][j].pow(m[j] as i64 - 1)?;
    }
    Ok(m[k] < 2 || prod.is_one())
}

pub fn default_variables(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

pub fn quantum_complete_intersection(
    m: &[usize],
    q: &[Vec<Scalar>],
    field: &FieldSpec,
    vars: &[String],
) -> Result<QuantumCompleteIntersection> {
    let n = m.len();
    if n == 0 || vars.len() != n || m.iter().any(|&x| x < 1) {
        return Err(Error::UnsupportedParameters("need n ≥ 1 truncation degrees and variable names".into()));
    }
    validate_q(q, n)?;
    if q.iter().flatten().any(|x| x.field() != *field) {
        return Err(Error::InvalidQMatrix(format!("entries must lie in {field}")));
    }
    let factors = m
        .iter()
        .zip(vars)
        .map(|(&mi, v)| truncated_polynomial(mi, v, field))
        .collect::<Result<Vec<_>>>()?;
    let mut algebra = factors[0].algebra.clone();
    let mut coalgebra: Option<CoalgebraData> = Some(factors[0].frobenius.coalgebra.clone());
    let mut twists = Vec::new();
    let mut reports = Vec::new();
    for k in 1..n {
        let b = &factors[k];
        let values = (0..k).map(|j| vec![q[k][j].clone()]).collect();
        let t = Bicharacter::new(field, GradingGroup::free(k), GradingGroup::free(1), values)?;
        let tau = bicharacter_twist(&algebra, &b.algebra, &t)?;
        let mut step = check_twisting(&tau)?;
        if !step.holds() {
            return Err(Error::InvariantViolation("a bicharacter twist must be a twisting map".into()));
        }
        step.subject = format!("step {}", k + 1);
        let mut next_co = None;
        if let Some(co) = &coalgebra {
            let compat = check_coalgebra_compat(&tau, co, &b.frobenius.coalgebra)?;
            let expected = degree_condition(m, q, k)?;
            if compat.holds() != expected {
                return Err(Error::InvariantViolation(
                    "the comultiplication hexagon must agree with the degree condition".into(),
                ));
            }
            let ok = compat.holds();
            step.absorb("compatibility", compat);
            if ok {
                let prod = build_twisted_algebra(&tau, Some((co, &b.frobenius.coalgebra)))?;
                next_co = prod.coalgebra;
            }
        }
        let prod = build_twisted_algebra(&tau, None)?;
        algebra = prod.algebra;
        coalgebra = next_co;
        twists.push(tau);
        reports.push(step);
    }
    let frobenius = match coalgebra {
        Some(c) => Some(FrobeniusData::new(algebra.clone(), c)?),
        None => None,
    };
    Ok(QuantumCompleteIntersection {
        m: m.to_vec(),
        q: q.to_vec(),
        factors,
        twists,
        algebra,
        frobenius,
        reports,
    })
}

impl QuantumCompleteIntersection {
    pub fn space(&self) -> &Space {
        &self.algebra.space
    }

    /// x₁^{e₁}⋯xₙ^{eₙ}, or zero past a truncation.
    pub fn monomial(&self, exps: &[usize]) -> Vector {
        if exps.iter().zip(&self.m).any(|(e, m)| e >= m) {
            return Vector::zero(self.space());
        }
        Vector::basis(self.space(), self.space().join(exps))
    }

    pub fn generator(&self, i: usize) -> Vector {
        let mut e = vec![0; self.m.len()];
        e[i] = 1;
        self.monomial(&e)
    }

    /// x_i^{m_i} = 0 and x_i x_j = q_ij x_j x_i.
    pub fn check_relations(&self) -> Result<Report> {
        let mut r = Report::new("quantum complete intersection", "defining relations hold", "defining relations");
        let n = self.m.len();
        for i in 0..n {
            let x = self.generator(i);
            let mut p = if self.m[i] > 1 { x.clone() } else { Vector::zero(self.space()) };
            for _ in 1..self.m[i] {
                p = self.algebra.multiply(&p, &x)?;
            }
            let label = format!("{}^{} = 0", self.factors[i].var, self.m[i]);
            r.push_flag(label, self.m[i] == 1 || p.is_zero(), None);
        }
        for i in 0..n {
            for j in 0..n {
                if i == j || self.m[i] < 2 || self.m[j] < 2 {
                    continue;
                }
                let (xi, xj) = (self.generator(i), self.generator(j));
                let lhs = self.algebra.multiply(&xi, &xj)?;
                let rhs = self.algebra.multiply(&xj, &xi)?.scale(&self.q[i][j]);
                let (vi, vj) = (&self.factors[i].var, &self.factors[j].var);
                r.push_flag(format!("{vi}{vj} = q_{}{} {vj}{vi}", i + 1, j + 1), lhs == rhs, Some(format!("{lhs} vs {rhs}")));
            }
        }
        Ok(r.conclude())
    }

    /// The multiplication obtained by sorting factors with pairwise twists, compared with
    /// the iterated single-twist multiplication.
    pub fn bubble_sort_multiplication(&self) -> Result<LinearMap> {
        let n = self.m.len();
        let spaces: Vec<Space> = self.factors.iter().map(|f| f.algebra.space.clone()).collect();
        let mut order: Vec<usize> = (0..n).chain(0..n).collect();
        let mut stages = Vec::new();
        // stable insertion of the second block: a right factor moves left past larger indices
        for start in n..2 * n {
            let mut pos = start;
            while pos > 0 && order[pos - 1] > order[pos] {
                let (i, j) = (order[pos - 1], order[pos]);
                let pair = pair_twist(&self.factors[i], &self.factors[j], &self.q[i][j])?;
                let parts: Vec<Stage> = order
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| *p != pos - 1 && *p != pos)
                    .map(|(_, &f)| Stage::identity(&spaces[f]))
                    .collect();
                let mut row = parts[..pos - 1].to_vec();
                row.push(Stage::from(pair));
                row.extend_from_slice(&parts[pos - 1..]);
                stages.push(tensor(row)?);
                order.swap(pos - 1, pos);
                pos -= 1;
            }
        }
        stages.push(tensor(self.factors.iter().map(|f| Stage::from(&f.algebra.mul)).collect())?);
        path(stages)?.materialize()
    }

    pub fn check_bubble_sort_agrees(&self) -> Result<Report> {
        let mut r = Report::new(
            "quantum complete intersection",
            "iterated single twists agree with pairwise twists",
            "iterated twisted tensor products of truncated polynomial rings",
        );
        r.push_maps("multiplications agree", &self.bubble_sort_multiplication()?, &self.algebra.mul)?;
        Ok(r.conclude())
    }
}

/// k[x_i]⊗k[x_j] → k[x_j]⊗k[x_i], x_i^c⊗x_j^a ↦ q_ij^{ca} x_j^a⊗x_i^c.
fn pair_twist(xi: &TruncatedPolynomial, xj: &TruncatedPolynomial, qij: &Scalar) -> Result<LinearMap> {
    let (si, sj) = (&xi.algebra.space, &xj.algebra.space);
    let dom = tensor_space(si, sj)?;
    let cod = tensor_space(sj, si)?;
    LinearMap::from_fn(&dom, &cod, |idx| {
        let (c, a) = (idx / xj.n, idx % xj.n);
        Vector::from_terms(&cod, [(a * xi.n + c, qij.pow((c * a) as i64)?)])
    })
}

/// Equal spaces, multiplications and units.
pub fn same_algebra(x: &AlgebraData, y: &AlgebraData) -> Result<bool> {
    Ok(x.space == y.space && maps_equal(&x.mul, &y.mul)?.holds() && x.unit == y.unit)
}
