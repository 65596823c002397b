use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::report::{Report, Status};
use crate::scalar::{root_of_unity, FieldSpec, Scalar};
use crate::structures::{
    check_bialgebra, check_frobenius, check_nondegenerate, check_symmetric, frobenius_from_pairing,
    nakayama_from_pairing, pairing_from_frobenius, FrobeniusData, Pairing,
};
use crate::tensor::{identity, tensor_space, GradingGroup, LinearMap, Vector};
use crate::twist::{
    bicharacter_twist, build_twisted_algebra, check_bialgebra_obstruction, check_coalgebra_compat,
    check_frobenius_inheritance, check_nakayama_candidates, check_separability_transfer, check_special_transfer,
    check_twisting, pointwise_difference, twisted_copairing, twisted_pairing, Bicharacter,
};

use super::algebras::{group_algebra, truncated_polynomial};
use super::examples::{
    c2_c2_symmetric, comultiplication_hexagon_paths, inversion_action_example, jordan_probe, obstruction_example,
    quantum_borel_probe, seed_with_units, weyl_probe,
};
use super::groups::{cyclic_group, cyclic_group_named};
use super::qci::{degree_condition, default_variables, quantum_complete_intersection, uniform_q, QuantumCompleteIntersection};

/// Optional demo parameters; each demo documents which ones it reads.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DemoParams {
    pub n: Option<usize>,
    pub m: Option<Vec<usize>>,
    pub q_order: Option<u64>,
    pub field: Option<FieldSpec>,
    pub degree: Option<usize>,
    pub ell: Option<usize>,
}

/// One check of a demo with the verdict it is expected to reach.
#[derive(Clone, Debug)]
pub struct DemoCheck {
    pub report: Report,
    pub expected: Option<Status>,
}

impl DemoCheck {
    pub fn met(&self) -> bool {
        match self.expected {
            Some(s) => self.report.verdict == s,
            None => self.report.holds(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DemoOutcome {
    pub name: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<DemoCheck>,
}

impl DemoOutcome {
    fn new(name: &str) -> DemoOutcome {
        DemoOutcome {
            name: name.to_string(),
            parameters: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    fn expect(&mut self, report: Report, expected: Status) {
        self.checks.push(DemoCheck {
            report,
            expected: Some(expected),
        });
    }

    pub fn expectations_met(&self) -> bool {
        self.checks.iter().all(DemoCheck::met)
    }
}

/// A demo name with a one-line description and the parameters it reads.
#[derive(Clone, Copy, Debug)]
pub struct DemoEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub parameters: &'static str,
}

pub fn demo_catalog() -> &'static [DemoEntry] {
    &[
        DemoEntry {
            name: "bialgebra-obstruction",
            description: "kC2⊗kC2 grouplike bialgebras: the twisted product is a bialgebra only for the flip",
            parameters: "--field",
        },
        DemoEntry {
            name: "quantum-plane",
            description: "k[x]/(x^D)⊗k[y]/(y^D) with yx = qxy: hexagon passes, bialgebra square fails",
            parameters: "--degree --q-order",
        },
        DemoEntry {
            name: "jordan",
            description: "yx = xy + x²: the comultiplication hexagon fails at y⊗x",
            parameters: "--degree --field",
        },
        DemoEntry {
            name: "weyl",
            description: "yx = xy − 1: the comultiplication hexagon fails at y⊗x",
            parameters: "--degree --field",
        },
        DemoEntry {
            name: "uq-borel",
            description: "quantum Borel part against k[F]/(F^D): the hexagon fails at E⊗F",
            parameters: "--ell --degree",
        },
        DemoEntry {
            name: "qci",
            description: "quantum complete intersection: Frobenius inheritance, pairing formula, symmetry",
            parameters: "--n --m --q-order --field",
        },
        DemoEntry {
            name: "c2-c2-symmetric",
            description: "kC2⊗kC2 with t(g,g) = −1: symmetric Frobenius pairing table",
            parameters: "--field",
        },
        DemoEntry {
            name: "skew-group",
            description: "C2 acting on C3 by inversion: the skew group algebra and its Frobenius structure",
            parameters: "--field",
        },
        DemoEntry {
            name: "separable",
            description: "kC2⊗kC2 with t(g,g) = −1: separability and special Frobenius transfer",
            parameters: "--field",
        },
        DemoEntry {
            name: "char-p",
            description: "truncated polynomial twists in characteristic p, matched with kCp",
            parameters: "",
        },
        DemoEntry {
            name: "roundtrip",
            description: "Frobenius structure to pairing and back for kC2, kC3, k[x]/(x²), k[x]/(x³)",
            parameters: "--field",
        },
    ]
}

pub fn run_demo(name: &str, params: &DemoParams) -> Result<DemoOutcome> {
    match name {
        "bialgebra-obstruction" => bialgebra_obstruction(params),
        "quantum-plane" => quantum_plane(params),
        "jordan" | "weyl" | "uq-borel" => pointwise(name, params),
        "qci" => qci(params),
        "c2-c2-symmetric" => c2_c2(params),
        "skew-group" => skew_group(params),
        "separable" => separable(params),
        "char-p" => char_p(),
        "roundtrip" => roundtrip(params),
        _ => Err(Error::UnknownDemo(name.to_string())),
    }
}

fn field_or_rational(params: &DemoParams, out: &mut DemoOutcome) -> FieldSpec {
    let f = params.field.clone().unwrap_or(FieldSpec::Rational);
    out.param("field", &f);
    f
}

fn c2_twist_value(field: &FieldSpec, value: i64) -> Result<Bicharacter> {
    Bicharacter::new(
        field,
        GradingGroup::new(vec![2]),
        GradingGroup::new(vec![2]),
        vec![vec![Scalar::from_int(field, value)]],
    )
}

fn bialgebra_obstruction(params: &DemoParams) -> Result<DemoOutcome> {
    let mut out = DemoOutcome::new("bialgebra-obstruction");
    let field = field_or_rational(params, &mut out);
    let a = group_algebra(&cyclic_group(2), &field)?;
    let b = group_algebra(&cyclic_group_named(2, "h"), &field)?;
    for value in [-1, 1] {
        let t = c2_twist_value(&field, value)?;
        let tau = bicharacter_twist(&a.algebra, &b.algebra, &t)?;
        check_twisting(&tau)?;
        let mut r = check_bialgebra_obstruction(&tau, &a.grouplike, &b.grouplike)?;
        r.subject = format!("kC2⊗kC2 with t(g,h) = {}", t.values[0][0]);
        let expected = Status::from_bool(tau.is_trivial()?);
        out.expect(r, expected);
    }
    Ok(out)
}

fn quantum_plane(params: &DemoParams) -> Result<DemoOutcome> {
    let mut out = DemoOutcome::new("quantum-plane");
    let degree = params.degree.unwrap_or(3);
    let order = params.q_order.unwrap_or(2);
    let field = params.field.clone().unwrap_or(default_field(order)?);
    out.param("degree", degree);
    out.param("q-order", order);
    out.param("field", &field);
    let q = root_of_unity(&field, order)?;
    let x = truncated_polynomial(degree, "x", &field)?;
    let y = truncated_polynomial(degree, "y", &field)?;
    let t = Bicharacter::new(&field, GradingGroup::free(1), GradingGroup::free(1), vec![vec![q.clone()]])?;
    let tau = bicharacter_twist(&x.algebra, &y.algebra, &t)?;
    out.expect(check_twisting(&tau)?, Status::Pass);
    let compat = check_coalgebra_compat(&tau, &x.binomial, &y.binomial)?;
    out.expect(compat, Status::Pass);
    let product = build_twisted_algebra(&tau, Some((&x.binomial, &y.binomial)))?;
    let co = product.coalgebra.clone().expect("coalgebras supplied");
    let mut bi = check_bialgebra(&product.algebra, &co)?;
    bi.subject = "quantum plane".into();
    // the twist-specific witness: (1⊗y)(x⊗1) = τ(y⊗x)
    let v = &product.algebra.space;
    let vv = tensor_space(v, v)?;
    let probe = Vector::basis_named(&vv, "1⊗y⊗x⊗1")?;
    let mul = crate::structures::path(vec![crate::tensor::Stage::from(&product.algebra.mul), (&co.comul).into()])?;
    let (ca, cb) = (crate::tensor::Stage::from(&co.comul), crate::tensor::Stage::from(&co.comul));
    let right = crate::structures::path(vec![
        crate::structures::tensor(vec![ca, cb])?,
        crate::tensor::Stage::permute(&[v.clone(), v.clone(), v.clone(), v.clone()], &[0, 2, 1, 3])?,
        crate::structures::tensor(vec![(&product.algebra.mul).into(), (&product.algebra.mul).into()])?,
    ])?;
    let d = pointwise_difference(&mul, &right, &probe)?;
    bi.push_flag(
        format!("multiplication and comultiplication at {}", d.element),
        !d.differs(),
        Some(format!("left {} ; right {}", d.left, d.right)),
    );
    let expected = Status::from_bool(q.is_one() && field.characteristic() as usize == degree);
    out.expect(bi.conclude(), expected);
    Ok(out)
}

fn default_field(order: u64) -> Result<FieldSpec> {
    if order <= 2 {
        Ok(FieldSpec::Rational)
    } else {
        FieldSpec::cyclotomic(order)
    }
}

fn pointwise(name: &str, params: &DemoParams) -> Result<DemoOutcome> {
    let mut out = DemoOutcome::new(name);
    let degree = params.degree.unwrap_or(4);
    out.param("degree", degree);
    let probe = match name {
        "uq-borel" => {
            let ell = params.ell.unwrap_or(3);
            out.param("ell", ell);
            quantum_borel_probe(ell, degree)?
        }
        _ => {
            let field = field_or_rational(params, &mut out);
            let p = if name == "jordan" { jordan_probe(&field, degree)? } else { weyl_probe(&field, degree)? };
            // the same probe with the flip as seed
            let a = truncated_polynomial(degree, "x", &field)?;
            let b = truncated_polynomial(degree, "y", &field)?;
            let ab = tensor_space(&a.algebra.space, &b.algebra.space)?;
            let flip = seed_with_units(&a.algebra, &b.algebra, &[("y⊗x", Vector::basis_named(&ab, "x⊗y")?)])?;
            let flip = std::sync::Arc::new(flip);
            let (l, r) = comultiplication_hexagon_paths(&flip, &a.binomial, &b.binomial)?;
            let (mut rep, _) = crate::twist::check_pointwise_counterexample("flip seed", &l, &r, &p.element)?;
            rep.subject = "flip seed".into();
            out.checks.push(DemoCheck {
                report: p.report()?,
                expected: Some(Status::Pass),
            });
            out.expect(rep, Status::Fail);
            return Ok(out);
        }
    };
    out.expect(probe.report()?, Status::Pass);
    Ok(out)
}

/// The pairing of a quantum complete intersection by its closed form:
/// β(x^a, x^b) = ∏_{i>j} q_ij^{a_i b_j} when a + b = m − 1, else 0.
pub fn qci_closed_form_pairing(qci: &QuantumCompleteIntersection) -> Result<Pairing> {
    let v = qci.space();
    let vv = tensor_space(v, v)?;
    let k = crate::tensor::Space::ground(v.field());
    let n = qci.m.len();
    let map = LinearMap::from_fn(&vv, &k, |idx| {
        let (a, b) = (v.split(idx / v.dim()), v.split(idx % v.dim()));
        if (0..n).any(|l| a[l] + b[l] + 1 != qci.m[l]) {
            return Ok(Vector::zero(&k));
        }
        let mut c = Scalar::one(v.field());
        for i in 0..n {
            for j in 0..i {
                c = &c * &qci.q[i][j].pow((a[i] * b[j]) as i64)?;
            }
        }
        Vector::from_terms(&k, [(0, c)])
    })?;
    Pairing::new(v, map)
}

fn qci(params: &DemoParams) -> Result<DemoOutcome> {
    let mut out = DemoOutcome::new("qci");
    let n = params.n.or(params.m.as_ref().map(Vec::len)).unwrap_or(2);
    let m = params.m.clone().unwrap_or_else(|| vec![3; n]);
    if m.len() != n {
        return Err(Error::UnsupportedParameters(format!("--m lists {} degrees for n = {n}", m.len())));
    }
    if m.iter().any(|&x| x < 2) {
        return Err(Error::UnsupportedParameters("truncation degrees must be at least 2".into()));
    }
    let order = params.q_order.unwrap_or(2);
    let field = params.field.clone().map_or_else(|| default_field(order), Ok)?;
    out.param("n", n);
    out.param("m", m.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
    out.param("q-order", order);
    out.param("field", &field);
    let q = uniform_q(&root_of_unity(&field, order)?, n)?;
    run_qci_checks(&mut out, &m, &q, &field)?;
    Ok(out)
}

fn run_qci_checks(out: &mut DemoOutcome, m: &[usize], q: &[Vec<Scalar>], field: &FieldSpec) -> Result<()> {
    let n = m.len();
    let qci = quantum_complete_intersection(m, q, field, &default_variables(n))?;
    out.expect(qci.check_relations()?, Status::Pass);
    out.expect(qci.check_bubble_sort_agrees()?, Status::Pass);
    let inherits = (1..n).map(|k| degree_condition(m, q, k)).collect::<Result<Vec<_>>>()?.into_iter().all(|x| x);
    let mut steps = Report::new(
        "quantum complete intersection",
        "every step keeps the Frobenius structure",
        "a bicharacter twist of graded Frobenius algebras is compatible exactly under the degree condition",
    );
    for r in &qci.reports {
        steps.absorb(&r.subject, r.clone());
    }
    let hex_ok = steps.all_pass();
    out.expect(steps.conclude_with(hex_ok), Status::from_bool(inherits));
    let Some(f) = &qci.frobenius else {
        return Ok(());
    };
    out.expect(check_frobenius(f)?, Status::Pass);
    let beta = pairing_from_frobenius(f)?;
    let closed = qci_closed_form_pairing(&qci)?;
    let mut formula = Report::new(
        "quantum complete intersection",
        "the inherited pairing matches its closed form",
        "pairing of a quantum complete intersection",
    );
    formula.push_maps("ε∇ against the closed form", &beta.map, &closed.map)?;
    if n == 2 {
        let (fa, fb) = (&qci.factors[0].frobenius, &qci.factors[1].frobenius);
        let twisted = twisted_pairing(&qci.twists[0], fa, fb)?;
        formula.push_maps("twisted pairing against the closed form", &twisted.map, &closed.map)?;
        twisted_copairing(&qci.twists[0], fa, fb)?;
        formula.note("twisted pairing = ε∇ and twisted copairing = Δη");
    }
    out.expect(formula.conclude(), Status::Pass);
    let sym_expected = Status::from_bool(closed.map == crate::tensor::compose(&closed.map, &swap(&closed)?)?);
    out.expect(check_symmetric(&beta)?, sym_expected);
    let theta = nakayama_from_pairing(&f.algebra, &beta)?.theta;
    let mut nak = Report::new(
        "quantum complete intersection",
        "the Nakayama automorphism is the identity",
        "symmetric Frobenius algebras have trivial Nakayama automorphism",
    );
    nak.push_maps("Θ against the identity", &theta, &identity(qci.space()))?;
    out.expect(nak.conclude(), sym_expected);
    if n == 2 {
        let (fa, fb) = (&qci.factors[0].frobenius, &qci.factors[1].frobenius);
        let cand = check_nakayama_candidates(&qci.twists[0], fa, fb)?;
        out.checks.push(DemoCheck {
            report: cand,
            expected: None,
        });
    }
    Ok(())
}

fn swap(beta: &Pairing) -> Result<LinearMap> {
    let v = &beta.space;
    crate::tensor::transposition(&[v.clone(), v.clone()], 0, 1)
}

fn c2_c2(params: &DemoParams) -> Result<DemoOutcome> {
    let mut out = DemoOutcome::new("c2-c2-symmetric");
    let field = field_or_rational(params, &mut out);
    let e = c2_c2_symmetric(&field)?;
    let fa = &e.left.frobenius;
    let fb = &e.right.frobenius;
    out.expect(check_frobenius_inheritance(&e.twist, fa, fb)?, Status::Pass);
    let beta = e.pairing.as_ref().expect("compatible twist");
    let mut table = Report::new(
        "kC2⊗kC2",
        "pairing table: 1 on (1,1,1,1), (1,h,1,h), (g,1,g,1); −1 on (g,h,g,h); 0 elsewhere",
        "symmetric twisted tensor product of group algebras",
    );
    let v = &beta.space;
    let one = Scalar::one(&field);
    for i in 0..v.dim() {
        for j in 0..v.dim() {
            let got = beta.value(&Vector::basis(v, i), &Vector::basis(v, j))?;
            let want = match (i == j, v.label(i).to_string().as_str()) {
                (true, "g⊗h") => -&one,
                (true, _) => one.clone(),
                (false, _) => Scalar::zero(&field),
            };
            if got != want {
                table.push_flag(format!("β({}, {})", v.label(i), v.label(j)), false, Some(format!("{got} vs {want}")));
            }
        }
    }
    table.note(format!("{} basis pairs compared", v.dim() * v.dim()));
    out.expect(table.conclude(), Status::Pass);
    out.expect(check_symmetric(beta)?, Status::Pass);
    Ok(out)
}

fn skew_group(params: &DemoParams) -> Result<DemoOutcome> {
    let mut out = DemoOutcome::new("skew-group");
    let field = field_or_rational(params, &mut out);
    let e = inversion_action_example(&field)?;
    out.expect(check_twisting(&e.twist)?, Status::Pass);
    let mut grouplike = check_coalgebra_compat(&e.twist, &e.kh.grouplike, &e.kg.grouplike)?;
    grouplike.subject = "grouplike coalgebras".into();
    out.expect(grouplike, Status::Fail);
    let mut frob = check_coalgebra_compat(&e.twist, &e.kh.frobenius.coalgebra, &e.kg.frobenius.coalgebra)?;
    frob.subject = "Frobenius coalgebras".into();
    out.expect(frob, Status::Pass);
    out.expect(e.check()?, Status::Pass);
    Ok(out)
}

fn separable(params: &DemoParams) -> Result<DemoOutcome> {
    let mut out = DemoOutcome::new("separable");
    let field = field_or_rational(params, &mut out);
    let a = group_algebra(&cyclic_group(2), &field)?;
    let b = group_algebra(&cyclic_group_named(2, "h"), &field)?;
    let (Some(ga), Some(gb), Some(sa), Some(sb)) = (&a.section, &b.section, &a.special, &b.special) else {
        return Err(Error::NotSeparableInputs);
    };
    let tau = bicharacter_twist(&a.algebra, &b.algebra, &c2_twist_value(&field, -1)?)?;
    out.expect(check_twisting(&tau)?, Status::Pass);
    out.expect(check_separability_transfer(&tau, ga, gb)?, Status::Pass);
    out.expect(check_special_transfer(&tau, sa, sb)?, Status::Pass);
    Ok(out)
}

fn char_p() -> Result<DemoOutcome> {
    let mut out = DemoOutcome::new("char-p");
    out.param("fields", "F2 F3");
    for (p, q) in [(2u64, 1i64), (3, 2)] {
        let field = FieldSpec::prime(p)?;
        let m = vec![p as usize; 2];
        let q = uniform_q(&Scalar::from_int(&field, q), 2)?;
        run_qci_checks(&mut out, &m, &q, &field)?;
        if q[1][0].is_one() {
            out.expect(group_algebra_match(p)?, Status::Pass);
        }
    }
    let (x, y, tau) = obstruction_example(3, 2)?;
    out.expect(check_bialgebra_obstruction(&tau, &x.binomial, &y.binomial)?, Status::Fail);
    Ok(out)
}

/// In characteristic p, x ↦ g − 1 identifies k[x]/(x^p) with kC_p; checked on the
/// untwisted product of two copies.
pub fn group_algebra_match(p: u64) -> Result<Report> {
    let field = FieldSpec::prime(p)?;
    let n = p as usize;
    let m = vec![n, n];
    let qci = quantum_complete_intersection(&m, &uniform_q(&Scalar::one(&field), 2)?, &field, &default_variables(2))?;
    let (g, h) = (group_algebra(&cyclic_group(n), &field)?, group_algebra(&cyclic_group_named(n, "h"), &field)?);
    let tau = bicharacter_twist(&g.algebra, &h.algebra, &c_p_trivial(&field, n)?)?;
    check_twisting(&tau)?;
    let gh = build_twisted_algebra(&tau, None)?.algebra;
    let shifted = |alg: &crate::structures::AlgebraData, label: &str| -> Result<Vector> {
        alg.basis(label)?.sub(&alg.one())
    };
    let xg = shifted(&gh, "g⊗1")?;
    let xh = shifted(&gh, "1⊗h")?;
    let power = |v: &Vector, e: usize| -> Result<Vector> {
        let mut out = gh.one();
        for _ in 0..e {
            out = gh.multiply(&out, v)?;
        }
        Ok(out)
    };
    let phi = LinearMap::from_fn(qci.space(), &gh.space, |idx| {
        let e = qci.space().split(idx);
        gh.multiply(&power(&xg, e[0])?, &power(&xh, e[1])?)
    })?;
    let mut r = Report::new(
        format!("k[x1]/(x1^{p})⊗k[x2]/(x2^{p}) over F{p}"),
        format!("x ↦ g − 1 is an algebra isomorphism onto kC{p}⊗kC{p}"),
        "in characteristic p the group algebra of a cyclic group of order p is a truncated polynomial ring",
    );
    r.push_flag("bijective", crate::tensor::invert(&phi).is_ok(), None);
    let lhs = crate::tensor::compose(&phi, &qci.algebra.mul)?;
    let rhs = crate::tensor::compose(&gh.mul, &crate::tensor::tensor_map(&phi, &phi)?)?;
    r.push_maps("multiplicative", &lhs, &rhs)?;
    r.push_maps("unital", &crate::tensor::compose(&phi, &qci.algebra.unit)?, &gh.unit)?;
    Ok(r.conclude())
}

fn c_p_trivial(field: &FieldSpec, n: usize) -> Result<Bicharacter> {
    Bicharacter::new(
        field,
        GradingGroup::new(vec![n as u64]),
        GradingGroup::new(vec![n as u64]),
        vec![vec![Scalar::one(field)]],
    )
}

fn roundtrip(params: &DemoParams) -> Result<DemoOutcome> {
    let mut out = DemoOutcome::new("roundtrip");
    let field = field_or_rational(params, &mut out);
    let cases: Vec<(String, FrobeniusData)> = vec![
        ("kC2".into(), group_algebra(&cyclic_group(2), &field)?.frobenius),
        ("kC3".into(), group_algebra(&cyclic_group(3), &field)?.frobenius),
        ("k[x]/(x^2)".into(), truncated_polynomial(2, "x", &field)?.frobenius),
        ("k[x]/(x^3)".into(), truncated_polynomial(3, "x", &field)?.frobenius),
    ];
    for (name, f) in cases {
        out.expect(frobenius_roundtrip(&name, &f)?, Status::Pass);
    }
    Ok(out)
}

/// Pairing from (Δ, ε), then (Δ, ε) back from the pairing.
pub fn frobenius_roundtrip(name: &str, f: &FrobeniusData) -> Result<Report> {
    let mut r = Report::new(
        name,
        "the Frobenius structure is recovered from its pairing",
        "Frobenius structures correspond to associative non-degenerate pairings",
    );
    let beta = pairing_from_frobenius(f)?;
    r.absorb("pairing", check_nondegenerate(&beta)?);
    let back = match frobenius_from_pairing(&f.algebra, &beta) {
        Ok(back) => back,
        Err(Error::CompositeMismatch(m)) => {
            r.push_flag("left and right composites agree", false, Some(m));
            return Ok(r.conclude());
        }
        Err(e) => return Err(e),
    };
    r.push_flag("left and right composites agree", true, None);
    r.push_maps("comultiplication", &back.coalgebra.comul, &f.coalgebra.comul)?;
    r.push_maps("counit", &back.coalgebra.counit, &f.coalgebra.counit)?;
    Ok(r.conclude())
}
