//! Named objects built from a scenario's presets.

use std::collections::BTreeMap;

use serde::Deserialize;
use twistlab_core::gallery::{
    algebra_from_products, cyclic_group_named, default_variables, dihedral_group, direct_product, group_algebra,
    quantum_complete_intersection, symmetric_group_3, truncated_polynomial, uniform_q, FiniteGroup,
};
use twistlab_core::scalar::root_of_unity;
use twistlab_core::structures::{frobenius_from_pairing, AlgebraData, CoalgebraData, Pairing, SeparabilitySection};
use twistlab_core::tensor::{tensor_space, GradingGroup, Label, LinearMap, PartialLinearMap, Space};
use twistlab_core::twist::{
    bicharacter_twist, check_twisting, extend_twist_from_generators, graded_group_twist, trivial_twist, Bicharacter,
    MonomialBasis, TwistingMap,
};
use twistlab_core::{Error, FieldSpec, Scalar};

use crate::error::InputError;
use crate::scenario::{locate, params, Entry, Scenario, Triplet};

/// A constructed object, or the mathematical error its construction raised.
pub type Built<T> = Result<T, Error>;

pub struct Workspace {
    pub field: FieldSpec,
    pub algebras: BTreeMap<String, Built<AlgebraData>>,
    pub coalgebras: BTreeMap<String, Built<CoalgebraData>>,
    pub sections: BTreeMap<String, Built<SeparabilitySection>>,
    pub twists: BTreeMap<String, Built<TwistingMap>>,
}

/// Errors that mean the input itself is malformed rather than mathematically interesting.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::ScalarParse { .. }
            | Error::UnknownLabel(_)
            | Error::InvalidField(_)
            | Error::InvalidSpace(_)
            | Error::DimensionCap { .. }
            | Error::ShapeMismatch(_)
    )
}

struct Builder<'a> {
    source: &'a str,
    ws: Workspace,
}

pub fn build(source: &str, scenario: &Scenario) -> Result<Workspace, InputError> {
    let field = FieldSpec::parse(&scenario.field).map_err(|e| at_string(source, &scenario.field, e))?;
    let mut b = Builder {
        source,
        ws: Workspace {
            field,
            algebras: BTreeMap::new(),
            coalgebras: BTreeMap::new(),
            sections: BTreeMap::new(),
            twists: BTreeMap::new(),
        },
    };
    for e in &scenario.algebras {
        b.algebra(e)?;
    }
    for e in &scenario.coalgebras {
        let c = b.coalgebra(e)?;
        b.insert_coalgebra(e, c)?;
    }
    for e in &scenario.sections {
        let s = b.section(e)?;
        b.unique(e, "section", b.ws.sections.contains_key(&e.name))?;
        b.ws.sections.insert(e.name.clone(), s);
    }
    for e in &scenario.twists {
        let t = b.twist(e)?;
        b.unique(e, "twist", b.ws.twists.contains_key(&e.name))?;
        b.ws.twists.insert(e.name.clone(), t);
    }
    Ok(b.ws)
}

/// Attributes a core error inside a JSON string value to a source position.
fn at_string(source: &str, text: &str, e: Error) -> InputError {
    let (line, column) = locate(source, text);
    match e {
        Error::ScalarParse { column: c, message } => InputError::Parse {
            line,
            column: column + c.saturating_sub(1),
            message: format!("`{text}`: {message}"),
        },
        other => InputError::Parse {
            line,
            column,
            message: format!("`{text}`: {other}"),
        },
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CyclicParams {
    order: usize,
    #[serde(default = "default_generator")]
    generator: String,
}

fn default_generator() -> String {
    "g".into()
}

fn default_variable() -> String {
    "x".into()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductParams {
    orders: Vec<usize>,
    generators: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DihedralParams {
    n: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NoParams {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TruncatedParams {
    degree: usize,
    #[serde(default = "default_variable")]
    variable: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QciParams {
    m: Vec<usize>,
    #[serde(default)]
    q: Option<Vec<Vec<String>>>,
    #[serde(default)]
    q_order: Option<u64>,
    #[serde(default)]
    variables: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GradingParams {
    moduli: Vec<u64>,
    degrees: BTreeMap<String, Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitAlgebra {
    basis: Vec<String>,
    unit: String,
    mul: Vec<Triplet>,
    #[serde(default)]
    grading: Option<GradingParams>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitCoalgebra {
    algebra: String,
    comul: Vec<Triplet>,
    counit: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairingCoalgebra {
    algebra: String,
    pairing: Vec<Triplet>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitSection {
    algebra: String,
    gamma: Vec<Triplet>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TwistPair {
    a: String,
    b: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BicharacterParams {
    a: String,
    b: String,
    values: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LambdaParams {
    a: String,
    b: String,
    lambda: Vec<Triplet>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeedParams {
    a: String,
    b: String,
    generators_a: Vec<String>,
    generators_b: Vec<String>,
    seed: Vec<Triplet>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitTwist {
    a: String,
    b: String,
    map: Vec<Triplet>,
}

impl Builder<'_> {
    fn unknown_preset(&self, kind: &'static str, e: &Entry) -> InputError {
        let (line, column) = locate(self.source, &e.preset);
        InputError::UnknownPreset {
            kind,
            preset: e.preset.clone(),
            line,
            column,
        }
    }

    fn unresolved(&self, kind: &'static str, name: &str) -> InputError {
        let (line, column) = locate(self.source, name);
        InputError::NameResolution {
            kind,
            name: name.to_string(),
            line,
            column,
        }
    }

    fn unique(&self, e: &Entry, kind: &'static str, taken: bool) -> Result<(), InputError> {
        if taken {
            let (line, column) = locate(self.source, &e.name);
            return Err(InputError::Parse {
                line,
                column,
                message: format!("{kind} `{}` is defined twice", e.name),
            });
        }
        Ok(())
    }

    /// Splits core errors into input errors and stored construction failures.
    fn triage<T>(&self, e: &Entry, r: Result<T, Error>) -> Result<Built<T>, InputError> {
        match r {
            Ok(x) => Ok(Ok(x)),
            Err(err) if is_input_error(&err) => {
                if let Error::DimensionCap { .. } = err {
                    return Err(InputError::Core(err));
                }
                let (line, column) = locate(self.source, &e.name);
                Err(InputError::Parse {
                    line,
                    column,
                    message: format!("{} `{}`: {err}", e.preset, e.name),
                })
            }
            Err(err) => Ok(Err(err)),
        }
    }

    fn scalar(&self, text: &str) -> Result<Scalar, InputError> {
        Scalar::parse(&self.ws.field, text).map_err(|e| at_string(self.source, text, e))
    }

    fn index(&self, space: &Space, label: &str) -> Result<usize, InputError> {
        space.find(label).ok_or_else(|| self.unresolved("basis label", label))
    }

    fn map_from_triplets(&self, dom: &Space, cod: &Space, triplets: &[Triplet]) -> Result<LinearMap, InputError> {
        let mut entries = Vec::with_capacity(triplets.len());
        for (row, col, value) in triplets {
            entries.push((self.index(cod, row)?, self.index(dom, col)?, self.scalar(value)?));
        }
        LinearMap::from_triplets(dom, cod, entries).map_err(InputError::Core)
    }

    fn algebra_ref(&self, name: &str) -> Result<Built<AlgebraData>, InputError> {
        self.ws.algebras.get(name).cloned().ok_or_else(|| self.unresolved("algebra", name))
    }

    fn register_group(&mut self, e: &Entry, group: FiniteGroup) -> Result<(), InputError> {
        let built = self.triage(e, group_algebra(&group, &self.ws.field))?;
        let name = &e.name;
        match built {
            Ok(g) => {
                self.ws.algebras.insert(name.clone(), Ok(g.algebra));
                self.ws.coalgebras.insert(format!("{name}.grouplike"), Ok(g.grouplike));
                self.ws.coalgebras.insert(format!("{name}.frobenius"), Ok(g.frobenius.coalgebra));
                if let Some(s) = g.special {
                    self.ws.coalgebras.insert(format!("{name}.special"), Ok(s.coalgebra));
                }
                if let Some(s) = g.section {
                    self.ws.sections.insert(format!("{name}.section"), Ok(s));
                }
            }
            Err(err) => {
                self.ws.algebras.insert(name.clone(), Err(err));
            }
        }
        Ok(())
    }

    fn algebra(&mut self, e: &Entry) -> Result<(), InputError> {
        self.unique(e, "algebra", self.ws.algebras.contains_key(&e.name))?;
        let field = self.ws.field.clone();
        match e.preset.as_str() {
            "cyclic-group" => {
                let p: CyclicParams = params(self.source, e)?;
                self.check_name(e, &p.generator)?;
                if p.order == 0 {
                    return Err(self.bad(e, "order must be positive"));
                }
                self.register_group(e, cyclic_group_named(p.order, &p.generator))
            }
            "direct-product" => {
                let p: ProductParams = params(self.source, e)?;
                if p.orders.is_empty() || p.orders.len() != p.generators.len() || p.orders.contains(&0) {
                    return Err(self.bad(e, "need one positive order per generator"));
                }
                for g in &p.generators {
                    self.check_name(e, g)?;
                }
                let mut group = cyclic_group_named(p.orders[0], &p.generators[0]);
                for (n, g) in p.orders.iter().zip(&p.generators).skip(1) {
                    group = direct_product(&group, &cyclic_group_named(*n, g));
                }
                self.register_group(e, group)
            }
            "dihedral" => {
                let p: DihedralParams = params(self.source, e)?;
                if p.n < 2 {
                    return Err(self.bad(e, "dihedral groups need n ≥ 2"));
                }
                self.register_group(e, dihedral_group(p.n))
            }
            "symmetric-3" => {
                let _: NoParams = params(self.source, e)?;
                self.register_group(e, symmetric_group_3())
            }
            "truncated-polynomial" => {
                let p: TruncatedParams = params(self.source, e)?;
                self.check_name(e, &p.variable)?;
                let built = self.triage(e, truncated_polynomial(p.degree, &p.variable, &field))?;
                match built {
                    Ok(t) => {
                        self.ws.algebras.insert(e.name.clone(), Ok(t.algebra));
                        self.ws.coalgebras.insert(format!("{}.frobenius", e.name), Ok(t.frobenius.coalgebra));
                        self.ws.coalgebras.insert(format!("{}.binomial", e.name), Ok(t.binomial));
                    }
                    Err(err) => {
                        self.ws.algebras.insert(e.name.clone(), Err(err));
                    }
                }
                Ok(())
            }
            "quantum-complete-intersection" => {
                let p: QciParams = params(self.source, e)?;
                let n = p.m.len();
                let vars = p.variables.clone().unwrap_or_else(|| default_variables(n));
                for v in &vars {
                    self.check_name(e, v)?;
                }
                let q = match (&p.q, p.q_order) {
                    (Some(rows), None) => rows
                        .iter()
                        .map(|r| r.iter().map(|s| self.scalar(s)).collect::<Result<Vec<_>, _>>())
                        .collect::<Result<Vec<_>, _>>()
                        .map(Ok)?,
                    (None, Some(order)) => root_of_unity(&field, order).and_then(|z| uniform_q(&z, n)),
                    _ => return Err(self.bad(e, "give exactly one of `q` and `q_order`")),
                };
                let built = q.and_then(|q| quantum_complete_intersection(&p.m, &q, &field, &vars));
                match self.triage(e, built)? {
                    Ok(qci) => {
                        if let Some(f) = qci.frobenius {
                            self.ws.coalgebras.insert(format!("{}.frobenius", e.name), Ok(f.coalgebra));
                        }
                        self.ws.algebras.insert(e.name.clone(), Ok(qci.algebra));
                    }
                    Err(err) => {
                        self.ws.algebras.insert(e.name.clone(), Err(err));
                    }
                }
                Ok(())
            }
            "explicit" => {
                let p: ExplicitAlgebra = params(self.source, e)?;
                let alg = self.explicit_algebra(e, &p)?;
                self.ws.algebras.insert(e.name.clone(), alg);
                Ok(())
            }
            _ => Err(self.unknown_preset("algebra", e)),
        }
    }

    fn bad(&self, e: &Entry, message: &str) -> InputError {
        let (line, column) = locate(self.source, &e.name);
        InputError::Parse {
            line,
            column,
            message: format!("{} `{}`: {message}", e.preset, e.name),
        }
    }

    /// Basis and generator names may not contain the tensor separators.
    fn check_name(&self, e: &Entry, name: &str) -> Result<(), InputError> {
        if name.is_empty() || name.contains(['⊗', ',']) {
            return Err(self.bad(e, &format!("name `{name}` must be non-empty without `⊗` or `,`")));
        }
        Ok(())
    }

    fn explicit_algebra(&self, e: &Entry, p: &ExplicitAlgebra) -> Result<Built<AlgebraData>, InputError> {
        for l in &p.basis {
            self.check_name(e, l)?;
        }
        let labels: Vec<Label> = p.basis.iter().map(Label::element).collect();
        let space = match &p.grading {
            None => Space::new(&self.ws.field, labels),
            Some(g) => {
                let mut grades = Vec::with_capacity(p.basis.len());
                for l in &p.basis {
                    let d = g.degrees.get(l).ok_or_else(|| self.bad(e, &format!("no degree for `{l}`")))?;
                    if d.len() != g.moduli.len() {
                        return Err(self.bad(e, &format!("degree of `{l}` has the wrong length")));
                    }
                    grades.push(d.clone());
                }
                Space::graded(&self.ws.field, labels, GradingGroup::new(g.moduli.clone()), grades)
            }
        };
        let space = self.triage(e, space)?.map_err(InputError::Core)?;
        let vv = tensor_space(&space, &space)?;
        let mul = self.map_from_triplets(&vv, &space, &p.mul)?;
        let unit = self.index(&space, &p.unit)?;
        let built = algebra_from_products(&space, unit, |i, j| Ok(mul.column(i * space.dim() + j)));
        self.triage(e, built)
    }

    fn insert_coalgebra(&mut self, e: &Entry, c: Built<CoalgebraData>) -> Result<(), InputError> {
        self.unique(e, "coalgebra", self.ws.coalgebras.contains_key(&e.name))?;
        self.ws.coalgebras.insert(e.name.clone(), c);
        Ok(())
    }

    fn coalgebra(&self, e: &Entry) -> Result<Built<CoalgebraData>, InputError> {
        match e.preset.as_str() {
            "explicit" => {
                let p: ExplicitCoalgebra = params(self.source, e)?;
                let alg = match self.algebra_ref(&p.algebra)? {
                    Ok(a) => a,
                    Err(err) => return Ok(Err(err)),
                };
                let v = &alg.space;
                let comul = self.map_from_triplets(v, &tensor_space(v, v)?, &p.comul)?;
                let k = Space::ground(v.field());
                let mut counit = Vec::new();
                for (col, value) in &p.counit {
                    counit.push((0, self.index(v, col)?, self.scalar(value)?));
                }
                let counit = LinearMap::from_triplets(v, &k, counit)?;
                self.triage(e, CoalgebraData::new(v, comul, counit))
            }
            "frobenius-from-pairing" => {
                let p: PairingCoalgebra = params(self.source, e)?;
                let alg = match self.algebra_ref(&p.algebra)? {
                    Ok(a) => a,
                    Err(err) => return Ok(Err(err)),
                };
                let v = &alg.space;
                let k = Space::ground(v.field());
                let beta = self.map_from_triplets(&tensor_space(v, v)?, &k, &relabel_rows(&p.pairing))?;
                let built = Pairing::new(v, beta).and_then(|b| frobenius_from_pairing(&alg, &b)).map(|f| f.coalgebra);
                self.triage(e, built)
            }
            _ => Err(self.unknown_preset("coalgebra", e)),
        }
    }

    fn section(&self, e: &Entry) -> Result<Built<SeparabilitySection>, InputError> {
        match e.preset.as_str() {
            "explicit" => {
                let p: ExplicitSection = params(self.source, e)?;
                let alg = match self.algebra_ref(&p.algebra)? {
                    Ok(a) => a,
                    Err(err) => return Ok(Err(err)),
                };
                let v = &alg.space;
                let gamma = self.map_from_triplets(v, &tensor_space(v, v)?, &p.gamma)?;
                Ok(Ok(SeparabilitySection { gamma }))
            }
            _ => Err(self.unknown_preset("section", e)),
        }
    }

    fn pair(&self, a: &str, b: &str) -> Result<Built<(AlgebraData, AlgebraData)>, InputError> {
        let (a, b) = (self.algebra_ref(a)?, self.algebra_ref(b)?);
        Ok(a.and_then(|a| b.map(|b| (a, b))))
    }

    fn twist(&self, e: &Entry) -> Result<Built<TwistingMap>, InputError> {
        let built = match e.preset.as_str() {
            "trivial" => {
                let p: TwistPair = params(self.source, e)?;
                match self.pair(&p.a, &p.b)? {
                    Ok((a, b)) => trivial_twist(&a, &b),
                    Err(err) => Err(err),
                }
            }
            "bicharacter" => {
                let p: BicharacterParams = params(self.source, e)?;
                let values = p
                    .values
                    .iter()
                    .map(|r| r.iter().map(|s| self.scalar(s)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                match self.pair(&p.a, &p.b)? {
                    Ok((a, b)) => bicharacter_from_gradings(&self.ws.field, &a, &b, values),
                    Err(err) => Err(err),
                }
            }
            "lambda-table" => {
                let p: LambdaParams = params(self.source, e)?;
                match self.pair(&p.a, &p.b)? {
                    Ok((a, b)) => {
                        let one = Scalar::one(&self.ws.field);
                        let mut lambda = vec![vec![one; a.space.dim()]; b.space.dim()];
                        for (bl, al, value) in &p.lambda {
                            let (bi, ai) = (self.index(&b.space, bl)?, self.index(&a.space, al)?);
                            lambda[bi][ai] = self.scalar(value)?;
                        }
                        graded_group_twist(&a, &b, &lambda)
                    }
                    Err(err) => Err(err),
                }
            }
            "seed-extension" => {
                let p: SeedParams = params(self.source, e)?;
                match self.pair(&p.a, &p.b)? {
                    Ok((a, b)) => {
                        let ba = tensor_space(&b.space, &a.space)?;
                        let ab = tensor_space(&a.space, &b.space)?;
                        let full = self.map_from_triplets(&ba, &ab, &p.seed)?;
                        let mut seed = PartialLinearMap::new(&ba, &ab)?;
                        for (_, col, _) in &p.seed {
                            let j = self.index(&ba, col)?;
                            seed.define(j, &full.column(j))?;
                        }
                        let gens_a: Vec<&str> = p.generators_a.iter().map(String::as_str).collect();
                        let gens_b: Vec<&str> = p.generators_b.iter().map(String::as_str).collect();
                        MonomialBasis::generated_by(&a, &gens_a).and_then(|ma| {
                            let mb = MonomialBasis::generated_by(&b, &gens_b)?;
                            extend_twist_from_generators(&a, &b, &ma, &mb, &seed)
                        })
                    }
                    Err(err) => Err(err),
                }
            }
            "explicit" => {
                let p: ExplicitTwist = params(self.source, e)?;
                match self.pair(&p.a, &p.b)? {
                    Ok((a, b)) => {
                        let ba = tensor_space(&b.space, &a.space)?;
                        let ab = tensor_space(&a.space, &b.space)?;
                        let map = self.map_from_triplets(&ba, &ab, &p.map)?;
                        TwistingMap::new(&a, &b, map)
                    }
                    Err(err) => Err(err),
                }
            }
            _ => return Err(self.unknown_preset("twist", e)),
        };
        let built = self.triage(e, built)?;
        // record the twisting verdict so later checks can rely on it in any order
        if let Ok(t) = &built {
            if let Err(err) = check_twisting(t) {
                return self.triage(e, Err(err));
            }
        }
        Ok(built)
    }
}

/// Pairing triplets are written (left, right, value); as a map V⊗V → k the row is the unit.
fn relabel_rows(pairing: &[Triplet]) -> Vec<Triplet> {
    pairing
        .iter()
        .map(|(l, r, v)| ("1".to_string(), format!("{l}⊗{r}"), v.clone()))
        .collect()
}

fn bicharacter_from_gradings(
    field: &FieldSpec,
    a: &AlgebraData,
    b: &AlgebraData,
    values: Vec<Vec<Scalar>>,
) -> Result<TwistingMap, Error> {
    let ga = a.space.grading_group().ok_or(Error::UngradedAlgebra)?;
    let gb = b.space.grading_group().ok_or(Error::UngradedAlgebra)?;
    let t = Bicharacter::new(field, ga, gb, values)?;
    bicharacter_twist(a, b, &t)
}
