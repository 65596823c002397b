//! Exact scalars over ℚ, 𝔽_p and cyclotomic fields ℚ(ζ_n).

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The field a scalar lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
    Cyclotomic(u64),
}

impl FieldSpec {
    /// 𝔽_p, rejecting composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^32")));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// ℚ(ζ_n) for n ≥ 1.
    pub fn cyclotomic(n: u64) -> Result<Self> {
        if n == 0 || n > 10_000 {
            return Err(Error::InvalidField(format!("cyclotomic order {n} out of range 1..=10000")));
        }
        Ok(FieldSpec::Cyclotomic(n))
    }

    /// Checks the parameter invariants of a spec built directly from a variant.
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Rational => Ok(()),
            FieldSpec::Prime(p) => FieldSpec::prime(p).map(|_| ()),
            FieldSpec::Cyclotomic(n) => FieldSpec::cyclotomic(n).map(|_| ()),
        }
    }

    pub fn characteristic(&self) -> u64 {
        characteristic(self)
    }

    /// Parses `rational`, `prime(p)` or `cyclotomic(n)`.
    ///
    /// On failure the error carries the 1-based column of the offending character.
    pub fn parse(text: &str) -> Result<Self> {
        let lead = text.len() - text.trim_start().len();
        let t = text.trim();
        let err = |col: usize, msg: &str| Error::ScalarParse {
            column: lead + col,
            message: msg.to_string(),
        };
        if t == "rational" || t == "Q" {
            return Ok(FieldSpec::Rational);
        }
        let (name, rest) = match t.find('(') {
            Some(i) => (&t[..i], &t[i + 1..]),
            None => return Err(err(1, "expected `rational`, `prime(p)` or `cyclotomic(n)`")),
        };
        let arg_col = name.len() + 2;
        let inner = match rest.strip_suffix(')') {
            Some(inner) => inner,
            None => return Err(err(t.len(), "missing closing parenthesis")),
        };
        let value: u64 = inner
            .trim()
            .parse()
            .map_err(|_| err(arg_col, "expected a positive integer"))?;
        match name.trim() {
            "prime" => FieldSpec::prime(value).map_err(|_| err(arg_col, "modulus is not prime")),
            "cyclotomic" => {
                FieldSpec::cyclotomic(value).map_err(|_| err(arg_col, "order must be in 1..=10000"))
            }
            _ => Err(err(1, "unknown field kind")),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "prime({p})"),
            FieldSpec::Cyclotomic(n) => write!(f, "cyclotomic({n})"),
        }
    }
}

/// 0 for ℚ and ℚ(ζ_n), p for 𝔽_p.
pub fn characteristic(field: &FieldSpec) -> u64 {
    match field {
        FieldSpec::Prime(p) => *p,
        _ => 0,
    }
}

fn is_prime(p: u64) -> bool {
    if !(2..1 << 32).contains(&p) {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// cyclotomic polynomials

#[derive(Debug)]
struct Cyclo {
    n: u64,
    /// Φ_n, low degree first, monic.
    phi: Vec<BigRational>,
}

impl Cyclo {
    fn degree(&self) -> usize {
        self.phi.len() - 1
    }
}

fn integer_cyclotomic(n: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let div = integer_cyclotomic(d, memo);
            num = exact_monic_division(&num, &div);
        }
    }
    memo.insert(n, num.clone());
    num
}

fn exact_monic_division(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - dd + j] -= &c * dj;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn cyclo_context(n: u64) -> Arc<Cyclo> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Cyclo>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("cyclotomic cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| {
            let mut memo = HashMap::new();
            let phi = integer_cyclotomic(n, &mut memo)
                .into_iter()
                .map(BigRational::from_integer)
                .collect();
            Arc::new(Cyclo { n, phi })
        })
        .clone()
}

/// Coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    cyclo_context(n).phi.iter().map(|c| c.to_integer()).collect()
}

fn reduce_mod(ctx: &Cyclo, mut poly: Vec<BigRational>) -> Vec<BigRational> {
    let d = ctx.degree();
    for i in (d..poly.len()).rev() {
        let c = std::mem::take(&mut poly[i]);
        if c.is_zero() {
            continue;
        }
        for j in 0..d {
            let t = &c * &ctx.phi[j];
            poly[i - d + j] -= t;
        }
    }
    poly.resize(d, BigRational::zero());
    poly
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lead = b.last().expect("division by zero polynomial").clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
    let (mut s0, mut s1) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    Some(s0.into_iter().map(|x| x / &c).collect())
}

// ---------------------------------------------------------------------------
// scalars

/// An element of a [`FieldSpec`] in canonical form.
#[derive(Clone)]
pub struct Scalar {
    repr: Repr,
}

#[derive(Clone)]
enum Repr {
    Rational(BigRational),
    Prime { p: u64, v: u64 },
    Cyclotomic { ctx: Arc<Cyclo>, c: Vec<BigRational> },
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => a == b,
            (Repr::Prime { p, v }, Repr::Prime { p: q, v: w }) => p == q && v == w,
            (Repr::Cyclotomic { ctx: x, c: a }, Repr::Cyclotomic { ctx: y, c: b }) => {
                x.n == y.n && a == b
            }
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.repr {
            Repr::Rational(a) => {
                0u8.hash(state);
                a.hash(state);
            }
            Repr::Prime { p, v } => {
                1u8.hash(state);
                p.hash(state);
                v.hash(state);
            }
            Repr::Cyclotomic { ctx, c } => {
                2u8.hash(state);
                ctx.n.hash(state);
                c.hash(state);
            }
        }
    }
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = (base % p) as u128;
    let m = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

impl Scalar {
    pub fn zero(field: &FieldSpec) -> Scalar {
        Scalar::from_int(field, 0)
    }

    pub fn one(field: &FieldSpec) -> Scalar {
        Scalar::from_int(field, 1)
    }

    pub fn from_int(field: &FieldSpec, k: i64) -> Scalar {
        Scalar::from_bigint(field, &BigInt::from(k))
    }

    pub fn from_bigint(field: &FieldSpec, k: &BigInt) -> Scalar {
        Scalar::from_rational(field, &BigRational::from_integer(k.clone()))
            .expect("integers embed in every field")
    }

    /// Image of a rational number; fails in 𝔽_p when p divides the denominator.
    pub fn from_rational(field: &FieldSpec, r: &BigRational) -> Result<Scalar> {
        let repr = match field {
            FieldSpec::Rational => Repr::Rational(r.clone()),
            FieldSpec::Prime(p) => {
                let pb = BigInt::from(*p);
                let num = r.numer().mod_floor(&pb).to_u64().unwrap();
                let den = r.denom().mod_floor(&pb).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                let inv = mod_pow(den, p - 2, *p);
                Repr::Prime {
                    p: *p,
                    v: ((num as u128 * inv as u128) % *p as u128) as u64,
                }
            }
            FieldSpec::Cyclotomic(n) => {
                let ctx = cyclo_context(*n);
                let mut c = vec![BigRational::zero(); ctx.degree()];
                c[0] = r.clone();
                Repr::Cyclotomic { ctx, c }
            }
        };
        Ok(Scalar { repr })
    }

    pub fn from_ratio(field: &FieldSpec, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Scalar::from_rational(field, &BigRational::new(num.into(), den.into()))
    }

    /// Builds Σ coeffs[i]·zⁱ reduced modulo Φ_n.
    pub fn cyclotomic_from_coeffs(n: u64, coeffs: &[BigRational]) -> Scalar {
        let ctx = cyclo_context(n);
        let c = reduce_mod(&ctx, coeffs.to_vec());
        Scalar {
            repr: Repr::Cyclotomic { ctx, c },
        }
    }

    /// The distinguished generator z = ζ_n of a cyclotomic field.
    pub fn zeta(field: &FieldSpec) -> Result<Scalar> {
        match field {
            FieldSpec::Cyclotomic(n) => Ok(Scalar::cyclotomic_from_coeffs(
                *n,
                &[BigRational::zero(), BigRational::one()],
            )),
            _ => Err(Error::UnsupportedOrder {
                field: field.clone(),
                order: 0,
            }),
        }
    }

    pub fn field(&self) -> FieldSpec {
        match &self.repr {
            Repr::Rational(_) => FieldSpec::Rational,
            Repr::Prime { p, .. } => FieldSpec::Prime(*p),
            Repr::Cyclotomic { ctx, .. } => FieldSpec::Cyclotomic(ctx.n),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(a) => a.is_zero(),
            Repr::Prime { v, .. } => *v == 0,
            Repr::Cyclotomic { c, .. } => c.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(&self.field())
    }

    /// The rational value, if this scalar lies in the prime subfield of ℚ or ℚ(ζ_n).
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Rational(a) => Some(a.clone()),
            Repr::Prime { .. } => None,
            Repr::Cyclotomic { c, .. } => {
                c[1..].iter().all(Zero::is_zero).then(|| c[0].clone())
            }
        }
    }

    /// Residue in [0, p) for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Prime { v, .. } => Some(*v),
            _ => None,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        let ok = match (&self.repr, &other.repr) {
            (Repr::Rational(_), Repr::Rational(_)) => true,
            (Repr::Prime { p, .. }, Repr::Prime { p: q, .. }) => p == q,
            (Repr::Cyclotomic { ctx: a, .. }, Repr::Cyclotomic { ctx: b, .. }) => a.n == b.n,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            (Repr::Prime { p, v }, Repr::Prime { v: w, .. }) => Repr::Prime {
                p: *p,
                v: ((*v as u128 + *w as u128) % *p as u128) as u64,
            },
            (Repr::Cyclotomic { ctx, c: a }, Repr::Cyclotomic { c: b, .. }) => Repr::Cyclotomic {
                ctx: ctx.clone(),
                c: a.iter().zip(b).map(|(x, y)| x + y).collect(),
            },
            _ => unreachable!(),
        };
        Ok(Scalar { repr })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a * b),
            (Repr::Prime { p, v }, Repr::Prime { v: w, .. }) => Repr::Prime {
                p: *p,
                v: ((*v as u128 * *w as u128) % *p as u128) as u64,
            },
            (Repr::Cyclotomic { ctx, c: a }, Repr::Cyclotomic { c: b, .. }) => {
                let prod = poly_mul(a, b);
                Repr::Cyclotomic {
                    ctx: ctx.clone(),
                    c: reduce_mod(ctx, prod),
                }
            }
            _ => unreachable!(),
        };
        Ok(Scalar { repr })
    }

    pub fn neg(&self) -> Scalar {
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(-a),
            Repr::Prime { p, v } => Repr::Prime {
                p: *p,
                v: (p - v) % p,
            },
            Repr::Cyclotomic { ctx, c } => Repr::Cyclotomic {
                ctx: ctx.clone(),
                c: c.iter().map(|x| -x).collect(),
            },
        };
        Scalar { repr }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(a.recip()),
            Repr::Prime { p, v } => Repr::Prime {
                p: *p,
                v: mod_pow(*v, p - 2, *p),
            },
            Repr::Cyclotomic { ctx, c } => {
                let inv = poly_inverse_mod(c, &ctx.phi).ok_or(Error::DivisionByZero)?;
                Repr::Cyclotomic {
                    ctx: ctx.clone(),
                    c: reduce_mod(ctx, inv),
                }
            }
        };
        Ok(Scalar { repr })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_mul(&other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one(&self.field());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Re-reduces the payload; canonical scalars are fixed points.
    pub fn normalized(&self) -> Scalar {
        match &self.repr {
            Repr::Rational(a) => Scalar {
                repr: Repr::Rational(BigRational::new(a.numer().clone(), a.denom().clone())),
            },
            Repr::Prime { p, v } => Scalar {
                repr: Repr::Prime { p: *p, v: v % p },
            },
            Repr::Cyclotomic { ctx, c } => Scalar {
                repr: Repr::Cyclotomic {
                    ctx: ctx.clone(),
                    c: reduce_mod(ctx, c.clone()),
                },
            },
        }
    }

    /// Parses the textual scalar syntax in the given field.
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Scalar> {
        parse_scalar(field, text)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics when the operands live in different fields.
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(a) => write!(f, "{a}"),
            Repr::Prime { p, v } => write!(f, "{v} mod {p}"),
            Repr::Cyclotomic { c, .. } => {
                let mut first = true;
                for (i, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let abs = x.abs();
                    if first {
                        if x.is_negative() {
                            write!(f, "-")?;
                        }
                    } else if x.is_negative() {
                        write!(f, " - ")?;
                    } else {
                        write!(f, " + ")?;
                    }
                    first = false;
                    let zpow = match i {
                        0 => String::new(),
                        1 => "z".to_string(),
                        _ => format!("z^{i}"),
                    };
                    if i == 0 {
                        write!(f, "{abs}")?;
                    } else if abs.is_one() {
                        write!(f, "{zpow}")?;
                    } else {
                        write!(f, "{abs}*{zpow}")?;
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A primitive root of unity of exactly the given order.
pub fn root_of_unity(field: &FieldSpec, order: u64) -> Result<Scalar> {
    let unsupported = || Error::UnsupportedOrder {
        field: field.clone(),
        order,
    };
    if order == 0 {
        return Err(unsupported());
    }
    match field {
        FieldSpec::Rational => match order {
            1 => Ok(Scalar::one(field)),
            2 => Ok(Scalar::from_int(field, -1)),
            _ => Err(unsupported()),
        },
        FieldSpec::Prime(p) => {
            if (p - 1) % order != 0 {
                return Err(unsupported());
            }
            let factors = prime_factors(order);
            for a in 1..*p {
                let x = mod_pow(a, (p - 1) / order, *p);
                if factors.iter().all(|r| mod_pow(x, order / r, *p) != 1) {
                    return Ok(Scalar {
                        repr: Repr::Prime { p: *p, v: x },
                    });
                }
            }
            Err(unsupported())
        }
        FieldSpec::Cyclotomic(n) => {
            // ℚ(ζ_n) contains the 2n-th roots when n is odd.
            let (big, w) = if n % 2 == 0 {
                (*n, Scalar::zeta(field)?)
            } else {
                (2 * n, Scalar::zeta(field)?.pow(((n + 1) / 2) as i64)?.neg())
            };
            if big % order != 0 {
                return Err(unsupported());
            }
            w.pow((big / order) as i64)
        }
    }
}

// ---------------------------------------------------------------------------
// parsing

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    offset: usize,
}

impl Cursor {
    fn err(&self, at: usize, msg: impl Into<String>) -> Error {
        Error::ScalarParse {
            column: self.offset + at + 1,
            message: msg.into(),
        }
    }
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }
    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(start, "expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits parse"))
    }
}

/// (power of z, coefficient, column of the term)
type Terms = Vec<(usize, BigRational, usize)>;

fn parse_terms(text: &str, offset: usize) -> Result<Terms> {
    let mut cur = Cursor {
        chars: text.chars().collect(),
        pos: 0,
        offset,
    };
    let mut terms = Vec::new();
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.err(0, "empty scalar"));
    }
    let mut first = true;
    loop {
        cur.skip_ws();
        let mut negative = false;
        match cur.peek() {
            Some('-') => {
                negative = true;
                cur.pos += 1;
            }
            Some('+') => cur.pos += 1,
            _ if !first => return Err(cur.err(cur.pos, "expected `+` or `-`")),
            _ => {}
        }
        cur.skip_ws();
        let term_start = cur.pos;
        let mut coeff = BigRational::one();
        let mut power = 0usize;
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = cur.integer()?;
                cur.skip_ws();
                let mut den = BigInt::one();
                if cur.peek() == Some('/') {
                    cur.pos += 1;
                    cur.skip_ws();
                    let at = cur.pos;
                    den = cur.integer()?;
                    if den.is_zero() {
                        return Err(cur.err(at, "zero denominator"));
                    }
                    cur.skip_ws();
                }
                coeff = BigRational::new(num, den);
                if cur.peek() == Some('*') {
                    cur.pos += 1;
                    cur.skip_ws();
                    if cur.peek() != Some('z') {
                        return Err(cur.err(cur.pos, "expected `z` after `*`"));
                    }
                }
            }
            Some('z') => {}
            _ => return Err(cur.err(cur.pos, "expected a number or `z`")),
        }
        if cur.peek() == Some('z') {
            cur.pos += 1;
            power = 1;
            cur.skip_ws();
            if cur.peek() == Some('^') {
                cur.pos += 1;
                cur.skip_ws();
                let at = cur.pos;
                power = cur
                    .integer()?
                    .to_usize()
                    .ok_or_else(|| cur.err(at, "exponent too large"))?;
            }
        }
        if negative {
            coeff = -coeff;
        }
        terms.push((power, coeff, offset + term_start + 1));
        first = false;
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(terms)
}

fn parse_scalar(field: &FieldSpec, text: &str) -> Result<Scalar> {
    if let Some(idx) = text.find("mod") {
        let left = &text[..idx];
        let right = &text[idx + 3..];
        let col = text[..idx + 3].chars().count();
        let p: u64 = right.trim().parse().map_err(|_| Error::ScalarParse {
            column: col + 1,
            message: "expected a modulus after `mod`".into(),
        })?;
        if *field != FieldSpec::Prime(p) {
            return Err(Error::ScalarParse {
                column: col + 1,
                message: format!("modulus {p} does not match field {field}"),
            });
        }
        return from_terms(field, parse_terms(left, 0)?);
    }
    from_terms(field, parse_terms(text, 0)?)
}

fn from_terms(field: &FieldSpec, terms: Terms) -> Result<Scalar> {
    let max_pow = terms.iter().map(|t| t.0).max().unwrap_or(0);
    if let (FieldSpec::Rational | FieldSpec::Prime(_), Some(t)) =
        (field, terms.iter().find(|t| t.0 > 0))
    {
        return Err(Error::ScalarParse {
            column: t.2,
            message: format!("`z` is only available in cyclotomic fields, not {field}"),
        });
    }
    let mut coeffs = vec![BigRational::zero(); max_pow + 1];
    for (pw, c, _) in terms {
        coeffs[pw] += c;
    }
    match field {
        FieldSpec::Cyclotomic(n) => Ok(Scalar::cyclotomic_from_coeffs(*n, &coeffs)),
        _ => Scalar::from_rational(field, &coeffs[0]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    #[test]
    fn rational_addition() {
        let a = Scalar::from_ratio(&q(), 1, 2).unwrap();
        let b = Scalar::from_ratio(&q(), 1, 3).unwrap();
        assert_eq!((&a + &b).to_string(), "5/6");
    }

    #[test]
    fn prime_inverse() {
        let f = FieldSpec::prime(5).unwrap();
        let two = Scalar::from_int(&f, 2);
        assert_eq!(two.inv().unwrap(), Scalar::from_int(&f, 3));
        assert_eq!(Scalar::zero(&f).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn zeta4_squared() {
        let f = FieldSpec::cyclotomic(4).unwrap();
        let z = Scalar::zeta(&f).unwrap();
        assert_eq!(&z * &z, Scalar::from_int(&f, -1));
    }

    #[test]
    fn cyclotomic_polynomials_match_known_tables() {
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(root_of_unity(&q(), 2).unwrap(), Scalar::from_int(&q(), -1));
        assert!(root_of_unity(&q(), 3).is_err());
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(root_of_unity(&f5, 4).unwrap(), Scalar::from_int(&f5, 2));
        assert!(root_of_unity(&f5, 3).is_err());
        let c4 = FieldSpec::cyclotomic(4).unwrap();
        let z = root_of_unity(&c4, 4).unwrap();
        assert_eq!(z.pow(2).unwrap(), Scalar::from_int(&c4, -1));
        let c3 = FieldSpec::cyclotomic(3).unwrap();
        let w = root_of_unity(&c3, 6).unwrap();
        assert_eq!(w.pow(3).unwrap(), Scalar::from_int(&c3, -1));
        assert!(root_of_unity(&c3, 4).is_err());
    }

    #[test]
    fn characteristic_values() {
        assert_eq!(characteristic(&q()), 0);
        assert_eq!(characteristic(&FieldSpec::prime(7).unwrap()), 7);
        assert_eq!(characteristic(&FieldSpec::cyclotomic(3).unwrap()), 0);
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(FieldSpec::parse("rational").unwrap(), q());
        assert_eq!(FieldSpec::parse(" prime(7)").unwrap(), FieldSpec::Prime(7));
        assert_eq!(FieldSpec::parse("cyclotomic(4)").unwrap(), FieldSpec::Cyclotomic(4));
        assert!(matches!(FieldSpec::parse("prime(8)"), Err(Error::ScalarParse { column: 7, .. })));
        assert!(matches!(FieldSpec::parse("prme(5)"), Err(Error::ScalarParse { column: 1, .. })));
        assert!(FieldSpec::prime(1).is_err());
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = Scalar::one(&q());
        let b = Scalar::one(&FieldSpec::Prime(3));
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn textual_syntax_round_trips() {
        let c4 = FieldSpec::Cyclotomic(4);
        for s in ["0", "1", "-1/2", "z", "-z", "1 - 2*z", "-3/4 + 1/2*z"] {
            let x = Scalar::parse(&c4, s).unwrap();
            assert_eq!(x.to_string(), s);
        }
        let f = FieldSpec::Prime(7);
        assert_eq!(Scalar::parse(&f, "3 mod 7").unwrap().to_string(), "3 mod 7");
        assert_eq!(Scalar::parse(&f, "-1").unwrap().to_string(), "6 mod 7");
        assert_eq!(Scalar::parse(&f, "1/2").unwrap().to_string(), "4 mod 7");
        assert!(matches!(
            Scalar::parse(&q(), "1 + z"),
            Err(Error::ScalarParse { column: 5, .. })
        ));
        assert!(Scalar::parse(&f, "3 mod 5").is_err());
        assert!(Scalar::parse(&q(), "1/0").is_err());
        assert!(Scalar::parse(&q(), "").is_err());
        // z^4 reduces to 1 modulo Φ_4
        assert_eq!(Scalar::parse(&c4, "z^4").unwrap(), Scalar::one(&c4));
    }

    fn fields() -> Vec<FieldSpec> {
        vec![
            FieldSpec::Rational,
            FieldSpec::Prime(2),
            FieldSpec::Prime(7),
            FieldSpec::Cyclotomic(3),
            FieldSpec::Cyclotomic(4),
            FieldSpec::Cyclotomic(12),
        ]
    }

    fn scalar_in(field: FieldSpec) -> impl Strategy<Value = Scalar> {
        prop::collection::vec((-6i64..7, 1i64..5), 4).prop_map(move |cs| match &field {
            FieldSpec::Cyclotomic(n) => {
                let coeffs: Vec<BigRational> = cs
                    .iter()
                    .map(|&(a, b)| BigRational::new(a.into(), b.into()))
                    .collect();
                Scalar::cyclotomic_from_coeffs(*n, &coeffs)
            }
            f => Scalar::from_ratio(f, cs[0].0, if matches!(f, FieldSpec::Prime(_)) { 1 } else { cs[0].1 })
                .unwrap(),
        })
    }

    fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        prop::sample::select(fields()).prop_flat_map(|f| {
            (scalar_in(f.clone()), scalar_in(f.clone()), scalar_in(f))
        })
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn canonical_form_is_idempotent((a, _, _) in triple()) {
            prop_assert_eq!(a.normalized(), a.clone());
            prop_assert_eq!(a.normalized().normalized(), a.normalized());
            let reparsed = Scalar::parse(&a.field(), &a.to_string()).unwrap();
            prop_assert_eq!(reparsed, a);
        }

        #[test]
        fn roots_have_exact_order(idx in 0usize..6, order in 1u64..13) {
            let f = fields()[idx].clone();
            if let Ok(z) = root_of_unity(&f, order) {
                prop_assert!(z.pow(order as i64).unwrap().is_one());
                for m in 1..order {
                    prop_assert!(!z.pow(m as i64).unwrap().is_one());
                }
            }
        }
    }
}
