//! Exact coefficient fields: ℚ, ℚ(i), ℚ(ζ_m) and GF(p), plus the field
//! automorphisms allowed as twisting maps for the variables.

mod cyclotomic;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use cyclotomic::CyclotomicTable;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    GaussianRationals,
    Cyclotomic(u32),
    PrimeField(u64),
}

impl FieldSpec {
    /// Parses the document tag: `Q`, `Q(i)`, `cyclotomic:m`, `gf:p`.
    pub fn from_tag(tag: &str) -> Result<FieldSpec> {
        let t = tag.trim();
        match t {
            "Q" | "QQ" => return Ok(FieldSpec::Rationals),
            "Q(i)" => return Ok(FieldSpec::GaussianRationals),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("cyclotomic:") {
            let m = rest
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidField(format!("bad cyclotomic order `{rest}`")))?;
            return Ok(FieldSpec::Cyclotomic(m));
        }
        if let Some(rest) = t.strip_prefix("gf:") {
            let p = rest.trim().parse::<u64>().map_err(|_| Error::InvalidField(format!("bad prime `{rest}`")))?;
            return Ok(FieldSpec::PrimeField(p));
        }
        Err(Error::InvalidField(format!("unknown field tag `{t}`")))
    }

    pub fn tag(&self) -> String {
        match self {
            FieldSpec::Rationals => "Q".into(),
            FieldSpec::GaussianRationals => "Q(i)".into(),
            FieldSpec::Cyclotomic(m) => format!("cyclotomic:{m}"),
            FieldSpec::PrimeField(p) => format!("gf:{p}"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// A field context: knows how to build constants of its field.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    table: Option<Arc<CyclotomicTable>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

/// Validates `spec` and builds its field context.
pub fn make_field(spec: FieldSpec) -> Result<Field> {
    Field::new(spec)
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Field> {
        let table = match spec {
            FieldSpec::Rationals => None,
            FieldSpec::GaussianRationals => Some(Arc::new(CyclotomicTable::new(4, true))),
            FieldSpec::Cyclotomic(m) => {
                if m == 0 {
                    return Err(Error::InvalidField("cyclotomic order must be ≥ 1".into()));
                }
                if m > 4096 {
                    return Err(Error::InvalidField(format!("cyclotomic order {m} too large")));
                }
                Some(Arc::new(CyclotomicTable::new(m, false)))
            }
            FieldSpec::PrimeField(p) => {
                if !is_prime(p) {
                    return Err(Error::InvalidField(format!("{p} is not prime")));
                }
                if p >= 1 << 62 {
                    return Err(Error::InvalidField(format!("prime {p} exceeds 62 bits")));
                }
                None
            }
        };
        Ok(Field { spec, table })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn characteristic(&self) -> u64 {
        match self.spec {
            FieldSpec::PrimeField(p) => p,
            _ => 0,
        }
    }

    /// Dimension over the prime field.
    pub fn degree(&self) -> usize {
        self.table.as_ref().map_or(1, |t| t.degree())
    }

    /// Order m of the designated root of unity ζ (4 for ℚ(i), 1 otherwise).
    pub fn root_order(&self) -> u32 {
        self.table.as_ref().map_or(1, |t| t.m())
    }

    pub fn cyclotomic_table(&self) -> Option<&Arc<CyclotomicTable>> {
        self.table.as_ref()
    }

    pub fn zero(&self) -> Scalar {
        self.from_bigrational(BigRational::zero())
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self.spec {
            FieldSpec::PrimeField(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Residue(Residue { p, v: r.to_u64().expect("residue fits") })
            }
            _ => self.from_bigrational(BigRational::from_integer(n.clone())),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.from_int(num).div(&self.from_int(den))
    }

    /// Embeds a rational; fails in GF(p) when p divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self.spec {
            FieldSpec::PrimeField(_) => self.from_bigint(q.numer()).div(&self.from_bigint(q.denom())),
            _ => Ok(self.from_bigrational(q.clone())),
        }
    }

    fn from_bigrational(&self, q: BigRational) -> Scalar {
        match (&self.spec, &self.table) {
            (FieldSpec::Rationals, _) => Scalar::Rational(q),
            (FieldSpec::PrimeField(_), _) => self.from_rational(&q).expect("integral value"),
            (_, Some(t)) => {
                let mut coeffs = vec![BigRational::zero(); t.degree()];
                coeffs[0] = q;
                Scalar::Cyclotomic(Cyclo { table: t.clone(), coeffs })
            }
            _ => unreachable!("cyclotomic field without table"),
        }
    }

    /// The designated generator: ζ_m for cyclotomic fields, i for ℚ(i).
    pub fn zeta(&self) -> Option<Scalar> {
        self.table.as_ref().map(|t| Scalar::Cyclotomic(Cyclo { table: t.clone(), coeffs: t.zeta_pow(1).to_vec() }))
    }

    /// ζ^e for the designated generator.
    pub fn zeta_pow(&self, e: u64) -> Option<Scalar> {
        self.table.as_ref().map(|t| Scalar::Cyclotomic(Cyclo { table: t.clone(), coeffs: t.zeta_pow(e).to_vec() }))
    }

    /// Symbols that denote the field generator in the text grammar.
    pub fn generator_symbols(&self) -> &'static [&'static str] {
        match self.spec {
            FieldSpec::GaussianRationals => &["i"],
            FieldSpec::Cyclotomic(4) => &["z", "i"],
            FieldSpec::Cyclotomic(_) => &["z"],
            _ => &[],
        }
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        a.field_spec() == self.spec
    }

    pub fn check(&self, a: &Scalar) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.spec.tag(), a.field_spec().tag()))
        }
    }

    /// Coordinates over ℚ in the power basis (characteristic zero only).
    pub fn rational_coords(&self, a: &Scalar) -> Vec<BigRational> {
        match a {
            Scalar::Rational(q) => vec![q.clone()],
            Scalar::Cyclotomic(c) => c.coeffs.clone(),
            Scalar::Residue(_) => panic!("rational_coords on a prime field"),
        }
    }

    pub fn from_rational_coords(&self, coords: &[BigRational]) -> Scalar {
        match (&self.spec, &self.table) {
            (FieldSpec::Rationals, _) => Scalar::Rational(coords[0].clone()),
            (_, Some(t)) => Scalar::Cyclotomic(Cyclo { table: t.clone(), coeffs: coords.to_vec() }),
            _ => panic!("from_rational_coords on a prime field"),
        }
    }

    /// All elements, for finite fields.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self.spec {
            FieldSpec::PrimeField(p) if p <= 1 << 16 => {
                Some((0..p).map(|v| Scalar::Residue(Residue { p, v })).collect())
            }
            _ => None,
        }
    }

    /// Multiplicative order of `a` if it is a root of unity.
    pub fn root_of_unity_order(&self, a: &Scalar) -> Option<u32> {
        match a {
            Scalar::Rational(q) => {
                if q.is_one() {
                    Some(1)
                } else if (-q).is_one() {
                    Some(2)
                } else {
                    None
                }
            }
            Scalar::Cyclotomic(c) => c.table.root_of_unity_order(&c.coeffs),
            Scalar::Residue(r) => {
                if r.v == 0 {
                    return None;
                }
                let mut acc = r.v;
                let mut k = 1u64;
                while acc != 1 {
                    acc = mul_mod(acc, r.v, r.p);
                    k += 1;
                    if k > r.p {
                        return None;
                    }
                }
                u32::try_from(k).ok()
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Cyclo {
    table: Arc<CyclotomicTable>,
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn same(&self, other: &Cyclo) -> bool {
        Arc::ptr_eq(&self.table, &other.table)
            || (self.table.m() == other.table.m() && self.table.is_gaussian() == other.table.is_gaussian())
    }

    fn with(&self, coeffs: Vec<BigRational>) -> Cyclo {
        Cyclo { table: self.table.clone(), coeffs }
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        self.same(other) && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclo {}

impl Hash for Cyclo {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.table.m().hash(state);
        self.coeffs.hash(state);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    p: u64,
    v: u64,
}

impl Residue {
    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

/// An exact field element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Cyclotomic(Cyclo),
    Residue(Residue),
}

impl Scalar {
    pub fn field_spec(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Cyclotomic(c) if c.table.is_gaussian() => FieldSpec::GaussianRationals,
            Scalar::Cyclotomic(c) => FieldSpec::Cyclotomic(c.table.m()),
            Scalar::Residue(r) => FieldSpec::PrimeField(r.p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Cyclotomic(c) => c.coeffs.iter().all(Zero::is_zero),
            Scalar::Residue(r) => r.v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Cyclotomic(c) => c.coeffs[0].is_one() && c.coeffs[1..].iter().all(Zero::is_zero),
            Scalar::Residue(r) => r.v == 1 % r.p,
        }
    }

    fn compatible(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rational(_), Scalar::Rational(_)) => true,
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => a.same(b),
            (Scalar::Residue(a), Scalar::Residue(b)) => a.p == b.p,
            _ => false,
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::FieldMismatch(self.field_spec().tag(), other.field_spec().tag())
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.same(b) => {
                Ok(Scalar::Cyclotomic(a.with(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect())))
            }
            (Scalar::Residue(a), Scalar::Residue(b)) if a.p == b.p => {
                let s = a.v + b.v;
                Ok(Scalar::Residue(Residue { p: a.p, v: if s >= a.p { s - a.p } else { s } }))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.same(b) => {
                Ok(Scalar::Cyclotomic(a.with(a.table.mul(&a.coeffs, &b.coeffs))))
            }
            (Scalar::Residue(a), Scalar::Residue(b)) if a.p == b.p => {
                Ok(Scalar::Residue(Residue { p: a.p, v: mul_mod(a.v, b.v, a.p) }))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        if !self.compatible(other) {
            return Err(self.mismatch(other));
        }
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Cyclotomic(a) => Scalar::Cyclotomic(a.with(a.coeffs.iter().map(|x| -x).collect())),
            Scalar::Residue(a) => Scalar::Residue(Residue { p: a.p, v: if a.v == 0 { 0 } else { a.p - a.v } }),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Cyclotomic(a) => Scalar::Cyclotomic(a.with(a.table.inv(&a.coeffs).ok_or(Error::DivisionByZero)?)),
            Scalar::Residue(a) => Scalar::Residue(Residue { p: a.p, v: pow_mod(a.v, a.p - 2, a.p) }),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        if !self.compatible(other) {
            return Err(self.mismatch(other));
        }
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = match self {
            Scalar::Residue(r) => Scalar::Residue(Residue { p: r.p, v: 1 % r.p }),
            Scalar::Rational(_) => Scalar::Rational(BigRational::one()),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.with(c.table.zeta_pow(0).to_vec())),
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Canonical form. Values are always stored canonically, so this is the
    /// identity; kept as an explicit operation for callers that build raw
    /// coefficient vectors.
    pub fn canonical(&self) -> Scalar {
        match self {
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.with(c.table.reduce(c.coeffs.clone()))),
            Scalar::Residue(r) => Scalar::Residue(Residue { p: r.p, v: r.v % r.p }),
            Scalar::Rational(q) => Scalar::Rational(q.clone()),
        }
    }

    /// The value as a rational if it lies in ℚ (or the prime field's ℤ/p).
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::Cyclotomic(c) if c.coeffs[1..].iter().all(Zero::is_zero) => Some(c.coeffs[0].clone()),
            Scalar::Residue(r) => Some(BigRational::from_integer(BigInt::from(r.v))),
            _ => None,
        }
    }

    /// σ_k: ζ ↦ ζ^k on cyclotomic values; identity elsewhere.
    pub(crate) fn galois(&self, k: u32) -> Scalar {
        match self {
            Scalar::Cyclotomic(c) if k != 1 => Scalar::Cyclotomic(c.with(c.table.galois(&c.coeffs, k))),
            _ => self.clone(),
        }
    }

    /// Printing helper: `(negative, magnitude, compound)` where `compound`
    /// means the magnitude needs parentheses inside a product.
    pub(crate) fn signed_parts(&self) -> (bool, String, bool) {
        match self {
            Scalar::Rational(q) => (q.is_negative(), fmt_rational(&q.abs()), false),
            Scalar::Residue(r) => (false, r.v.to_string(), false),
            Scalar::Cyclotomic(c) => {
                let nz: Vec<usize> = (0..c.coeffs.len()).filter(|&j| !c.coeffs[j].is_zero()).collect();
                if nz.len() == 1 {
                    let j = nz[0];
                    let q = &c.coeffs[j];
                    let mag = q.abs();
                    let sym = cyclo_symbol(&c.table);
                    let s = match (j, mag.is_one()) {
                        (0, _) => fmt_rational(&mag),
                        (_, true) => fmt_zeta(sym, j),
                        (_, false) => format!("{}*{}", fmt_rational(&mag), fmt_zeta(sym, j)),
                    };
                    (q.is_negative(), s, false)
                } else {
                    (false, self.to_string(), nz.len() > 1)
                }
            }
        }
    }
}

fn cyclo_symbol(t: &CyclotomicTable) -> &'static str {
    if t.m() == 4 {
        "i"
    } else {
        "z"
    }
}

fn fmt_zeta(sym: &str, j: usize) -> String {
    if j == 1 {
        sym.to_string()
    } else {
        format!("{sym}^{j}")
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => f.write_str(&fmt_rational(q)),
            Scalar::Residue(r) => write!(f, "{}", r.v),
            Scalar::Cyclotomic(c) => {
                let sym = cyclo_symbol(&c.table);
                let mut first = true;
                for (j, q) in c.coeffs.iter().enumerate() {
                    if q.is_zero() {
                        continue;
                    }
                    let neg = q.is_negative();
                    let mag = q.abs();
                    let body = match (j, mag.is_one()) {
                        (0, _) => fmt_rational(&mag),
                        (_, true) => fmt_zeta(sym, j),
                        (_, false) => format!("{}*{}", fmt_rational(&mag), fmt_zeta(sym, j)),
                    };
                    match (first, neg) {
                        (true, false) => write!(f, "{body}")?,
                        (true, true) => write!(f, "-{body}")?,
                        (false, false) => write!(f, " + {body}")?,
                        (false, true) => write!(f, " - {body}")?,
                    }
                    first = false;
                }
                if first {
                    f.write_str("0")?;
                }
                Ok(())
            }
        }
    }
}

macro_rules! checked_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<'a> std::ops::$tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$inner(rhs).expect("scalar field mismatch")
            }
        }
    };
}

checked_binop!(Add, add, try_add);
checked_binop!(Sub, sub, try_sub);
checked_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Neg,
    Inv,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldOpResult {
    Value(Scalar),
    Bool(bool),
}

/// Single entry point for checked field arithmetic.
pub fn field_op(op: FieldOp, a: &Scalar, b: Option<&Scalar>) -> Result<FieldOpResult> {
    let need_b = || b.ok_or_else(|| Error::Invalid(format!("{op:?} needs two operands")));
    Ok(match op {
        FieldOp::Add => FieldOpResult::Value(a.try_add(need_b()?)?),
        FieldOp::Mul => FieldOpResult::Value(a.try_mul(need_b()?)?),
        FieldOp::Neg => FieldOpResult::Value(a.neg()),
        FieldOp::Inv => FieldOpResult::Value(a.inv()?),
        FieldOp::Eq => {
            let b = need_b()?;
            if !a.compatible(b) {
                return Err(a.mismatch(b));
            }
            FieldOpResult::Bool(a == b)
        }
    })
}

/// A field automorphism used as the twist σ_i of a variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AutomorphismSpec {
    Identity,
    ComplexConjugation,
    /// ζ ↦ ζ^k on a cyclotomic field; k must be coprime to m.
    GaloisPower(u32),
    /// x ↦ x^(p^e); trivial on a prime field.
    FrobeniusPower(u32),
}

impl AutomorphismSpec {
    pub fn from_tag(tag: &str) -> Result<AutomorphismSpec> {
        let t = tag.trim();
        match t {
            "" | "id" | "identity" => return Ok(AutomorphismSpec::Identity),
            "conj" | "conjugation" => return Ok(AutomorphismSpec::ComplexConjugation),
            _ => {}
        }
        let num =
            |s: &str| s.trim().parse::<u32>().map_err(|_| Error::InvalidAutomorphism(format!("bad exponent in `{t}`")));
        if let Some(k) = t.strip_prefix("galois:") {
            return Ok(AutomorphismSpec::GaloisPower(num(k)?));
        }
        if let Some(e) = t.strip_prefix("frobenius:") {
            return Ok(AutomorphismSpec::FrobeniusPower(num(e)?));
        }
        Err(Error::InvalidAutomorphism(format!("unknown automorphism `{t}`")))
    }

    pub fn tag(&self) -> String {
        match self {
            AutomorphismSpec::Identity => "id".into(),
            AutomorphismSpec::ComplexConjugation => "conj".into(),
            AutomorphismSpec::GaloisPower(k) => format!("galois:{k}"),
            AutomorphismSpec::FrobeniusPower(e) => format!("frobenius:{e}"),
        }
    }

    pub fn validate(&self, field: &Field) -> Result<()> {
        let spec = field.spec();
        match (self, spec) {
            (AutomorphismSpec::Identity, _) => Ok(()),
            (AutomorphismSpec::ComplexConjugation, FieldSpec::PrimeField(_)) => {
                Err(Error::InvalidAutomorphism("complex conjugation is undefined on a prime field".into()))
            }
            (AutomorphismSpec::ComplexConjugation, _) => Ok(()),
            (AutomorphismSpec::GaloisPower(k), FieldSpec::GaussianRationals | FieldSpec::Cyclotomic(_)) => {
                let m = field.root_order();
                if (*k).gcd(&m) != 1 {
                    Err(Error::InvalidAutomorphism(format!("galois power {k} not coprime to {m}")))
                } else {
                    Ok(())
                }
            }
            (AutomorphismSpec::GaloisPower(_), _) => {
                Err(Error::InvalidAutomorphism(format!("galois power needs a cyclotomic field, got {spec}")))
            }
            (AutomorphismSpec::FrobeniusPower(_), FieldSpec::PrimeField(_)) => Ok(()),
            (AutomorphismSpec::FrobeniusPower(_), _) => {
                Err(Error::InvalidAutomorphism(format!("frobenius needs a prime field, got {spec}")))
            }
        }
    }

    /// The exponent k with σ(ζ) = ζ^k (1 when the map is the identity).
    pub fn galois_exponent(&self, field: &Field) -> u32 {
        let m = field.root_order();
        match self {
            AutomorphismSpec::ComplexConjugation if m > 1 => m - 1,
            AutomorphismSpec::GaloisPower(k) if m > 1 => k % m,
            _ => 1,
        }
    }

    pub fn is_identity_on(&self, field: &Field) -> bool {
        self.galois_exponent(field) == 1
    }

    pub fn inverse(&self, field: &Field) -> Result<AutomorphismSpec> {
        self.validate(field)?;
        Ok(match self {
            AutomorphismSpec::GaloisPower(k) => {
                let m = field.root_order();
                let k = k % m;
                let inv = (1..=m).find(|j| (k as u64 * *j as u64) % m as u64 == 1 % m as u64).unwrap_or(1);
                AutomorphismSpec::GaloisPower(inv)
            }
            other => *other,
        })
    }
}

/// Applies σ to `a`; the automorphism must be valid on `a`'s field.
pub fn apply_automorphism(sigma: &AutomorphismSpec, a: &Scalar) -> Result<Scalar> {
    let field = Field::new(a.field_spec())?;
    sigma.validate(&field)?;
    Ok(a.galois(sigma.galois_exponent(&field)))
}
