//! Centrality and normality tests. An element f is normal when fA = Af;
//! for a domain it suffices that r·f ∈ fA and f·r ∈ Af for ring generators r.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::monomial::Exponent;
use crate::poly::Polynomial;
use crate::scalar::{Field, FieldSpec, Scalar};

/// Commutes with every variable, and with ζ when some σ moves it.
pub fn central_probe(alg: &Algebra, f: &Polynomial) -> bool {
    for j in 0..alg.nvars() {
        let x = alg.var(j);
        if alg.multiply(f, &x) != alg.multiply(&x, f) {
            return false;
        }
    }
    if alg.is_twisted() {
        if let Some(z) = alg.field().zeta() {
            if alg.mul_right_scalar(f, &z) != f.scale_left(&z) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalElement {
    pub polynomial: Polynomial,
    pub justification: String,
}

/// f = c·x^α·h with c ≠ 0 and h central; normal in quasi-commutative
/// presentations because monomials are.
pub fn normal_from_parts(alg: &Algebra, c: &Scalar, alpha: &Exponent, h: &Polynomial) -> Result<NormalElement> {
    if !alg.presentation().classify().quasi_commutative {
        return Err(Error::Unsupported("monomials are normal only in quasi-commutative presentations".into()));
    }
    if c.is_zero() {
        return Err(Error::Invalid("unit coefficient must be nonzero".into()));
    }
    if alpha.len() != alg.nvars() {
        return Err(Error::LengthMismatch(alpha.len(), alg.nvars()));
    }
    if !central_probe(alg, h) {
        return Err(Error::NotCentral(alg.format(h)));
    }
    let m = alg.monomial(alpha.clone()).scale_left(c);
    let polynomial = alg.multiply(&m, h);
    let justification =
        format!("unit times monomial {} times central {}", alg.format(&alg.monomial(alpha.clone())), alg.format(h));
    Ok(NormalElement { polynomial, justification })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalityStatus {
    Normal,
    NotNormal,
    Unknown,
}

impl NormalityStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            NormalityStatus::Normal => "normal",
            NormalityStatus::NotNormal => "not_normal",
            NormalityStatus::Unknown => "unknown",
        }
    }
}

/// For generator r: f·right = r·f and left·f = f·r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityWitness {
    pub generator: String,
    pub right: Polynomial,
    pub left: Polynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// r·f ∉ fA
    Right,
    /// f·r ∉ Af
    Left,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterWitness {
    pub generator: String,
    pub side: Side,
    pub degree_bound: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityVerdict {
    pub status: NormalityStatus,
    pub witnesses: Vec<NormalityWitness>,
    pub counter: Option<CounterWitness>,
    pub reason: Option<String>,
}

impl NormalityVerdict {
    pub fn to_document(&self, alg: &Algebra) -> serde_json::Value {
        serde_json::json!({
            "status": self.status.as_str(),
            "witnesses": self.witnesses.iter().map(|w| serde_json::json!({
                "generator": w.generator,
                "right": alg.format(&w.right),
                "left": alg.format(&w.left),
            })).collect::<Vec<_>>(),
            "counter_witness": self.counter,
            "reason": self.reason,
        })
    }
}

/// Cap on the number of unknowns in one linear solve.
const MAX_UNKNOWNS: usize = 20_000;

enum Solve {
    Found(Polynomial),
    None,
    TooLarge,
}

fn coords(field: &Field, twisted: bool, s: &Scalar) -> Vec<Scalar> {
    if twisted {
        let q = Field::new(FieldSpec::Rationals).expect("rationals");
        field.rational_coords(s).iter().map(|c| q.from_rational(c).expect("rational")).collect()
    } else {
        vec![s.clone()]
    }
}

/// Finds g of degree ≤ `deg` with f·g = target (`right`) or g·f = target.
/// With a twist, f·(c x^β) is only semilinear in c, so unknowns are the
/// rational coordinates of each coefficient.
fn solve_multiple(alg: &Algebra, f: &Polynomial, target: &Polynomial, deg: u32, right: bool) -> Solve {
    let field = alg.field();
    let semilinear = right && alg.is_twisted();
    let basis = if semilinear {
        let z = field.zeta().expect("twisted fields have ζ");
        let mut out = vec![field.one()];
        for _ in 1..field.degree() {
            let last = out.last().unwrap().clone();
            out.push(last.try_mul(&z).expect("same field"));
        }
        out
    } else {
        vec![field.one()]
    };
    let monos = Exponent::all_up_to(alg.nvars(), deg);
    let ncols = monos.len() * basis.len();
    if ncols > MAX_UNKNOWNS {
        return Solve::TooLarge;
    }
    let solve_field = if semilinear { Field::new(FieldSpec::Rationals).expect("rationals") } else { field.clone() };
    let mut index: HashMap<(Exponent, usize), usize> = HashMap::new();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let place = |rows: &mut Vec<Vec<Scalar>>, index: &mut HashMap<(Exponent, usize), usize>, e: &Exponent, k: usize| {
        *index.entry((e.clone(), k)).or_insert_with(|| {
            rows.push(vec![solve_field.zero(); ncols]);
            rows.len() - 1
        })
    };
    let mut col = 0;
    for beta in &monos {
        for b in &basis {
            let m = Polynomial::monomial(beta.clone(), b.clone());
            let p = if right { alg.multiply(f, &m) } else { alg.multiply(&m, f) };
            for (e, s) in p.terms() {
                for (k, v) in coords(field, semilinear, s).into_iter().enumerate() {
                    let r = place(&mut rows, &mut index, e, k);
                    rows[r][col] = v;
                }
            }
            col += 1;
        }
    }
    let mut rhs = vec![solve_field.zero(); rows.len()];
    for (e, s) in target.terms() {
        for (k, v) in coords(field, semilinear, s).into_iter().enumerate() {
            let r = place(&mut rows, &mut index, e, k);
            if r >= rhs.len() {
                rhs.resize(r + 1, solve_field.zero());
            }
            rhs[r] = v;
        }
    }
    let Some(sol) = solve(&solve_field, &rows, &rhs, ncols) else { return Solve::None };
    let mut terms = Vec::new();
    for (mi, beta) in monos.iter().enumerate() {
        let c = if semilinear {
            let mut acc = field.zero();
            for (t, b) in basis.iter().enumerate() {
                let r =
                    field.from_rational(&solve_field.rational_coords(&sol[mi * basis.len() + t])[0]).expect("rational");
                acc = acc.try_add(&r.try_mul(b).expect("same field")).expect("same field");
            }
            acc
        } else {
            sol[mi].clone()
        };
        if !c.is_zero() {
            terms.push((beta.clone(), c));
        }
    }
    Solve::Found(Polynomial::from_terms(terms))
}

/// Decides fA = Af by solving f·g = r·f and g'·f = f·r for every ring
/// generator r, with deg g ≤ deg r + `slack`.
pub fn is_normal(alg: &Algebra, f: &Polynomial, slack: u32) -> Result<NormalityVerdict> {
    let mut gens: Vec<(String, Polynomial, u32)> =
        (0..alg.nvars()).map(|j| (alg.names()[j].clone(), alg.var(j), 1)).collect();
    if alg.is_twisted() {
        if let Some(z) = alg.field().zeta() {
            gens.push((z.to_string(), alg.constant(z), 0));
        }
    }
    let mut witnesses = Vec::new();
    if f.is_zero() || f.is_constant() {
        for (name, r, _) in gens {
            let (right, left) = if f.is_zero() {
                (Polynomial::zero(), Polynomial::zero())
            } else {
                let inv = f.terms()[0].1.inv()?;
                let right = alg.multiply(&alg.constant(inv.clone()), &alg.multiply(&r, f));
                let left = alg.multiply(&alg.multiply(f, &r), &alg.constant(inv));
                (right, left)
            };
            witnesses.push(NormalityWitness { generator: name, right, left });
        }
        return Ok(NormalityVerdict { status: NormalityStatus::Normal, witnesses, counter: None, reason: None });
    }
    for (name, r, d) in gens {
        let bound = d + slack;
        let rf = alg.multiply(&r, f);
        let fr = alg.multiply(f, &r);
        let mut found = [None, None];
        for (slot, (right, target, side)) in
            [(true, &rf, Side::Right), (false, &fr, Side::Left)].into_iter().enumerate()
        {
            match solve_multiple(alg, f, target, bound, right) {
                Solve::Found(g) => found[slot] = Some(g),
                Solve::None => {
                    return Ok(NormalityVerdict {
                        status: NormalityStatus::NotNormal,
                        witnesses,
                        counter: Some(CounterWitness { generator: name, side, degree_bound: bound }),
                        reason: None,
                    })
                }
                Solve::TooLarge => {
                    return Ok(NormalityVerdict {
                        status: NormalityStatus::Unknown,
                        witnesses,
                        counter: None,
                        reason: Some(format!("linear system for generator {name} exceeds {MAX_UNKNOWNS} unknowns")),
                    })
                }
            }
        }
        let [Some(right), Some(left)] = found else { unreachable!() };
        witnesses.push(NormalityWitness { generator: name, right, left });
    }
    Ok(NormalityVerdict { status: NormalityStatus::Normal, witnesses, counter: None, reason: None })
}
