//! Independent oracles shared by the integration tests. Nothing in this
//! file calls the library's multiplication, reduction or linear algebra.
#![allow(dead_code)]

pub mod suite;

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use skewpbw::{apply_automorphism, Algebra, Exponent, Field, Polynomial, Presentation, Scalar};

pub fn algebras_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../algebras")
}

pub fn shipped(name: &str) -> Algebra {
    let text = std::fs::read_to_string(algebras_dir().join(format!("{name}.alg"))).unwrap();
    Algebra::new(skewpbw::load_presentation(&text).unwrap())
}

pub const SHIPPED: &[&str] = &[
    "witten",
    "weyl3",
    "qplane_m1",
    "qplane_2",
    "qplane_gf5",
    "qplane_z3",
    "qplane_z4",
    "multiparam3",
    "commutative2",
    "commutative3",
    "twisted_gauss",
];

/// Sparse vector keyed by exponent vectors.
pub type Vector = BTreeMap<Vec<u32>, Scalar>;

pub fn to_vector(f: &Polynomial) -> Vector {
    f.terms().iter().map(|(e, c)| (e.as_slice().to_vec(), c.clone())).collect()
}

pub fn from_vector(v: &Vector) -> Polynomial {
    Polynomial::from_terms(v.iter().map(|(e, c)| (Exponent::from_slice(e), c.clone())))
}

fn axpy(v: &mut Vector, a: &Scalar, w: &Vector) {
    for (k, c) in w {
        let t = a * c;
        let sum = match v.get(k) {
            Some(e) => e + &t,
            None => t,
        };
        if sum.is_zero() {
            v.remove(k);
        } else {
            v.insert(k.clone(), sum);
        }
    }
}

/// Incremental echelon form: each stored row's largest key is its pivot.
#[derive(Default, Clone)]
pub struct Span {
    rows: BTreeMap<Vec<u32>, Vector>,
}

impl Span {
    pub fn new() -> Span {
        Span::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, mut v: Vector) -> Vector {
        loop {
            let Some((k, c)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else { return v };
            let Some(row) = self.rows.get(&k) else { return v };
            let a = c.div(&row[&k]).unwrap().neg();
            axpy(&mut v, &a, row);
        }
    }

    /// Reduction stops at a leading key that is not a pivot, which already
    /// places the vector outside the span.
    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    pub fn insert(&mut self, v: Vector) -> bool {
        let r = self.reduce(v);
        match r.keys().next_back().cloned() {
            Some(k) => {
                self.rows.insert(k, r);
                true
            }
            None => false,
        }
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.rows.values().cloned().collect()
    }
}

/// Products by rewriting words: every adjacent inversion x_j x_i (j > i) is
/// replaced by the right-hand side of its relation, scalars carried to the
/// left through the twists of the letters they pass.
pub struct WordOracle {
    p: Presentation,
}

type Words = HashMap<Vec<usize>, Scalar>;

impl WordOracle {
    pub fn new(p: &Presentation) -> WordOracle {
        WordOracle { p: p.clone() }
    }

    fn twist_through(&self, word: &[usize], c: &Scalar) -> Scalar {
        let mut c = c.clone();
        for &l in word.iter().rev() {
            c = apply_automorphism(&self.p.sigma()[l], &c).unwrap();
        }
        c
    }

    fn add(acc: &mut Words, w: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match acc.get_mut(&w) {
            Some(e) => {
                *e = &*e + &c;
                if e.is_zero() {
                    acc.remove(&w);
                }
            }
            None => {
                acc.insert(w, c);
            }
        }
    }

    fn normalize(&self, mut todo: Words) -> Polynomial {
        let n = self.p.nvars();
        let mut done: Vec<(Exponent, Scalar)> = Vec::new();
        while let Some(w) = todo.keys().next().cloned() {
            let c = todo.remove(&w).unwrap();
            let Some(pos) = (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) else {
                let mut e = vec![0u32; n];
                for &l in &w {
                    e[l] += 1;
                }
                done.push((Exponent::from_slice(&e), c));
                continue;
            };
            let (j, i) = (w[pos], w[pos + 1]);
            let rel = self.p.relation(i, j);
            let prefix = &w[..pos];
            let suffix = &w[pos + 2..];
            let mut emit = |mid: &[usize], s: &Scalar| {
                if s.is_zero() {
                    return;
                }
                let coeff = &c * &self.twist_through(prefix, s);
                let mut nw = prefix.to_vec();
                nw.extend_from_slice(mid);
                nw.extend_from_slice(suffix);
                Self::add(&mut todo, nw, coeff);
            };
            emit(&[i, j], &rel.c);
            for (k, a) in rel.a.iter().enumerate() {
                emit(&[k], a);
            }
            emit(&[], &rel.d);
        }
        Polynomial::from_terms(done)
    }

    fn word(e: &Exponent) -> Vec<usize> {
        let mut w = Vec::new();
        for (i, k) in e.iter().enumerate() {
            w.extend(std::iter::repeat_n(i, k as usize));
        }
        w
    }

    pub fn multiply(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut acc = Words::new();
        for (a, ca) in f.terms() {
            let wa = Self::word(a);
            for (b, cb) in g.terms() {
                let mut w = wa.clone();
                w.extend(Self::word(b));
                let c = ca * &self.twist_through(&wa, cb);
                Self::add(&mut acc, w, c);
            }
        }
        self.normalize(acc)
    }

    pub fn multiply3(&self, f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Polynomial {
        self.multiply(&self.multiply(f, g), h)
    }
}

/// Ordinary polynomial product by convolution.
pub fn convolve(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let mut acc: HashMap<Vec<u32>, Scalar> = HashMap::new();
    for (a, ca) in f.terms() {
        for (b, cb) in g.terms() {
            let e: Vec<u32> = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
            let t = ca * cb;
            match acc.get_mut(&e) {
                Some(s) => *s = &*s + &t,
                None => {
                    acc.insert(e, t);
                }
            }
        }
    }
    Polynomial::from_terms(acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (Exponent::from_slice(&e), c)))
}

pub fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in 0..=d {
        for mut rest in monomials_up_to(n - 1, d - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

fn total(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// Span of m·g over monomials m with deg(m·g) ≤ d, in a commutative ring.
pub fn macaulay_span(field: &Field, n: usize, gens: &[Polynomial], d: u32) -> Span {
    let mut s = Span::new();
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        if dg > d {
            continue;
        }
        for m in monomials_up_to(n, d - dg) {
            let mono = Polynomial::monomial(Exponent::from_slice(&m), field.one());
            s.insert(to_vector(&convolve(&mono, g)));
        }
    }
    s
}

/// Span of x^α·g·x^β with total degree ≤ d, products via the word oracle.
pub fn two_sided_span(oracle: &WordOracle, field: &Field, n: usize, gens: &[Polynomial], d: u32) -> Span {
    let mut s = Span::new();
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        if dg > d {
            continue;
        }
        for a in monomials_up_to(n, d - dg) {
            let left = Polynomial::monomial(Exponent::from_slice(&a), field.one());
            let lg = oracle.multiply(&left, g);
            for b in monomials_up_to(n, d - dg - total(&a)) {
                let right = Polynomial::monomial(Exponent::from_slice(&b), field.one());
                s.insert(to_vector(&oracle.multiply(&lg, &right)));
            }
        }
    }
    s
}

/// Commutative evaluation by expanding each monomial.
pub fn eval(f: &Polynomial, z: &[Scalar], field: &Field) -> Scalar {
    let mut acc = field.zero();
    for (e, c) in f.terms() {
        let mut t = c.clone();
        for (k, zi) in e.iter().zip(z) {
            for _ in 0..k {
                t = &t * zi;
            }
        }
        acc = &acc + &t;
    }
    acc
}
