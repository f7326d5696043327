//! Normal-form multiplication in A = σ(𝔽)⟨x₁,…,x_n⟩.
//!
//! `x^γ · x_v` is computed by moving `x_v` leftwards past the last variable
//! of `x^γ` with the relation for that pair, coefficients passing through
//! monomials as `x^α r = σ^α(r) x^α`. Results are memoized per algebra.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::Result;
use crate::monomial::Exponent;
use crate::parse::{format_polynomial, parse_polynomial};
use crate::poly::Polynomial;
use crate::presentation::Presentation;
use crate::scalar::{Field, Scalar};

type Cache = RwLock<HashMap<(Exponent, Exponent), Arc<Polynomial>>>;

struct Inner {
    pres: Presentation,
    galois: Vec<u32>,
    modulus: u64,
    twisted: bool,
    var_cache: RwLock<HashMap<(Exponent, usize), Arc<Polynomial>>>,
    mono_cache: Cache,
}

/// A presentation together with its multiplication caches. Cheap to clone.
#[derive(Clone)]
pub struct Algebra {
    inner: Arc<Inner>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra").field("names", &self.names()).field("field", &self.field().spec()).finish()
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.pres == other.inner.pres
    }
}

fn accumulate(acc: &mut HashMap<Exponent, Scalar>, e: &Exponent, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(e) {
        Some(v) => *v = &*v + &c,
        None => {
            acc.insert(e.clone(), c);
        }
    }
}

impl Algebra {
    pub fn new(pres: Presentation) -> Algebra {
        let field = pres.field().clone();
        let galois: Vec<u32> = pres.sigma().iter().map(|s| s.galois_exponent(&field)).collect();
        let twisted = pres.is_twisted();
        Algebra {
            inner: Arc::new(Inner {
                modulus: field.root_order().max(1) as u64,
                pres,
                galois,
                twisted,
                var_cache: RwLock::new(HashMap::new()),
                mono_cache: RwLock::new(HashMap::new()),
            }),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.inner.pres
    }

    pub fn field(&self) -> &Field {
        self.inner.pres.field()
    }

    pub fn nvars(&self) -> usize {
        self.inner.pres.nvars()
    }

    pub fn names(&self) -> &[String] {
        self.inner.pres.names()
    }

    /// True if some σ_i is not the identity on 𝔽.
    pub fn is_twisted(&self) -> bool {
        self.inner.twisted
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.field(), self.nvars())
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        Polynomial::constant(c, self.nvars())
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::monomial(Exponent::unit(self.nvars(), i), self.field().one())
    }

    pub fn monomial(&self, e: Exponent) -> Polynomial {
        Polynomial::monomial(e, self.field().one())
    }

    /// Galois exponent k of σ^α, so that σ^α(ζ) = ζ^k.
    pub fn twist_exponent(&self, alpha: &Exponent) -> u32 {
        let m = self.inner.modulus;
        alpha.iter().zip(&self.inner.galois).fold(1u64 % m, |acc, (a, &g)| {
            let mut acc = acc;
            for _ in 0..a {
                acc = acc * g as u64 % m;
            }
            acc
        }) as u32
    }

    /// σ^α(r).
    pub fn sigma_pow(&self, alpha: &Exponent, r: &Scalar) -> Scalar {
        if !self.inner.twisted {
            return r.clone();
        }
        r.galois(self.twist_exponent(alpha))
    }

    /// `x^α r = r_α x^α + p`; with δ ≡ 0 on 𝔽 the polynomial part is zero.
    pub fn commute_scalar(&self, alpha: &Exponent, r: &Scalar) -> (Scalar, Polynomial) {
        (self.sigma_pow(alpha, r), Polynomial::zero())
    }

    fn mul_by_var(&self, gamma: &Exponent, v: usize) -> Arc<Polynomial> {
        let j = match gamma.last_var() {
            Some(j) if j > v => j,
            _ => {
                let mut e = gamma.clone();
                e.set(v, e.get(v) + 1);
                return Arc::new(self.monomial(e));
            }
        };
        let key = (gamma.clone(), v);
        if let Some(hit) = self.inner.var_cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        // x^γ' x_j x_v with x_j x_v = c x_v x_j + Σ a_k x_k + d.
        let mut head = gamma.clone();
        head.set(j, head.get(j) - 1);
        let rel = self.inner.pres.relation(v, j);
        let mut acc: HashMap<Exponent, Scalar> = HashMap::new();
        let c = self.sigma_pow(&head, &rel.c);
        let moved = self.mul_by_var(&head, v);
        for (delta, b) in moved.terms() {
            let cb = &c * b;
            for (e, s) in self.mul_by_var(delta, j).terms() {
                accumulate(&mut acc, e, &cb * s);
            }
        }
        for (k, a) in rel.a.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let coef = self.sigma_pow(&head, a);
            for (e, s) in self.mul_by_var(&head, k).terms() {
                accumulate(&mut acc, e, &coef * s);
            }
        }
        if !rel.d.is_zero() {
            accumulate(&mut acc, &head, self.sigma_pow(&head, &rel.d));
        }
        let out = Arc::new(Polynomial::from_map(acc));
        self.inner.var_cache.write().unwrap().insert(key, out.clone());
        out
    }

    /// Normal form of x^α · x^β as a polynomial.
    pub fn monomial_product_poly(&self, alpha: &Exponent, beta: &Exponent) -> Arc<Polynomial> {
        let ordered = match (alpha.last_var(), beta.first_var()) {
            (None, _) | (_, None) => true,
            (Some(a), Some(b)) => a <= b,
        };
        if ordered {
            return Arc::new(self.monomial(alpha.add(beta)));
        }
        let key = (alpha.clone(), beta.clone());
        if let Some(hit) = self.inner.mono_cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        let mut cur = self.monomial(alpha.clone());
        for v in 0..beta.len() {
            for _ in 0..beta.get(v) {
                let mut acc: HashMap<Exponent, Scalar> = HashMap::new();
                for (delta, b) in cur.terms() {
                    for (e, s) in self.mul_by_var(delta, v).terms() {
                        accumulate(&mut acc, e, b * s);
                    }
                }
                cur = Polynomial::from_map(acc);
            }
        }
        let out = Arc::new(cur);
        self.inner.mono_cache.write().unwrap().insert(key, out.clone());
        out
    }

    /// `x^α x^β = c x^(α+β) + p` with deg p < |α + β|.
    pub fn monomial_product(&self, alpha: &Exponent, beta: &Exponent) -> (Scalar, Polynomial) {
        let full = self.monomial_product_poly(alpha, beta);
        let top = alpha.add(beta);
        let c = full.coefficient(&top).cloned().unwrap_or_else(|| self.field().zero());
        let rest = Polynomial::from_terms(full.terms().iter().filter(|(e, _)| *e != top).cloned());
        (c, rest)
    }

    pub fn multiply(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        if f.is_zero() || g.is_zero() {
            return Polynomial::zero();
        }
        let mut acc: HashMap<Exponent, Scalar> = HashMap::new();
        for (alpha, a) in f.terms() {
            for (beta, b) in g.terms() {
                let coef = a * &self.sigma_pow(alpha, b);
                for (e, s) in self.monomial_product_poly(alpha, beta).terms() {
                    accumulate(&mut acc, e, &coef * s);
                }
            }
        }
        Polynomial::from_map(acc)
    }

    /// c·x^θ·g.
    pub fn mul_term_left(&self, c: &Scalar, theta: &Exponent, g: &Polynomial) -> Polynomial {
        if c.is_zero() || g.is_zero() {
            return Polynomial::zero();
        }
        let mut acc: HashMap<Exponent, Scalar> = HashMap::new();
        for (beta, b) in g.terms() {
            let coef = c * &self.sigma_pow(theta, b);
            for (e, s) in self.monomial_product_poly(theta, beta).terms() {
                accumulate(&mut acc, e, &coef * s);
            }
        }
        Polynomial::from_map(acc)
    }

    /// f·r for a scalar r on the right.
    pub fn mul_right_scalar(&self, f: &Polynomial, r: &Scalar) -> Polynomial {
        Polynomial::from_terms(f.terms().iter().map(|(e, a)| (e.clone(), a * &self.sigma_pow(e, r))))
    }

    pub fn pow(&self, f: &Polynomial, k: u32) -> Polynomial {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.multiply(&acc, f);
        }
        acc
    }

    /// f·g − g·f.
    pub fn commutator(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.multiply(f, g).sub(&self.multiply(g, f))
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(text, self)
    }

    pub fn format(&self, f: &Polynomial) -> String {
        format_polynomial(f, self.names())
    }

    /// The algebra with a central variable prepended at index 0.
    pub fn with_central_variable(&self) -> Result<Algebra> {
        let mut name = String::from("t");
        while self.names().contains(&name) || self.field().generator_symbols().contains(&name.as_str()) {
            name.push('_');
        }
        Ok(Algebra::new(self.presentation().with_front_variable(&name)?))
    }

    /// Number of cached products, for diagnostics.
    pub fn cache_sizes(&self) -> (usize, usize) {
        (self.inner.var_cache.read().unwrap().len(), self.inner.mono_cache.read().unwrap().len())
    }
}

/// Embeds `f` into the algebra with `k` extra front variables.
pub fn shift_polynomial(f: &Polynomial, k: usize) -> Polynomial {
    Polynomial::from_sorted_unchecked(f.terms().iter().map(|(e, c)| (e.shifted(k), c.clone())).collect())
}

/// Drops `k` front variables, which must not occur in `f`.
pub fn unshift_polynomial(f: &Polynomial, k: usize) -> Polynomial {
    Polynomial::from_terms(f.terms().iter().map(|(e, c)| (e.drop_front(k), c.clone())))
}
