//! Normal-ordered polynomials: finite sums of terms c·x^α with c on the left.
//!
//! Terms are kept sorted deglex-descending, so equality is structural and the
//! deglex leading term is the first entry. Multiplication needs the algebra's
//! commutation rules and lives in [`crate::algebra`].

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::monomial::{Exponent, MonomialOrder};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Exponent, Scalar)>,
}

fn canonical_cmp(a: &Exponent, b: &Exponent) -> Ordering {
    MonomialOrder::Deglex.cmp(b, a)
}

/// Leading monomial, coefficient and term of a polynomial; `Zero` encodes the
/// lm(0) := 0 convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeadingData {
    Zero,
    Term { lm: Exponent, lc: Scalar },
}

impl LeadingData {
    pub fn lm(&self) -> Option<&Exponent> {
        match self {
            LeadingData::Zero => None,
            LeadingData::Term { lm, .. } => Some(lm),
        }
    }

    pub fn lc(&self) -> Option<&Scalar> {
        match self {
            LeadingData::Zero => None,
            LeadingData::Term { lc, .. } => Some(lc),
        }
    }

    /// lt(f) as a one-term polynomial (zero for the zero polynomial).
    pub fn lt(&self) -> Polynomial {
        match self {
            LeadingData::Zero => Polynomial::zero(),
            LeadingData::Term { lm, lc } => Polynomial::monomial(lm.clone(), lc.clone()),
        }
    }
}

pub fn leading_data(order: &MonomialOrder, f: &Polynomial) -> LeadingData {
    match f.leading_term(order) {
        None => LeadingData::Zero,
        Some((lm, lc)) => LeadingData::Term { lm: lm.clone(), lc: lc.clone() },
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        Self::monomial(Exponent::zero(nvars), c)
    }

    pub fn monomial(e: Exponent, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: vec![(e, c)] }
    }

    pub fn one(field: &Field, nvars: usize) -> Self {
        Self::constant(field.one(), nvars)
    }

    /// Collects terms, merging equal exponents and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Exponent, Scalar)>>(iter: I) -> Self {
        let mut acc: HashMap<Exponent, Scalar> = HashMap::new();
        for (e, c) in iter {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&e) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Self::from_map(acc)
    }

    pub(crate) fn from_map(acc: HashMap<Exponent, Scalar>) -> Self {
        let mut terms: Vec<(Exponent, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        Polynomial { terms }
    }

    /// Builds from terms already sorted deglex-descending without duplicates.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Exponent, Scalar)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| canonical_cmp(&w[0].0, &w[1].0) == Ordering::Less));
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[(Exponent, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Exponent, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(e, _)| e.degree())
    }

    /// Nonzero constant (a unit of the algebra).
    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.is_nonzero_constant()
    }

    pub fn coefficient(&self, e: &Exponent) -> Option<&Scalar> {
        self.terms.binary_search_by(|(t, _)| canonical_cmp(t, e)).ok().map(|i| &self.terms[i].1)
    }

    pub fn leading_index(&self, order: &MonomialOrder) -> Option<usize> {
        if self.terms.is_empty() {
            return None;
        }
        if *order == MonomialOrder::Deglex {
            return Some(0);
        }
        let mut best = 0;
        for i in 1..self.terms.len() {
            if order.cmp(&self.terms[i].0, &self.terms[best].0) == Ordering::Greater {
                best = i;
            }
        }
        Some(best)
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Exponent, &Scalar)> {
        self.leading_index(order).map(|i| (&self.terms[i].0, &self.terms[i].1))
    }

    pub fn lm(&self, order: &MonomialOrder) -> Option<&Exponent> {
        self.leading_term(order).map(|t| t.0)
    }

    pub fn lc(&self, order: &MonomialOrder) -> Option<&Scalar> {
        self.leading_term(order).map(|t| t.1)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match canonical_cmp(&a.0, &b.0) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a.1 + &b.1;
                    if !s.is_zero() {
                        out.push((a.0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    /// c·f (the scalar stays on the left, so no twisting is needed).
    pub fn scale_left(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(e, a)| (e.clone(), c * a)).collect() }
    }

    /// lc(f)⁻¹·f under `order`; zero stays zero.
    pub fn make_monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.lc(order) {
            None => Polynomial::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale_left(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn map_exponents(&self, f: impl Fn(&Exponent) -> Exponent) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }

    /// Classical evaluation, treating the variables as commuting.
    pub fn evaluate_commutative(&self, field: &Field, point: &[Scalar]) -> Result<Scalar> {
        let mut acc = field.zero();
        for (e, c) in &self.terms {
            if e.len() != point.len() {
                return Err(Error::LengthMismatch(e.len(), point.len()));
            }
            let mut t = c.clone();
            for (k, z) in e.iter().zip(point) {
                if k > 0 {
                    t = &t * &z.pow(k as u64);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// True if no term involves the variables in `vars`.
    pub fn is_free_of(&self, vars: &[usize]) -> bool {
        self.terms.iter().all(|(e, _)| vars.iter().all(|&v| e.get(v) == 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    fn q() -> Field {
        Field::new(FieldSpec::Rationals).unwrap()
    }

    fn e(v: &[u32]) -> Exponent {
        Exponent::from_slice(v)
    }

    #[test]
    fn leading_data_examples() {
        let f = q();
        // x^2 y + y z^2 + x z with x > y > z
        let p = Polynomial::from_terms([(e(&[2, 1, 0]), f.one()), (e(&[0, 1, 2]), f.one()), (e(&[1, 0, 1]), f.one())]);
        let ld = leading_data(&MonomialOrder::Deglex, &p);
        assert_eq!(ld.lm(), Some(&e(&[2, 1, 0])));
        assert_eq!(leading_data(&MonomialOrder::Deglex, &Polynomial::zero()), LeadingData::Zero);
        let seven = Polynomial::constant(f.from_int(7), 3);
        let ld = leading_data(&MonomialOrder::Deglex, &seven);
        assert_eq!(ld.lm(), Some(&e(&[0, 0, 0])));
        assert_eq!(ld.lc(), Some(&f.from_int(7)));
    }

    #[test]
    fn addition_cancels() {
        let f = q();
        let p = Polynomial::from_terms([(e(&[1, 0]), f.one()), (e(&[0, 0]), f.from_int(2))]);
        assert!(p.sub(&p).is_zero());
        let s = p.add(&Polynomial::constant(f.from_int(-2), 2));
        assert_eq!(s, Polynomial::monomial(e(&[1, 0]), f.one()));
        assert_eq!(s.coefficient(&e(&[1, 0])), Some(&f.one()));
        assert_eq!(s.coefficient(&e(&[0, 1])), None);
    }

    #[test]
    fn leading_under_other_orders() {
        let f = q();
        let p = Polynomial::from_terms([(e(&[0, 5]), f.one()), (e(&[1, 0]), f.one())]);
        assert_eq!(p.lm(&MonomialOrder::Deglex), Some(&e(&[0, 5])));
        assert_eq!(p.lm(&MonomialOrder::Block(vec![0])), Some(&e(&[1, 0])));
    }
}
