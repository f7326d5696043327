use std::collections::BTreeMap;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::monomial::{monomial_divides, Exponent, MonomialOrder, SortKey};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

use super::{check_order, GroebnerBasis};

/// Working polynomial keyed by the active order, largest term last.
pub(crate) struct Work<'o> {
    order: &'o MonomialOrder,
    map: BTreeMap<SortKey, (Exponent, Scalar)>,
}

impl<'o> Work<'o> {
    pub(crate) fn new(order: &'o MonomialOrder, f: &Polynomial) -> Self {
        let map = f.terms().iter().map(|(e, c)| (order.sort_key(e), (e.clone(), c.clone()))).collect();
        Work { order, map }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Exponent, Scalar)> {
        self.map.pop_last().map(|(_, v)| v)
    }

    /// self −= u·p
    pub(crate) fn sub_scaled(&mut self, u: &Scalar, p: &Polynomial) {
        for (e, c) in p.terms() {
            let key = self.order.sort_key(e);
            let delta = u * c;
            match self.map.get_mut(&key) {
                Some(slot) => {
                    slot.1 = &slot.1 - &delta;
                    if slot.1.is_zero() {
                        self.map.remove(&key);
                    }
                }
                None => {
                    self.map.insert(key, (e.clone(), delta.neg()));
                }
            }
        }
    }
}

pub(crate) struct Reducer<'a> {
    pub alg: &'a Algebra,
    pub order: &'a MonomialOrder,
}

impl Reducer<'_> {
    /// Fully reduces `f` by `divs`: every term of the result is divisible by
    /// no lm(divs[i]). `on_step(i, θ, u)` records each subtraction of
    /// u·x^θ·divs[i].
    pub(crate) fn reduce(
        &self,
        f: &Polynomial,
        divs: &[Polynomial],
        lms: &[Exponent],
        mut on_step: impl FnMut(usize, &Exponent, &Scalar),
    ) -> Polynomial {
        let mut work = Work::new(self.order, f);
        let mut rem: Vec<(Exponent, Scalar)> = Vec::new();
        while let Some((e, c)) = work.pop_leading() {
            let hit = lms.iter().enumerate().find_map(|(i, lm)| monomial_divides(lm, &e).map(|t| (i, t)));
            let Some((i, theta)) = hit else {
                rem.push((e, c));
                continue;
            };
            let prod = self.alg.mul_term_left(&self.alg.field().one(), &theta, &divs[i]);
            let top = prod.coefficient(&e).expect("leading term of x^θ·g").clone();
            let u = c.div(&top).expect("nonzero leading coefficient");
            // The leading term cancels exactly; subtract the rest.
            let tail = Polynomial::from_terms(prod.terms().iter().filter(|(t, _)| *t != e).cloned());
            work.sub_scaled(&u, &tail);
            on_step(i, &theta, &u);
        }
        Polynomial::from_terms(rem)
    }
}

/// Quotients and remainder with f = Σ q_i·f_i + h.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionResult {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

impl DivisionResult {
    /// Σ q_i·f_i + h, which must equal the dividend.
    pub fn reassemble(&self, alg: &Algebra, divisors: &[Polynomial]) -> Polynomial {
        self.quotients.iter().zip(divisors).fold(self.remainder.clone(), |acc, (q, f)| acc.add(&alg.multiply(q, f)))
    }
}

pub fn divide(alg: &Algebra, f: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Result<DivisionResult> {
    if divisors.is_empty() {
        return Err(Error::EmptyDivisors);
    }
    if let Some(i) = divisors.iter().position(Polynomial::is_zero) {
        return Err(Error::ZeroDivisor(i));
    }
    check_order(alg, order)?;
    let lms: Vec<Exponent> = divisors.iter().map(|g| g.lm(order).unwrap().clone()).collect();
    let mut q: Vec<Vec<(Exponent, Scalar)>> = vec![Vec::new(); divisors.len()];
    let red = Reducer { alg, order };
    let remainder = red.reduce(f, divisors, &lms, |i, theta, u| q[i].push((theta.clone(), u.clone())));
    Ok(DivisionResult { quotients: q.into_iter().map(Polynomial::from_terms).collect(), remainder })
}

/// Normal form of `f` modulo a Gröbner basis.
pub fn normal_form(alg: &Algebra, f: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    let lms = gb.leading_monomials();
    Reducer { alg, order: &gb.order }.reduce(f, &gb.elements, &lms, |_, _, _| {})
}
