use std::collections::BTreeSet;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::monomial::{monomial_divides, Exponent, MonomialOrder, SortKey};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

use super::{check_order, Budget, CompletionStats, GroebnerBasis, IdealHandle, IdealStatus, Reducer, Sidedness};

/// Incremental Buchberger completion under the normal strategy.
pub(crate) struct Completion<'a> {
    alg: &'a Algebra,
    order: MonomialOrder,
    budget: Budget,
    pub(crate) basis: Vec<Polynomial>,
    lms: Vec<Exponent>,
    cof: Option<Vec<Vec<Polynomial>>>,
    ngens: usize,
    pairs: BTreeSet<(SortKey, usize, usize)>,
    commutative: bool,
    pub(crate) stats: CompletionStats,
    pub(crate) incomplete: Option<String>,
    pub(crate) unit: Option<Option<Vec<Polynomial>>>,
}

impl<'a> Completion<'a> {
    pub(crate) fn new(alg: &'a Algebra, order: MonomialOrder, budget: Budget, certify_gens: Option<usize>) -> Self {
        Completion {
            alg,
            order,
            budget,
            basis: Vec::new(),
            lms: Vec::new(),
            cof: certify_gens.map(|_| Vec::new()),
            ngens: certify_gens.unwrap_or(0),
            pairs: BTreeSet::new(),
            commutative: alg.presentation().is_commutative(),
            stats: CompletionStats::default(),
            incomplete: None,
            unit: None,
        }
    }

    fn zero_cof(&self) -> Vec<Polynomial> {
        vec![Polynomial::zero(); self.ngens]
    }

    /// c·x^θ·(Σ cof_k g_k) as cofactors.
    fn shift_cof(&self, c: &Scalar, theta: &Exponent, cof: &[Polynomial]) -> Vec<Polynomial> {
        cof.iter().map(|p| self.alg.mul_term_left(c, theta, p)).collect()
    }

    fn reduce(&self, f: &Polynomial, cof: Option<Vec<Polynomial>>) -> (Polynomial, Option<Vec<Polynomial>>) {
        let red = Reducer { alg: self.alg, order: &self.order };
        match (cof, &self.cof) {
            (Some(mut acc), Some(basis_cof)) => {
                let mut steps: Vec<(usize, Exponent, Scalar)> = Vec::new();
                let r = red.reduce(f, &self.basis, &self.lms, |i, t, u| steps.push((i, t.clone(), u.clone())));
                for (i, t, u) in steps {
                    let sub = self.shift_cof(&u, &t, &basis_cof[i]);
                    for (a, s) in acc.iter_mut().zip(sub) {
                        *a = a.sub(&s);
                    }
                }
                (r, Some(acc))
            }
            _ => (red.reduce(f, &self.basis, &self.lms, |_, _, _| {}), None),
        }
    }

    /// Adds a generator (or derived element); `cof` expresses it in the
    /// original generators when certificates are tracked.
    pub(crate) fn insert(&mut self, f: &Polynomial, cof: Option<Vec<Polynomial>>) -> bool {
        if self.unit.is_some() {
            return false;
        }
        let (r, rcof) = self.reduce(f, cof);
        if r.is_zero() {
            return false;
        }
        let lc = r.lc(&self.order).unwrap().clone();
        let s = lc.inv().expect("nonzero leading coefficient");
        let r = r.scale_left(&s);
        let rcof = rcof.map(|v| v.iter().map(|p| p.scale_left(&s)).collect::<Vec<_>>());
        if r.is_nonzero_constant() {
            self.unit = Some(rcof);
            return true;
        }
        let lm = r.lm(&self.order).unwrap().clone();
        self.stats.max_degree_seen = self.stats.max_degree_seen.max(r.degree().unwrap_or(0));
        let idx = self.basis.len();
        for (k, other) in self.lms.iter().enumerate() {
            let gamma = other.lcm(&lm);
            if self.commutative && gamma == other.add(&lm) {
                continue;
            }
            self.pairs.insert((self.order.sort_key(&gamma), k, idx));
        }
        self.basis.push(r);
        self.lms.push(lm);
        if let (Some(all), Some(c)) = (self.cof.as_mut(), rcof) {
            all.push(c);
        }
        true
    }

    /// Inserts an input generator with its unit cofactor.
    pub(crate) fn insert_generator(&mut self, k: usize, g: &Polynomial) -> bool {
        let cof = self.cof.as_ref().map(|_| {
            let mut v = self.zero_cof();
            v[k] = self.alg.one();
            v
        });
        self.insert(g, cof)
    }

    fn s_element(&self, i: usize, j: usize, gamma: &Exponent) -> (Polynomial, Option<Vec<Polynomial>>) {
        let one = self.alg.field().one();
        let ti = gamma.checked_sub(&self.lms[i]).unwrap();
        let tj = gamma.checked_sub(&self.lms[j]).unwrap();
        let pi = self.alg.mul_term_left(&one, &ti, &self.basis[i]);
        let pj = self.alg.mul_term_left(&one, &tj, &self.basis[j]);
        let ui = pi.coefficient(gamma).unwrap().inv().unwrap();
        let uj = pj.coefficient(gamma).unwrap().inv().unwrap();
        let s = pi.scale_left(&ui).sub(&pj.scale_left(&uj));
        let cof = self.cof.as_ref().map(|all| {
            let a = self.shift_cof(&ui, &ti, &all[i]);
            let b = self.shift_cof(&uj, &tj, &all[j]);
            a.iter().zip(&b).map(|(x, y)| x.sub(y)).collect()
        });
        (s, cof)
    }

    /// Processes pairs until none remain, a unit appears, or the budget runs out.
    pub(crate) fn run(&mut self) {
        while self.unit.is_none() {
            let Some((_, i, j)) = self.pairs.pop_first() else { break };
            self.stats.pairs += 1;
            if self.stats.pairs > self.budget.max_pairs {
                self.incomplete = Some(format!("pair budget {} exhausted", self.budget.max_pairs));
                break;
            }
            let gamma = self.lms[i].lcm(&self.lms[j]);
            if gamma.degree() > self.budget.max_degree {
                self.incomplete = Some(format!(
                    "S-pair of degree {} exceeds the degree budget {}",
                    gamma.degree(),
                    self.budget.max_degree
                ));
                continue;
            }
            let (s, cof) = self.s_element(i, j, &gamma);
            self.insert(&s, cof);
        }
    }

    pub(crate) fn basis_len(&self) -> usize {
        self.basis.len()
    }

    /// Minimal, tail-reduced, sorted basis.
    pub(crate) fn reduced_basis(&self) -> GroebnerBasis {
        let n = self.basis.len();
        let keep: Vec<usize> = (0..n)
            .filter(|&i| !(0..n).any(|j| j != i && monomial_divides(&self.lms[j], &self.lms[i]).is_some()))
            .collect();
        let kept: Vec<Polynomial> = keep.iter().map(|&i| self.basis[i].clone()).collect();
        let kept_lms: Vec<Exponent> = keep.iter().map(|&i| self.lms[i].clone()).collect();
        let red = Reducer { alg: self.alg, order: &self.order };
        let mut out: Vec<(Polynomial, Option<Vec<Polynomial>>)> = Vec::new();
        for (pos, &i) in keep.iter().enumerate() {
            let others: Vec<Polynomial> =
                kept.iter().enumerate().filter(|(p, _)| *p != pos).map(|(_, g)| g.clone()).collect();
            let other_lms: Vec<Exponent> =
                kept_lms.iter().enumerate().filter(|(p, _)| *p != pos).map(|(_, e)| e.clone()).collect();
            let map_back: Vec<usize> = keep.iter().enumerate().filter(|(p, _)| *p != pos).map(|(_, &k)| k).collect();
            let mut steps: Vec<(usize, Exponent, Scalar)> = Vec::new();
            let g = red
                .reduce(&self.basis[i], &others, &other_lms, |k, t, u| steps.push((map_back[k], t.clone(), u.clone())));
            let cof = self.cof.as_ref().map(|all| {
                let mut acc = all[i].clone();
                for (k, t, u) in &steps {
                    for (a, s) in acc.iter_mut().zip(self.shift_cof(u, t, &all[*k])) {
                        *a = a.sub(&s);
                    }
                }
                acc
            });
            out.push((g, cof));
        }
        let order = self.order.clone();
        out.sort_by(|a, b| order.cmp(b.0.lm(&order).unwrap(), a.0.lm(&order).unwrap()));
        let certificates = self.cof.as_ref().map(|_| out.iter().map(|(_, c)| c.clone().unwrap()).collect());
        GroebnerBasis {
            order: self.order.clone(),
            elements: out.into_iter().map(|(g, _)| g).collect(),
            reduced: true,
            certificates,
        }
    }

    pub(crate) fn into_status(self) -> IdealStatus {
        if let Some(cert) = self.unit {
            return IdealStatus::ImproperUnit { certificate: cert };
        }
        if let Some(why) = &self.incomplete {
            return IdealStatus::Unknown(why.clone());
        }
        IdealStatus::Proper(self.reduced_basis())
    }
}

fn run_left(
    alg: &Algebra,
    gens: &[Polynomial],
    order: &MonomialOrder,
    budget: Budget,
    certify: bool,
) -> Result<IdealHandle> {
    check_order(alg, order)?;
    let mut c = Completion::new(alg, order.clone(), budget, certify.then_some(gens.len()));
    for (k, g) in gens.iter().enumerate() {
        c.insert_generator(k, g);
    }
    c.run();
    let stats = c.stats.clone();
    Ok(IdealHandle { generators: gens.to_vec(), sidedness: Sidedness::Left, status: c.into_status(), stats })
}

/// Left Gröbner basis of A·gens.
pub fn left_groebner(alg: &Algebra, gens: &[Polynomial], order: &MonomialOrder, budget: Budget) -> Result<IdealHandle> {
    run_left(alg, gens, order, budget, false)
}

/// As [`left_groebner`], also recording each element as a left combination
/// of the generators.
pub fn left_groebner_certified(
    alg: &Algebra,
    gens: &[Polynomial],
    order: &MonomialOrder,
    budget: Budget,
) -> Result<IdealHandle> {
    run_left(alg, gens, order, budget, true)
}
