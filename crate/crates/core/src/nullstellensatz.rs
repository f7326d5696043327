//! Centers of quantum affine spaces, contraction to the center, commutative
//! radical membership, and the sandwich check
//! ⟨I_Z(V_Z(J))⟩ ⊆ √I ⊆ I(V(I)) with J the contraction of I to Z(A).

use std::collections::HashMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::{shift_polynomial, Algebra};
use crate::error::{Error, Result};
use crate::geometry::{Geometry, Point, SearchDomain};
use crate::groebner::{
    intersect_left, is_member_left, left_groebner, normal_form, Budget, IdealHandle, IdealStatus, Membership,
};
use crate::linalg::{kernel, span_basis};
use crate::monomial::{Exponent, MonomialOrder};
use crate::normality::central_probe;
use crate::poly::Polynomial;
use crate::presentation::Presentation;
use crate::scalar::Scalar;

/// Z(A) = 𝔽[x₁^{L₁}, …, x_n^{L_n}] with its own commuting variables.
#[derive(Clone, Debug)]
pub struct CenterDescription {
    pub exponents: Vec<u32>,
    /// x_i^{L_i} in A.
    pub generators: Vec<Polynomial>,
    pub verified: bool,
    /// The commutative ring 𝔽[u₁, …, u_n] with u_i ↦ x_i^{L_i}.
    pub ring: Algebra,
}

fn center_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["u", "v", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|k| format!("u{k}")).collect()
    }
}

impl CenterDescription {
    pub fn names(&self) -> &[String] {
        self.ring.names()
    }

    /// u^k ↦ x^{L·k}, extended linearly.
    pub fn lift(&self, g: &Polynomial) -> Polynomial {
        Polynomial::from_terms(g.terms().iter().map(|(e, c)| {
            let v: Vec<u32> = e.iter().zip(&self.exponents).map(|(k, l)| k * l).collect();
            (Exponent::from_slice(&v), c.clone())
        }))
    }

    /// Inverse of [`lift`](Self::lift) on the span of central monomials.
    pub fn contract(&self, f: &Polynomial) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(f.len());
        for (e, c) in f.terms() {
            let mut v = Vec::with_capacity(e.len());
            for (a, l) in e.iter().zip(&self.exponents) {
                if a % l != 0 {
                    return None;
                }
                v.push(a / l);
            }
            terms.push((Exponent::from_slice(&v), c.clone()));
        }
        Some(Polynomial::from_terms(terms))
    }

    /// Exponents k with |L·k| ≤ d, deglex-descending in A.
    fn central_exponents(&self, d: u32) -> Vec<Exponent> {
        let n = self.exponents.len();
        let lmin = *self.exponents.iter().min().unwrap_or(&1);
        let mut ks: Vec<Exponent> = Exponent::all_up_to(n, d / lmin)
            .into_iter()
            .filter(|k| k.iter().zip(&self.exponents).map(|(a, l)| a * l).sum::<u32>() <= d)
            .collect();
        let lift = |k: &Exponent| -> Exponent {
            Exponent::from_slice(&k.iter().zip(&self.exponents).map(|(a, l)| a * l).collect::<Vec<_>>())
        };
        ks.sort_by(|a, b| MonomialOrder::Deglex.cmp(&lift(b), &lift(a)));
        ks
    }
}

/// Center of a quasi-commutative, untwisted presentation whose constants
/// are roots of unity, when it is the polynomial ring in the x_i^{L_i}.
pub fn center_generators(alg: &Algebra) -> Result<CenterDescription> {
    let p = alg.presentation();
    let n = p.nvars();
    if !p.classify().quasi_commutative {
        return Err(Error::Unsupported("center requires a quasi-commutative presentation".into()));
    }
    if p.is_twisted() {
        return Err(Error::Unsupported("center requires identity twists".into()));
    }
    let field = p.field();
    let mut l = vec![1u32; n];
    for j in 0..n {
        for i in 0..j {
            let c = &p.relation(i, j).c;
            let ord = field.root_of_unity_order(c).ok_or_else(|| {
                Error::Unsupported(format!("constant {c} of {}*{} is not a root of unity", p.names()[j], p.names()[i]))
            })?;
            l[i] = l[i].lcm(&ord);
            l[j] = l[j].lcm(&ord);
        }
    }
    let generators: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut e = Exponent::zero(n);
            e.set(i, l[i]);
            alg.monomial(e)
        })
        .collect();
    for (i, g) in generators.iter().enumerate() {
        if !central_probe(alg, g) {
            return Err(Error::NotCentral(format!("{}^{} failed the commutation check", p.names()[i], l[i])));
        }
    }
    // The center is spanned by central monomials; it is 𝔽[x_i^{L_i}] iff no
    // monomial with all α_i < L_i other than 1 is central.
    let cells: u64 = l.iter().map(|&x| x as u64).product();
    if cells > 200_000 {
        return Err(Error::Unsupported("center exponents too large to verify".into()));
    }
    let mut alpha = vec![0u32; n];
    loop {
        let mut k = 0;
        while k < n {
            alpha[k] += 1;
            if alpha[k] < l[k] {
                break;
            }
            alpha[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
        let m = alg.monomial(Exponent::from_slice(&alpha));
        if central_probe(alg, &m) {
            return Err(Error::Unsupported(format!(
                "center is not a polynomial ring in the x_i^L_i: {} is central",
                alg.format(&m)
            )));
        }
    }
    let names = center_names(n);
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ring = Algebra::new(Presentation::commutative(field.clone(), &name_refs)?);
    Ok(CenterDescription { exponents: l, generators, verified: true, ring })
}

/// Basis of J_{≤d} = I_{≤d} ∩ Z(A), written in the center's variables.
pub fn contract_to_center(
    alg: &Algebra,
    ideal: &IdealHandle,
    c: &CenterDescription,
    d: u32,
) -> Result<Vec<Polynomial>> {
    let ks = c.central_exponents(d);
    match &ideal.status {
        IdealStatus::Unknown(why) => Err(Error::UnknownIdeal(why.clone())),
        IdealStatus::ImproperUnit { .. } => Ok(ks.into_iter().map(|k| c.ring.monomial(k)).collect()),
        IdealStatus::Proper(gb) => {
            let field = alg.field();
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            let mut index: HashMap<Exponent, usize> = HashMap::new();
            for (col, k) in ks.iter().enumerate() {
                let nf = normal_form(alg, &c.lift(&c.ring.monomial(k.clone())), gb);
                for (e, s) in nf.terms() {
                    let r = *index.entry(e.clone()).or_insert_with(|| {
                        rows.push(vec![field.zero(); ks.len()]);
                        rows.len() - 1
                    });
                    rows[r][col] = s.clone();
                }
            }
            let ker = kernel(field, &rows, ks.len());
            Ok(span_basis(&ker, ks.len())
                .into_iter()
                .map(|v| Polynomial::from_terms(ks.iter().cloned().zip(v)))
                .collect())
        }
    }
}

/// f ∈ √J in a commutative ring, via 1 ∈ J + ⟨1 − t·f⟩.
pub fn radical_membership_commutative(
    ring: &Algebra,
    f: &Polynomial,
    j: &[Polynomial],
    budget: Budget,
) -> Result<bool> {
    if !ring.presentation().is_commutative() {
        return Err(Error::Unsupported("radical membership needs a commutative ring".into()));
    }
    let ext = ring.with_central_variable()?;
    let t = ext.var(0);
    let mut gens: Vec<Polynomial> = j.iter().map(|g| shift_polynomial(g, 1)).collect();
    gens.push(ext.one().sub(&ext.multiply(&t, &shift_polynomial(f, 1))));
    let h = left_groebner(&ext, &gens, &MonomialOrder::Degrevlex, budget)?;
    match h.status {
        IdealStatus::ImproperUnit { .. } => Ok(true),
        IdealStatus::Proper(_) => Ok(false),
        IdealStatus::Unknown(why) => Err(Error::UnknownIdeal(why)),
    }
}

/// Generators of the vanishing ideal of finitely many points of a
/// commutative ring; {1} for no points.
pub fn commutative_points_ideal(ring: &Algebra, points: &[Point], budget: Budget) -> Result<Vec<Polynomial>> {
    if !ring.presentation().is_commutative() {
        return Err(Error::Unsupported("points ideal needs a commutative ring".into()));
    }
    if points.is_empty() {
        return Ok(vec![ring.one()]);
    }
    let order = MonomialOrder::Deglex;
    let maximal = |p: &Point| -> Result<IdealHandle> {
        let gens = crate::geometry::point_generators(ring, p)?;
        left_groebner(ring, &gens, &order, budget)
    };
    let mut acc = maximal(&points[0])?;
    for p in &points[1..] {
        let next = maximal(p)?;
        let meet = intersect_left(ring, &acc, &next, budget)?;
        if !meet.complete {
            return Err(Error::UnknownIdeal("points ideal exceeded the budget".into()));
        }
        acc = left_groebner(ring, &meet.generators, &order, budget)?;
    }
    match acc.status {
        IdealStatus::Proper(gb) => Ok(gb.elements),
        IdealStatus::ImproperUnit { .. } => Ok(vec![ring.one()]),
        IdealStatus::Unknown(why) => Err(Error::UnknownIdeal(why)),
    }
}

/// Smallest m ≤ `max_power` with w^m ∈ I, for central w.
pub fn central_nilpotency(alg: &Algebra, w: &Polynomial, ideal: &IdealHandle, max_power: u32) -> Result<Option<u32>> {
    if !central_probe(alg, w) {
        return Err(Error::NotCentral(alg.format(w)));
    }
    if ideal.is_unknown() {
        return Err(Error::UnknownIdeal("ideal unresolved".into()));
    }
    let mut pw = w.clone();
    for m in 1..=max_power {
        if is_member_left(alg, &pw, ideal) == Membership::Yes {
            return Ok(Some(m));
        }
        pw = alg.multiply(&pw, w);
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    Refuted { counterexample: String },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, Verdict::Confirmed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorStatus {
    /// In √J and w^m ∈ I for the reported m.
    Certified,
    /// Vanishes on the grid trace of V_Z(J) but not on V_Z(J) itself.
    OutsideRadical,
    /// In √J but no power up to the bound lies in I.
    NotFound,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub generator: String,
    pub lifted: String,
    pub in_radical_of_j: Option<bool>,
    pub status: GeneratorStatus,
    pub nilpotency: Option<u32>,
    pub root_checks: usize,
    pub root_failures: Vec<String>,
    pub root_unknown: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub center_variables: Vec<String>,
    pub center_exponents: Vec<u32>,
    pub j_generators: Vec<String>,
    pub vz_points: Vec<String>,
    pub radical_generators: Vec<GeneratorReport>,
    pub v_points: Vec<String>,
    pub v_degenerate: Vec<String>,
    pub v_unknown: Vec<String>,
    pub first_inclusion: Verdict,
    pub second_inclusion: Verdict,
    pub notes: Vec<String>,
}

impl SandwichReport {
    /// Lifted generators certified to lie in √I.
    pub fn certified(&self) -> Vec<&str> {
        self.radical_generators
            .iter()
            .filter(|g| g.status == GeneratorStatus::Certified)
            .map(|g| g.lifted.as_str())
            .collect()
    }
}

fn fmt_point(p: &Point) -> String {
    format!("({})", crate::parse::format_point(p))
}

/// Runs the sandwich pipeline for a two-sided ideal `ideal` of the
/// geometry's algebra; `domain` is used both in A and in center coordinates.
pub fn verify_sandwich(
    geom: &Geometry,
    ideal: &IdealHandle,
    c: &CenterDescription,
    domain: &SearchDomain,
    d: u32,
    max_power: u32,
    budget: Budget,
) -> Result<SandwichReport> {
    let alg = geom.algebra();
    let ring = &c.ring;
    let mut report = SandwichReport {
        center_variables: c.names().to_vec(),
        center_exponents: c.exponents.clone(),
        j_generators: Vec::new(),
        vz_points: Vec::new(),
        radical_generators: Vec::new(),
        v_points: Vec::new(),
        v_degenerate: Vec::new(),
        v_unknown: Vec::new(),
        first_inclusion: Verdict::Inconclusive { reason: "not run".into() },
        second_inclusion: Verdict::Inconclusive { reason: "not run".into() },
        notes: Vec::new(),
    };
    if !c.verified {
        return Err(Error::Invalid("center description is not verified".into()));
    }
    if let IdealStatus::Unknown(why) = &ideal.status {
        let r = format!("ideal unresolved: {why}");
        report.first_inclusion = Verdict::Inconclusive { reason: r.clone() };
        report.second_inclusion = Verdict::Inconclusive { reason: r };
        return Ok(report);
    }
    // (1) contraction
    let j = contract_to_center(alg, ideal, c, d)?;
    report.j_generators = j.iter().map(|g| ring.format(g)).collect();
    // (2) V_Z(J) over the domain by evaluation
    let mut vz = Vec::new();
    for p in domain.points(ring.field(), ring.nvars())? {
        let mut zero = true;
        for g in &j {
            if !g.evaluate_commutative(ring.field(), &p)?.is_zero() {
                zero = false;
                break;
            }
        }
        if zero {
            vz.push(p);
        }
    }
    report.vz_points = vz.iter().map(fmt_point).collect();
    // (3) ideal of the found points, cross-checked against √J
    let g_list = commutative_points_ideal(ring, &vz, budget)?;
    // (5, prepared) V(I) over the domain
    let v = geom.vanishing_set(&ideal.generators, domain)?;
    let v_points = v.points();
    report.v_points = v_points.iter().map(fmt_point).collect();
    report.v_degenerate = v.degenerate().iter().map(fmt_point).collect();
    report.v_unknown = v.unknown().iter().map(fmt_point).collect();
    let mut first_ok = true;
    let mut first_reason = None;
    let mut second_ok = true;
    let mut second_reason = None;
    let mut refuted = None;
    for g in &g_list {
        let lifted = c.lift(g);
        let mut gr = GeneratorReport {
            generator: ring.format(g),
            lifted: alg.format(&lifted),
            in_radical_of_j: None,
            status: GeneratorStatus::Unknown,
            nilpotency: None,
            root_checks: 0,
            root_failures: Vec::new(),
            root_unknown: 0,
        };
        match radical_membership_commutative(ring, g, &j, budget) {
            Ok(false) => {
                gr.in_radical_of_j = Some(false);
                gr.status = GeneratorStatus::OutsideRadical;
                report
                    .notes
                    .push(format!("{} vanishes on the grid trace of V_Z(J) but not on V_Z(J); excluded", gr.generator));
                report.radical_generators.push(gr);
                continue;
            }
            Ok(true) => gr.in_radical_of_j = Some(true),
            Err(e) => {
                first_ok = false;
                first_reason.get_or_insert(format!("radical check for {}: {e}", gr.generator));
                report.radical_generators.push(gr);
                continue;
            }
        }
        // (4) nilpotency certificate
        match central_nilpotency(alg, &lifted, ideal, max_power)? {
            Some(m) => {
                gr.nilpotency = Some(m);
                gr.status = GeneratorStatus::Certified;
            }
            None => {
                gr.status = GeneratorStatus::NotFound;
                first_ok = false;
                first_reason.get_or_insert(format!("no power of {} up to {max_power} lies in I", gr.lifted));
            }
        }
        // (5) root checks for certified witnesses
        if gr.status == GeneratorStatus::Certified {
            for z in &v_points {
                gr.root_checks += 1;
                match geom.is_root(&lifted, z)? {
                    Membership::Yes => {}
                    Membership::No => {
                        gr.root_failures.push(fmt_point(z));
                        second_ok = false;
                        refuted.get_or_insert(format!("{} is not a root at {}", gr.lifted, fmt_point(z)));
                    }
                    Membership::Unknown => {
                        gr.root_unknown += 1;
                        second_ok = false;
                        second_reason.get_or_insert(format!("root check of {} unresolved", gr.lifted));
                    }
                }
            }
        }
        report.radical_generators.push(gr);
    }
    if !v.unknown().is_empty() {
        second_ok = false;
        second_reason.get_or_insert("some domain points have unresolved point ideals".into());
    }
    let any_certified = report.radical_generators.iter().any(|g| g.status == GeneratorStatus::Certified);
    report.first_inclusion = if first_ok && any_certified {
        Verdict::Confirmed
    } else if first_ok {
        Verdict::Inconclusive { reason: "no generator of I_Z(V_Z(J)) lies in √J".into() }
    } else {
        Verdict::Inconclusive { reason: first_reason.unwrap_or_default() }
    };
    report.second_inclusion = if let Some(cx) = refuted {
        Verdict::Refuted { counterexample: cx }
    } else if second_ok && any_certified {
        Verdict::Confirmed
    } else if second_ok {
        Verdict::Inconclusive { reason: "no certified √I witnesses to check".into() }
    } else {
        Verdict::Inconclusive { reason: second_reason.unwrap_or_default() }
    };
    Ok(report)
}
