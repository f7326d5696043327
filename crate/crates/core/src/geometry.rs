//! Roots, vanishing sets over finite search domains, ideals of points,
//! algebraic witnesses and semiprimeness probes.
//!
//! Z is a root of f when f lies in the two-sided ideal
//! ⟨Z⟩ = ⟨x₁ − z₁, …, x_n − z_n⟩. Points with ⟨Z⟩ = A are degenerate: they
//! are roots of everything.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::groebner::{
    intersect_left, is_member_left, left_groebner, normal_form, two_sided_saturate, Budget, IdealHandle, IdealStatus,
    Membership,
};
use crate::linalg::{kernel, span_basis};
use crate::monomial::{Exponent, MonomialOrder};
use crate::parse::{format_point, parse_scalar, split_top_level};
use crate::poly::Polynomial;
use crate::scalar::{Field, FieldSpec, Scalar};

pub type Point = Vec<Scalar>;

/// Finite candidate set for vanishing-set enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchDomain {
    /// One list of candidate values per coordinate.
    Grid(Vec<Vec<Scalar>>),
    /// Every point of GF(p)ⁿ.
    FullPrimeField,
}

impl SearchDomain {
    /// The same value list for each of `n` coordinates.
    pub fn uniform(values: Vec<Scalar>, n: usize) -> SearchDomain {
        SearchDomain::Grid(vec![values; n])
    }

    /// Integer range `lo..=hi` in every coordinate.
    pub fn int_range(field: &Field, lo: i64, hi: i64, n: usize) -> SearchDomain {
        SearchDomain::uniform((lo..=hi).map(|k| field.from_int(k)).collect(), n)
    }

    /// Parses `gf`, or `grid:<coord>[;<coord>…]` where each coordinate is a
    /// range `a..b` or a comma list of scalars. A single coordinate spec is
    /// used for every variable.
    pub fn parse(text: &str, field: &Field, n: usize) -> Result<SearchDomain> {
        let t = text.trim();
        if t == "gf" {
            return match field.spec() {
                FieldSpec::PrimeField(_) => Ok(SearchDomain::FullPrimeField),
                s => Err(Error::Invalid(format!("domain `gf` needs a prime field, got {s}"))),
            };
        }
        let body = t
            .strip_prefix("grid:")
            .ok_or_else(|| Error::Invalid(format!("unknown domain `{t}`; expected grid:<spec> or gf")))?;
        let coords: Vec<&str> = body.split(';').collect();
        let mut lists = Vec::new();
        for c in &coords {
            let c = c.trim();
            let values = if let Some((lo, hi)) = c.split_once("..") {
                let lo: i64 = lo.trim().parse().map_err(|_| Error::Invalid(format!("bad range `{c}`")))?;
                let hi: i64 = hi.trim().parse().map_err(|_| Error::Invalid(format!("bad range `{c}`")))?;
                if hi < lo || hi - lo > 10_000 {
                    return Err(Error::Invalid(format!("bad range `{c}`")));
                }
                (lo..=hi).map(|k| field.from_int(k)).collect()
            } else {
                split_top_level(c).into_iter().map(|(_, s)| parse_scalar(s, field)).collect::<Result<Vec<_>>>()?
            };
            lists.push(values);
        }
        if lists.len() == 1 {
            let v = lists.pop().unwrap();
            return Ok(SearchDomain::uniform(v, n));
        }
        if lists.len() != n {
            return Err(Error::LengthMismatch(lists.len(), n));
        }
        Ok(SearchDomain::Grid(lists))
    }

    /// All points, first coordinate varying slowest.
    pub fn points(&self, field: &Field, n: usize) -> Result<Vec<Point>> {
        let lists = match self {
            SearchDomain::Grid(l) => {
                if l.len() != n {
                    return Err(Error::LengthMismatch(l.len(), n));
                }
                l.clone()
            }
            SearchDomain::FullPrimeField => {
                let els = field
                    .elements()
                    .ok_or_else(|| Error::Invalid("full-field domain needs a small prime field".into()))?;
                vec![els; n]
            }
        };
        let mut out: Vec<Point> = vec![Vec::new()];
        for l in &lists {
            let mut next = Vec::with_capacity(out.len() * l.len());
            for p in &out {
                for v in l {
                    let mut q = p.clone();
                    q.push(v.clone());
                    next.push(q);
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// ⟨Z⟩ for a point, saturated to a two-sided basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointIdeal {
    pub point: Point,
    pub handle: IdealHandle,
}

impl PointIdeal {
    pub fn is_degenerate(&self) -> bool {
        self.handle.is_unit()
    }
}

/// Generators x_i − z_i.
pub fn point_generators(alg: &Algebra, z: &[Scalar]) -> Result<Vec<Polynomial>> {
    if z.len() != alg.nvars() {
        return Err(Error::LengthMismatch(z.len(), alg.nvars()));
    }
    z.iter()
        .enumerate()
        .map(|(i, zi)| {
            alg.field().check(zi)?;
            Ok(alg.var(i).sub(&alg.constant(zi.clone())))
        })
        .collect()
}

/// Uncached point ideal.
pub fn point_ideal(alg: &Algebra, z: &[Scalar], budget: Budget) -> Result<PointIdeal> {
    let gens = point_generators(alg, z)?;
    let handle = two_sided_saturate(alg, &gens, &MonomialOrder::Deglex, budget)?;
    Ok(PointIdeal { point: z.to_vec(), handle })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointStatus {
    Root,
    NonRoot,
    /// ⟨Z⟩ = A, so Z is a root of everything.
    Degenerate,
    Unknown,
}

impl PointStatus {
    pub fn is_member(&self) -> bool {
        matches!(self, PointStatus::Root | PointStatus::Degenerate)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingSet {
    pub table: Vec<(Point, PointStatus)>,
}

impl VanishingSet {
    /// Members of V(S) within the domain, degenerate points included.
    pub fn points(&self) -> Vec<Point> {
        self.table.iter().filter(|(_, s)| s.is_member()).map(|(p, _)| p.clone()).collect()
    }

    pub fn unknown(&self) -> Vec<Point> {
        self.table.iter().filter(|(_, s)| *s == PointStatus::Unknown).map(|(p, _)| p.clone()).collect()
    }

    pub fn degenerate(&self) -> Vec<Point> {
        self.table.iter().filter(|(_, s)| *s == PointStatus::Degenerate).map(|(p, _)| p.clone()).collect()
    }
}

/// Tags from the skew hypersurface definition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypersurfaceTags {
    pub tags: Vec<String>,
    pub diagnostic: Option<String>,
}

pub fn classify_hypersurface(alg: &Algebra, f: &Polynomial) -> HypersurfaceTags {
    if f.is_constant() {
        return HypersurfaceTags {
            tags: Vec::new(),
            diagnostic: Some("constant polynomials do not define hypersurfaces".into()),
        };
    }
    let n = alg.nvars();
    let deg = f.degree().unwrap_or(0);
    let mut tags = vec!["hypersurface".to_string()];
    if n == 2 {
        tags.push("plane curve".into());
    }
    if deg == 1 {
        tags.push("hyperplane".into());
    }
    if n == 2 && deg == 1 {
        tags.push("line".into());
    }
    HypersurfaceTags { tags, diagnostic: None }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub polynomial: Option<Polynomial>,
    pub verified: bool,
    pub diagnostic: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiprimeReport {
    pub point: Vec<String>,
    pub proper: Option<bool>,
    pub samples: usize,
    pub passed: usize,
    pub failed: usize,
    pub unknown: usize,
    pub counterexample: Option<String>,
}

/// Point-ideal cache plus the geometric operations that consume it.
pub struct Geometry {
    alg: Algebra,
    budget: Budget,
    cache: Mutex<HashMap<Point, Arc<PointIdeal>>>,
}

impl Geometry {
    pub fn new(alg: Algebra, budget: Budget) -> Geometry {
        Geometry { alg, budget, cache: Mutex::new(HashMap::new()) }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn point_ideal(&self, z: &[Scalar]) -> Result<Arc<PointIdeal>> {
        if let Some(hit) = self.cache.lock().unwrap().get(z) {
            return Ok(hit.clone());
        }
        let pi = Arc::new(point_ideal(&self.alg, z, self.budget)?);
        self.cache.lock().unwrap().entry(z.to_vec()).or_insert(pi.clone());
        Ok(pi)
    }

    pub fn is_root(&self, f: &Polynomial, z: &[Scalar]) -> Result<Membership> {
        let pi = self.point_ideal(z)?;
        Ok(is_member_left(&self.alg, f, &pi.handle))
    }

    fn status(&self, s: &[Polynomial], z: &[Scalar]) -> Result<PointStatus> {
        let pi = self.point_ideal(z)?;
        if pi.is_degenerate() {
            return Ok(PointStatus::Degenerate);
        }
        let mut unknown = false;
        for f in s {
            match is_member_left(&self.alg, f, &pi.handle) {
                Membership::No => return Ok(PointStatus::NonRoot),
                Membership::Unknown => unknown = true,
                Membership::Yes => {}
            }
        }
        Ok(if unknown { PointStatus::Unknown } else { PointStatus::Root })
    }

    /// Classifies every domain point against the generators `s`.
    pub fn vanishing_set(&self, s: &[Polynomial], domain: &SearchDomain) -> Result<VanishingSet> {
        let pts = domain.points(self.alg.field(), self.alg.nvars())?;
        let table: Result<Vec<(Point, PointStatus)>> = pts
            .into_par_iter()
            .map(|p| {
                let st = self.status(s, &p)?;
                Ok((p, st))
            })
            .collect();
        Ok(VanishingSet { table: table? })
    }

    /// Basis of I(X)_{≤d}: kernel of f ↦ (NF_⟨Z⟩(f))_Z on polynomials of
    /// degree ≤ d, in reduced echelon form (distinct leading monomials).
    pub fn ideal_of_points(&self, xs: &[Point], d: u32) -> Result<Vec<Polynomial>> {
        let n = self.alg.nvars();
        let field = self.alg.field();
        let monos = Exponent::all_up_to(n, d);
        let mut gbs = Vec::new();
        for z in xs {
            let pi = self.point_ideal(z)?;
            match &pi.handle.status {
                IdealStatus::Proper(gb) => gbs.push(gb.clone()),
                IdealStatus::ImproperUnit { .. } => {}
                IdealStatus::Unknown(why) => {
                    return Err(Error::UnknownIdeal(format!(
                        "point ideal of ({}) unresolved ({why}); raise the budget",
                        format_point(z)
                    )))
                }
            }
        }
        // Rows: one per (point, normal-form monomial).
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for gb in &gbs {
            let nfs: Vec<Polynomial> =
                monos.iter().map(|m| normal_form(&self.alg, &self.alg.monomial(m.clone()), gb)).collect();
            let mut index: HashMap<Exponent, usize> = HashMap::new();
            let start = rows.len();
            for (col, nf) in nfs.iter().enumerate() {
                for (e, c) in nf.terms() {
                    let r = *index.entry(e.clone()).or_insert_with(|| {
                        rows.push(vec![field.zero(); monos.len()]);
                        rows.len() - 1
                    });
                    debug_assert!(r >= start);
                    rows[r][col] = c.clone();
                }
            }
        }
        let ker = kernel(field, &rows, monos.len());
        let basis = span_basis(&ker, monos.len());
        Ok(basis.into_iter().map(|v| Polynomial::from_terms(monos.iter().cloned().zip(v))).collect())
    }

    /// A nonzero g with X ⊆ V(g), from the intersection of the left ideals
    /// A·(Σ_k x_k − z_ik).
    pub fn algebraic_witness(&self, xs: &[Point]) -> Result<Witness> {
        let alg = &self.alg;
        let n = alg.nvars();
        let lin = |z: &[Scalar]| -> Result<Polynomial> {
            Ok(point_generators(alg, z)?.into_iter().fold(Polynomial::zero(), |a, g| a.add(&g)))
        };
        if xs.is_empty() {
            let g = lin(&vec![alg.field().zero(); n])?;
            return Ok(Witness { polynomial: Some(g), verified: true, diagnostic: None });
        }
        let order = MonomialOrder::Deglex;
        let mut acc = left_groebner(alg, &[lin(&xs[0])?], &order, self.budget)?;
        for z in &xs[1..] {
            let next = left_groebner(alg, &[lin(z)?], &order, self.budget)?;
            let meet = intersect_left(alg, &acc, &next, self.budget)?;
            if !meet.complete || meet.generators.is_empty() {
                return Ok(Witness {
                    polynomial: None,
                    verified: false,
                    diagnostic: Some("intersection exceeded the budget".into()),
                });
            }
            acc = left_groebner(alg, &meet.generators, &order, self.budget)?;
            if !acc.is_proper() {
                return Ok(Witness {
                    polynomial: None,
                    verified: false,
                    diagnostic: Some(format!("intersection basis status {}", acc.status_str())),
                });
            }
        }
        let gb = acc.basis().expect("proper");
        let g = gb
            .elements
            .iter()
            .min_by(|a, b| order.cmp(a.lm(&order).unwrap(), b.lm(&order).unwrap()))
            .cloned()
            .expect("nonzero intersection");
        let mut verified = true;
        for z in xs {
            if self.is_root(&g, z)? != Membership::Yes {
                verified = false;
            }
        }
        Ok(Witness {
            polynomial: Some(g),
            verified,
            diagnostic: (!verified).then(|| "witness failed a root check".to_string()),
        })
    }

    /// Tests f² ∈ ⟨Z⟩ ⟺ f ∈ ⟨Z⟩ on random f of degree ≤ `max_deg`. Half
    /// of the samples are shifted into ⟨Z⟩ by subtracting their normal form.
    pub fn semiprime_probe(&self, z: &[Scalar], samples: usize, max_deg: u32, seed: u64) -> Result<SemiprimeReport> {
        let alg = &self.alg;
        if !alg.presentation().classify().quasi_commutative {
            return Err(Error::Unsupported("semiprime probe needs a quasi-commutative presentation".into()));
        }
        let pi = self.point_ideal(z)?;
        let mut report = SemiprimeReport {
            point: z.iter().map(|s| s.to_string()).collect(),
            proper: None,
            samples,
            passed: 0,
            failed: 0,
            unknown: 0,
            counterexample: None,
        };
        let gb = match &pi.handle.status {
            IdealStatus::Unknown(_) => {
                report.unknown = samples;
                return Ok(report);
            }
            IdealStatus::ImproperUnit { .. } => {
                report.proper = Some(false);
                report.passed = samples;
                return Ok(report);
            }
            IdealStatus::Proper(gb) => gb,
        };
        report.proper = Some(true);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in 0..samples {
            let mut f = random_polynomial(alg, &mut rng, max_deg, 4);
            if k % 2 == 1 {
                f = f.sub(&normal_form(alg, &f, gb));
            }
            let in_f = normal_form(alg, &f, gb).is_zero();
            let in_f2 = normal_form(alg, &alg.multiply(&f, &f), gb).is_zero();
            if in_f == in_f2 {
                report.passed += 1;
            } else {
                report.failed += 1;
                if report.counterexample.is_none() {
                    report.counterexample = Some(alg.format(&f));
                }
            }
        }
        Ok(report)
    }
}

/// Random polynomial of degree ≤ `max_deg` with at most `max_terms` terms
/// and small integer coefficients (a field generator mixed in when present).
pub fn random_polynomial(alg: &Algebra, rng: &mut impl Rng, max_deg: u32, max_terms: usize) -> Polynomial {
    let monos = Exponent::all_up_to(alg.nvars(), max_deg);
    let field = alg.field();
    let k = rng.gen_range(1..=max_terms);
    let mut terms = Vec::with_capacity(k);
    for _ in 0..k {
        let e = monos[rng.gen_range(0..monos.len())].clone();
        let mut c = field.from_int(rng.gen_range(-3..=3));
        if let Some(z) = field.zeta() {
            if rng.gen_bool(0.3) {
                c = &c + &(&field.from_int(rng.gen_range(-2..=2)) * &z);
            }
        }
        terms.push((e, c));
    }
    Polynomial::from_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{load_presentation, Presentation};

    fn q() -> Field {
        Field::new(FieldSpec::Rationals).unwrap()
    }

    fn plane(qv: i64) -> Geometry {
        let f = q();
        Geometry::new(Algebra::new(Presentation::quantum_plane(f.clone(), f.from_int(qv)).unwrap()), Budget::default())
    }

    fn pt(f: &Field, v: &[i64]) -> Point {
        v.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn point_ideal_examples() {
        let g = plane(-1);
        let f = q();
        let origin = g.point_ideal(&pt(&f, &[0, 0])).unwrap();
        let a = g.algebra();
        assert_eq!(origin.handle.basis().unwrap().elements, vec![a.var(0), a.var(1)]);
        assert!(g.point_ideal(&pt(&f, &[1, 1])).unwrap().is_degenerate());
        let w = Geometry::new(
            Algebra::new(
                load_presentation("field = \"Q\"\nvars = [\"x\", \"y\", \"z\"]\nrelations = [\"y*x = x*y - 1\"]\n")
                    .unwrap(),
            ),
            Budget::default(),
        );
        let one = w.algebra().one();
        assert!(w.point_ideal(&pt(&f, &[1, 0, 0])).unwrap().is_degenerate());
        assert_eq!(w.is_root(&one, &pt(&f, &[1, 0, 0])).unwrap(), Membership::Yes);
    }

    #[test]
    fn vanishing_examples() {
        let f = q();
        let c =
            Geometry::new(Algebra::new(Presentation::commutative(f.clone(), &["x", "y"]).unwrap()), Budget::default());
        let x = c.algebra().var(0);
        let v = c.vanishing_set(std::slice::from_ref(&x), &SearchDomain::int_range(&f, -1, 1, 2)).unwrap();
        assert_eq!(v.points(), vec![pt(&f, &[0, -1]), pt(&f, &[0, 0]), pt(&f, &[0, 1])]);
        let g = plane(-1);
        let x = g.algebra().var(0);
        let v = g.vanishing_set(&[x], &SearchDomain::int_range(&f, 0, 1, 2)).unwrap();
        assert_eq!(v.points(), vec![pt(&f, &[0, 0]), pt(&f, &[0, 1]), pt(&f, &[1, 1])]);
        assert_eq!(v.degenerate(), vec![pt(&f, &[1, 1])]);
        let all = g.vanishing_set(&[], &SearchDomain::int_range(&f, 0, 1, 2)).unwrap();
        assert_eq!(all.points().len(), 4);
    }

    #[test]
    fn ideal_of_points_examples() {
        let f = q();
        let c =
            Geometry::new(Algebra::new(Presentation::commutative(f.clone(), &["x", "y"]).unwrap()), Budget::default());
        let a = c.algebra().clone();
        let b = c.ideal_of_points(&[pt(&f, &[0, 0])], 1).unwrap();
        assert_eq!(b, vec![a.var(0), a.var(1)]);
        let g = plane(-1);
        assert_eq!(g.ideal_of_points(&[pt(&f, &[1, 1])], 1).unwrap().len(), 3);
        assert_eq!(g.ideal_of_points(&[], 2).unwrap().len(), 6);
    }

    #[test]
    fn witnesses() {
        let f = q();
        let c =
            Geometry::new(Algebra::new(Presentation::commutative(f.clone(), &["x", "y"]).unwrap()), Budget::default());
        let w = c.algebraic_witness(&[pt(&f, &[0, 0])]).unwrap();
        assert_eq!(c.algebra().format(w.polynomial.as_ref().unwrap()), "x + y");
        let w = c.algebraic_witness(&[pt(&f, &[0, 0]), pt(&f, &[1, 1])]).unwrap();
        assert!(w.verified);
        assert_eq!(w.polynomial.unwrap().degree(), Some(2));
        let w = c.algebraic_witness(&[]).unwrap();
        assert!(w.polynomial.is_some());
    }

    #[test]
    fn hypersurface_tags() {
        let f = q();
        let a2 = Algebra::new(Presentation::commutative(f.clone(), &["x", "y"]).unwrap());
        let t = classify_hypersurface(&a2, &a2.parse("x + y - 1").unwrap());
        assert_eq!(t.tags, vec!["hypersurface", "plane curve", "hyperplane", "line"]);
        let a3 = Algebra::new(Presentation::commutative(f.clone(), &["x", "y", "z"]).unwrap());
        assert_eq!(classify_hypersurface(&a3, &a3.parse("x*y + z").unwrap()).tags, vec!["hypersurface"]);
        let t = classify_hypersurface(&a3, &a3.parse("5").unwrap());
        assert!(t.tags.is_empty() && t.diagnostic.is_some());
    }

    #[test]
    fn probe_on_degenerate_point() {
        let g = plane(-1);
        let f = q();
        let r = g.semiprime_probe(&pt(&f, &[1, 1]), 10, 2, 1).unwrap();
        assert_eq!(r.proper, Some(false));
        let r = g.semiprime_probe(&pt(&f, &[0, 1]), 40, 3, 7).unwrap();
        assert_eq!(r.proper, Some(true));
        assert_eq!(r.failed, 0);
    }

    #[test]
    fn domain_parsing() {
        let f = q();
        let d = SearchDomain::parse("grid:-2..2", &f, 2).unwrap();
        assert_eq!(d.points(&f, 2).unwrap().len(), 25);
        let d = SearchDomain::parse("grid:0,1;1/2", &f, 2).unwrap();
        assert_eq!(d.points(&f, 2).unwrap().len(), 2);
        assert!(SearchDomain::parse("gf", &f, 2).is_err());
        let g5 = Field::new(FieldSpec::PrimeField(5)).unwrap();
        assert_eq!(SearchDomain::parse("gf", &g5, 2).unwrap().points(&g5, 2).unwrap().len(), 25);
    }
}
