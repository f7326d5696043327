//! Presentations σ(𝔽)⟨x₁,…,x_n⟩: variables, twists and relation constants.
//!
//! For each pair i < j the relation reads
//! `x_j x_i = c_ij x_i x_j + Σ_k a_ij^(k) x_k + d_ij`.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::monomial::Exponent;
use crate::parse::{format_polynomial, is_identifier, parse_words};
use crate::poly::Polynomial;
use crate::scalar::{AutomorphismSpec, Field, FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub c: Scalar,
    /// a_ij^(k), indexed by k.
    pub a: Vec<Scalar>,
    pub d: Scalar,
}

impl Relation {
    pub fn commuting(field: &Field, n: usize) -> Relation {
        Relation { c: field.one(), a: vec![field.zero(); n], d: field.zero() }
    }

    pub fn skew(field: &Field, n: usize, c: Scalar) -> Relation {
        Relation { c, a: vec![field.zero(); n], d: field.zero() }
    }

    pub fn has_lower_terms(&self) -> bool {
        !self.d.is_zero() || self.a.iter().any(|s| !s.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    field: Field,
    names: Vec<String>,
    sigma: Vec<AutomorphismSpec>,
    /// Pair (i, j), i < j, stored at j(j−1)/2 + i.
    relations: Vec<Relation>,
}

fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationFlags {
    pub quasi_commutative: bool,
    pub bijective: bool,
}

impl Presentation {
    /// Validates and builds a presentation. `relations` maps pairs (i, j),
    /// i < j, to their constants; missing pairs commute.
    pub fn new(
        field: Field,
        names: Vec<String>,
        sigma: Vec<AutomorphismSpec>,
        mut relations: HashMap<(usize, usize), Relation>,
    ) -> Result<Presentation> {
        let n = names.len();
        let mut seen = HashSet::new();
        for name in &names {
            if !is_identifier(name) {
                return Err(Error::Presentation(format!("`{name}` is not a valid variable name")));
            }
            if field.generator_symbols().contains(&name.as_str()) {
                return Err(Error::Presentation(format!(
                    "variable `{name}` clashes with the field generator of {}",
                    field.spec()
                )));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::Presentation(format!("duplicate variable `{name}`")));
            }
        }
        if sigma.len() != n {
            return Err(Error::Presentation(format!("{} twists given for {n} variables", sigma.len())));
        }
        for s in &sigma {
            s.validate(&field)?;
        }
        let mut rels = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for j in 0..n {
            for i in 0..j {
                let r = relations.remove(&(i, j)).unwrap_or_else(|| Relation::commuting(&field, n));
                if r.a.len() != n {
                    return Err(Error::Presentation(format!(
                        "relation {}{} has {} linear coefficients, expected {n}",
                        names[j],
                        names[i],
                        r.a.len()
                    )));
                }
                for s in std::iter::once(&r.c).chain(&r.a).chain(std::iter::once(&r.d)) {
                    field.check(s)?;
                }
                if r.c.is_zero() {
                    return Err(Error::Presentation(format!(
                        "relation {}*{}: the constant c must be nonzero",
                        names[j], names[i]
                    )));
                }
                rels.push(r);
            }
        }
        debug_assert_eq!(rels.len(), n * n.saturating_sub(1) / 2);
        if let Some(((i, j), _)) = relations.into_iter().next() {
            return Err(Error::Presentation(format!("relation pair ({i}, {j}) is out of range")));
        }
        Ok(Presentation { field, names, sigma, relations: rels })
    }

    /// 𝔽[x₁,…,x_n] with the given names.
    pub fn commutative(field: Field, names: &[&str]) -> Result<Presentation> {
        let n = names.len();
        Presentation::new(
            field,
            names.iter().map(|s| s.to_string()).collect(),
            vec![AutomorphismSpec::Identity; n],
            HashMap::new(),
        )
    }

    /// Quantum affine space with x_j x_i = q_ij x_i x_j; `q` is indexed [i][j].
    pub fn quantum_space(field: Field, names: &[&str], q: &[Vec<Scalar>]) -> Result<Presentation> {
        let n = names.len();
        let mut rels = HashMap::new();
        for j in 0..n {
            for i in 0..j {
                rels.insert((i, j), Relation::skew(&field, n, q[i][j].clone()));
            }
        }
        Presentation::new(
            field,
            names.iter().map(|s| s.to_string()).collect(),
            vec![AutomorphismSpec::Identity; n],
            rels,
        )
    }

    /// Quantum plane yx = q·xy in variables x, y.
    pub fn quantum_plane(field: Field, q: Scalar) -> Result<Presentation> {
        let one = field.one();
        Presentation::quantum_space(field, &["x", "y"], &[vec![one.clone(), q], vec![one.clone(), one]])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn sigma(&self) -> &[AutomorphismSpec] {
        &self.sigma
    }

    /// Constants for x_j x_i with i < j.
    pub fn relation(&self, i: usize, j: usize) -> &Relation {
        &self.relations[pair_index(i, j)]
    }

    pub fn classify(&self) -> ClassificationFlags {
        ClassificationFlags {
            quasi_commutative: self.relations.iter().all(|r| !r.has_lower_terms()),
            bijective: self.relations.iter().all(|r| !r.c.is_zero()),
        }
    }

    pub fn is_commutative(&self) -> bool {
        self.sigma.iter().all(|s| s.is_identity_on(&self.field))
            && self.relations.iter().all(|r| r.c.is_one() && !r.has_lower_terms())
    }

    /// True if some twist moves the field generator.
    pub fn is_twisted(&self) -> bool {
        self.sigma.iter().any(|s| !s.is_identity_on(&self.field))
    }

    /// Prepends a fresh central variable named `name` with identity twist.
    pub fn with_front_variable(&self, name: &str) -> Result<Presentation> {
        let n = self.nvars();
        let mut names = vec![name.to_string()];
        names.extend(self.names.iter().cloned());
        let mut sigma = vec![AutomorphismSpec::Identity];
        sigma.extend(self.sigma.iter().copied());
        let mut rels = HashMap::new();
        for j in 0..n {
            for i in 0..j {
                let r = self.relation(i, j);
                let mut a = vec![self.field.zero()];
                a.extend(r.a.iter().cloned());
                rels.insert((i + 1, j + 1), Relation { c: r.c.clone(), a, d: r.d.clone() });
            }
        }
        Presentation::new(self.field.clone(), names, sigma, rels)
    }

    /// Relation right-hand side `c x_i x_j + Σ a_k x_k + d` as a polynomial.
    pub fn relation_rhs(&self, i: usize, j: usize) -> Polynomial {
        let n = self.nvars();
        let r = self.relation(i, j);
        let mut terms = vec![(Exponent::unit(n, i).add(&Exponent::unit(n, j)), r.c.clone())];
        for (k, a) in r.a.iter().enumerate() {
            terms.push((Exponent::unit(n, k), a.clone()));
        }
        terms.push((Exponent::zero(n), r.d.clone()));
        Polynomial::from_terms(terms)
    }

    /// Serializes to the presentation document format.
    pub fn to_document(&self) -> String {
        let mut s = String::new();
        let q = |t: &str| toml_string(t);
        writeln!(s, "field = {}", q(&self.field.spec().tag())).unwrap();
        let vars: Vec<String> = self.names.iter().map(|v| q(v)).collect();
        writeln!(s, "vars = [{}]", vars.join(", ")).unwrap();
        let sig: Vec<String> = self.sigma.iter().map(|t| q(&t.tag())).collect();
        writeln!(s, "sigma = [{}]", sig.join(", ")).unwrap();
        writeln!(s, "relations = [").unwrap();
        for j in 0..self.nvars() {
            for i in 0..j {
                let rhs = format_polynomial(&self.relation_rhs(i, j), &self.names);
                writeln!(s, "  {},", q(&format!("{}*{} = {}", self.names[j], self.names[i], rhs))).unwrap();
            }
        }
        writeln!(s, "]").unwrap();
        s
    }

    /// SHA-256 of the serialized document, hex encoded.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_document().as_bytes()))
    }
}

fn toml_string(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    field: String,
    vars: Vec<String>,
    #[serde(default)]
    sigma: Vec<String>,
    #[serde(default)]
    relations: Vec<String>,
}

/// Parses a presentation document (TOML with keys `field`, `vars`, `sigma`,
/// `relations`).
pub fn load_presentation(doc: &str) -> Result<Presentation> {
    let d: Document = toml::from_str(doc).map_err(|e| Error::Presentation(e.message().to_string()))?;
    let field = Field::new(FieldSpec::from_tag(&d.field)?)?;
    let n = d.vars.len();
    if n == 0 {
        return Err(Error::Presentation("no variables declared".into()));
    }
    let sigma: Vec<AutomorphismSpec> = if d.sigma.is_empty() {
        vec![AutomorphismSpec::Identity; n]
    } else if d.sigma.len() == n {
        d.sigma.iter().map(|t| AutomorphismSpec::from_tag(t)).collect::<Result<_>>()?
    } else {
        return Err(Error::Presentation(format!("{} sigma entries for {n} variables", d.sigma.len())));
    };
    for s in &sigma {
        s.validate(&field)?;
    }
    let galois: Vec<u32> = sigma.iter().map(|s| s.galois_exponent(&field)).collect();
    let mut rels = HashMap::new();
    for text in &d.relations {
        let (lhs, rhs) =
            text.split_once('=').ok_or_else(|| Error::Presentation(format!("relation `{text}` has no `=`")))?;
        let wrap = |e: Error| Error::Presentation(format!("in relation `{text}`: {e}"));
        let lw = parse_words(lhs, &field, &d.vars, &galois).map_err(wrap)?;
        let (j, i) = match lw.iter().next() {
            Some((w, c)) if lw.len() == 1 && w.len() == 2 && c.is_one() && w[0] > w[1] => (w[0], w[1]),
            _ => {
                return Err(Error::Presentation(format!(
                    "left side of `{text}` must be x_j*x_i with x_j declared after x_i"
                )))
            }
        };
        if rels.contains_key(&(i, j)) {
            return Err(Error::Presentation(format!("duplicate relation for {}*{}", d.vars[j], d.vars[i])));
        }
        let rw = parse_words(rhs, &field, &d.vars, &galois).map_err(wrap)?;
        let mut rel = Relation { c: field.zero(), a: vec![field.zero(); n], d: field.zero() };
        for (w, c) in rw {
            match w.as_slice() {
                [] => rel.d = c,
                [k] => rel.a[*k] = c,
                [a, b] if *a == i && *b == j => rel.c = c,
                _ => {
                    let word: Vec<&str> = w.iter().map(|&k| d.vars[k].as_str()).collect();
                    return Err(Error::Presentation(format!(
                        "term `{}` not allowed on the right of `{text}`; expected {}*{}, single variables or constants",
                        word.join("*"),
                        d.vars[i],
                        d.vars[j]
                    )));
                }
            }
        }
        if rel.c.is_zero() {
            return Err(Error::Presentation(format!(
                "relation `{text}`: the coefficient of {}*{} must be nonzero",
                d.vars[i], d.vars[j]
            )));
        }
        rels.insert((i, j), rel);
    }
    Presentation::new(field, d.vars, sigma, rels)
}

/// Result of the overlap check on variable triples and low-degree monomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub consistent: bool,
    /// First failing triple (i, j, k) with i < j < k, as variable names.
    pub failing_triple: Option<[String; 3]>,
    /// Twist mismatches, one message per offending relation.
    pub twist_violations: Vec<String>,
    /// First failing monomial triple (α, β, γ) from the degree sweep.
    pub failing_monomials: Option<[Exponent; 3]>,
    pub checked_triples: usize,
}

/// Checks that (x_k x_j) x_i and x_k (x_j x_i) normalize identically for all
/// i < j < k, that the twists are compatible with the relations, and that
/// multiplication is associative on all monomial triples of total degree up
/// to `degree_bound`.
pub fn check_pbw_consistency(p: &Presentation, degree_bound: u32) -> ConsistencyReport {
    let alg = Algebra::new(p.clone());
    let n = p.nvars();
    let field = p.field();
    let mut report = ConsistencyReport {
        consistent: true,
        failing_triple: None,
        twist_violations: Vec::new(),
        failing_monomials: None,
        checked_triples: 0,
    };
    // x_j x_i r must equal (c σ_iσ_j(r)) x_i x_j + …, so lower terms need matching twists.
    let g: Vec<u32> = p.sigma().iter().map(|s| s.galois_exponent(field)).collect();
    let m = field.root_order().max(1) as u64;
    for j in 0..n {
        for i in 0..j {
            let r = p.relation(i, j);
            let gij = g[i] as u64 * g[j] as u64 % m;
            for (k, a) in r.a.iter().enumerate() {
                if !a.is_zero() && g[k] as u64 % m != gij {
                    report.twist_violations.push(format!(
                        "{}*{}: term in {} needs σ_{} = σ_{}σ_{}",
                        p.names[j], p.names[i], p.names[k], p.names[k], p.names[j], p.names[i]
                    ));
                }
            }
            if !r.d.is_zero() && gij != 1 % m {
                report.twist_violations.push(format!(
                    "{}*{}: constant term needs σ_{}σ_{} = id",
                    p.names[j], p.names[i], p.names[j], p.names[i]
                ));
            }
        }
    }
    'outer: for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                report.checked_triples += 1;
                let (xi, xj, xk) = (alg.var(i), alg.var(j), alg.var(k));
                let left = alg.multiply(&alg.multiply(&xk, &xj), &xi);
                let right = alg.multiply(&xk, &alg.multiply(&xj, &xi));
                if left != right {
                    report.failing_triple = Some([p.names[i].clone(), p.names[j].clone(), p.names[k].clone()]);
                    break 'outer;
                }
            }
        }
    }
    if report.failing_triple.is_none() && degree_bound >= 3 && n > 0 {
        let monos = Exponent::all_up_to(n, degree_bound);
        'sweep: for a in &monos {
            for b in &monos {
                if a.degree() + b.degree() > degree_bound {
                    continue;
                }
                for c in &monos {
                    if a.degree() + b.degree() + c.degree() > degree_bound || a.is_zero() || b.is_zero() || c.is_zero()
                    {
                        continue;
                    }
                    let one = field.one();
                    let (fa, fb, fc) = (
                        Polynomial::monomial(a.clone(), one.clone()),
                        Polynomial::monomial(b.clone(), one.clone()),
                        Polynomial::monomial(c.clone(), one.clone()),
                    );
                    let l = alg.multiply(&alg.multiply(&fa, &fb), &fc);
                    let r = alg.multiply(&fa, &alg.multiply(&fb, &fc));
                    if l != r {
                        report.failing_monomials = Some([a.clone(), b.clone(), c.clone()]);
                        break 'sweep;
                    }
                }
            }
        }
    }
    report.consistent =
        report.failing_triple.is_none() && report.twist_violations.is_empty() && report.failing_monomials.is_none();
    report
}
