//! Exponent vectors and admissible monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector α of a standard monomial x^α = x₁^α₁ ⋯ x_n^α_n.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Exponent(SmallVec<[u32; 4]>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(SmallVec::from_elem(0, n))
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = Self::zero(n);
        e.0[i] = 1;
        e
    }

    pub fn from_slice(v: &[u32]) -> Self {
        Exponent(SmallVec::from_slice(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, v: u32) {
        self.0[i] = v;
    }

    /// |α|
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.len(), other.len());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise max (the exponent of the lcm).
    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// β − α when α ≤ β componentwise.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        if self.len() != other.len() || self.0.iter().zip(&other.0).any(|(a, b)| a < b) {
            return None;
        }
        Some(Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// Index of the last variable with positive exponent.
    pub fn last_var(&self) -> Option<usize> {
        self.0.iter().rposition(|&a| a > 0)
    }

    pub fn first_var(&self) -> Option<usize> {
        self.0.iter().position(|&a| a > 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    /// Prepends `k` zero coordinates.
    pub fn shifted(&self, k: usize) -> Exponent {
        let mut v: SmallVec<[u32; 4]> = SmallVec::from_elem(0, k);
        v.extend_from_slice(&self.0);
        Exponent(v)
    }

    pub fn drop_front(&self, k: usize) -> Exponent {
        Exponent(SmallVec::from_slice(&self.0[k..]))
    }

    /// All exponents in `n` variables with total degree ≤ `d`, deglex-descending.
    pub fn all_up_to(n: usize, d: u32) -> Vec<Exponent> {
        let mut out = Vec::new();
        for deg in (0..=d).rev() {
            let mut cur = vec![0u32; n];
            enumerate_degree(n, deg, 0, &mut cur, &mut out);
        }
        out
    }
}

fn enumerate_degree(n: usize, left: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
    if n == 0 {
        if left == 0 {
            out.push(Exponent::zero(0));
        }
        return;
    }
    if pos == n - 1 {
        cur[pos] = left;
        out.push(Exponent::from_slice(cur));
        cur[pos] = 0;
        return;
    }
    for a in (0..=left).rev() {
        cur[pos] = a;
        enumerate_degree(n, left - a, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<u32>::deserialize(d).map(|v| Exponent::from_slice(&v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    #[default]
    Deglex,
    Degrevlex,
    /// The listed variables form a block compared first (deglex within the
    /// block); ties are broken by deglex on the remaining variables.
    Block(Vec<usize>),
}

fn deglex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        match self {
            MonomialOrder::Deglex => deglex_cmp(&a.0, &b.0),
            MonomialOrder::Degrevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Block(front) => {
                let pick = |e: &Exponent, inside: bool| -> SmallVec<[u32; 4]> {
                    (0..e.len()).filter(|i| front.contains(i) == inside).map(|i| e.0[i]).collect()
                };
                deglex_cmp(&pick(a, true), &pick(b, true)).then_with(|| deglex_cmp(&pick(a, false), &pick(b, false)))
            }
        }
    }

    /// A key whose lexicographic order agrees with this monomial order.
    pub fn sort_key(&self, a: &Exponent) -> SortKey {
        let mut k: SmallVec<[i64; 8]> = SmallVec::new();
        match self {
            MonomialOrder::Deglex => {
                k.push(a.degree() as i64);
                k.extend(a.iter().map(i64::from));
            }
            MonomialOrder::Degrevlex => {
                k.push(a.degree() as i64);
                k.extend(a.0.iter().rev().map(|&x| -(x as i64)));
            }
            MonomialOrder::Block(front) => {
                for inside in [true, false] {
                    let part: SmallVec<[u32; 4]> =
                        (0..a.len()).filter(|i| front.contains(i) == inside).map(|i| a.0[i]).collect();
                    k.push(part.iter().sum::<u32>() as i64);
                    k.extend(part.iter().map(|&x| x as i64));
                }
            }
        }
        SortKey(k)
    }

    /// Parses `deglex`, `degrevlex` or `block:<v1,v2,…>` against variable names.
    pub fn parse(text: &str, names: &[String]) -> Result<MonomialOrder> {
        let t = text.trim();
        match t {
            "deglex" => return Ok(MonomialOrder::Deglex),
            "degrevlex" => return Ok(MonomialOrder::Degrevlex),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("block:") {
            let mut front = Vec::new();
            for v in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let idx = names
                    .iter()
                    .position(|n| n == v)
                    .ok_or_else(|| Error::Invalid(format!("unknown variable `{v}` in block order")))?;
                front.push(idx);
            }
            if front.is_empty() {
                return Err(Error::Invalid("block order needs at least one variable".into()));
            }
            front.sort_unstable();
            front.dedup();
            return Ok(MonomialOrder::Block(front));
        }
        Err(Error::Invalid(format!("unknown monomial order `{t}`")))
    }

    pub fn describe(&self, names: &[String]) -> String {
        match self {
            MonomialOrder::Deglex => "deglex".into(),
            MonomialOrder::Degrevlex => "degrevlex".into(),
            MonomialOrder::Block(front) => {
                let vs: Vec<&str> = front.iter().map(|&i| names[i].as_str()).collect();
                format!("block:{}", vs.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SortKey(SmallVec<[i64; 8]>);

pub fn compare_monomials(order: &MonomialOrder, a: &Exponent, b: &Exponent) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(order.cmp(a, b))
}

/// θ with β = θ + α when x^α divides x^β.
pub fn monomial_divides(alpha: &Exponent, beta: &Exponent) -> Option<Exponent> {
    beta.checked_sub(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u32]) -> Exponent {
        Exponent::from_slice(v)
    }

    #[test]
    fn compare_examples() {
        let o = MonomialOrder::Deglex;
        assert_eq!(compare_monomials(&o, &e(&[2, 1]), &e(&[1, 2])).unwrap(), Ordering::Greater);
        assert_eq!(compare_monomials(&o, &e(&[0, 0]), &e(&[0, 0])).unwrap(), Ordering::Equal);
        let b = MonomialOrder::Block(vec![0]);
        assert_eq!(compare_monomials(&b, &e(&[1, 0]), &e(&[0, 5])).unwrap(), Ordering::Greater);
        assert!(compare_monomials(&o, &e(&[1]), &e(&[1, 0])).is_err());
    }

    #[test]
    fn degrevlex_differs_from_deglex() {
        // x*z^2 vs y^2*z
        let a = e(&[1, 0, 2]);
        let b = e(&[0, 2, 1]);
        assert_eq!(MonomialOrder::Deglex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::Degrevlex.cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn divides_examples() {
        assert_eq!(monomial_divides(&e(&[0, 1, 0]), &e(&[0, 1, 2])), Some(e(&[0, 0, 2])));
        assert_eq!(monomial_divides(&e(&[1, 0]), &e(&[0, 1])), None);
        assert_eq!(monomial_divides(&e(&[0, 0]), &e(&[3, 4])), Some(e(&[3, 4])));
    }

    #[test]
    fn sort_keys_agree_with_cmp() {
        let all = Exponent::all_up_to(3, 4);
        assert_eq!(all.len(), 35);
        for o in [MonomialOrder::Deglex, MonomialOrder::Degrevlex, MonomialOrder::Block(vec![1])] {
            for a in &all {
                for b in &all {
                    assert_eq!(o.cmp(a, b), o.sort_key(a).cmp(&o.sort_key(b)), "{o:?} {a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn enumeration_is_deglex_descending() {
        let all = Exponent::all_up_to(2, 3);
        for w in all.windows(2) {
            assert_eq!(MonomialOrder::Deglex.cmp(&w[0], &w[1]), Ordering::Greater);
        }
    }
}
