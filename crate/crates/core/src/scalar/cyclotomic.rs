//! Power-basis arithmetic in ℚ(ζ_m).
//!
//! Elements are coefficient vectors of length φ(m) over the basis
//! `1, ζ, …, ζ^(φ(m)-1)`, always fully reduced modulo the m-th cyclotomic
//! polynomial, so two elements are equal iff their vectors are equal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicTable {
    m: u32,
    gaussian: bool,
    /// Φ_m, low degree first, monic.
    minpoly: Vec<BigInt>,
    /// ζ^e for e in 0..m, reduced.
    zeta_pows: Vec<Vec<BigRational>>,
}

/// Integer polynomial division `num / den` (den monic); panics if inexact.
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - dd] = c.clone();
        for (t, dt) in den.iter().enumerate() {
            rem[k - dd + t] -= &c * dt;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "cyclotomic division not exact");
    quot
}

pub(crate) fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    // x^m - 1 divided by Φ_d for every proper divisor d of m.
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

#[cfg(test)]
pub(crate) fn euler_phi(m: u32) -> usize {
    (1..=m).filter(|k| k.gcd(&m) == 1).count()
}

impl CyclotomicTable {
    pub fn new(m: u32, gaussian: bool) -> Self {
        let minpoly = cyclotomic_polynomial(m);
        let phi = minpoly.len() - 1;
        let mut table = CyclotomicTable { m, gaussian, minpoly, zeta_pows: Vec::new() };
        let mut pows = Vec::with_capacity(m as usize);
        for e in 0..m as usize {
            let mut v = vec![BigRational::zero(); e.max(phi - 1) + 1];
            v[e] = BigRational::one();
            pows.push(table.reduce(v));
        }
        debug_assert_eq!(pows.len(), m as usize);
        table.zeta_pows = pows;
        table
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn is_gaussian(&self) -> bool {
        self.gaussian
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    /// Reduces an arbitrary-length coefficient vector modulo Φ_m.
    pub fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        let phi = self.degree();
        for k in (phi..v.len()).rev() {
            if v[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut v[k], BigRational::zero());
            for t in 0..phi {
                if !self.minpoly[t].is_zero() {
                    v[k - phi + t] -= &c * BigRational::from_integer(self.minpoly[t].clone());
                }
            }
        }
        v.resize(phi, BigRational::zero());
        v
    }

    pub fn zeta_pow(&self, e: u64) -> &[BigRational] {
        &self.zeta_pows[(e % self.m as u64) as usize]
    }

    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let phi = self.degree();
        if phi == 1 {
            return vec![&a[0] * &b[0]];
        }
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }

    /// σ_k: ζ ↦ ζ^k applied to a reduced vector.
    pub fn galois(&self, a: &[BigRational], k: u32) -> Vec<BigRational> {
        let phi = self.degree();
        let mut out = vec![BigRational::zero(); phi];
        for (j, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = self.zeta_pow(j as u64 * k as u64);
            for (t, z) in img.iter().enumerate() {
                if !z.is_zero() {
                    out[t] += c * z;
                }
            }
        }
        out
    }

    /// Inverse via the multiplication-by-`a` matrix; `None` for zero.
    pub fn inv(&self, a: &[BigRational]) -> Option<Vec<BigRational>> {
        let phi = self.degree();
        if a.iter().all(Zero::is_zero) {
            return None;
        }
        // Columns: a * ζ^j. Augmented with e_0.
        let mut rows: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); phi + 1]; phi];
        for j in 0..phi {
            let col = self.mul(a, self.zeta_pow(j as u64));
            for (i, c) in col.into_iter().enumerate() {
                rows[i][j] = c;
            }
        }
        rows[0][phi] = BigRational::one();
        for col in 0..phi {
            let piv = (col..phi).find(|&r| !rows[r][col].is_zero())?;
            rows.swap(col, piv);
            let p = rows[col][col].clone();
            for x in rows[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..phi {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for c in col..=phi {
                        let t = &f * &rows[col][c];
                        rows[r][c] -= t;
                    }
                }
            }
        }
        Some(rows.into_iter().map(|r| r[phi].clone()).collect())
    }

    /// Multiplicative order of a root of unity, if `a` is one.
    pub fn root_of_unity_order(&self, a: &[BigRational]) -> Option<u32> {
        // Roots of unity in ℚ(ζ_m) have order dividing lcm(2, m).
        let bound = self.m.lcm(&2);
        let one = self.zeta_pow(0).to_vec();
        let mut acc = a.to_vec();
        for k in 1..=bound {
            if acc == one {
                return Some(k);
            }
            acc = self.mul(&acc, a);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(9).len() - 1, euler_phi(9));
    }

    #[test]
    fn zeta_has_exact_order() {
        for m in 1..=12u32 {
            let t = CyclotomicTable::new(m, false);
            let one = t.zeta_pow(0).to_vec();
            for j in 1..m as u64 {
                assert_ne!(t.zeta_pow(j), one.as_slice(), "m={m} j={j}");
            }
            let z = t.zeta_pow(1).to_vec();
            let mut acc = one.clone();
            for _ in 0..m {
                acc = t.mul(&acc, &z);
            }
            assert_eq!(acc, one);
        }
    }
}
