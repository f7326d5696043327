//! Dense exact linear algebra over a [`Field`].

use crate::scalar::{Field, Scalar};

/// Row-reduced echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for c in col..ncols {
                if rows[r][c].is_zero() {
                    continue;
                }
                let t = &f * &rows[r][c];
                rows[i][c] = &rows[i][c] - &t;
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    pivots
}

/// Basis of {v : M v = 0} for an `nrows × ncols` matrix given by rows.
pub fn kernel(field: &Field, matrix: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut rows = matrix.to_vec();
    let pivots = rref(&mut rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); ncols];
            v[fc] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                if !rows[r][fc].is_zero() {
                    v[pc] = rows[r][fc].neg();
                }
            }
            v
        })
        .collect()
}

/// Some solution of M x = b, or `None` when inconsistent.
pub fn solve(field: &Field, matrix: &[Vec<Scalar>], b: &[Scalar], ncols: usize) -> Option<Vec<Scalar>> {
    let mut rows: Vec<Vec<Scalar>> = matrix
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut rows, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = rows[r][ncols].clone();
    }
    Some(x)
}

/// Rank of the row space.
pub fn rank(matrix: &[Vec<Scalar>], ncols: usize) -> usize {
    let mut rows = matrix.to_vec();
    rref(&mut rows, ncols).len()
}

/// Canonical basis (RREF rows) of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut rows = vectors.to_vec();
    rref(&mut rows, ncols);
    rows
}

/// True if `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Scalar>], v: &[Scalar], ncols: usize) -> bool {
    let r0 = rank(basis, ncols);
    let mut with = basis.to_vec();
    with.push(v.to_vec());
    rank(&with, ncols) == r0
}
