//! Dense row reduction over Gaussian rationals.

use crate::error::{Error, Result};
use crate::scalar::GaussScalar;

pub type Vector = Vec<GaussScalar>;
/// Row-major dense matrix.
pub type Matrix = Vec<Vector>;

pub fn zero_vector(dim: usize) -> Vector {
    vec![GaussScalar::zero(); dim]
}

pub fn unit_vector(dim: usize, idx: usize) -> Vector {
    let mut v = zero_vector(dim);
    v[idx] = GaussScalar::one();
    v
}

pub fn is_zero_vector(v: &[GaussScalar]) -> bool {
    v.iter().all(GaussScalar::is_zero)
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit_vector(n, i)).collect()
}

/// `acc += c * v`.
pub fn axpy(acc: &mut [GaussScalar], c: &GaussScalar, v: &[GaussScalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

pub fn scale(v: &[GaussScalar], c: &GaussScalar) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn sub(a: &[GaussScalar], b: &[GaussScalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[GaussScalar], b: &[GaussScalar]) -> GaussScalar {
    let mut acc = GaussScalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = zero_vector(cols);
            for (k, c) in row.iter().enumerate() {
                axpy(&mut out, c, &b[k]);
            }
            out
        })
        .collect()
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vector], cols: usize) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.iter().filter(|r| !is_zero_vector(r)).cloned().collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        m[r] = scale(&m[r], &inv);
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vector], cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// Basis of `{x : A x = 0}` for `A` with `cols` columns.
pub fn nullspace(rows: &[Vector], cols: usize) -> Matrix {
    let (r, pivots) = rref(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = unit_vector(cols, f);
            for (row, &p) in r.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let augmented: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit_vector(n, i));
            r
        })
        .collect();
    let (r, pivots) = rref(&augmented, 2 * n);
    if pivots.iter().filter(|&&p| p < n).count() < n {
        return Err(Error::SingularBlock("matrix"));
    }
    Ok(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| GaussScalar::from_int(x)).collect()
    }

    #[test]
    fn rref_and_rank() {
        let rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        let (r, p) = rref(&rows, 3);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r, vec![v(&[1, 0, 1]), v(&[0, 1, 1])]);
        assert_eq!(rank(&[], 3), 0);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let rows = vec![v(&[1, 2, 3]), v(&[0, 1, 1])];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for x in &ns {
            for r in &rows {
                assert!(dot(r, x).is_zero());
            }
        }
        assert_eq!(nullspace(&[], 2), identity(2));
    }

    #[test]
    fn inverse_round_trip() {
        let i = GaussScalar::i();
        let m = vec![vec![GaussScalar::one(), i.clone()], vec![GaussScalar::from_int(2), GaussScalar::zero()]];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        assert!(inverse(&vec![v(&[1, 2]), v(&[2, 4])]).is_err());
        assert_eq!(inverse(&Vec::new()).unwrap(), Matrix::new());
    }
}
