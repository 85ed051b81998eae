use super::linalg::{self, Matrix, Vector};
use super::BracketTable;
use crate::error::{Error, Result};
use crate::superspace::{canonical_order, nondecreasing_tuples};

/// Rewrites the structure constants in a new parity-preserving basis.
///
/// Row `k` of `p_even` holds the coordinates of the k-th new even basis
/// element in the old even basis, and likewise for `p_odd`. Transforming by
/// `P` and then by `Q` equals transforming by `QP`.
pub fn change_of_basis(t: &BracketTable, p_even: &Matrix, p_odd: &Matrix) -> Result<BracketTable> {
    let sig = t.sig();
    let (m, n) = (sig.even_count, sig.odd_count);
    let square = |b: &Matrix, k: usize| b.len() == k && b.iter().all(|r| r.len() == k);
    if !square(p_even, m) {
        return Err(Error::DimensionMismatch { expected: m, got: p_even.len() });
    }
    if !square(p_odd, n) {
        return Err(Error::DimensionMismatch { expected: n, got: p_odd.len() });
    }
    let inv_even = linalg::inverse(p_even).map_err(|_| Error::SingularBlock("even"))?;
    let inv_odd = linalg::inverse(p_odd).map_err(|_| Error::SingularBlock("odd"))?;

    let dim = sig.dim();
    let block_diag = |a: &Matrix, b: &Matrix| -> Matrix {
        let mut out = vec![linalg::zero_vector(dim); dim];
        for i in 0..m {
            for j in 0..m {
                out[i][j] = a[i][j].clone();
            }
        }
        for i in 0..n {
            for j in 0..n {
                out[m + i][m + j] = b[i][j].clone();
            }
        }
        out
    };
    let p = block_diag(p_even, p_odd);
    let p_inv = block_diag(&inv_even, &inv_odd);

    let mut out = BracketTable::with_names(t.arity(), sig, t.names().to_vec())?;
    for key in nondecreasing_tuples(dim, t.arity()) {
        if canonical_order(&key, sig).forced_zero {
            continue;
        }
        let args: Vec<Vector> = key.iter().map(|&k| p[k].clone()).collect();
        let old = t.bracket(&args)?;
        if linalg::is_zero_vector(&old) {
            continue;
        }
        let new = linalg::mat_mul(&vec![old], &p_inv).pop().unwrap();
        out.insert_canonical(key, new);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nlie::verify_axioms;
    use crate::scalar::GaussScalar;
    use crate::superspace::BasisSignature;

    fn s(n: i64) -> GaussScalar {
        GaussScalar::from_int(n)
    }

    fn t4a() -> BracketTable {
        let mut t = BracketTable::abelian(3, BasisSignature::new(0, 2)).unwrap();
        for key in nondecreasing_tuples(2, 3) {
            t.set(&key, vec![s(-1), s(1)]).unwrap();
        }
        t
    }

    fn t4b() -> BracketTable {
        let mut t = BracketTable::abelian(3, BasisSignature::new(0, 2)).unwrap();
        t.set(&[0, 0, 0], vec![s(0), s(1)]).unwrap();
        t
    }

    #[test]
    fn identity_is_a_no_op() {
        let t = t4a();
        assert_eq!(change_of_basis(&t, &Vec::new(), &linalg::identity(2)).unwrap(), t);
    }

    #[test]
    fn four_bracket_family_is_isomorphic_to_single_bracket() {
        // F1 = f1 + f2, F2 = 8(f2 - f1)
        let p_odd = vec![vec![s(1), s(1)], vec![s(-8), s(8)]];
        let out = change_of_basis(&t4a(), &Vec::new(), &p_odd).unwrap();
        assert_eq!(out, t4b());
    }

    #[test]
    fn scaling_odd_generator() {
        // f1 -> 3 f1: [F1, F1, F1] = 27 f2.
        let p_odd = vec![vec![s(3), s(0)], vec![s(0), s(1)]];
        let out = change_of_basis(&t4b(), &Vec::new(), &p_odd).unwrap();
        assert_eq!(out.bracket_basis(&[0, 0, 0]), vec![s(0), s(27)]);
        assert_eq!(out.entry_count(), 1);
        assert!(verify_axioms(&out).all_ok());
    }

    #[test]
    fn singular_and_misshapen_blocks() {
        let t = t4b();
        let singular = vec![vec![s(1), s(2)], vec![s(2), s(4)]];
        assert_eq!(change_of_basis(&t, &Vec::new(), &singular), Err(Error::SingularBlock("odd")));
        assert!(change_of_basis(&t, &vec![vec![s(1)]], &linalg::identity(2)).is_err());
    }

    #[test]
    fn composition_order() {
        let t = t4a();
        let p = vec![vec![s(1), s(1)], vec![s(0), s(2)]];
        let q = vec![vec![s(2), s(-1)], vec![s(1), s(1)]];
        let stepwise = change_of_basis(&change_of_basis(&t, &Vec::new(), &p).unwrap(), &Vec::new(), &q).unwrap();
        let direct = change_of_basis(&t, &Vec::new(), &linalg::mat_mul(&q, &p)).unwrap();
        assert_eq!(stepwise, direct);
    }
}
