//! Independent brute-force oracles shared by the integration tests.
//!
//! Nothing here goes through the crate's canonical-ordering shortcut: signs
//! come from counting inverted pairs, and the Filippov identity is checked
//! over every ordering of every basis tuple.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use superlie::nlie::{linalg, BracketTable, Vector};
use superlie::scalar::GaussScalar;
use superlie::superspace::BasisSignature;

pub fn s(n: i64) -> GaussScalar {
    GaussScalar::from_int(n)
}

fn odd(sig: BasisSignature, i: usize) -> bool {
    i >= sig.even_count
}

/// Sorts `tuple` and returns the graded sign of the permutation, or `None`
/// when a repeated even index forces the bracket to vanish.
pub fn sort_with_sign(tuple: &[usize], sig: BasisSignature) -> Option<(Vec<usize>, i64)> {
    let mut sign = 1;
    for a in 0..tuple.len() {
        for b in a + 1..tuple.len() {
            if tuple[a] > tuple[b] {
                let both_odd = odd(sig, tuple[a]) && odd(sig, tuple[b]);
                sign *= if both_odd { 1 } else { -1 };
            }
        }
    }
    let mut sorted = tuple.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1] && !odd(sig, w[0])) {
        return None;
    }
    Some((sorted, sign))
}

pub struct Oracle {
    sig: BasisSignature,
    arity: usize,
    entries: BTreeMap<Vec<usize>, Vector>,
}

impl Oracle {
    pub fn new(t: &BracketTable) -> Self {
        Oracle { sig: t.sig(), arity: t.arity(), entries: t.entries().map(|(k, v)| (k.clone(), v.clone())).collect() }
    }

    pub fn basis(&self, tuple: &[usize]) -> Vector {
        let dim = self.sig.dim();
        let Some((key, sign)) = sort_with_sign(tuple, self.sig) else { return linalg::zero_vector(dim) };
        match self.entries.get(&key) {
            Some(v) => v.iter().map(|c| c * &s(sign)).collect(),
            None => linalg::zero_vector(dim),
        }
    }

    /// Residual `RHS - LHS` of the graded Filippov identity on ordered
    /// basis tuples.
    pub fn residual(&self, y: &[usize], x: &[usize]) -> Vector {
        let dim = self.sig.dim();
        let parity = |i: usize| odd(self.sig, i) as u32;
        let y_par: u32 = y.iter().map(|&i| parity(i)).sum::<u32>() % 2;
        let mut out = linalg::zero_vector(dim);

        let inner = self.basis(x);
        for (d, c) in inner.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut t = y.to_vec();
            t.push(d);
            linalg::axpy(&mut out, &-c.clone(), &self.basis(&t));
        }

        let mut prefix = 0;
        for i in 0..x.len() {
            let sign = if (prefix * y_par) % 2 == 1 { s(-1) } else { s(1) };
            let mut t = y.to_vec();
            t.push(x[i]);
            for (g, c) in self.basis(&t).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut outer = x.to_vec();
                outer[i] = g;
                linalg::axpy(&mut out, &(&sign * c), &self.basis(&outer));
            }
            prefix += parity(x[i]);
        }
        out
    }

    /// True when the identity holds on every ordered pair of basis tuples.
    pub fn filippov_holds(&self) -> bool {
        let dim = self.sig.dim();
        let ys = ordered_tuples(dim, self.arity - 1);
        let xs = ordered_tuples(dim, self.arity);
        ys.iter().all(|y| xs.iter().all(|x| linalg::is_zero_vector(&self.residual(y, x))))
    }
}

pub fn ordered_tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..dim).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Small Gaussian integer, occasionally with an imaginary part.
pub fn random_scalar(rng: &mut ChaCha8Rng) -> GaussScalar {
    let re = rng.gen_range(-2..=2);
    let im = if rng.gen_bool(0.2) { rng.gen_range(-1..=1) } else { 0 };
    GaussScalar::from_ratios(re, 1, im, 1)
}

/// Random invertible matrix: upper unitriangular times lower unitriangular
/// with a random nonzero diagonal in between.
pub fn random_invertible(rng: &mut ChaCha8Rng, k: usize) -> Vec<Vector> {
    let mut upper = linalg::identity(k);
    let mut lower = linalg::identity(k);
    let mut diag = linalg::identity(k);
    for i in 0..k {
        for j in 0..k {
            if i < j {
                upper[i][j] = random_scalar(rng);
            } else if i > j {
                lower[i][j] = random_scalar(rng);
            }
        }
        diag[i][i] = s([1, -1, 2, 3][rng.gen_range(0..4)]);
    }
    linalg::mat_mul(&linalg::mat_mul(&upper, &diag), &lower)
}
