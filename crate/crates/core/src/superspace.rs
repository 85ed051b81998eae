//! Z2-graded index bookkeeping.
//!
//! Basis indices `0..m` are even and `m..m+n` are odd. Reordering a bracket's
//! arguments by adjacent transpositions picks up a factor `-(-1)^{|a||b|}`
//! per swap of neighbours `a`, `b`.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u32 {
        self as u32
    }

    /// Whether `(-1)^{|a||b|}` is negative.
    pub fn both_odd(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.is_odd() != rhs.is_odd())
    }
}

impl std::iter::Sum for Parity {
    fn sum<I: Iterator<Item = Parity>>(iter: I) -> Parity {
        iter.fold(Parity::Even, |a, b| a + b)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Dimension `m|n` of a super vector space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisSignature {
    pub even_count: usize,
    pub odd_count: usize,
}

impl BasisSignature {
    pub fn new(even_count: usize, odd_count: usize) -> Self {
        Self { even_count, odd_count }
    }

    pub fn dim(&self) -> usize {
        self.even_count + self.odd_count
    }

    pub fn parity(&self, idx: usize) -> Parity {
        Parity::from_bit(idx >= self.even_count)
    }

    pub fn parities(&self, tuple: &[usize]) -> Vec<Parity> {
        tuple.iter().map(|&i| self.parity(i)).collect()
    }

    /// Total parity of a tuple of basis indices.
    pub fn tuple_parity(&self, tuple: &[usize]) -> Parity {
        tuple.iter().map(|&i| self.parity(i)).sum()
    }

    /// Conventional basis names `e1..em, f1..fn`.
    pub fn default_names(&self) -> Vec<String> {
        (1..=self.even_count).map(|i| format!("e{i}")).chain((1..=self.odd_count).map(|i| format!("f{i}"))).collect()
    }
}

impl fmt::Display for BasisSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.even_count, self.odd_count)
    }
}

pub fn parity_of_index(sig: BasisSignature, idx: usize) -> Result<Parity> {
    if idx >= sig.dim() {
        return Err(Error::IndexOutOfRange { index: idx, dim: sig.dim() });
    }
    Ok(sig.parity(idx))
}

/// `|x|_i`: the parity of the first `i` entries.
pub fn prefix_parity(parities: &[Parity], i: usize) -> Parity {
    parities[..i].iter().copied().sum()
}

/// A tuple sorted into non-decreasing order together with the sign picked up
/// on the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub tuple: Vec<usize>,
    /// `true` when the sign is -1.
    pub negative: bool,
    /// The bracket of the original tuple is identically zero.
    pub forced_zero: bool,
}

impl CanonicalForm {
    pub fn sign(&self) -> i32 {
        if self.negative {
            -1
        } else {
            1
        }
    }
}

/// Bubble-sorts `tuple` by adjacent transpositions, accumulating the graded sign.
///
/// Indices must be in range for `sig`; the caller checks.
pub fn canonical_order(tuple: &[usize], sig: BasisSignature) -> CanonicalForm {
    let mut t = tuple.to_vec();
    let mut negative = false;
    let len = t.len();
    for pass in 0..len {
        let mut swapped = false;
        for k in 0..len.saturating_sub(1 + pass) {
            if t[k] > t[k + 1] {
                // -(-1)^{|a||b|} is -1 unless both are odd.
                if !sig.parity(t[k]).both_odd(sig.parity(t[k + 1])) {
                    negative = !negative;
                }
                t.swap(k, k + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    let forced_zero = t.windows(2).any(|w| w[0] == w[1] && !sig.parity(w[0]).is_odd());
    CanonicalForm { tuple: t, negative, forced_zero }
}

/// Non-decreasing tuples of length `len` over `0..dim`, in lexicographic order.
pub fn nondecreasing_tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(dim: usize, len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(dim, len, i, cur, out);
            cur.pop();
        }
    }
    rec(dim, len, 0, &mut cur, &mut out);
    out
}

/// All tuples of length `len` over `0..dim`, in lexicographic order.
pub fn all_tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
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

#[cfg(test)]
mod tests {
    use super::*;
    use Parity::*;

    #[test]
    fn index_parities() {
        let s21 = BasisSignature::new(2, 1);
        assert_eq!(parity_of_index(s21, 0).unwrap(), Even);
        assert_eq!(parity_of_index(s21, 2).unwrap(), Odd);
        assert_eq!(parity_of_index(BasisSignature::new(0, 2), 1).unwrap(), Odd);
        assert!(parity_of_index(s21, 3).is_err());
    }

    #[test]
    fn prefix_parities() {
        assert_eq!(prefix_parity(&[Odd, Odd], 2), Even);
        assert_eq!(prefix_parity(&[Odd, Even], 0), Even);
        assert_eq!(prefix_parity(&[Odd, Even, Odd], 3), Even);
        assert_eq!(prefix_parity(&[Odd, Even, Odd], 2), Odd);
    }

    #[test]
    fn canonical_examples() {
        let s20 = BasisSignature::new(2, 0);
        let c = canonical_order(&[1, 0], s20);
        assert_eq!(c, CanonicalForm { tuple: vec![0, 1], negative: true, forced_zero: false });

        let s21 = BasisSignature::new(2, 1);
        let c = canonical_order(&[2, 0, 1], s21);
        assert_eq!(c, CanonicalForm { tuple: vec![0, 1, 2], negative: false, forced_zero: false });

        assert!(canonical_order(&[0, 0, 2], s21).forced_zero);
        assert!(!canonical_order(&[2, 2, 2], s21).forced_zero);
        assert!(!canonical_order(&[0, 2, 2], s21).forced_zero);
    }

    fn swap_factor_negative(sig: BasisSignature, a: usize, b: usize) -> bool {
        !sig.parity(a).both_odd(sig.parity(b))
    }

    #[test]
    fn adjacent_swap_law_exhaustive() {
        for dim in 0..=4 {
            for m in 0..=dim {
                let sig = BasisSignature::new(m, dim - m);
                for len in 1..=4 {
                    for t in all_tuples(dim, len) {
                        let ct = canonical_order(&t, sig);
                        assert!(ct.tuple.windows(2).all(|w| w[0] <= w[1]));
                        for k in 0..len - 1 {
                            let mut s = t.clone();
                            s.swap(k, k + 1);
                            let cs = canonical_order(&s, sig);
                            assert_eq!(ct.tuple, cs.tuple);
                            assert_eq!(ct.forced_zero, cs.forced_zero);
                            if !ct.forced_zero {
                                let flip = swap_factor_negative(sig, t[k], t[k + 1]);
                                assert_eq!(ct.negative, cs.negative ^ flip, "{t:?} swap {k} in {sig}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sorted_tuples_are_fixed_points() {
        let sig = BasisSignature::new(2, 2);
        for t in nondecreasing_tuples(4, 3) {
            let c = canonical_order(&t, sig);
            assert_eq!(c.tuple, t);
            assert!(!c.negative);
        }
    }

    #[test]
    fn repeated_odd_never_forces_zero() {
        let sig = BasisSignature::new(1, 2);
        for t in all_tuples(3, 3) {
            let has_even_repeat = (0..3).any(|i| (i + 1..3).any(|j| t[i] == t[j] && t[i] == 0));
            assert_eq!(canonical_order(&t, sig).forced_zero, has_even_repeat, "{t:?}");
        }
    }

    #[test]
    fn tuple_enumeration_counts() {
        assert_eq!(nondecreasing_tuples(2, 3).len(), 4);
        assert_eq!(nondecreasing_tuples(16, 3).len(), 816);
        assert_eq!(all_tuples(3, 2).len(), 9);
        assert_eq!(nondecreasing_tuples(0, 2).len(), 0);
        assert_eq!(nondecreasing_tuples(3, 0), vec![Vec::<usize>::new()]);
    }
}
