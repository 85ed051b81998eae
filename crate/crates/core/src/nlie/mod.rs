//! n-ary superalgebras presented by structure constants.
//!
//! A [`BracketTable`] stores the bracket of every non-decreasing tuple of
//! basis indices; other orderings are recovered through the graded sign of
//! [`canonical_order`]. Absent keys are zero brackets.

mod axioms;
mod basis;
pub mod format;
pub mod linalg;
mod series;
mod subspace;
mod supertrace;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::GaussScalar;
use crate::superspace::{canonical_order, BasisSignature};

pub use axioms::{verify_axioms, AxiomReport, Witness};
pub use basis::change_of_basis;
pub use linalg::{Matrix, Vector};
pub use series::{is_ideal, is_subalgebra, series, subspace_bracket, whole_bracket, Series, SeriesKind};
pub use subspace::Subspace;
pub use supertrace::{
    induce, induced_bracket_basis, is_supertrace, supertrace_space, LinearFunctional, SupertraceCheck,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketTable {
    arity: usize,
    sig: BasisSignature,
    names: Vec<String>,
    entries: BTreeMap<Vec<usize>, Vector>,
}

impl BracketTable {
    /// The Abelian table of the given shape, with default basis names.
    pub fn abelian(arity: usize, sig: BasisSignature) -> Result<Self> {
        Self::with_names(arity, sig, sig.default_names())
    }

    pub fn with_names(arity: usize, sig: BasisSignature, names: Vec<String>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidArity(arity));
        }
        if names.len() != sig.dim() {
            return Err(Error::DimensionMismatch { expected: sig.dim(), got: names.len() });
        }
        Ok(Self { arity, sig, names, entries: BTreeMap::new() })
    }

    /// Builds a table from raw entries without canonicalizing or validating
    /// them. [`verify_axioms`] reports whatever is wrong with the result.
    pub fn from_raw_entries(
        arity: usize,
        sig: BasisSignature,
        names: Vec<String>,
        entries: BTreeMap<Vec<usize>, Vector>,
    ) -> Result<Self> {
        let mut t = Self::with_names(arity, sig, names)?;
        for (k, v) in &entries {
            t.check_shape(k, v)?;
        }
        t.entries = entries;
        Ok(t)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn sig(&self) -> BasisSignature {
        self.sig
    }

    pub fn dim(&self) -> usize {
        self.sig.dim()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vector)> {
        self.entries.iter()
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn tuple_label(&self, tuple: &[usize]) -> String {
        let parts: Vec<&str> = tuple.iter().map(|&i| self.names[i].as_str()).collect();
        format!("[{}]", parts.join(","))
    }

    fn check_shape(&self, args: &[usize], value: &[GaussScalar]) -> Result<()> {
        if args.len() != self.arity {
            return Err(Error::DimensionMismatch { expected: self.arity, got: args.len() });
        }
        if let Some(&bad) = args.iter().find(|&&i| i >= self.dim()) {
            return Err(Error::IndexOutOfRange { index: bad, dim: self.dim() });
        }
        if value.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: value.len() });
        }
        Ok(())
    }

    /// Sets the bracket of `args` (in any order) to `value`.
    ///
    /// The key is canonicalized and `value` is multiplied by the reordering
    /// sign. Rejects nonzero values on forced-zero tuples, values with a
    /// component of the wrong parity, and a second value for the same key.
    pub fn set(&mut self, args: &[usize], value: Vector) -> Result<()> {
        self.check_shape(args, &value)?;
        let c = canonical_order(args, self.sig);
        let is_zero = linalg::is_zero_vector(&value);
        if c.forced_zero {
            if is_zero {
                return Ok(());
            }
            return Err(Error::ForcedZero { args: self.tuple_label(args) });
        }
        let parity = self.sig.tuple_parity(args);
        if let Some(target) = (0..self.dim()).find(|&b| !value[b].is_zero() && self.sig.parity(b) != parity) {
            return Err(Error::Ungraded { args: self.tuple_label(args), target: self.names[target].clone() });
        }
        if self.entries.contains_key(&c.tuple) {
            return Err(Error::DuplicateKey { args: self.tuple_label(&c.tuple) });
        }
        if !is_zero {
            let value = if c.negative { value.into_iter().map(|x| -x).collect() } else { value };
            self.entries.insert(c.tuple, value);
        }
        Ok(())
    }

    /// Stores a value under a key the caller guarantees is canonical, graded
    /// and not forced to zero.
    pub(crate) fn insert_canonical(&mut self, key: Vec<usize>, value: Vector) {
        debug_assert!(key.windows(2).all(|w| w[0] <= w[1]));
        if !linalg::is_zero_vector(&value) {
            self.entries.insert(key, value);
        }
    }

    /// The stored value for `tuple` with its reordering sign, or `None` for a
    /// zero bracket.
    pub fn lookup(&self, tuple: &[usize]) -> Option<(bool, &Vector)> {
        let c = canonical_order(tuple, self.sig);
        if c.forced_zero {
            return None;
        }
        self.entries.get(&c.tuple).map(|v| (c.negative, v))
    }

    /// Bracket of basis elements.
    pub fn bracket_basis(&self, tuple: &[usize]) -> Vector {
        match self.lookup(tuple) {
            Some((false, v)) => v.clone(),
            Some((true, v)) => v.iter().map(|x| -x).collect(),
            None => linalg::zero_vector(self.dim()),
        }
    }

    /// `acc += c * [tuple]`.
    pub(crate) fn accumulate_basis(&self, acc: &mut [GaussScalar], c: &GaussScalar, tuple: &[usize]) {
        if c.is_zero() {
            return;
        }
        if let Some((negative, v)) = self.lookup(tuple) {
            let c = c.clone().signed(negative);
            linalg::axpy(acc, &c, v);
        }
    }

    /// Bracket of basis elements with slot `slot` replaced by the vector `v`.
    pub(crate) fn bracket_with_slot(&self, tuple: &[usize], slot: usize, v: &[GaussScalar]) -> Vector {
        let mut acc = linalg::zero_vector(self.dim());
        let mut t = tuple.to_vec();
        for (d, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            t[slot] = d;
            self.accumulate_basis(&mut acc, c, &t);
        }
        acc
    }

    /// Bracket of arbitrary elements, expanded multilinearly.
    pub fn bracket(&self, vectors: &[Vector]) -> Result<Vector> {
        if vectors.len() != self.arity {
            return Err(Error::DimensionMismatch { expected: self.arity, got: vectors.len() });
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != self.dim()) {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        let supports: Vec<Vec<usize>> =
            vectors.iter().map(|v| (0..v.len()).filter(|&i| !v[i].is_zero()).collect()).collect();
        let mut acc = linalg::zero_vector(self.dim());
        let mut tuple = vec![0; self.arity];
        self.expand(vectors, &supports, 0, GaussScalar::one(), &mut tuple, &mut acc);
        Ok(acc)
    }

    fn expand(
        &self,
        vectors: &[Vector],
        supports: &[Vec<usize>],
        depth: usize,
        coeff: GaussScalar,
        tuple: &mut Vec<usize>,
        acc: &mut Vector,
    ) {
        if depth == self.arity {
            self.accumulate_basis(acc, &coeff, tuple);
            return;
        }
        for &i in &supports[depth] {
            tuple[depth] = i;
            let c = &coeff * &vectors[depth][i];
            self.expand(vectors, supports, depth + 1, c, tuple, acc);
        }
    }
}
