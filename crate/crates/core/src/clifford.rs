//! Clifford superalgebras on subset monomials.
//!
//! The monomial `γ_I` for `I ⊆ {1..n}` is a bitmask with bit `k-1` standing
//! for generator `k`. Products follow `γ_I γ_J = (-1)^σ(I,J) γ_{IΔJ}`, the
//! graded commutator is `[γ_I, γ_J] = f(I,J) γ_{IΔJ}`, and for even `n = 2m`
//! the spinor supertrace is `(2i)^m` on the top monomial and zero elsewhere.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::nlie::linalg::{self, Matrix, Vector};
use crate::nlie::{BracketTable, LinearFunctional};
use crate::scalar::{pow_two_i, GaussScalar};
use crate::superspace::{canonical_order, nondecreasing_tuples, BasisSignature, Parity};

pub const MAX_DIM: u32 = 16;
pub const MAX_LIE_EXPORT: u32 = 6;
pub const MAX_TERNARY_EXPORT: u32 = 4;
pub const MAX_MATRIX_HALF_DIM: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetIndex(pub u32);

impl SubsetIndex {
    pub const EMPTY: SubsetIndex = SubsetIndex(0);

    /// Subset from 1-based generator positions.
    pub fn from_positions(positions: &[u32]) -> Self {
        SubsetIndex(positions.iter().fold(0, |m, &p| m | (1 << (p - 1))))
    }

    /// `{1, .., n}`.
    pub fn full(n: u32) -> Self {
        SubsetIndex(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn parity(self) -> Parity {
        Parity::from_bit(self.len() % 2 == 1)
    }

    pub fn positions(self) -> Vec<u32> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    pub fn intersection(self, other: SubsetIndex) -> SubsetIndex {
        SubsetIndex(self.0 & other.0)
    }

    pub fn symmetric_difference(self, other: SubsetIndex) -> SubsetIndex {
        SubsetIndex(self.0 ^ other.0)
    }

    /// `e` for the empty set, otherwise `g` followed by the positions.
    pub fn name(self, n: u32) -> String {
        if self.is_empty() {
            return "e".into();
        }
        let sep = if n > 9 { "_" } else { "" };
        let parts: Vec<String> = self.positions().iter().map(u32::to_string).collect();
        format!("g{}", parts.join(sep))
    }

    /// All subsets of `{1..n}` in mask order.
    pub fn all(n: u32) -> impl Iterator<Item = SubsetIndex> {
        (0..1u32 << n).map(SubsetIndex)
    }
}

/// `σ(I, J) = Σ_{j ∈ J} #{i ∈ I : i > j}`.
pub fn sigma(i: SubsetIndex, j: SubsetIndex) -> u32 {
    let mut rest = j.0;
    let mut total = 0;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if bit >= 31 { 0 } else { u32::MAX << (bit + 1) };
        total += (i.0 & above).count_ones();
    }
    total
}

/// `γ_I γ_J = (-1)^σ(I,J) γ_{IΔJ}`; returns whether the sign is negative.
pub fn mono_product(i: SubsetIndex, j: SubsetIndex) -> (bool, SubsetIndex) {
    (sigma(i, j) % 2 == 1, i.symmetric_difference(j))
}

/// `f(I,J) = (-1)^σ(I,J) (1 - (-1)^|I∩J|)`.
pub fn f_coeff(i: SubsetIndex, j: SubsetIndex) -> i32 {
    if i.intersection(j).len().is_multiple_of(2) {
        return 0;
    }
    if sigma(i, j) % 2 == 1 {
        -2
    } else {
        2
    }
}

/// Element `Σ a_I γ_I` of the Clifford superalgebra on `n` generators.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CliffordElement {
    dim: u32,
    terms: BTreeMap<SubsetIndex, GaussScalar>,
}

impl CliffordElement {
    pub fn zero(dim: u32) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn monomial(dim: u32, i: SubsetIndex) -> Self {
        Self::term(dim, i, GaussScalar::one())
    }

    pub fn term(dim: u32, i: SubsetIndex, c: GaussScalar) -> Self {
        let mut x = Self::zero(dim);
        x.add_term(i, c);
        x
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (SubsetIndex, &GaussScalar)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, i: SubsetIndex) -> GaussScalar {
        self.terms.get(&i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Parity if every term shares it; `None` for zero or mixed elements.
    pub fn homogeneous_parity(&self) -> Option<Parity> {
        let mut ps = self.terms.keys().map(|k| k.parity());
        let first = ps.next()?;
        ps.all(|p| p == first).then_some(first)
    }

    pub fn add_term(&mut self, i: SubsetIndex, c: GaussScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(i).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn add(&self, other: &CliffordElement) -> CliffordElement {
        let mut out = self.clone();
        for (k, v) in other.terms() {
            out.add_term(k, v.clone());
        }
        out
    }

    pub fn scale(&self, c: &GaussScalar) -> CliffordElement {
        let mut out = CliffordElement::zero(self.dim);
        for (k, v) in self.terms() {
            out.add_term(k, v * c);
        }
        out
    }

    /// Associative product.
    pub fn mul(&self, other: &CliffordElement) -> CliffordElement {
        let mut out = CliffordElement::zero(self.dim);
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                let (negative, k) = mono_product(i, j);
                out.add_term(k, (a * b).signed(negative));
            }
        }
        out
    }

    /// Coordinates in the export basis order.
    pub fn to_vector(&self, basis: &CliffordBasis) -> Vector {
        let mut v = linalg::zero_vector(basis.len());
        for (k, c) in self.terms() {
            v[basis.position(k)] = c.clone();
        }
        v
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(k, c)| format!("({c}){}", k.name(self.dim))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn check_same_dim(xs: &[&CliffordElement]) -> Result<u32> {
    let n = xs[0].dim;
    if let Some(x) = xs.iter().find(|x| x.dim != n) {
        return Err(Error::DimensionMismatch { expected: n as usize, got: x.dim as usize });
    }
    Ok(n)
}

fn half_dim(n: u32) -> Result<u32> {
    if n % 2 == 1 {
        return Err(Error::OddCliffordDimension(n));
    }
    Ok(n / 2)
}

/// Graded commutator, extended bilinearly from `[γ_I, γ_J] = f(I,J) γ_{IΔJ}`.
pub fn commutator(x: &CliffordElement, y: &CliffordElement) -> Result<CliffordElement> {
    let n = check_same_dim(&[x, y])?;
    let mut out = CliffordElement::zero(n);
    for (i, a) in x.terms() {
        for (j, b) in y.terms() {
            let f = f_coeff(i, j);
            if f != 0 {
                out.add_term(i.symmetric_difference(j), &(a * b) * &GaussScalar::from_int(f as i64));
            }
        }
    }
    Ok(out)
}

/// `Str(γ_N) = (2i)^m` for `n = 2m`, zero on every proper subset.
pub fn supertrace(x: &CliffordElement) -> Result<GaussScalar> {
    let m = half_dim(x.dim)?;
    Ok(&x.coeff(SubsetIndex::full(x.dim)) * &pow_two_i(m))
}

fn supertrace_mono(n: u32, i: SubsetIndex) -> GaussScalar {
    if i == SubsetIndex::full(n) {
        pow_two_i(n / 2)
    } else {
        GaussScalar::zero()
    }
}

/// The induced ternary bracket on basis monomials:
/// `Str(γI)[γJ,γK] - (-1)^{|I||J|} Str(γJ)[γI,γK] + (-1)^{|K|(|I|+|J|)} Str(γK)[γI,γJ]`.
pub fn ternary_mono(n: u32, i: SubsetIndex, j: SubsetIndex, k: SubsetIndex) -> CliffordElement {
    let mut out = CliffordElement::zero(n);
    let (pi, pj, pk) = (i.parity(), j.parity(), k.parity());
    let mut term = |weight: GaussScalar, a: SubsetIndex, b: SubsetIndex, negative: bool| {
        let f = f_coeff(a, b);
        if !weight.is_zero() && f != 0 {
            let c = (&weight * &GaussScalar::from_int(f as i64)).signed(negative);
            out.add_term(a.symmetric_difference(b), c);
        }
    };
    term(supertrace_mono(n, i), j, k, false);
    term(supertrace_mono(n, j), i, k, !pi.both_odd(pj));
    term(supertrace_mono(n, k), i, j, pk.both_odd(pi + pj));
    out
}

pub fn ternary_bracket(x: &CliffordElement, y: &CliffordElement, z: &CliffordElement) -> Result<CliffordElement> {
    let n = check_same_dim(&[x, y, z])?;
    half_dim(n)?;
    let mut out = CliffordElement::zero(n);
    for (i, a) in x.terms() {
        for (j, b) in y.terms() {
            let ab = a * b;
            for (k, c) in z.terms() {
                let coeff = &ab * c;
                for (l, d) in ternary_mono(n, i, j, k).terms() {
                    out.add_term(l, &coeff * d);
                }
            }
        }
    }
    Ok(out)
}

/// Closed form: `(2i)^m f(I,J) γ_{IΔJ}` when `I ≠ N`, `J ≠ N`, `K = N`; zero otherwise.
pub fn proposition_bracket(n: u32, i: SubsetIndex, j: SubsetIndex, k: SubsetIndex) -> Result<CliffordElement> {
    let m = half_dim(n)?;
    let full = SubsetIndex::full(n);
    if i != full && j != full && k == full {
        let f = f_coeff(i, j);
        let c = &pow_two_i(m) * &GaussScalar::from_int(f as i64);
        return Ok(CliffordElement::term(n, i.symmetric_difference(j), c));
    }
    Ok(CliffordElement::zero(n))
}

/// The closed form read up to graded skew-symmetry: a single `γ_N` in the
/// first or second slot is moved to the last slot first. `γ_N` is even, so
/// each transposition past it contributes `-1`.
pub fn proposition_bracket_completed(
    n: u32,
    i: SubsetIndex,
    j: SubsetIndex,
    k: SubsetIndex,
) -> Result<CliffordElement> {
    let full = SubsetIndex::full(n);
    match (i == full, j == full, k == full) {
        (true, false, false) => proposition_bracket(n, j, k, full),
        (false, true, false) => Ok(proposition_bracket(n, i, k, full)?.scale(&-GaussScalar::one())),
        _ => proposition_bracket(n, i, j, k),
    }
}

/// All nonzero basis triples of the closed-form ternary bracket. Absent
/// triples are zero.
pub fn proposition_table(n: u32) -> Result<BTreeMap<(SubsetIndex, SubsetIndex, SubsetIndex), CliffordElement>> {
    half_dim(n)?;
    if n > MAX_TERNARY_EXPORT + 2 {
        return Err(Error::SizeGuard(format!("proposition table for n = {n} exceeds n <= {}", MAX_TERNARY_EXPORT + 2)));
    }
    let monos: Vec<SubsetIndex> = SubsetIndex::all(n).collect();
    let rows: Vec<_> = monos
        .par_iter()
        .flat_map_iter(|&i| {
            let monos = &monos;
            monos.iter().flat_map(move |&j| {
                monos.iter().filter_map(move |&k| {
                    let v = proposition_bracket(n, i, j, k).expect("n is even");
                    (!v.is_zero()).then_some(((i, j, k), v))
                })
            })
        })
        .collect();
    Ok(rows.into_iter().collect())
}

/// Monomial basis ordered even-first, then by mask.
#[derive(Debug, Clone)]
pub struct CliffordBasis {
    n: u32,
    order: Vec<SubsetIndex>,
    position: Vec<usize>,
}

impl CliffordBasis {
    pub fn new(n: u32) -> Self {
        let mut order: Vec<SubsetIndex> = SubsetIndex::all(n).collect();
        order.sort_by_key(|s| (s.len() % 2, s.0));
        let mut position = vec![0; order.len()];
        for (p, s) in order.iter().enumerate() {
            position[s.0 as usize] = p;
        }
        Self { n, order, position }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn monomial(&self, p: usize) -> SubsetIndex {
        self.order[p]
    }

    pub fn position(&self, s: SubsetIndex) -> usize {
        self.position[s.0 as usize]
    }

    pub fn sig(&self) -> BasisSignature {
        let even = 1usize << self.n.saturating_sub(1);
        let even = if self.n == 0 { 1 } else { even };
        BasisSignature::new(even, self.len() - even)
    }

    pub fn names(&self) -> Vec<String> {
        self.order.iter().map(|s| s.name(self.n)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportKind {
    Lie,
    Ternary,
    /// Ternary table built from the closed form, with `γ_N` moved to the
    /// last slot by graded skew-symmetry.
    Proposition,
}

/// Structure-constant table of ℭ_n (binary) or ℭ_n^(3) (ternary).
pub fn export(n: u32, which: ExportKind) -> Result<BracketTable> {
    let (arity, limit) = match which {
        ExportKind::Lie => (2, MAX_LIE_EXPORT),
        ExportKind::Ternary | ExportKind::Proposition => (3, MAX_TERNARY_EXPORT),
    };
    if n > limit {
        return Err(Error::SizeGuard(format!("{which:?} export needs n <= {limit}, got {n}")));
    }
    if arity == 3 {
        half_dim(n)?;
    }
    let basis = CliffordBasis::new(n);
    let sig = basis.sig();
    let keys: Vec<Vec<usize>> =
        nondecreasing_tuples(basis.len(), arity).into_iter().filter(|k| !canonical_order(k, sig).forced_zero).collect();
    let values: Vec<(Vec<usize>, Vector)> = keys
        .into_par_iter()
        .map(|key| {
            let m: Vec<SubsetIndex> = key.iter().map(|&p| basis.monomial(p)).collect();
            let value = match which {
                ExportKind::Lie => {
                    let f = f_coeff(m[0], m[1]);
                    CliffordElement::term(n, m[0].symmetric_difference(m[1]), GaussScalar::from_int(f as i64))
                }
                ExportKind::Ternary => ternary_mono(n, m[0], m[1], m[2]),
                ExportKind::Proposition => proposition_bracket_completed(n, m[0], m[1], m[2]).expect("n is even"),
            };
            let v = value.to_vector(&basis);
            (key, v)
        })
        .collect();
    let mut table = BracketTable::with_names(arity, sig, basis.names())?;
    for (key, v) in values {
        table.insert_canonical(key, v);
    }
    Ok(table)
}

/// The spinor supertrace as a functional on the export basis.
pub fn supertrace_functional(n: u32) -> Result<LinearFunctional> {
    half_dim(n)?;
    let basis = CliffordBasis::new(n);
    let mut coeffs = linalg::zero_vector(basis.len());
    coeffs[basis.position(SubsetIndex::full(n))] = pow_two_i(n / 2);
    Ok(LinearFunctional::new(coeffs))
}

// ---------------------------------------------------------------------------
// Spinor matrices

fn small(entries: [[(i64, i64); 2]; 2]) -> Matrix {
    entries.iter().map(|row| row.iter().map(|&(re, im)| GaussScalar::from_ratios(re, 1, im, 1)).collect()).collect()
}

pub fn pauli(k: u8) -> Matrix {
    match k {
        1 => small([[(0, 0), (1, 0)], [(1, 0), (0, 0)]]),
        2 => small([[(0, 0), (0, -1)], [(0, 1), (0, 0)]]),
        3 => small([[(1, 0), (0, 0)], [(0, 0), (-1, 0)]]),
        _ => linalg::identity(2),
    }
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, rb) = (a.len(), b.len());
    let cb = b.first().map_or(0, Vec::len);
    let ca = a.first().map_or(0, Vec::len);
    let mut out = vec![linalg::zero_vector(ca * cb); ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

/// Jordan–Wigner image of generator `k` (1-based) in dimension `n = 2m`:
/// `σ3` on the factors before pair `j = ceil(k/2)`, `σ1` or `σ2` on factor
/// `j`, identity after.
fn generator_matrix(m: u32, k: u32) -> Matrix {
    let pair = k.div_ceil(2);
    let mut out = vec![vec![GaussScalar::one()]];
    for factor in 1..=m {
        let local = if factor < pair {
            pauli(3)
        } else if factor == pair {
            pauli(if k % 2 == 1 { 1 } else { 2 })
        } else {
            pauli(0)
        };
        out = kron(&out, &local);
    }
    out
}

/// `2^m × 2^m` matrix of `γ_I` on the spinor module.
pub fn matrix_rep(n: u32, i: SubsetIndex) -> Result<Matrix> {
    let m = half_dim(n)?;
    if m > MAX_MATRIX_HALF_DIM {
        return Err(Error::SizeGuard(format!("spinor matrices need n <= {}, got {n}", 2 * MAX_MATRIX_HALF_DIM)));
    }
    let mut out = linalg::identity(1 << m);
    for k in i.positions() {
        out = linalg::mat_mul(&out, &generator_matrix(m, k));
    }
    Ok(out)
}

/// `σ3 ⊗ .. ⊗ σ3`, the grading operator of the spinor module.
pub fn grading_operator(n: u32) -> Result<Matrix> {
    let m = half_dim(n)?;
    let mut out = vec![vec![GaussScalar::one()]];
    for _ in 0..m {
        out = kron(&out, &pauli(3));
    }
    Ok(out)
}

pub fn trace(a: &Matrix) -> GaussScalar {
    a.iter().enumerate().map(|(i, row)| row[i].clone()).sum()
}

pub fn element_matrix(x: &CliffordElement) -> Result<Matrix> {
    let m = half_dim(x.dim)?;
    let size = 1 << m;
    let mut out = vec![linalg::zero_vector(size); size];
    for (i, c) in x.terms() {
        let mi = matrix_rep(x.dim, i)?;
        for r in 0..size {
            linalg::axpy(&mut out[r], c, &mi[r]);
        }
    }
    Ok(out)
}
