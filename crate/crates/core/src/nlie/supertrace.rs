use super::linalg::{self, Vector};
use super::BracketTable;
use crate::error::{Error, Result};
use crate::scalar::GaussScalar;
use crate::superspace::{canonical_order, nondecreasing_tuples, prefix_parity};

/// Coefficients of a linear map to the scalars, one per basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFunctional {
    pub coeffs: Vector,
}

impl LinearFunctional {
    pub fn new(coeffs: Vector) -> Self {
        Self { coeffs }
    }

    /// The dual basis functional picking out coordinate `idx`.
    pub fn dual(dim: usize, idx: usize) -> Self {
        Self::new(linalg::unit_vector(dim, idx))
    }

    pub fn apply(&self, v: &[GaussScalar]) -> GaussScalar {
        linalg::dot(&self.coeffs, v)
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vector(&self.coeffs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupertraceCheck {
    Ok,
    /// Nonzero on the odd basis element with this index.
    OddSupport(usize),
    /// Nonzero on the bracket of this canonical tuple.
    BracketValue {
        args: Vec<usize>,
        value: GaussScalar,
    },
    DimensionMismatch,
}

impl SupertraceCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, SupertraceCheck::Ok)
    }

    pub fn describe(&self, t: &BracketTable) -> String {
        match self {
            SupertraceCheck::Ok => "ok".into(),
            SupertraceCheck::OddSupport(i) => format!("nonzero on odd basis element {}", t.names()[*i]),
            SupertraceCheck::BracketValue { args, value } => {
                format!("takes value {value} on {}", t.tuple_label(args))
            }
            SupertraceCheck::DimensionMismatch => "wrong number of coefficients".into(),
        }
    }
}

/// Whether `s` vanishes on the odd part and on every bracket value.
pub fn is_supertrace(t: &BracketTable, s: &LinearFunctional) -> SupertraceCheck {
    if s.coeffs.len() != t.dim() {
        return SupertraceCheck::DimensionMismatch;
    }
    let sig = t.sig();
    if let Some(i) = (sig.even_count..sig.dim()).find(|&i| !s.coeffs[i].is_zero()) {
        return SupertraceCheck::OddSupport(i);
    }
    for (key, value) in t.entries() {
        let v = s.apply(value);
        if !v.is_zero() {
            return SupertraceCheck::BracketValue { args: key.clone(), value: v };
        }
    }
    SupertraceCheck::Ok
}

/// Basis of the space of all supertraces of `t`.
///
/// The conditions are linear in the coefficients, so this is a null space.
pub fn supertrace_space(t: &BracketTable) -> Vec<LinearFunctional> {
    let dim = t.dim();
    let sig = t.sig();
    let mut conditions: Vec<Vector> = t.entries().map(|(_, v)| v.clone()).collect();
    conditions.extend((sig.even_count..dim).map(|i| linalg::unit_vector(dim, i)));
    linalg::nullspace(&conditions, dim).into_iter().map(LinearFunctional::new).collect()
}

/// The induced bracket of `n + 1` basis elements, evaluated directly:
/// `sum_i (-1)^(i-1) (-1)^(|x_i||x|_(i-1)) S(x_i) [x_1, .., x_i^, .., x_(n+1)]`.
pub fn induced_bracket_basis(t: &BracketTable, s: &LinearFunctional, tuple: &[usize]) -> Vector {
    let sig = t.sig();
    let parities = sig.parities(tuple);
    let mut acc = linalg::zero_vector(t.dim());
    for (i, &xi) in tuple.iter().enumerate() {
        let weight = &s.coeffs[xi];
        if weight.is_zero() {
            continue;
        }
        let negative = (i % 2 == 1) ^ parities[i].both_odd(prefix_parity(&parities, i));
        let rest: Vec<usize> = tuple.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
        t.accumulate_basis(&mut acc, &weight.clone().signed(negative), &rest);
    }
    acc
}

/// The `(n+1)`-ary bracket induced by a supertrace.
pub fn induce(t: &BracketTable, s: &LinearFunctional) -> Result<BracketTable> {
    let check = is_supertrace(t, s);
    if !check.is_ok() {
        return Err(Error::NotSupertrace(check.describe(t)));
    }
    let sig = t.sig();
    let mut out = BracketTable::with_names(t.arity() + 1, sig, t.names().to_vec())?;
    for key in nondecreasing_tuples(t.dim(), t.arity() + 1) {
        if canonical_order(&key, sig).forced_zero {
            continue;
        }
        let value = induced_bracket_basis(t, s, &key);
        out.insert_canonical(key, value);
    }
    Ok(out)
}
