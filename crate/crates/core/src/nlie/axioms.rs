use rayon::prelude::*;

use super::linalg::{self, Vector};
use super::BracketTable;
use crate::superspace::{canonical_order, nondecreasing_tuples, prefix_parity, Parity};

/// A single axiom violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Stored value has a component at `target` whose parity differs from
    /// the total parity of `args`.
    Grading { args: Vec<usize>, target: usize },
    /// Stored key is not non-decreasing, or repeats an even index.
    Skew { args: Vec<usize>, forced_zero: bool },
    /// `sum_i sign_i [x_1, .., [y, x_i], .., x_n] - [y, [x]]` for the given
    /// non-decreasing tuples.
    Filippov { y: Vec<usize>, x: Vec<usize>, residual: Vector },
}

impl Witness {
    pub fn describe(&self, t: &BracketTable) -> String {
        match self {
            Witness::Grading { args, target } => {
                format!("grading: {} has a component along {}", t.tuple_label(args), t.names()[*target])
            }
            Witness::Skew { args, forced_zero: true } => {
                format!("skew: {} is forced to zero but stored", t.tuple_label(args))
            }
            Witness::Skew { args, .. } => format!("skew: {} is not in canonical order", t.tuple_label(args)),
            Witness::Filippov { y, x, residual } => format!(
                "filippov: y={} x={} residual={}",
                t.tuple_label(y),
                t.tuple_label(x),
                super::format::vector_text(t.names(), residual)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub grading_ok: bool,
    pub skew_ok: bool,
    pub filippov_ok: bool,
    pub witnesses: Vec<Witness>,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.grading_ok && self.skew_ok && self.filippov_ok
    }
}

/// Graded Filippov residual for basis tuples `y` (length n-1) and `x`
/// (length n): right-hand side minus left-hand side.
pub(crate) fn filippov_residual(t: &BracketTable, y: &[usize], x: &[usize]) -> Vector {
    let n = t.arity();
    let sig = t.sig();
    let y_parity = sig.tuple_parity(y);

    let mut slot_tuple: Vec<usize> = y.to_vec();
    slot_tuple.push(0);

    let inner = t.bracket_basis(x);
    let lhs = t.bracket_with_slot(&slot_tuple, n - 1, &inner);

    let x_parities = sig.parities(x);
    let mut rhs = linalg::zero_vector(t.dim());
    for i in 0..n {
        slot_tuple[n - 1] = x[i];
        let derived = t.bracket_basis(&slot_tuple);
        if linalg::is_zero_vector(&derived) {
            continue;
        }
        let term = t.bracket_with_slot(x, i, &derived);
        let negative = prefix_parity(&x_parities, i).both_odd(y_parity);
        let sign = crate::scalar::GaussScalar::from_int(if negative { -1 } else { 1 });
        linalg::axpy(&mut rhs, &sign, &term);
    }
    linalg::sub(&rhs, &lhs)
}

/// Checks grading, skew-consistency of the stored keys, and the graded
/// Filippov identity on all non-decreasing basis tuples.
pub fn verify_axioms(t: &BracketTable) -> AxiomReport {
    let sig = t.sig();
    let mut witnesses = Vec::new();

    for (key, value) in t.entries() {
        let parity: Parity = sig.tuple_parity(key);
        for (b, c) in value.iter().enumerate() {
            if !c.is_zero() && sig.parity(b) != parity {
                witnesses.push(Witness::Grading { args: key.clone(), target: b });
            }
        }
    }
    let grading_ok = witnesses.is_empty();

    for key in t.entries().map(|(k, _)| k) {
        let c = canonical_order(key, sig);
        if c.forced_zero || &c.tuple != key {
            witnesses.push(Witness::Skew { args: key.clone(), forced_zero: c.forced_zero });
        }
    }
    let skew_ok = !witnesses.iter().any(|w| matches!(w, Witness::Skew { .. }));

    let ys = nondecreasing_tuples(t.dim(), t.arity() - 1);
    let xs = nondecreasing_tuples(t.dim(), t.arity());
    let filippov: Vec<Witness> = ys
        .par_iter()
        .flat_map_iter(|y| {
            xs.iter().filter_map(move |x| {
                let residual = filippov_residual(t, y, x);
                (!linalg::is_zero_vector(&residual)).then(|| Witness::Filippov { y: y.clone(), x: x.clone(), residual })
            })
        })
        .collect();
    let filippov_ok = filippov.is_empty();
    witnesses.extend(filippov);

    AxiomReport { grading_ok, skew_ok, filippov_ok, witnesses }
}
