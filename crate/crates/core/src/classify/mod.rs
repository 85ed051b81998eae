//! Classification machinery for small n-Lie superalgebras.
//!
//! The unknown structure constants are the components `K[args->target]` of
//! canonical, non-forced-zero argument tuples along grading-compatible
//! targets. Expanding the graded Filippov identity on basis tuples gives one
//! quadratic polynomial per `(y, x, H)`; a table is an n-Lie superalgebra
//! exactly when every such polynomial vanishes at its constants.

mod poly;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::nlie::{self, linalg, BracketTable, SeriesKind, Subspace};
use crate::scalar::GaussScalar;
use crate::superspace::{canonical_order, nondecreasing_tuples, prefix_parity, BasisSignature};

pub use poly::{Monomial, Poly};

pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Structure constant `K^target_args`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SCVariable {
    pub args: Vec<usize>,
    pub target: usize,
}

impl SCVariable {
    pub fn name(&self, names: &[String]) -> String {
        let args: Vec<&str> = self.args.iter().map(|&i| names[i].as_str()).collect();
        format!("K[{}->{}]", args.join(","), names[self.target])
    }
}

/// Canonical tuples that survive the forced-zero rule, each paired with
/// every target of matching parity.
pub fn admissible_variables(sig: BasisSignature, arity: usize) -> Vec<SCVariable> {
    let mut out = Vec::new();
    for args in nondecreasing_tuples(sig.dim(), arity) {
        if canonical_order(&args, sig).forced_zero {
            continue;
        }
        let parity = sig.tuple_parity(&args);
        for target in (0..sig.dim()).filter(|&b| sig.parity(b) == parity) {
            out.push(SCVariable { args: args.clone(), target });
        }
    }
    out
}

/// Which Filippov instance a constraint came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintTag {
    pub y: Vec<usize>,
    pub x: Vec<usize>,
    pub output: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub tag: ConstraintTag,
    pub poly: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub sig: BasisSignature,
    pub arity: usize,
    pub variables: Vec<SCVariable>,
    pub constraints: Vec<Constraint>,
}

/// Symbolic basis brackets: each component is a linear form in the unknowns.
struct SymbolicBracket<'a> {
    sig: BasisSignature,
    index: HashMap<(&'a [usize], usize), u32>,
}

impl<'a> SymbolicBracket<'a> {
    fn new(sig: BasisSignature, vars: &'a [SCVariable]) -> Self {
        let index = vars.iter().enumerate().map(|(i, v)| ((v.args.as_slice(), v.target), i as u32)).collect();
        Self { sig, index }
    }

    fn eval(&self, tuple: &[usize]) -> Vec<Poly> {
        let dim = self.sig.dim();
        let c = canonical_order(tuple, self.sig);
        if c.forced_zero {
            return vec![Poly::zero(); dim];
        }
        let sign = GaussScalar::from_int(if c.negative { -1 } else { 1 });
        (0..dim)
            .map(|h| match self.index.get(&(c.tuple.as_slice(), h)) {
                Some(&v) => Poly::var(v, sign.clone()),
                None => Poly::zero(),
            })
            .collect()
    }
}

/// Expands the graded Filippov identity over all non-decreasing basis tuples.
///
/// Each constraint is `Σ_i sign_i [x_1, .., [y, x_i], .., x_n]_H - [y, [x]]_H`
/// with every reordering sign taken from [`canonical_order`]. Zero
/// polynomials are dropped and repeated polynomials are kept once.
pub fn generate_constraints(sig: BasisSignature, arity: usize) -> Result<ConstraintSystem> {
    if arity < 2 {
        return Err(Error::InvalidArity(arity));
    }
    let variables = admissible_variables(sig, arity);
    let sym = SymbolicBracket::new(sig, &variables);
    let dim = sig.dim();
    let one = GaussScalar::one();
    let minus_one = -GaussScalar::one();

    let ys = nondecreasing_tuples(dim, arity - 1);
    let xs = nondecreasing_tuples(dim, arity);
    let mut constraints = Vec::new();
    let mut seen: HashSet<Poly> = HashSet::new();

    for y in &ys {
        let y_parity = sig.tuple_parity(y);
        let mut slot: Vec<usize> = y.clone();
        slot.push(0);
        for x in &xs {
            let mut residual = vec![Poly::zero(); dim];

            // - [y, [x]]
            let inner = sym.eval(x);
            for (d, kd) in inner.iter().enumerate() {
                if kd.is_zero() {
                    continue;
                }
                slot[arity - 1] = d;
                for (h, kh) in sym.eval(&slot).iter().enumerate() {
                    residual[h].add_product(&minus_one, kd, kh);
                }
            }

            // + Σ_i sign_i [x_1, .., [y, x_i], .., x_n]
            let x_parities = sig.parities(x);
            for i in 0..arity {
                slot[arity - 1] = x[i];
                let derived = sym.eval(&slot);
                let sign = if prefix_parity(&x_parities, i).both_odd(y_parity) { &minus_one } else { &one };
                let mut outer = x.clone();
                for (g, kg) in derived.iter().enumerate() {
                    if kg.is_zero() {
                        continue;
                    }
                    outer[i] = g;
                    for (h, kh) in sym.eval(&outer).iter().enumerate() {
                        residual[h].add_product(sign, kg, kh);
                    }
                }
            }

            for (h, p) in residual.into_iter().enumerate() {
                if p.is_zero() || !seen.insert(p.clone()) {
                    continue;
                }
                constraints.push(Constraint { tag: ConstraintTag { y: y.clone(), x: x.clone(), output: h }, poly: p });
            }
        }
    }
    Ok(ConstraintSystem { sig, arity, variables, constraints })
}

impl ConstraintSystem {
    /// Residuals at values given in variable order.
    pub fn evaluate_dense(&self, values: &[GaussScalar]) -> Result<Vec<GaussScalar>> {
        if values.len() != self.variables.len() {
            return Err(Error::DimensionMismatch { expected: self.variables.len(), got: values.len() });
        }
        Ok(self.constraints.iter().map(|c| c.poly.eval(values)).collect())
    }

    fn is_solution(&self, values: &[GaussScalar]) -> bool {
        self.constraints.iter().all(|c| c.poly.eval(values).is_zero())
    }

    /// Table whose structure constants are `values`, in variable order.
    pub fn table(&self, values: &[GaussScalar]) -> Result<BracketTable> {
        if values.len() != self.variables.len() {
            return Err(Error::DimensionMismatch { expected: self.variables.len(), got: values.len() });
        }
        let dim = self.sig.dim();
        let mut entries: BTreeMap<Vec<usize>, linalg::Vector> = BTreeMap::new();
        for (v, c) in self.variables.iter().zip(values) {
            if c.is_zero() {
                continue;
            }
            entries.entry(v.args.clone()).or_insert_with(|| linalg::zero_vector(dim))[v.target] = c.clone();
        }
        let mut t = BracketTable::abelian(self.arity, self.sig)?;
        for (k, v) in entries {
            t.set(&k, v)?;
        }
        Ok(t)
    }

    /// Structure constants of `t` in variable order.
    pub fn assignment_of(&self, t: &BracketTable) -> Vec<GaussScalar> {
        self.variables.iter().map(|v| t.bracket_basis(&v.args)[v.target].clone()).collect()
    }

    /// Text export: a header with signature, arity and variable order, then
    /// one polynomial per line.
    pub fn render(&self) -> String {
        let names = self.sig.default_names();
        let var_names: Vec<String> = self.variables.iter().map(|v| v.name(&names)).collect();
        let mut out = String::new();
        let _ = writeln!(out, "# signature {}", self.sig);
        let _ = writeln!(out, "# arity {}", self.arity);
        let _ = writeln!(out, "# variables {}", self.variables.len());
        for name in &var_names {
            let _ = writeln!(out, "#   {name}");
        }
        let _ = writeln!(out, "# constraints {}", self.constraints.len());
        for c in &self.constraints {
            let _ = writeln!(out, "{}", c.poly.render(&var_names));
        }
        out
    }
}

/// Residuals at an assignment keyed by variable.
pub fn evaluate(system: &ConstraintSystem, assignment: &BTreeMap<SCVariable, GaussScalar>) -> Result<Vec<GaussScalar>> {
    let names = system.sig.default_names();
    let values = system
        .variables
        .iter()
        .map(|v| assignment.get(v).cloned().ok_or_else(|| Error::MissingVariable(v.name(&names))))
        .collect::<Result<Vec<_>>>()?;
    system.evaluate_dense(&values)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSolution {
    pub values: Vec<GaussScalar>,
    pub table: BracketTable,
}

/// Every assignment of grid values to the unknowns that solves the system,
/// in lexicographic order of assignment (first variable most significant,
/// grid order within a variable). Each hit is re-checked with
/// [`nlie::verify_axioms`].
pub fn grid_search(sig: BasisSignature, arity: usize, grid: &[GaussScalar], budget: u64) -> Result<Vec<GridSolution>> {
    let system = generate_constraints(sig, arity)?;
    grid_search_system(&system, grid, budget)
}

pub fn grid_search_system(system: &ConstraintSystem, grid: &[GaussScalar], budget: u64) -> Result<Vec<GridSolution>> {
    let nvars = system.variables.len();
    let count = BigUint::from(grid.len()).pow(nvars as u32);
    if count > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { count: count.to_string(), budget });
    }
    let total: u64 = count.try_into().expect("bounded by budget");
    let base = grid.len() as u64;
    let decode = |mut code: u64| -> Vec<GaussScalar> {
        let mut values = vec![GaussScalar::zero(); nvars];
        for slot in values.iter_mut().rev() {
            *slot = grid[(code % base) as usize].clone();
            code /= base;
        }
        values
    };
    let hits: Vec<Vec<GaussScalar>> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let values = decode(code);
            system.is_solution(&values).then_some(values)
        })
        .collect();
    hits.into_iter()
        .map(|values| {
            let table = system.table(&values)?;
            let report = nlie::verify_axioms(&table);
            assert!(report.all_ok(), "constraint solution failed the direct axiom check");
            Ok(GridSolution { values, table })
        })
        .collect()
}

/// Basis-independent invariants; equal fingerprints are necessary for
/// isomorphism, not sufficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub derived_1: usize,
    pub derived_2: usize,
    pub central_1: usize,
    pub central_2: usize,
    /// Even and odd dimensions of `D^1`.
    pub derived_1_split: (usize, usize),
    pub solvable: bool,
    pub nilpotent: bool,
}

pub fn fingerprint(t: &BracketTable) -> Fingerprint {
    let whole = Subspace::whole(t.dim());
    let derived = nlie::series(t, &whole, SeriesKind::Derived).expect("the whole space is an ideal");
    let central = nlie::series(t, &whole, SeriesKind::Central).expect("the whole space is an ideal");
    Fingerprint {
        derived_1: derived.term(1).dim(),
        derived_2: derived.term(2).dim(),
        central_1: central.term(1).dim(),
        central_2: central.term(2).dim(),
        derived_1_split: derived.term(1).parity_split(t.sig()),
        solvable: derived.is_solvable(),
        nilpotent: central.is_nilpotent(),
    }
}

impl std::fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "dim D1={} D2={} C1={} C2={} D1 split={}|{} solvable={} nilpotent={}",
            self.derived_1,
            self.derived_2,
            self.central_1,
            self.central_2,
            self.derived_1_split.0,
            self.derived_1_split.1,
            self.solvable,
            self.nilpotent
        )
    }
}
