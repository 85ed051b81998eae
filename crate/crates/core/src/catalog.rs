//! Built-in algebras and a harness that reports their axiom status.
//!
//! Entries are stored as documents in the algebra file format, exactly as
//! written down, so that entries violating a structural rule can still be
//! reported on instead of silently corrected.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::clifford::{self, ExportKind};
use crate::error::{Error, Result};
use crate::nlie::format::{AlgebraDoc, BracketDoc, Components};
use crate::nlie::{self, AxiomReport, BracketTable, Matrix};
use crate::scalar::GaussScalar;
use crate::superspace::BasisSignature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExpectedStatus {
    Pass,
    /// Recorded as written; the verifier decides.
    AsPrintedUnverified,
    /// A conjectured correction, admitted only if the verifier passes it.
    Candidate,
}

impl std::fmt::Display for ExpectedStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ExpectedStatus::Pass => "pass",
            ExpectedStatus::AsPrintedUnverified => "as-printed-unverified",
            ExpectedStatus::Candidate => "candidate",
        })
    }
}

/// Parity-preserving basis change taking one entry to another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsomorphismWitness {
    pub target: String,
    pub p_even: Matrix,
    pub p_odd: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub doc: AlgebraDoc,
    pub description: String,
    pub expected_status: ExpectedStatus,
    pub witness: Option<IsomorphismWitness>,
}

impl CatalogEntry {
    /// The canonical table; fails for entries breaking a structural rule.
    pub fn table(&self) -> Result<BracketTable> {
        self.doc.to_table()
    }
}

/// Fixed entry names, in listing order. Parametric families are
/// `abelian(m,n)` (ternary), `abelian(m,n,k)`, `clifford_lie(n)` and
/// `clifford_ternary(n)`.
pub const FIXED: [&str; 6] = ["T4a", "T4b", "T5a", "T5b", "T5c", "T5b_candidate"];

/// Every name that [`list`] and [`verify_catalog`] cover.
pub fn list() -> Vec<String> {
    let mut names: Vec<String> = FIXED.iter().map(|s| s.to_string()).collect();
    for (m, n) in [(0, 1), (1, 1), (0, 2), (2, 1)] {
        names.push(format!("abelian({m},{n})"));
    }
    names.push("clifford_lie(2)".into());
    names.push("clifford_lie(4)".into());
    names.push("clifford_ternary(2)".into());
    names
}

fn s(n: i64) -> GaussScalar {
    GaussScalar::from_int(n)
}

/// Arguments and integer value components of one bracket.
type Literal<'a> = (&'a [&'a str], &'a [(&'a str, i64)]);

fn doc(arity: usize, sig: BasisSignature, brackets: &[Literal]) -> AlgebraDoc {
    let names = sig.default_names();
    let m = sig.even_count;
    AlgebraDoc {
        arity,
        even: names[..m].to_vec(),
        odd: names[m..].to_vec(),
        brackets: brackets
            .iter()
            .map(|(args, value)| BracketDoc {
                args: args.iter().map(|a| a.to_string()).collect(),
                value: Components(value.iter().map(|(k, c)| (k.to_string(), s(*c))).collect()),
            })
            .collect(),
    }
}

fn parse_params(name: &str, family: &str) -> Option<Result<Vec<usize>>> {
    let inner = name.strip_prefix(family)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(
        inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::UnknownEntry(name.to_string())))
            .collect(),
    )
}

fn entry(name: &str, doc: AlgebraDoc, description: &str, expected_status: ExpectedStatus) -> CatalogEntry {
    CatalogEntry { name: name.into(), doc, description: description.into(), expected_status, witness: None }
}

pub fn get_entry(name: &str) -> Result<CatalogEntry> {
    let sig02 = BasisSignature::new(0, 2);
    let sig21 = BasisSignature::new(2, 1);
    let e = match name {
        "T4a" => {
            let v: &[(&str, i64)] = &[("f1", -1), ("f2", 1)];
            let mut e = entry(
                name,
                doc(
                    3,
                    sig02,
                    &[
                        (&["f1", "f1", "f1"], v),
                        (&["f1", "f1", "f2"], v),
                        (&["f1", "f2", "f2"], v),
                        (&["f2", "f2", "f2"], v),
                    ],
                ),
                "0|2 ternary, all four brackets equal to -f1+f2",
                ExpectedStatus::Pass,
            );
            e.witness = Some(IsomorphismWitness {
                target: "T4b".into(),
                p_even: Vec::new(),
                p_odd: vec![vec![s(1), s(1)], vec![s(-8), s(8)]],
            });
            e
        }
        "T4b" => entry(
            name,
            doc(3, sig02, &[(&["f1", "f1", "f1"], &[("f2", 1)])]),
            "0|2 ternary, single bracket [f1,f1,f1] = f2",
            ExpectedStatus::Pass,
        ),
        "T5a" => entry(
            name,
            doc(
                3,
                sig21,
                &[(&["e1", "f1", "f1"], &[("e1", 1), ("e2", 1)]), (&["e2", "f1", "f1"], &[("e1", -1), ("e2", -1)])],
            ),
            "2|1 ternary, [e1,f1,f1] = e1+e2 and [e2,f1,f1] = -e1-e2",
            ExpectedStatus::Pass,
        ),
        "T5b" => entry(
            name,
            doc(3, sig21, &[(&["e1", "e1", "f1"], &[("f1", 1)])]),
            "2|1 ternary, [e1,e1,f1] = f1 with a repeated even argument",
            ExpectedStatus::AsPrintedUnverified,
        ),
        "T5c" => entry(
            name,
            doc(3, sig21, &[(&["f1", "f1", "f1"], &[("f1", 1)])]),
            "2|1 ternary, [f1,f1,f1] = f1",
            ExpectedStatus::AsPrintedUnverified,
        ),
        "T5b_candidate" => entry(
            name,
            doc(3, sig21, &[(&["e1", "e2", "f1"], &[("f1", 1)])]),
            "2|1 ternary, [e1,e2,f1] = f1; a possible reading of T5b",
            ExpectedStatus::Candidate,
        ),
        _ => return parametric(name),
    };
    Ok(e)
}

fn parametric(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownEntry(name.to_string());
    if let Some(p) = parse_params(name, "abelian") {
        let p = p?;
        let (m, n, arity) = match p[..] {
            [m, n] => (m, n, 3),
            [m, n, k] => (m, n, k),
            _ => return Err(unknown()),
        };
        let t = BracketTable::abelian(arity, BasisSignature::new(m, n))?;
        return Ok(entry(name, AlgebraDoc::from_table(&t), "Abelian", ExpectedStatus::Pass));
    }
    for (family, kind, what) in [
        ("clifford_lie", ExportKind::Lie, "Clifford algebra under the graded commutator"),
        ("clifford_ternary", ExportKind::Ternary, "ternary bracket induced on a Clifford algebra by its supertrace"),
    ] {
        if let Some(p) = parse_params(name, family) {
            let p = p?;
            let [n] = p[..] else { return Err(unknown()) };
            let n = u32::try_from(n).map_err(|_| unknown())?;
            let t = clifford::export(n, kind)?;
            return Ok(entry(name, AlgebraDoc::from_table(&t), what, ExpectedStatus::Pass));
        }
    }
    Err(unknown())
}

/// Outcome of checking one entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub expected_status: ExpectedStatus,
    /// Why the strict parser refused the entry, if it did.
    pub rejection: Option<Error>,
    /// Axioms of the canonical table, or of the entries as written when
    /// the parser refused them.
    pub report: AxiomReport,
    /// Whether the stored isomorphism witness maps onto its target.
    pub witness_ok: Option<bool>,
}

impl Verdict {
    pub fn passes(&self) -> bool {
        self.rejection.is_none() && self.report.all_ok()
    }

    /// Passing entries and rejected ones are both fine for as-printed
    /// entries; only an unexpected failure of a `Pass` entry counts as a
    /// violation.
    pub fn is_violation(&self) -> bool {
        self.expected_status == ExpectedStatus::Pass && (!self.passes() || self.witness_ok == Some(false))
    }
}

pub fn verify_entry(e: &CatalogEntry) -> Result<Verdict> {
    let (rejection, table) = match e.table() {
        Ok(t) => (None, t),
        Err(err) => (Some(err), e.doc.to_raw_table()?),
    };
    let report = nlie::verify_axioms(&table);
    let witness_ok = match &e.witness {
        None => None,
        Some(w) => {
            let target = get_entry(&w.target)?.table()?;
            Some(nlie::change_of_basis(&table, &w.p_even, &w.p_odd).is_ok_and(|t| t == target))
        }
    };
    Ok(Verdict { expected_status: e.expected_status, rejection, report, witness_ok })
}

/// Verdicts for every listed entry, keyed by name.
pub fn verify_catalog() -> Result<BTreeMap<String, Verdict>> {
    list()
        .into_par_iter()
        .map(|name| {
            let v = verify_entry(&get_entry(&name)?)?;
            Ok((name, v))
        })
        .collect()
}
