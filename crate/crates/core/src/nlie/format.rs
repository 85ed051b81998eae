//! JSON algebra files.
//!
//! ```json
//! {"arity": 3, "even": ["e1"], "odd": ["f1", "f2"],
//!  "brackets": [{"args": ["f1", "f1", "f1"], "value": {"f2": {"re": "1", "im": "0"}}}]}
//! ```
//!
//! Parsing canonicalizes argument order (applying the graded sign) and
//! rejects forced-zero keys with nonzero values, ungraded values and
//! duplicate keys. Serialization lists brackets in canonical key order and
//! value components in basis order, so output is byte-stable.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::de::{Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::linalg::{self, Vector};
use super::{BracketTable, LinearFunctional};
use crate::error::{Error, Result};
use crate::scalar::GaussScalar;
use crate::superspace::BasisSignature;
use num_traits::{Signed, Zero};

/// Name → scalar pairs in document order. Duplicate names are kept so the
/// parser can reject them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Components(pub Vec<(String, GaussScalar)>);

impl Serialize for Components {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Components {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PairsVisitor;
        impl<'de> Visitor<'de> for PairsVisitor {
            type Value = Components;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping basis names to scalars")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Components, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, GaussScalar>()? {
                    out.push((k, v));
                }
                Ok(Components(out))
            }
        }
        deserializer.deserialize_map(PairsVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDoc {
    pub args: Vec<String>,
    pub value: Components,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub arity: usize,
    pub even: Vec<String>,
    pub odd: Vec<String>,
    pub brackets: Vec<BracketDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionalDoc {
    pub functional: Components,
}

fn format_err(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

impl AlgebraDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(format_err)
    }

    pub fn sig(&self) -> BasisSignature {
        BasisSignature::new(self.even.len(), self.odd.len())
    }

    fn names(&self) -> Vec<String> {
        self.even.iter().chain(&self.odd).cloned().collect()
    }

    fn index_map(&self) -> Result<HashMap<String, usize>> {
        let mut index = HashMap::new();
        for (i, name) in self.names().into_iter().enumerate() {
            if name.is_empty() {
                return Err(Error::Format("empty basis name".into()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Format(format!("basis name {name:?} used twice")));
            }
        }
        Ok(index)
    }

    fn resolve(&self, index: &HashMap<String, usize>, b: &BracketDoc) -> Result<(Vec<usize>, Vector)> {
        let lookup =
            |name: &str| index.get(name).copied().ok_or_else(|| Error::Format(format!("unknown basis name {name:?}")));
        let args = b.args.iter().map(|a| lookup(a)).collect::<Result<Vec<_>>>()?;
        let mut value = linalg::zero_vector(index.len());
        let mut seen = vec![false; index.len()];
        for (name, c) in &b.value.0 {
            let i = lookup(name)?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::Format(format!("component {name:?} given twice in one value")));
            }
            value[i] = c.clone();
        }
        Ok((args, value))
    }

    /// Builds the canonical table, enforcing every structural rule.
    pub fn to_table(&self) -> Result<BracketTable> {
        let index = self.index_map()?;
        let mut t = BracketTable::with_names(self.arity, self.sig(), self.names())?;
        for b in &self.brackets {
            let (args, value) = self.resolve(&index, b)?;
            t.set(&args, value)?;
        }
        Ok(t)
    }

    /// Builds a table holding the brackets exactly as written, for reporting
    /// on documents that [`to_table`](Self::to_table) rejects.
    pub fn to_raw_table(&self) -> Result<BracketTable> {
        let index = self.index_map()?;
        let mut entries = BTreeMap::new();
        for b in &self.brackets {
            let (args, value) = self.resolve(&index, b)?;
            if entries.insert(args, value).is_some() {
                return Err(Error::DuplicateKey { args: format!("[{}]", b.args.join(",")) });
            }
        }
        BracketTable::from_raw_entries(self.arity, self.sig(), self.names(), entries)
    }

    pub fn from_table(t: &BracketTable) -> Self {
        let m = t.sig().even_count;
        let names = t.names();
        let brackets = t
            .entries()
            .map(|(key, value)| BracketDoc {
                args: key.iter().map(|&i| names[i].clone()).collect(),
                value: components(names, value),
            })
            .collect();
        AlgebraDoc { arity: t.arity(), even: names[..m].to_vec(), odd: names[m..].to_vec(), brackets }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra documents always serialize")
    }
}

fn components(names: &[String], v: &[GaussScalar]) -> Components {
    Components(v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (names[i].clone(), c.clone())).collect())
}

pub fn parse_table(text: &str) -> Result<BracketTable> {
    AlgebraDoc::from_json(text)?.to_table()
}

pub fn table_to_json(t: &BracketTable) -> String {
    AlgebraDoc::from_table(t).to_json()
}

/// Reads a functional keyed by the basis names of `t`; missing names are zero.
pub fn parse_functional(text: &str, t: &BracketTable) -> Result<LinearFunctional> {
    let doc: FunctionalDoc = serde_json::from_str(text).map_err(format_err)?;
    let mut coeffs = linalg::zero_vector(t.dim());
    let mut seen = vec![false; t.dim()];
    for (name, c) in doc.functional.0 {
        let i = t
            .names()
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| Error::Format(format!("unknown basis name {name:?}")))?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::Format(format!("component {name:?} given twice")));
        }
        coeffs[i] = c;
    }
    Ok(LinearFunctional::new(coeffs))
}

pub fn functional_to_json(t: &BracketTable, s: &LinearFunctional) -> String {
    let doc = FunctionalDoc { functional: components(t.names(), &s.coeffs) };
    serde_json::to_string_pretty(&doc).expect("functional documents always serialize")
}

/// Human-readable linear combination such as `2*g2 - g1` or `(1+i)*e`.
pub fn vector_text(names: &[String], v: &[GaussScalar]) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let real = c.im().is_zero();
        let negative = real && c.re().is_negative();
        let mag = if negative { -c.clone() } else { c.clone() };
        let coeff = if mag.is_one() {
            String::new()
        } else if real {
            format!("{mag}*")
        } else {
            format!("({mag})*")
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&coeff);
        out.push_str(&names[i]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
