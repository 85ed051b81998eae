use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::scalar::GaussScalar;

/// Product of variables, stored as sorted variable ids (with repeats).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: u32) -> Self {
        Monomial(vec![v])
    }

    pub fn vars(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        Monomial(v)
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact coefficients. No stored term
/// has a zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussScalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(v: u32, c: GaussScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(v), c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussScalar)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// `self += c * a * b`.
    pub fn add_product(&mut self, c: &GaussScalar, a: &Poly, b: &Poly) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(ma.times(mb), &(c * ca) * cb);
            }
        }
    }

    pub fn eval(&self, values: &[GaussScalar]) -> GaussScalar {
        let mut acc = GaussScalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &v in m.vars() {
                let x = &values[v as usize];
                if x.is_zero() {
                    term = GaussScalar::zero();
                    break;
                }
                if !x.is_one() {
                    term = &term * x;
                }
            }
            acc += &term;
        }
        acc
    }

    /// Sorted-monomial text using `names[v]` for variable `v`, e.g.
    /// `2*K[f1,f1,f1->f1]^2 - K[a]*K[b]`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            let real = c.im().is_zero();
            let negative = real && c.re().is_negative();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (out.is_empty(), negative) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(if real { mag.to_string() } else { format!("({mag})") });
            }
            let vars = m.vars();
            let mut k = 0;
            while k < vars.len() {
                let run = vars[k..].iter().take_while(|&&v| v == vars[k]).count();
                let mut f = names[vars[k] as usize].clone();
                if run > 1 {
                    let _ = write!(f, "^{run}");
                }
                factors.push(f);
                k += run;
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> GaussScalar {
        GaussScalar::from_int(n)
    }

    #[test]
    fn products_and_cancellation() {
        let a = Poly::var(0, s(1));
        let mut sq = Poly::zero();
        sq.add_product(&s(3), &a, &a);
        sq.add_product(&s(-1), &a, &a);
        assert_eq!(sq.degree(), 2);
        assert_eq!(sq.eval(&[s(5)]), s(50));
        sq.add_product(&s(-2), &a, &a);
        assert!(sq.is_zero());
    }

    #[test]
    fn render_forms() {
        let names: Vec<String> = vec!["a".into(), "b".into()];
        let mut p = Poly::zero();
        p.add_product(&s(2), &Poly::var(0, s(1)), &Poly::var(0, s(1)));
        p.add_product(&s(-1), &Poly::var(0, s(1)), &Poly::var(1, s(1)));
        assert_eq!(p.render(&names), "2*a^2 - a*b");
        let q = Poly::var(1, GaussScalar::i());
        assert_eq!(q.render(&names), "(i)*b");
        assert_eq!(Poly::zero().render(&names), "0");
    }
}
