use super::linalg::Vector;
use super::{BracketTable, Subspace};
use crate::error::{Error, Result};
use crate::superspace::all_tuples;

/// Span of all brackets with the k-th argument drawn from the basis of `parts[k]`.
pub fn subspace_bracket(t: &BracketTable, parts: &[&Subspace]) -> Result<Subspace> {
    if parts.len() != t.arity() {
        return Err(Error::DimensionMismatch { expected: t.arity(), got: parts.len() });
    }
    if let Some(p) = parts.iter().find(|p| p.ambient() != t.dim()) {
        return Err(Error::DimensionMismatch { expected: t.dim(), got: p.ambient() });
    }
    let mut values: Vec<Vector> = Vec::new();
    let mut choice = vec![0usize; parts.len()];
    if parts.iter().any(|p| p.is_zero()) {
        return Ok(Subspace::zero(t.dim()));
    }
    loop {
        let args: Vec<Vector> = choice.iter().zip(parts).map(|(&i, p)| p.basis()[i].clone()).collect();
        values.push(t.bracket(&args)?);
        // odometer step
        let mut k = parts.len();
        loop {
            if k == 0 {
                return Ok(Subspace::span(t.dim(), &values));
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < parts[k].dim() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// `[g, .., g]`: the span of all bracket values.
pub fn whole_bracket(t: &BracketTable) -> Subspace {
    let values: Vec<Vector> = t.entries().map(|(_, v)| v.clone()).collect();
    Subspace::span(t.dim(), &values)
}

pub fn is_subalgebra(t: &BracketTable, h: &Subspace) -> bool {
    let parts = vec![h; t.arity()];
    subspace_bracket(t, &parts).map(|b| b.is_subset_of(h)).unwrap_or(false)
}

/// `[h, x_1, .., x_(n-1)]` lies in `h` for every generator `h` and all basis `x`.
pub fn is_ideal(t: &BracketTable, h: &Subspace) -> bool {
    if h.ambient() != t.dim() {
        return false;
    }
    let others = all_tuples(t.dim(), t.arity() - 1);
    let mut tuple = vec![0usize; t.arity()];
    for g in h.basis() {
        for rest in &others {
            tuple[1..].copy_from_slice(rest);
            let v = t.bracket_with_slot(&tuple, 0, g);
            if !h.contains(&v) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Derived,
    Central,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    pub kind: SeriesKind,
    /// `terms[0] = h`; stops at the first zero term or when two consecutive
    /// terms coincide.
    pub terms: Vec<Subspace>,
}

impl Series {
    pub fn reaches_zero(&self) -> bool {
        self.terms.last().is_some_and(Subspace::is_zero)
    }

    pub fn is_solvable(&self) -> bool {
        self.kind == SeriesKind::Derived && self.reaches_zero()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.kind == SeriesKind::Central && self.reaches_zero()
    }

    /// The p-th term; beyond the computed range the series is constant.
    pub fn term(&self, p: usize) -> &Subspace {
        &self.terms[p.min(self.terms.len() - 1)]
    }
}

/// Derived series `D^(p+1) = [D^p, .., D^p]` or descending central series
/// `C^(p+1) = [C^p, h, .., h]` of an ideal `h`.
pub fn series(t: &BracketTable, h: &Subspace, kind: SeriesKind) -> Result<Series> {
    if !is_ideal(t, h) {
        return Err(Error::NotIdeal);
    }
    let mut terms = vec![h.clone()];
    loop {
        let last = terms.last().unwrap();
        if last.is_zero() {
            break;
        }
        let next = match kind {
            SeriesKind::Derived => subspace_bracket(t, &vec![last; t.arity()])?,
            SeriesKind::Central => {
                let mut parts = vec![h; t.arity()];
                parts[0] = last;
                subspace_bracket(t, &parts)?
            }
        };
        if &next == last {
            break;
        }
        terms.push(next);
    }
    Ok(Series { kind, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nlie::linalg;
    use crate::scalar::GaussScalar;
    use crate::superspace::BasisSignature;

    fn t4b() -> BracketTable {
        let mut t = BracketTable::abelian(3, BasisSignature::new(0, 2)).unwrap();
        t.set(&[0, 0, 0], linalg::unit_vector(2, 1)).unwrap();
        t
    }

    #[test]
    fn subspace_bracket_examples() {
        let t = t4b();
        let zero = Subspace::zero(2);
        let whole = Subspace::whole(2);
        assert!(subspace_bracket(&t, &[&zero, &zero, &zero]).unwrap().is_zero());
        assert_eq!(subspace_bracket(&t, &[&whole, &whole, &whole]).unwrap(), Subspace::coordinate(2, &[1]));
        let ab = BracketTable::abelian(3, BasisSignature::new(1, 1)).unwrap();
        let w = Subspace::whole(2);
        assert!(subspace_bracket(&ab, &[&w, &w, &w]).unwrap().is_zero());
        assert_eq!(whole_bracket(&t), Subspace::coordinate(2, &[1]));
    }

    #[test]
    fn ideal_examples() {
        let t = t4b();
        assert!(is_ideal(&t, &Subspace::whole(2)));
        assert!(is_ideal(&t, &Subspace::zero(2)));
        assert!(is_ideal(&t, &Subspace::coordinate(2, &[1])));
        assert!(!is_ideal(&t, &Subspace::coordinate(2, &[0])));
        assert!(is_subalgebra(&t, &Subspace::coordinate(2, &[1])));
        // [f1, f1, f1] = f2 leaves span{f1}.
        assert!(!is_subalgebra(&t, &Subspace::coordinate(2, &[0])));
    }

    #[test]
    fn series_examples() {
        let ab = BracketTable::abelian(3, BasisSignature::new(2, 1)).unwrap();
        let d = series(&ab, &Subspace::whole(3), SeriesKind::Derived).unwrap();
        assert_eq!(d.terms.len(), 2);
        assert!(d.term(1).is_zero() && d.is_solvable());

        let t = t4b();
        let d = series(&t, &Subspace::whole(2), SeriesKind::Derived).unwrap();
        assert_eq!(d.terms, vec![Subspace::whole(2), Subspace::coordinate(2, &[1]), Subspace::zero(2)]);
        assert!(d.is_solvable());
        let c = series(&t, &Subspace::whole(2), SeriesKind::Central).unwrap();
        assert!(c.is_nilpotent());
        assert!(series(&t, &Subspace::coordinate(2, &[0]), SeriesKind::Derived).is_err());
    }

    #[test]
    fn non_solvable_series_stabilizes() {
        // sl2 as a binary Lie algebra: [h,x]=2x, [h,y]=-2y, [x,y]=h.
        let mut t = BracketTable::abelian(2, BasisSignature::new(3, 0)).unwrap();
        let v =
            |a: i64, b: i64, c: i64| vec![GaussScalar::from_int(a), GaussScalar::from_int(b), GaussScalar::from_int(c)];
        t.set(&[0, 1], v(0, 2, 0)).unwrap();
        t.set(&[0, 2], v(0, 0, -2)).unwrap();
        t.set(&[1, 2], v(1, 0, 0)).unwrap();
        let d = series(&t, &Subspace::whole(3), SeriesKind::Derived).unwrap();
        assert_eq!(d.terms.len(), 1);
        assert!(!d.is_solvable());
        assert_eq!(d.term(7), &Subspace::whole(3));
    }
}
