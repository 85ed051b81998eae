use super::linalg::{self, Matrix, Vector};
use crate::superspace::BasisSignature;

/// A linear subspace of the coordinate space, held in reduced row echelon
/// form so that equal spans compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, generators: &[Vector]) -> Self {
        let (rows, pivots) = linalg::rref(generators, ambient);
        Self { ambient, rows, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::span(ambient, &[])
    }

    pub fn whole(ambient: usize) -> Self {
        Self::span(ambient, &linalg::identity(ambient))
    }

    /// Span of the given basis vectors.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let gens: Vec<Vector> = indices.iter().map(|&i| linalg::unit_vector(ambient, i)).collect();
        Self::span(ambient, &gens)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// The reduced basis.
    pub fn basis(&self) -> &Matrix {
        &self.rows
    }

    pub fn contains(&self, v: &[crate::scalar::GaussScalar]) -> bool {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = -r[p].clone();
                linalg::axpy(&mut r, &f, row);
            }
        }
        linalg::is_zero_vector(&r)
    }

    pub fn is_subset_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut gens = self.rows.clone();
        gens.extend(other.rows.iter().cloned());
        Subspace::span(self.ambient, &gens)
    }

    /// Dimensions of the projections onto the even and odd coordinates.
    /// For a graded subspace these are the dimensions of its two parts.
    pub fn parity_split(&self, sig: BasisSignature) -> (usize, usize) {
        let m = sig.even_count;
        let even: Vec<Vector> = self.rows.iter().map(|r| r[..m].to_vec()).collect();
        let odd: Vec<Vector> = self.rows.iter().map(|r| r[m..].to_vec()).collect();
        (linalg::rank(&even, m), linalg::rank(&odd, sig.odd_count))
    }

    /// Whether the subspace is spanned by homogeneous vectors.
    pub fn is_graded(&self, sig: BasisSignature) -> bool {
        let (e, o) = self.parity_split(sig);
        e + o == self.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussScalar;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| GaussScalar::from_int(x)).collect()
    }

    #[test]
    fn span_is_canonical() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, &[v(&[1, 0, 0]), v(&[2, 3, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&v(&[5, -7, 0])));
        assert!(!a.contains(&v(&[0, 0, 1])));
        assert!(a.is_subset_of(&Subspace::whole(3)));
        assert!(Subspace::zero(3).is_subset_of(&a));
        assert!(!Subspace::whole(3).is_subset_of(&a));
    }

    #[test]
    fn parity_split_of_graded_and_mixed() {
        let sig = BasisSignature::new(1, 2);
        let graded = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 1])]);
        assert_eq!(graded.parity_split(sig), (1, 1));
        assert!(graded.is_graded(sig));
        let mixed = Subspace::span(3, &[v(&[1, 1, 0])]);
        assert!(!mixed.is_graded(sig));
    }
}
