use num_traits::Zero;

use super::{ExactError, RatMatrix, Rational};

/// Linear subspace of `Q^n`, stored as a reduced-row-echelon basis.
///
/// The representation is canonical, so `==` on subspaces is subspace
/// equality. This is what makes fixpoint detection in central series and
/// every "same span" assertion exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: RatMatrix,
}

impl Subspace {
    pub fn from_rows(ambient_dim: usize, rows: Vec<Vec<Rational>>) -> Self {
        assert!(
            rows.iter().all(|r| r.len() == ambient_dim),
            "spanning vector length differs from ambient dimension"
        );
        if rows.is_empty() {
            return Self::zero(ambient_dim);
        }
        let (rref, pivots) = RatMatrix::from_rows(rows).rref();
        let basis = RatMatrix::from_rows(
            (0..pivots.len()).map(|r| rref.row(r).to_vec()).collect(),
        );
        if pivots.is_empty() {
            return Self::zero(ambient_dim);
        }
        Self { ambient_dim, basis }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: RatMatrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: RatMatrix::identity(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    /// Pivot columns, 0-based. When the basis consists of coordinate
    /// vectors these are exactly the supported coordinates.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.basis.rref().1
    }

    /// True when every basis vector is a coordinate axis vector, i.e. the
    /// subspace is spanned by a subset of the ambient basis.
    pub fn is_coordinate_spanned(&self) -> bool {
        let pivots = self.pivot_columns();
        self.basis_rows().iter().zip(&pivots).all(|(row, &p)| {
            row.iter()
                .enumerate()
                .all(|(c, v)| if c == p { v == &Rational::from_integer(1.into()) } else { v.is_zero() })
        })
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates_of(v).is_some()
    }

    /// Coefficients of `v` in the echelon basis, or `None` if `v` is
    /// outside the subspace.
    pub fn coordinates_of(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient_dim, "vector/ambient dimension mismatch");
        let pivots = self.pivot_columns();
        let mut residual = v.to_vec();
        let mut coords = Vec::with_capacity(self.dim());
        for (row, &p) in pivots.iter().enumerate() {
            let coeff = residual[p].clone();
            if !coeff.is_zero() {
                for (c, b) in self.basis.row(row).iter().enumerate() {
                    if !b.is_zero() {
                        residual[c] = &residual[c] - &coeff * b;
                    }
                }
            }
            coords.push(coeff);
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        self.basis_rows().iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Self::from_rows(self.ambient_dim, rows)
    }

    /// Intersection of two subspaces.
    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ambient_dim);
        }
        // x = a^T U = b^T V; solve for (a, b) in the kernel of [U^T | -V^T].
        let k = self.dim();
        let m = other.dim();
        let mut stacked = RatMatrix::zeros(self.ambient_dim, k + m);
        for r in 0..self.ambient_dim {
            for c in 0..k {
                stacked.set(r, c, self.basis.get(c, r).clone());
            }
            for c in 0..m {
                stacked.set(r, k + c, -other.basis.get(c, r).clone());
            }
        }
        let pairs = stacked.kernel();
        let rows = pairs
            .basis_rows()
            .into_iter()
            .map(|ab| {
                let mut x = vec![Rational::zero(); self.ambient_dim];
                for (c, coeff) in ab[..k].iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    for (col, b) in self.basis.row(c).iter().enumerate() {
                        x[col] = &x[col] + coeff * b;
                    }
                }
                x
            })
            .collect();
        Self::from_rows(self.ambient_dim, rows)
    }

    /// `{x : g(x, s) = 0 for all s in self}` for a symmetric bilinear
    /// form `g`. With `g` positive definite this is the orthogonal
    /// complement: dimensions add up and the intersection is zero.
    pub fn orth_complement(&self, g: &RatMatrix) -> Result<Self, ExactError> {
        if g.rows() != self.ambient_dim || g.cols() != self.ambient_dim {
            return Err(ExactError::DimensionMismatch(format!(
                "form is {}x{}, ambient dimension is {}",
                g.rows(),
                g.cols(),
                self.ambient_dim
            )));
        }
        if self.is_zero() {
            return Ok(Self::full(self.ambient_dim));
        }
        Ok(self.basis.mul(g).kernel())
    }

    /// Matrix of the `g`-orthogonal projection onto this subspace:
    /// `P = B^T (B g B^T)^{-1} B g` where `B` has the basis as rows.
    pub fn orthogonal_projection(&self, g: &RatMatrix) -> RatMatrix {
        if self.is_zero() {
            return RatMatrix::zeros(self.ambient_dim, self.ambient_dim);
        }
        let b = &self.basis;
        let gram = b.mul(g).mul(&b.transpose());
        let gram_inv = gram
            .inverse()
            .expect("Gram matrix singular: form is degenerate on the subspace");
        b.transpose().mul(&gram_inv).mul(&b.mul(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};
    use proptest::prelude::*;

    fn vecs(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| rat_int(v)).collect())
            .collect()
    }

    #[test]
    fn canonical_equality() {
        let a = Subspace::from_rows(3, vecs(&[&[1, 1, 0], &[0, 1, 1]]));
        let b = Subspace::from_rows(3, vecs(&[&[1, 0, -1], &[0, 2, 2]]));
        assert_eq!(a, b);
    }

    #[test]
    fn coordinate_complement() {
        // span{e3, e4} in dim 4 under the identity metric.
        let s = Subspace::from_rows(4, vecs(&[&[0, 0, 1, 0], &[0, 0, 0, 1]]));
        let c = s.orth_complement(&RatMatrix::identity(4)).unwrap();
        assert_eq!(
            c,
            Subspace::from_rows(4, vecs(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]))
        );
        assert!(s.is_coordinate_spanned());
    }

    #[test]
    fn full_space_complement_is_zero() {
        let s = Subspace::full(3);
        let c = s.orth_complement(&RatMatrix::identity(3)).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn complement_dimension_mismatch() {
        let s = Subspace::full(3);
        assert!(s.orth_complement(&RatMatrix::identity(2)).is_err());
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::from_rows(3, vecs(&[&[1, 0, 0], &[0, 1, 0]]));
        let b = Subspace::from_rows(3, vecs(&[&[0, 1, 0], &[0, 0, 1]]));
        let i = a.intersect(&b);
        assert_eq!(i, Subspace::from_rows(3, vecs(&[&[0, 1, 0]])));
        assert_eq!(a.sum(&b), Subspace::full(3));
    }

    #[test]
    fn projection_is_idempotent_and_fixes_subspace() {
        let s = Subspace::from_rows(3, vecs(&[&[1, 1, 0]]));
        let g = RatMatrix::identity(3);
        let p = s.orthogonal_projection(&g);
        assert_eq!(p.mul(&p), p);
        let v = vec![rat_int(2), rat_int(2), rat_int(0)];
        assert_eq!(p.mul_vec(&v), v);
    }

    proptest! {
        #[test]
        fn double_complement_is_identity(
            entries in proptest::collection::vec(-3i64..=3, 8),
            rows in 1usize..=2,
        ) {
            let n = 4;
            let vecs: Vec<Vec<Rational>> = (0..rows)
                .map(|r| (0..n).map(|c| rat(entries[r * n + c], 1)).collect())
                .collect();
            let s = Subspace::from_rows(n, vecs);
            let g = RatMatrix::identity(n);
            let cc = s.orth_complement(&g).unwrap().orth_complement(&g).unwrap();
            prop_assert_eq!(cc, s.clone());
            let c = s.orth_complement(&g).unwrap();
            prop_assert_eq!(c.dim() + s.dim(), n);
            prop_assert!(c.intersect(&s).is_zero());
        }
    }
}
