//! Degree-k totally antisymmetric multilinear forms with exact rational
//! coefficients.
//!
//! Coefficients are stored on strictly increasing 1-based index tuples
//! only; evaluation on an arbitrary tuple sorts it and applies the sign of
//! the permutation. Zero coefficients are never stored, so `is_zero` is a
//! map-emptiness check.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::{RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingForm {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("tuple {tuple:?} has length {}, form degree is {degree}", .tuple.len())]
    DegreeMismatch { tuple: Vec<usize>, degree: usize },
}

impl AlternatingForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self {
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The dual basis 1-form `e^i` (1-based).
    pub fn dual(dim: usize, i: usize) -> Self {
        let mut f = Self::zero(dim, 1);
        f.add_term(&[i], Rational::from_integer(1.into()));
        f
    }

    pub fn from_terms<I>(dim: usize, degree: usize, terms: I) -> Result<Self, FormError>
    where
        I: IntoIterator<Item = (Vec<usize>, Rational)>,
    {
        let mut f = Self::zero(dim, degree);
        for (tuple, coeff) in terms {
            if tuple.len() != degree {
                return Err(FormError::DegreeMismatch {
                    tuple,
                    degree,
                });
            }
            if let Some(&bad) = tuple.iter().find(|&&i| i == 0 || i > dim) {
                return Err(FormError::IndexOutOfRange { index: bad, dim });
            }
            f.add_term(&tuple, coeff);
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms as `(increasing tuple, coefficient)` pairs in tuple order.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        self.coeffs.iter().map(|(t, c)| (t.as_slice(), c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Adds `coeff * e^{indices}`; indices may be in any order and the
    /// permutation sign is absorbed into the coefficient. Tuples with a
    /// repeated index contribute nothing.
    pub fn add_term(&mut self, indices: &[usize], coeff: Rational) {
        assert_eq!(indices.len(), self.degree, "tuple length != degree");
        if coeff.is_zero() {
            return;
        }
        let Some((sorted, sign)) = sort_with_sign(indices) else {
            return;
        };
        let signed = if sign < 0 { -coeff } else { coeff };
        let entry = self
            .coeffs
            .entry(sorted.clone())
            .or_insert_with(Rational::zero);
        *entry += signed;
        if entry.is_zero() {
            self.coeffs.remove(&sorted);
        }
    }

    /// Value on the basis tuple `indices` (any order, duplicates give 0).
    pub fn coefficient(&self, indices: &[usize]) -> Rational {
        assert_eq!(indices.len(), self.degree, "tuple length != degree");
        let Some((sorted, sign)) = sort_with_sign(indices) else {
            return Rational::zero();
        };
        match self.coeffs.get(&sorted) {
            Some(c) if sign < 0 => -c.clone(),
            Some(c) => c.clone(),
            None => Rational::zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree));
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.dim, self.degree);
        }
        Self {
            dim: self.dim,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(t, c)| (t.clone(), c * factor))
                .collect(),
        }
    }

    /// Exterior product. `e^{1} ∧ e^{2}` evaluates to 1 on `(e1, e2)`.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "wedge of forms on different spaces");
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (t1, c1) in self.terms() {
            for (t2, c2) in other.terms() {
                let mut joined = Vec::with_capacity(t1.len() + t2.len());
                joined.extend_from_slice(t1);
                joined.extend_from_slice(t2);
                out.add_term(&joined, c1 * c2);
            }
        }
        out
    }

    /// Full multilinear evaluation on `degree` many coordinate vectors.
    pub fn eval(&self, vectors: &[Vec<Rational>]) -> Rational {
        assert_eq!(vectors.len(), self.degree, "wrong number of arguments");
        for v in vectors {
            assert_eq!(v.len(), self.dim, "argument length != ambient dimension");
        }
        let mut total = Rational::zero();
        for (tuple, coeff) in self.terms() {
            // det of the minor picking rows `tuple` from the argument list.
            let minor = RatMatrix::from_rows(
                vectors
                    .iter()
                    .map(|v| tuple.iter().map(|&i| v[i - 1].clone()).collect())
                    .collect(),
            );
            let d = minor.determinant();
            if !d.is_zero() {
                total += coeff * d;
            }
        }
        total
    }

    /// Sum of squared coefficients over increasing tuples. Basis-dependent
    /// by design; used as the exact counterpart of the float residual.
    pub fn sq_norm(&self) -> Rational {
        self.coeffs.values().map(|c| c * c).sum()
    }
}

/// Sorts a tuple of indices, returning the permutation sign, or `None`
/// when an index repeats.
fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    // Insertion sort, counting transpositions; tuples are tiny.
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// The derivative of the natural left action of `GL(n)` on k-forms:
/// `theta(A)φ = -(φ(A·,…,·) + … + φ(·,…,A·))`, with `A` an `n x n` matrix
/// acting on coordinates.
pub fn theta_action(a: &RatMatrix, form: &AlternatingForm) -> AlternatingForm {
    assert!(a.is_square(), "theta action needs a square matrix");
    assert_eq!(a.rows(), form.dim(), "endomorphism/form dimension mismatch");
    let n = form.dim();
    let mut out = AlternatingForm::zero(n, form.degree());
    for (tuple, coeff) in form.terms() {
        for slot in 0..tuple.len() {
            // Substitute e^{t_slot} -> sum_j A[t_slot, j] e^j.
            let row = tuple[slot] - 1;
            for j in 0..n {
                let a_entry = a.get(row, j);
                if a_entry.is_zero() {
                    continue;
                }
                let mut t = tuple.to_vec();
                t[slot] = j + 1;
                out.add_term(&t, -(coeff * a_entry));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    fn one() -> Rational {
        rat_int(1)
    }

    #[test]
    fn antisymmetric_storage() {
        let mut f = AlternatingForm::zero(4, 2);
        f.add_term(&[2, 1], one());
        assert_eq!(f.coefficient(&[1, 2]), rat_int(-1));
        assert_eq!(f.coefficient(&[2, 1]), one());
        f.add_term(&[1, 1], one());
        assert_eq!(f.term_count(), 1);
    }

    #[test]
    fn cancelling_terms_leave_no_entry() {
        let mut f = AlternatingForm::zero(3, 2);
        f.add_term(&[1, 2], one());
        f.add_term(&[2, 1], one());
        assert!(f.is_zero());
    }

    #[test]
    fn wedge_of_duals() {
        let e1 = AlternatingForm::dual(3, 1);
        let e2 = AlternatingForm::dual(3, 2);
        let w = e1.wedge(&e2);
        assert_eq!(w.coefficient(&[1, 2]), one());
        // Graded anticommutativity for 1-forms.
        assert_eq!(e2.wedge(&e1), w.scale(&rat_int(-1)));
        assert!(e1.wedge(&e1).is_zero());
    }

    #[test]
    fn eval_is_determinant_on_basis_minor() {
        let mut f = AlternatingForm::zero(3, 2);
        f.add_term(&[1, 2], one());
        let x = vec![one(), rat_int(2), rat_int(0)];
        let y = vec![rat_int(3), rat_int(4), rat_int(0)];
        // det [[1,2],[3,4]] = -2
        assert_eq!(f.eval(&[x, y]), rat_int(-2));
    }

    #[test]
    fn theta_on_identity_scales_by_minus_degree() {
        let mut f = AlternatingForm::zero(4, 2);
        f.add_term(&[1, 3], rat(5, 2));
        f.add_term(&[2, 4], rat(-1, 3));
        let t = theta_action(&RatMatrix::identity(4), &f);
        assert_eq!(t, f.scale(&rat_int(-2)));
    }

    #[test]
    fn theta_zero_matrix_is_zero() {
        let f = AlternatingForm::dual(3, 2);
        assert!(theta_action(&RatMatrix::zeros(3, 3), &f).is_zero());
    }

    #[test]
    fn theta_single_entry() {
        // A(e1) = e3 means A[2][0] = 1 (0-based); theta(A) e^3 = -e^1.
        let mut a = RatMatrix::zeros(3, 3);
        a.set(2, 0, one());
        let e3 = AlternatingForm::dual(3, 3);
        let t = theta_action(&a, &e3);
        assert_eq!(t, AlternatingForm::dual(3, 1).scale(&rat_int(-1)));
    }

    #[test]
    fn sq_norm_sums_coefficient_squares() {
        let mut f = AlternatingForm::zero(4, 2);
        f.add_term(&[1, 2], rat(1, 2));
        f.add_term(&[3, 4], rat_int(-3));
        assert_eq!(f.sq_norm(), rat(37, 4));
    }
}
