//! Complex structures, compatible metrics, and the validated bundle of
//! (algebra, J, metric) everything downstream operates on.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::{RatMatrix, Rational};
use crate::forms::AlternatingForm;
use crate::liealg::{JacobiReport, LieAlgebra};

/// Endomorphism `J` with `J^2 = -Id`, checked exactly at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexStructure {
    dim: usize,
    mat: RatMatrix,
}

/// Symmetric positive-definite bilinear form, checked exactly at
/// construction (Sylvester criterion, no floating point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric {
    dim: usize,
    mat: RatMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HermitianError {
    #[error("complex structure needs an even dimension, got {0}")]
    OddDimension(usize),
    #[error("J*J differs from -Id at entry ({row},{col})")]
    NotAlmostComplex { row: usize, col: usize },
    #[error("J pairs must cover each index exactly once; index {0} is wrong")]
    BadPairCover(usize),
    #[error("metric is not symmetric at entry ({row},{col})")]
    MetricNotSymmetric { row: usize, col: usize },
    #[error("metric is not positive definite: leading principal minor {order} is not positive")]
    MetricNotPositiveDefinite { order: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("Jacobi identity fails at triple {0:?}")]
    JacobiViolation((usize, usize, usize)),
    #[error("integrability fails on basis pair {0:?}")]
    NotIntegrable((usize, usize)),
    #[error("metric is not J-compatible: (J^T g J)({row},{col}) differs from g({row},{col})")]
    NotCompatible { row: usize, col: usize },
}

impl ComplexStructure {
    pub fn new(mat: RatMatrix) -> Result<Self, HermitianError> {
        let dim = mat.rows();
        assert!(mat.is_square(), "complex structure matrix must be square");
        if dim % 2 != 0 {
            return Err(HermitianError::OddDimension(dim));
        }
        let sq = mat.mul(&mat);
        for r in 0..dim {
            for c in 0..dim {
                let expected = if r == c { -Rational::one() } else { Rational::zero() };
                if sq.get(r, c) != &expected {
                    return Err(HermitianError::NotAlmostComplex { row: r, col: c });
                }
            }
        }
        Ok(Self { dim, mat })
    }

    /// Builds `J` from pairs `(a, b)` meaning `J e_a = e_b`, `J e_b = -e_a`
    /// (1-based). The pairs must cover every index exactly once.
    pub fn from_pairs(dim: usize, pairs: &[(usize, usize)]) -> Result<Self, HermitianError> {
        let mut seen = vec![false; dim];
        let mut mat = RatMatrix::zeros(dim, dim);
        for &(a, b) in pairs {
            for &idx in [a, b].iter() {
                if idx == 0 || idx > dim {
                    return Err(HermitianError::BadPairCover(idx));
                }
                if seen[idx - 1] {
                    return Err(HermitianError::BadPairCover(idx));
                }
                seen[idx - 1] = true;
            }
            if a == b {
                return Err(HermitianError::BadPairCover(a));
            }
            mat.set(b - 1, a - 1, Rational::one());
            mat.set(a - 1, b - 1, -Rational::one());
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(HermitianError::BadPairCover(missing + 1));
        }
        Self::new(mat)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.mat
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.mat.mul_vec(v)
    }

    /// Image of the basis vector `e_i` (1-based) as sparse `(index, coeff)`.
    pub fn apply_basis(&self, i: usize) -> Vec<(usize, Rational)> {
        (0..self.dim)
            .filter_map(|r| {
                let v = self.mat.get(r, i - 1);
                (!v.is_zero()).then(|| (r + 1, v.clone()))
            })
            .collect()
    }

    /// Recovers the `(a, b)` pair list when `J` is exactly of that shape.
    pub fn as_pairs(&self) -> Option<Vec<(usize, usize)>> {
        let mut pairs = Vec::new();
        let mut seen = vec![false; self.dim];
        for a in 1..=self.dim {
            if seen[a - 1] {
                continue;
            }
            let image = self.apply_basis(a);
            let [(b, coeff)] = image.as_slice() else {
                return None;
            };
            if !coeff.is_one() || seen[*b - 1] {
                return None;
            }
            // J e_b = -e_a follows from J^2 = -Id once J e_a = e_b.
            seen[a - 1] = true;
            seen[*b - 1] = true;
            pairs.push((a, *b));
        }
        Some(pairs)
    }
}

impl Metric {
    pub fn new(mat: RatMatrix) -> Result<Self, HermitianError> {
        assert!(mat.is_square(), "metric matrix must be square");
        let dim = mat.rows();
        for r in 0..dim {
            for c in 0..r {
                if mat.get(r, c) != mat.get(c, r) {
                    return Err(HermitianError::MetricNotSymmetric { row: r, col: c });
                }
            }
        }
        if let Some(order) = mat.first_nonpositive_minor() {
            return Err(HermitianError::MetricNotPositiveDefinite { order });
        }
        Ok(Self { dim, mat })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            mat: RatMatrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.mat
    }

    pub fn scale(&self, factor: &Rational) -> Result<Self, HermitianError> {
        Self::new(self.mat.scale(factor))
    }

    pub fn inner(&self, x: &[Rational], y: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let gy = self.mat.mul_vec(y);
        x.iter()
            .zip(&gy)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// `g(e_i, v)` for a sparse `v` given as `(index, coeff)` pairs, 1-based.
    pub fn inner_basis_sparse(&self, i: usize, v: &[(usize, Rational)]) -> Rational {
        v.iter()
            .map(|(j, c)| self.mat.get(i - 1, j - 1) * c)
            .sum()
    }
}

/// Verdict list of the integrability check: basis pairs where the tensor
/// `N(e_i,e_j) = [Je_i,Je_j] - [e_i,e_j] - J[Je_i,e_j] - J[e_i,Je_j]`
/// does not vanish, with the tensor value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegrabilityReport {
    pub failures: Vec<((usize, usize), Vec<Rational>)>,
}

impl IntegrabilityReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn nijenhuis_check(
    algebra: &LieAlgebra,
    j: &ComplexStructure,
) -> Result<IntegrabilityReport, HermitianError> {
    if algebra.dim() != j.dim() {
        return Err(HermitianError::DimensionMismatch(format!(
            "algebra dimension {} vs J dimension {}",
            algebra.dim(),
            j.dim()
        )));
    }
    let n = algebra.dim();
    let basis: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            v
        })
        .collect();
    let j_basis: Vec<Vec<Rational>> = (0..n).map(|i| j.apply(&basis[i])).collect();
    let mut failures = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let t1 = algebra.bracket(&j_basis[a], &j_basis[b]).unwrap();
            let t2 = algebra.bracket(&basis[a], &basis[b]).unwrap();
            let t3 = j.apply(&algebra.bracket(&j_basis[a], &basis[b]).unwrap());
            let t4 = j.apply(&algebra.bracket(&basis[a], &j_basis[b]).unwrap());
            let value: Vec<Rational> = (0..n)
                .map(|k| &t1[k] - &t2[k] - &t3[k] - &t4[k])
                .collect();
            if value.iter().any(|v| !v.is_zero()) {
                failures.push(((a + 1, b + 1), value));
            }
        }
    }
    Ok(IntegrabilityReport { failures })
}

/// Entry-exact check of `J^T g J = g`; returns the first failing entry.
pub fn compatibility_defect(j: &ComplexStructure, g: &Metric) -> Option<(usize, usize)> {
    let jt = j.matrix().transpose();
    let lhs = jt.mul(g.matrix()).mul(j.matrix());
    for r in 0..g.dim() {
        for c in 0..g.dim() {
            if lhs.get(r, c) != g.matrix().get(r, c) {
                return Some((r, c));
            }
        }
    }
    None
}

/// Fundamental 2-form `w(x, y) = g(Jx, y)` of a compatible pair.
pub fn fundamental_form(
    j: &ComplexStructure,
    g: &Metric,
) -> Result<AlternatingForm, HermitianError> {
    if j.dim() != g.dim() {
        return Err(HermitianError::DimensionMismatch(format!(
            "J dimension {} vs metric dimension {}",
            j.dim(),
            g.dim()
        )));
    }
    if let Some((row, col)) = compatibility_defect(j, g) {
        return Err(HermitianError::NotCompatible { row, col });
    }
    let n = j.dim();
    let mut form = AlternatingForm::zero(n, 2);
    for a in 1..=n {
        let ja = j.apply_basis(a);
        for b in a + 1..=n {
            form.add_term(&[a, b], g.inner_basis_sparse(b, &ja));
        }
    }
    Ok(form)
}

/// Abelian-J verdict: true iff `[Je_i, Je_j] = [e_i, e_j]` for all pairs;
/// otherwise carries the first witness pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianVerdict {
    pub abelian: bool,
    pub witness: Option<(usize, usize)>,
}

pub fn is_abelian_j(algebra: &LieAlgebra, j: &ComplexStructure) -> AbelianVerdict {
    assert_eq!(algebra.dim(), j.dim());
    let n = algebra.dim();
    let basis: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            v
        })
        .collect();
    for a in 0..n {
        for b in a + 1..n {
            let lhs = algebra
                .bracket(&j.apply(&basis[a]), &j.apply(&basis[b]))
                .unwrap();
            let rhs = algebra.bracket(&basis[a], &basis[b]).unwrap();
            if lhs != rhs {
                return AbelianVerdict {
                    abelian: false,
                    witness: Some((a + 1, b + 1)),
                };
            }
        }
    }
    AbelianVerdict {
        abelian: true,
        witness: None,
    }
}

/// Which of the four structure axioms a triple satisfies. A triple built
/// through [`HermitianTriple::new`] always has all four set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationFlags {
    pub jacobi: bool,
    pub j_square: bool,
    pub integrable: bool,
    pub compatible: bool,
}

impl ValidationFlags {
    pub fn all(self) -> bool {
        self.jacobi && self.j_square && self.integrable && self.compatible
    }
}

/// A Lie algebra with an integrable complex structure and a compatible
/// metric — the validated input of every torsion computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianTriple {
    algebra: LieAlgebra,
    j: ComplexStructure,
    metric: Metric,
    flags: ValidationFlags,
}

impl HermitianTriple {
    /// Validates all four axioms (Jacobi, `J^2 = -Id`, integrability,
    /// compatibility) and returns the bundle, or the first failure with a
    /// witness. `J^2 = -Id` is already guaranteed by [`ComplexStructure`].
    pub fn new(
        algebra: LieAlgebra,
        j: ComplexStructure,
        metric: Metric,
    ) -> Result<Self, HermitianError> {
        if algebra.dim() != j.dim() || algebra.dim() != metric.dim() {
            return Err(HermitianError::DimensionMismatch(format!(
                "algebra {}, J {}, metric {}",
                algebra.dim(),
                j.dim(),
                metric.dim()
            )));
        }
        let jacobi: JacobiReport = algebra.jacobi_check();
        if let Some(v) = jacobi.violations.first() {
            return Err(HermitianError::JacobiViolation(v.triple));
        }
        let integrability = nijenhuis_check(&algebra, &j)?;
        if let Some((pair, _)) = integrability.failures.first() {
            return Err(HermitianError::NotIntegrable(*pair));
        }
        if let Some((row, col)) = compatibility_defect(&j, &metric) {
            return Err(HermitianError::NotCompatible { row, col });
        }
        Ok(Self {
            algebra,
            j,
            metric,
            flags: ValidationFlags {
                jacobi: true,
                j_square: true,
                integrable: true,
                compatible: true,
            },
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn j(&self) -> &ComplexStructure {
        &self.j
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn flags(&self) -> ValidationFlags {
        self.flags
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Same algebra and `J` with a different compatible metric.
    pub fn with_metric(&self, metric: Metric) -> Result<Self, HermitianError> {
        Self::new(self.algebra.clone(), self.j.clone(), metric)
    }

    pub fn fundamental_form(&self) -> AlternatingForm {
        fundamental_form(&self.j, &self.metric).expect("validated triple")
    }

    pub fn is_abelian_j(&self) -> AbelianVerdict {
        is_abelian_j(&self.algebra, &self.j)
    }
}
