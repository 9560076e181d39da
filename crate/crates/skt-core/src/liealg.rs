//! Lie algebras as exact structure-constant tensors.
//!
//! A bracket table stores `[e_i, e_j] = sum_k c^k_ij e_k` for `i < j` only;
//! antisymmetry is structural, never data. Basis labels are 1-based
//! throughout, matching printed structure-constant tables: a differential
//! table entry `de^k = -e^{ij}` transcribes to `[e_i, e_j] = e_k`.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::{RatMatrix, Rational, Subspace};

pub type BracketTargets = Vec<(usize, Rational)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    brackets: BTreeMap<(usize, usize), BracketTargets>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket pair ({i},{j}) must satisfy i < j")]
    PairOrder { i: usize, j: usize },
    #[error("duplicate bracket pair ({i},{j})")]
    DuplicatePair { i: usize, j: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Outcome of the Jacobi identity check: either every triple closes, or
/// the violating triples with their nonzero cyclic-sum defects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiReport {
    pub violations: Vec<JacobiViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub defect: Vec<Rational>,
}

impl JacobiReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Nilpotency verdict from the descending central series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nilpotency {
    Step(usize),
    NotNilpotent,
}

impl Nilpotency {
    pub fn step(self) -> Option<usize> {
        match self {
            Nilpotency::Step(k) => Some(k),
            Nilpotency::NotNilpotent => None,
        }
    }
}

impl LieAlgebra {
    /// Builds an algebra from sparse bracket data. Pairs must be strictly
    /// ordered (`i < j`), indices 1-based and within `1..=dim`. Duplicate
    /// target indices within one pair are accumulated; zero coefficients
    /// are dropped.
    pub fn new(
        dim: usize,
        brackets: Vec<((usize, usize), BracketTargets)>,
    ) -> Result<Self, LieError> {
        let mut table: BTreeMap<(usize, usize), BracketTargets> = BTreeMap::new();
        for ((i, j), targets) in brackets {
            for &index in [i, j].iter() {
                if index == 0 || index > dim {
                    return Err(LieError::IndexOutOfRange { index, dim });
                }
            }
            if i >= j {
                return Err(LieError::PairOrder { i, j });
            }
            if table.contains_key(&(i, j)) {
                return Err(LieError::DuplicatePair { i, j });
            }
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, coeff) in targets {
                if k == 0 || k > dim {
                    return Err(LieError::IndexOutOfRange { index: k, dim });
                }
                *acc.entry(k).or_insert_with(Rational::zero) += coeff;
            }
            let cleaned: BracketTargets =
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !cleaned.is_empty() {
                table.insert((i, j), cleaned);
            }
        }
        Ok(Self {
            dim,
            brackets: table,
        })
    }

    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            brackets: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Stored pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn bracket_pairs(&self) -> impl Iterator<Item = (&(usize, usize), &BracketTargets)> {
        self.brackets.iter()
    }

    /// `[e_i, e_j]` for arbitrary 1-based indices, as sparse targets.
    pub fn bracket_basis(&self, i: usize, j: usize) -> BracketTargets {
        if i == j {
            return Vec::new();
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        match self.brackets.get(&(a, b)) {
            Some(t) if sign > 0 => t.clone(),
            Some(t) => t.iter().map(|(k, c)| (*k, -c)).collect(),
            None => Vec::new(),
        }
    }

    /// Bilinear extension of the stored constants to coordinate vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, LieError> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(LieError::DimensionMismatch(format!(
                "vectors of length {} and {} in a {}-dimensional algebra",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        let mut out = vec![Rational::zero(); self.dim];
        for (&(i, j), targets) in &self.brackets {
            let xi = &x[i - 1];
            let xj = &x[j - 1];
            let yi = &y[i - 1];
            let yj = &y[j - 1];
            let coeff = xi * yj - xj * yi;
            if coeff.is_zero() {
                continue;
            }
            for (k, c) in targets {
                out[k - 1] = &out[k - 1] + &coeff * c;
            }
        }
        Ok(out)
    }

    /// Matrix of `ad(e_i) = [e_i, ·]` (columns are images of basis vectors).
    pub fn ad_matrix(&self, i: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.dim, self.dim);
        for j in 1..=self.dim {
            for (k, c) in self.bracket_basis(i, j) {
                m.set(k - 1, j - 1, c);
            }
        }
        m
    }

    /// Checks `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0`
    /// for every `i < j < k`, reporting each violating triple with its
    /// defect vector.
    pub fn jacobi_check(&self) -> JacobiReport {
        let mut violations = Vec::new();
        for i in 1..=self.dim {
            for j in i + 1..=self.dim {
                for k in j + 1..=self.dim {
                    let mut defect = vec![Rational::zero(); self.dim];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, coeff) in self.bracket_basis(a, b) {
                            for (t, inner) in self.bracket_basis(m, c) {
                                defect[t - 1] = &defect[t - 1] + &coeff * &inner;
                            }
                        }
                    }
                    if defect.iter().any(|v| !v.is_zero()) {
                        violations.push(JacobiViolation {
                            triple: (i, j, k),
                            defect,
                        });
                    }
                }
            }
        }
        JacobiReport { violations }
    }

    /// Span of all bracket values `[e_i, e_j]`.
    pub fn derived(&self) -> Subspace {
        let rows = self
            .brackets
            .values()
            .map(|targets| {
                let mut v = vec![Rational::zero(); self.dim];
                for (k, c) in targets {
                    v[k - 1] = c.clone();
                }
                v
            })
            .collect();
        Subspace::from_rows(self.dim, rows)
    }

    /// `{x : [x, y] = 0 for all y}` as the kernel of the stacked adjoints.
    pub fn center(&self) -> Subspace {
        if self.dim == 0 {
            return Subspace::zero(0);
        }
        let mut stacked = RatMatrix::zeros(self.dim * self.dim, self.dim);
        for i in 1..=self.dim {
            let ad = self.ad_matrix(i);
            for r in 0..self.dim {
                for c in 0..self.dim {
                    let v = ad.get(r, c);
                    if !v.is_zero() {
                        stacked.set((i - 1) * self.dim + r, c, v.clone());
                    }
                }
            }
        }
        stacked.kernel()
    }

    /// `[self, s]` span for a subspace `s`: the rows are brackets of every
    /// basis vector with every basis row of `s`.
    fn bracket_with_subspace(&self, s: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for v in s.basis_rows() {
            for i in 1..=self.dim {
                let mut basis_vec = vec![Rational::zero(); self.dim];
                basis_vec[i - 1] = Rational::from_integer(1.into());
                let w = self.bracket(&basis_vec, &v).expect("dims agree");
                if w.iter().any(|c| !c.is_zero()) {
                    rows.push(w);
                }
            }
        }
        Subspace::from_rows(self.dim, rows)
    }

    /// Descending central series `g_0 = g`, `g_i = [g, g_{i-1}]`, listed
    /// until it stabilizes (the stable term is included once).
    pub fn central_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::full(self.dim)];
        loop {
            let next = self.bracket_with_subspace(series.last().unwrap());
            if &next == series.last().unwrap() {
                break;
            }
            series.push(next);
            if series.last().unwrap().is_zero() {
                break;
            }
        }
        series
    }

    pub fn nilpotency(&self) -> Nilpotency {
        let series = self.central_series();
        let last = series.last().unwrap();
        if last.is_zero() {
            Nilpotency::Step(series.len() - 1)
        } else {
            Nilpotency::NotNilpotent
        }
    }

    /// True iff `[x, s]` stays in `s` for every basis `x` and basis row of `s`.
    pub fn is_ideal(&self, s: &Subspace) -> Result<bool, LieError> {
        if s.ambient_dim() != self.dim {
            return Err(LieError::DimensionMismatch(format!(
                "subspace ambient dimension {} vs algebra dimension {}",
                s.ambient_dim(),
                self.dim
            )));
        }
        for v in s.basis_rows() {
            for i in 1..=self.dim {
                let mut basis_vec = vec![Rational::zero(); self.dim];
                basis_vec[i - 1] = Rational::from_integer(1.into());
                let w = self.bracket(&basis_vec, &v)?;
                if !s.contains(&w) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Convenience constructor used by tests and the catalog transcriptions:
/// brackets given as `(i, j, [(k, numer, denom), ...])`.
pub fn algebra(dim: usize, data: &[(usize, usize, &[(usize, i64, i64)])]) -> LieAlgebra {
    let brackets = data
        .iter()
        .map(|&(i, j, targets)| {
            (
                (i, j),
                targets
                    .iter()
                    .map(|&(k, n, d)| (k, crate::exactnum::rat(n, d)))
                    .collect(),
            )
        })
        .collect();
    LieAlgebra::new(dim, brackets).expect("invalid bracket table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat_int, Subspace};

    fn heisenberg4() -> LieAlgebra {
        // [e1,e2] = e3 in dimension 4.
        algebra(4, &[(1, 2, &[(3, 1, 1)])])
    }

    fn dim8_nonabelian() -> LieAlgebra {
        algebra(
            8,
            &[
                (1, 2, &[(5, 2, 1), (7, 1, 1)]),
                (1, 3, &[(6, 1, 1)]),
                (1, 4, &[(5, -1, 1)]),
                (3, 4, &[(5, 1, 1), (7, -1, 1)]),
            ],
        )
    }

    fn span(dim: usize, rows: &[&[i64]]) -> Subspace {
        Subspace::from_rows(
            dim,
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn bracket_of_basis_vectors() {
        let l = heisenberg4();
        let e1 = vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0)];
        let e2 = vec![rat_int(0), rat_int(1), rat_int(0), rat_int(0)];
        assert_eq!(
            l.bracket(&e1, &e2).unwrap(),
            vec![rat_int(0), rat_int(0), rat_int(1), rat_int(0)]
        );
        assert!(l.bracket(&e1, &e1).unwrap().iter().all(|c| c == &rat_int(0)));
    }

    #[test]
    fn bracket_is_antisymmetric_in_eight_dims() {
        let l = dim8_nonabelian();
        let v1 = {
            let mut v = vec![rat_int(0); 8];
            v[0] = rat_int(1);
            v
        };
        let v2 = {
            let mut v = vec![rat_int(0); 8];
            v[1] = rat_int(1);
            v
        };
        let mut expected = vec![rat_int(0); 8];
        expected[4] = rat_int(2);
        expected[6] = rat_int(1);
        assert_eq!(l.bracket(&v1, &v2).unwrap(), expected);
        let rev = l.bracket(&v2, &v1).unwrap();
        assert_eq!(rev, expected.iter().map(|c| -c.clone()).collect::<Vec<_>>());
    }

    #[test]
    fn jacobi_ok_on_catalog_style_algebras() {
        assert!(heisenberg4().jacobi_check().is_ok());
        assert!(dim8_nonabelian().jacobi_check().is_ok());
        assert!(LieAlgebra::abelian(5).jacobi_check().is_ok());
    }

    #[test]
    fn jacobi_violation_with_defect() {
        // [e1,e2] = e3, [e1,e3] = e1 breaks Jacobi at (1,2,3):
        // [[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2] = [e3,e3] + 0 - [e1,e2] = -e3.
        let l = algebra(3, &[(1, 2, &[(3, 1, 1)]), (1, 3, &[(1, 1, 1)])]);
        let report = l.jacobi_check();
        assert_eq!(report.violations.len(), 1);
        let v = &report.violations[0];
        assert_eq!(v.triple, (1, 2, 3));
        assert_eq!(v.defect, vec![rat_int(0), rat_int(0), rat_int(-1)]);
    }

    #[test]
    fn central_series_and_step() {
        let l = heisenberg4();
        let series = l.central_series();
        assert_eq!(series.len(), 3);
        assert_eq!(series[1], span(4, &[&[0, 0, 1, 0]]));
        assert!(series[2].is_zero());
        assert_eq!(l.nilpotency(), Nilpotency::Step(2));

        assert_eq!(LieAlgebra::abelian(3).nilpotency(), Nilpotency::Step(1));
        assert_eq!(LieAlgebra::abelian(0).nilpotency(), Nilpotency::Step(0));

        // Filiform: [e1,e2]=e3, [e1,e3]=e4 is 3-step.
        let filiform = algebra(4, &[(1, 2, &[(3, 1, 1)]), (1, 3, &[(4, 1, 1)])]);
        assert_eq!(filiform.nilpotency(), Nilpotency::Step(3));

        // sl2-like non-nilpotent: [e1,e2]=e2.
        let solvable = algebra(2, &[(1, 2, &[(2, 1, 1)])]);
        assert_eq!(solvable.nilpotency(), Nilpotency::NotNilpotent);
    }

    #[test]
    fn center_examples() {
        assert_eq!(LieAlgebra::abelian(3).center(), Subspace::full(3));
        assert_eq!(
            heisenberg4().center(),
            span(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]])
        );
        // In the 6-dimensional catalog algebra the kernel conditions are
        // x1 = x3 and x2 = x4, so the center is 4-dimensional:
        // span{f1+f3, f2+f4, f5, f6}.
        let n6 = algebra(
            6,
            &[
                (1, 2, &[(5, 1, 1)]),
                (1, 4, &[(5, -1, 1)]),
                (2, 3, &[(5, 1, 1)]),
                (3, 4, &[(5, 1, 1)]),
            ],
        );
        assert_eq!(
            n6.center(),
            span(
                6,
                &[
                    &[1, 0, 1, 0, 0, 0],
                    &[0, 1, 0, 1, 0, 0],
                    &[0, 0, 0, 0, 1, 0],
                    &[0, 0, 0, 0, 0, 1]
                ]
            )
        );
    }

    #[test]
    fn derived_examples() {
        assert!(LieAlgebra::abelian(4).derived().is_zero());
        assert_eq!(heisenberg4().derived(), span(4, &[&[0, 0, 1, 0]]));
        assert_eq!(
            dim8_nonabelian().derived(),
            span(
                8,
                &[
                    &[0, 0, 0, 0, 1, 0, 0, 0],
                    &[0, 0, 0, 0, 0, 1, 0, 0],
                    &[0, 0, 0, 0, 0, 0, 1, 0]
                ]
            )
        );
    }

    #[test]
    fn derived_is_first_central_series_term() {
        for l in [heisenberg4(), dim8_nonabelian()] {
            assert_eq!(l.derived(), l.central_series()[1]);
        }
    }

    #[test]
    fn ideal_tests() {
        let l = heisenberg4();
        assert!(l.is_ideal(&Subspace::full(4)).unwrap());
        assert!(l.is_ideal(&span(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]])).unwrap());
        assert!(!l.is_ideal(&span(4, &[&[1, 0, 0, 0]])).unwrap());
        assert!(l.is_ideal(&span(3, &[&[1, 0, 0]])).is_err());
    }

    #[test]
    fn constructor_rejects_bad_tables() {
        assert_eq!(
            LieAlgebra::new(3, vec![((2, 1), vec![(3, rat_int(1))])]),
            Err(LieError::PairOrder { i: 2, j: 1 })
        );
        assert_eq!(
            LieAlgebra::new(3, vec![((1, 5), vec![(3, rat_int(1))])]),
            Err(LieError::IndexOutOfRange { index: 5, dim: 3 })
        );
        assert_eq!(
            LieAlgebra::new(
                3,
                vec![
                    ((1, 2), vec![(3, rat_int(1))]),
                    ((1, 2), vec![(3, rat_int(2))])
                ]
            ),
            Err(LieError::DuplicatePair { i: 1, j: 2 })
        );
    }
}
