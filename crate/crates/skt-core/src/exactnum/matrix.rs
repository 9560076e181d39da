use num_traits::{One, Zero};

use super::{ExactError, Rational, Subspace};

/// Dense row-major matrix of exact rationals.
///
/// Row and column indices are 0-based here; the 1-based basis labels of the
/// rest of the library are translated at the call sites that use them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds an `n x n` matrix from `(row, col, value)` triples, 0-based.
    pub fn from_triples(n: usize, triples: &[(usize, usize, Rational)]) -> Self {
        let mut m = Self::zeros(n, n);
        for (r, c, v) in triples {
            m.set(*r, *c, v.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut m = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = m.get(r, c) + a * b;
                    m.set(r, c, cur);
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m.get(pivot_row, col).recip();
            for c in col..m.cols {
                let v = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(pivot_row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries
                .swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space `{v : M v = 0}` as a canonical subspace of the column
    /// index space.
    pub fn kernel(&self) -> Subspace {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -rref.get(row, f).clone();
            }
            basis.push(v);
        }
        Subspace::from_rows(self.cols, basis)
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Rational::zero();
            };
            if src != col {
                m.swap_rows(col, src);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) / &pivot;
                for c in col..n {
                    let v = m.get(r, c) - &factor * m.get(col, c);
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Rational::one());
        }
        let (red, pivots) = aug.rref();
        if pivots != (0..n).collect::<Vec<_>>() {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    /// Exact Sylvester criterion: all leading principal minors positive.
    pub fn is_positive_definite(&self) -> Result<bool, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if let Some((r, c)) = self.first_asymmetry() {
            return Err(ExactError::NotSymmetric { row: r, col: c });
        }
        Ok(self.first_nonpositive_minor().is_none())
    }

    /// 1-based order of the first leading principal minor that is not
    /// positive, if any.
    pub fn first_nonpositive_minor(&self) -> Option<usize> {
        (1..=self.rows).find(|&k| self.leading_principal_minor(k) <= Rational::zero())
    }

    pub fn leading_principal_minor(&self, k: usize) -> Rational {
        let mut block = Self::zeros(k, k);
        for r in 0..k {
            for c in 0..k {
                block.set(r, c, self.get(r, c).clone());
            }
        }
        block.determinant()
    }

    fn first_asymmetry(&self) -> Option<(usize, usize)> {
        for r in 0..self.rows {
            for c in 0..r {
                if self.get(r, c) != self.get(c, r) {
                    return Some((r, c));
                }
            }
        }
        None
    }

    /// Block-diagonal assembly, in the order given.
    pub fn block_diag(blocks: &[&Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(n, c);
        let mut ro = 0;
        let mut co = 0;
        for b in blocks {
            for r in 0..b.rows {
                for cc in 0..b.cols {
                    m.set(ro + r, co + cc, b.get(r, cc).clone());
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        m
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|e| e.to_f64().expect("rational out of f64 range"))
                    .collect()
            })
            .collect()
    }
}
