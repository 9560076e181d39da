//! Floating-point search over the cone of J-compatible metrics.
//!
//! The SKT defect of a metric in a fixed basis is
//! `residual(g) = Σ dc(e_i,e_j,e_k,e_l)^2` over increasing 4-tuples.
//! Every term of `dc` has the shape `<v, w>_g` with `v`, `w` independent
//! of `g`, so the residual is an explicit quadratic form in `g` and its
//! gradient is analytic.
//!
//! Metrics are parameterized as `g = g0 + S^T g0 S` with `S` ranging over
//! the commutant of `J` and `g0 = (I + J^T J)/2` (the identity whenever
//! the input basis is J-orthonormal). Compatibility holds by construction
//! and `g ⪰ g0`, so the metric can never degenerate; since the SKT zero
//! set is scale-invariant (`dc` is linear in `g`), every compatible
//! metric has a positive multiple inside the family and nothing is lost.
//! A bare `g = S^T S` parameterization admits descent paths on which the
//! residual decays purely because the metric collapses toward the
//! positive-semidefinite boundary, which would fake convergence on
//! algebras that admit no SKT metric; the floor rules that out.
//!
//! Reported residuals are those of the metric rescaled to smallest
//! eigenvalue 1 (`residual(g / λ_min)`), a scale-free quantity that is
//! bounded away from zero whenever no SKT metric exists in the closure
//! of the non-degenerate cone.
//!
//! A run that converges on a 3-step algebra would contradict the
//! structure theory; in that case the metric is rationalized, projected
//! exactly onto the commutant, and re-verified by the exact pipeline —
//! only an exact confirmation is reported as a falsification event.

use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bismut::{self, increasing_tuples};
use crate::exactnum::{rat, RatMatrix, Rational};
use crate::hermitian::{ComplexStructure, HermitianTriple, Metric};
use crate::liealg::{LieAlgebra, Nilpotency};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("Jacobi identity fails; search needs a Lie algebra")]
    JacobiFails,
    #[error("complex structure is not integrable on this algebra")]
    NotIntegrable,
    #[error("dimension mismatch between algebra and complex structure")]
    DimensionMismatch,
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("configuration: {0}")]
    BadConfig(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub starts: usize,
    pub max_iters: usize,
    pub tol: f64,
    /// Scale of the Gaussian perturbation of the identity used for the
    /// multi-start initial points.
    pub perturbation: f64,
    pub rng_seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            starts: 20,
            max_iters: 5000,
            tol: 1e-10,
            perturbation: 0.3,
            rng_seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StartRecord {
    pub seed: u64,
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_metric: Vec<Vec<f64>>,
    pub best_residual: f64,
    pub converged: bool,
    /// Sorted by (residual, seed); deterministic for a fixed config.
    pub per_start: Vec<StartRecord>,
    pub metric_positive_definite: bool,
    pub metric_compat_error: f64,
    /// Exactly confirmed SKT certificate on a >=3-step algebra. Expected
    /// to stay `None`; anything else falsifies the structure theory.
    pub falsification: Option<String>,
}

struct Term {
    sign: f64,
    v: Vec<(usize, f64)>,
    w: Vec<(usize, f64)>,
}

struct TupleTerms {
    terms: Vec<Term>,
}

/// Precomputed residual data for a fixed `(algebra, J)`.
pub struct SearchProblem {
    dim: usize,
    tuples: Vec<TupleTerms>,
    /// Orthonormal basis of the commutant of J, as sparse matrices.
    commutant: Vec<Vec<(usize, usize, f64)>>,
    g0: Vec<Vec<f64>>,
    identity_coords: Vec<f64>,
    j_float: Vec<Vec<f64>>,
}

type Sparse = Vec<(usize, Rational)>;

fn to_float_sparse(v: &Sparse) -> Vec<(usize, f64)> {
    v.iter()
        .map(|(i, c)| (*i - 1, c.to_f64().expect("coefficient in f64 range")))
        .collect()
}

impl SearchProblem {
    pub fn new(algebra: &LieAlgebra, j: &ComplexStructure) -> Result<Self, SearchError> {
        if algebra.dim() != j.dim() {
            return Err(SearchError::DimensionMismatch);
        }
        if !algebra.jacobi_check().is_ok() {
            return Err(SearchError::JacobiFails);
        }
        if !crate::hermitian::nijenhuis_check(algebra, j)
            .map_err(|_| SearchError::DimensionMismatch)?
            .is_ok()
        {
            return Err(SearchError::NotIntegrable);
        }
        let n = algebra.dim();
        let j_cols: Vec<Sparse> = (1..=n).map(|i| j.apply_basis(i)).collect();
        let unit = |i: usize| vec![(i, Rational::one())];

        // Same six-line layout as the exact direct dc evaluation.
        const PAIRS: [((usize, usize), (usize, usize), i8); 6] = [
            ((0, 1), (2, 3), 1),
            ((0, 2), (1, 3), -1),
            ((0, 3), (1, 2), 1),
            ((1, 2), (0, 3), 1),
            ((1, 3), (0, 2), -1),
            ((2, 3), (0, 1), 1),
        ];
        let mut tuples = Vec::new();
        for tuple in increasing_tuples(n, 4) {
            let mut terms = Vec::new();
            for ((pi, qi), (ri, si), sign) in PAIRS {
                let (p, q, r, s) = (tuple[pi], tuple[qi], tuple[ri], tuple[si]);
                let pq = algebra.bracket_basis(p, q);
                if pq.is_empty() {
                    continue;
                }
                let j_pq = bismut::j_sparse(j, &pq);
                let jr = &j_cols[r - 1];
                let js = &j_cols[s - 1];
                let sign = f64::from(sign);
                let candidates = [
                    (bismut::sparse_bracket(algebra, &j_pq, jr), unit(s)),
                    (bismut::sparse_bracket(algebra, jr, js), pq.clone()),
                    (bismut::sparse_bracket(algebra, js, &j_pq), unit(r)),
                ];
                for (v, w) in candidates {
                    if v.is_empty() || w.is_empty() {
                        continue;
                    }
                    terms.push(Term {
                        sign,
                        v: to_float_sparse(&v),
                        w: to_float_sparse(&w),
                    });
                }
            }
            if !terms.is_empty() {
                tuples.push(TupleTerms { terms });
            }
        }

        let commutant = commutant_basis(j);
        let j_float = j.matrix().to_f64();
        let mut g0 = vec![vec![0.0; n]; n];
        for (r, row) in g0.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                let mut jtj = 0.0;
                for jf in &j_float {
                    jtj += jf[r] * jf[c];
                }
                *entry = 0.5 * (f64::from(u8::from(r == c)) + jtj);
            }
        }
        let identity_coords: Vec<f64> = commutant
            .iter()
            .map(|basis| {
                basis
                    .iter()
                    .filter(|(r, c, _)| r == c)
                    .map(|(_, _, val)| val)
                    .sum()
            })
            .collect();
        Ok(Self {
            dim: n,
            tuples,
            commutant,
            g0,
            identity_coords,
            j_float,
        })
    }

    pub fn param_count(&self) -> usize {
        self.commutant.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Parameters with `S = identity`, the center of the multi-start
    /// initial distribution.
    pub fn identity_params(&self) -> &[f64] {
        &self.identity_coords
    }

    /// The all-zero parameter vector, i.e. `g = g0` exactly.
    pub fn base_params(&self) -> Vec<f64> {
        vec![0.0; self.commutant.len()]
    }

    fn s_matrix(&self, params: &[f64]) -> Vec<Vec<f64>> {
        assert_eq!(params.len(), self.commutant.len());
        let mut s = vec![vec![0.0; self.dim]; self.dim];
        for (t, basis) in params.iter().zip(&self.commutant) {
            if *t == 0.0 {
                continue;
            }
            for &(r, c, val) in basis {
                s[r][c] += t * val;
            }
        }
        s
    }

    /// `g(params) = g0 + S^T g0 S`.
    pub fn metric_of(&self, params: &[f64]) -> Vec<Vec<f64>> {
        let s = self.s_matrix(params);
        let m1 = mat_mul(&self.g0, &s);
        let mut g = mat_mul_transposed_left(&s, &m1);
        for (row, g0_row) in g.iter_mut().zip(&self.g0) {
            for (v, base) in row.iter_mut().zip(g0_row) {
                *v += base;
            }
        }
        g
    }

    fn dc_values(&self, g: &[Vec<f64>]) -> Vec<f64> {
        self.tuples
            .iter()
            .map(|tuple| {
                tuple
                    .terms
                    .iter()
                    .map(|term| {
                        let mut total = 0.0;
                        for &(i, vi) in &term.v {
                            let mut inner = 0.0;
                            for &(k, wk) in &term.w {
                                inner += g[i][k] * wk;
                            }
                            total += vi * inner;
                        }
                        term.sign * total
                    })
                    .sum()
            })
            .collect()
    }

    /// Raw residual of an explicit metric matrix.
    pub fn residual_of_metric(&self, g: &[Vec<f64>]) -> f64 {
        // `+ 0.0` canonicalizes the empty-sum -0.0 to +0.0.
        self.dc_values(g).iter().map(|d| d * d).sum::<f64>() + 0.0
    }

    /// Raw residual of the parameterized metric.
    pub fn residual_at(&self, params: &[f64]) -> f64 {
        self.residual_of_metric(&self.metric_of(params))
    }

    /// Analytic gradient of [`Self::residual_at`].
    pub fn residual_gradient(&self, params: &[f64]) -> Vec<f64> {
        self.eval_pieces(params).1
    }

    /// Raw residual and its parameter gradient.
    fn eval_pieces(&self, params: &[f64]) -> (f64, Vec<f64>) {
        let n = self.dim;
        let s = self.s_matrix(params);
        let m1 = mat_mul(&self.g0, &s);
        let mut g = mat_mul_transposed_left(&s, &m1);
        for (row, g0_row) in g.iter_mut().zip(&self.g0) {
            for (v, base) in row.iter_mut().zip(g0_row) {
                *v += base;
            }
        }
        let dc = self.dc_values(&g);
        let residual: f64 = dc.iter().map(|d| d * d).sum();

        // dR/dg as a full matrix.
        let mut dr_dg = vec![vec![0.0; n]; n];
        for (tuple, dct) in self.tuples.iter().zip(&dc) {
            if *dct == 0.0 {
                continue;
            }
            let factor = 2.0 * dct;
            for term in &tuple.terms {
                let f = factor * term.sign;
                for &(i, vi) in &term.v {
                    for &(k, wk) in &term.w {
                        dr_dg[i][k] += f * vi * wk;
                    }
                }
            }
        }
        // dg/dt_a = P_a + P_a^T with P_a = E_a^T m1 (the g0 floor is
        // constant), so <dR/dg, dg/dt_a> = <dR/dg + (dR/dg)^T, P_a>.
        let mut sym = vec![vec![0.0; n]; n];
        for (r, row) in sym.iter_mut().enumerate() {
            for (c, val) in row.iter_mut().enumerate() {
                *val = dr_dg[r][c] + dr_dg[c][r];
            }
        }
        let mut raw_grad = vec![0.0; self.commutant.len()];
        for (a, basis) in self.commutant.iter().enumerate() {
            let mut dr = 0.0;
            for &(er, ec, val) in basis {
                // P_a row `ec` equals val * m1 row `er`.
                for c in 0..n {
                    dr += sym[ec][c] * val * m1[er][c];
                }
            }
            raw_grad[a] = dr;
        }
        (residual, raw_grad)
    }

    /// Descent objective: the raw residual. The `g0` floor in the
    /// parameterization already removes the degenerate directions, so no
    /// normalization is needed during the descent itself.
    pub fn objective(&self, params: &[f64]) -> f64 {
        self.residual_at(params)
    }

    fn objective_with_grad(&self, params: &[f64]) -> (f64, Vec<f64>) {
        self.eval_pieces(params)
    }

    /// Scale-free residual for reporting: the residual of the metric
    /// rescaled to smallest eigenvalue 1.
    pub fn normalized_residual(&self, params: &[f64]) -> f64 {
        let g = self.metric_of(params);
        let lambda = min_eigenvalue(&g);
        self.residual_of_metric(&g) / (lambda * lambda)
    }

    /// The metric rescaled to smallest eigenvalue 1, for reporting.
    pub fn normalized_metric(&self, params: &[f64]) -> Vec<Vec<f64>> {
        let mut g = self.metric_of(params);
        let lambda = min_eigenvalue(&g);
        for row in &mut g {
            for v in row.iter_mut() {
                *v /= lambda;
            }
        }
        g
    }
}

/// Smallest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
fn min_eigenvalue(g: &[Vec<f64>]) -> f64 {
    let n = g.len();
    let mut a: Vec<Vec<f64>> = g.to_vec();
    for _ in 0..60 {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q] * a[p][q])
            .sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.abs() < 1e-18 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).fold(f64::INFINITY, f64::min)
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![0.0; m]; n];
    for r in 0..n {
        for (k, bk) in b.iter().enumerate() {
            let av = a[r][k];
            if av == 0.0 {
                continue;
            }
            for c in 0..m {
                out[r][c] += av * bk[c];
            }
        }
    }
    out
}

/// `a^T * b` for square matrices.
fn mat_mul_transposed_left(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![0.0; m]; n];
    for (k, ak) in a.iter().enumerate() {
        for r in 0..n {
            let av = ak[r];
            if av == 0.0 {
                continue;
            }
            for c in 0..m {
                out[r][c] += av * b[k][c];
            }
        }
    }
    out
}

/// Orthonormal basis of `{S : SJ = JS}` as sparse float matrices.
fn commutant_basis(j: &ComplexStructure) -> Vec<Vec<(usize, usize, f64)>> {
    let n = j.dim();
    if let Some(pairs) = j.as_pairs() {
        // Complex-linear block structure: for each ordered pair of
        // J-planes, an identity-like and a rotation-like block.
        let inv = 1.0 / f64::sqrt(2.0);
        let mut basis = Vec::with_capacity(n * n / 2);
        for &(pa, pb) in &pairs {
            for &(qa, qb) in &pairs {
                basis.push(vec![(pa - 1, qa - 1, inv), (pb - 1, qb - 1, inv)]);
                basis.push(vec![(pb - 1, qa - 1, inv), (pa - 1, qb - 1, -inv)]);
            }
        }
        return basis;
    }
    // General case: exact kernel of S -> JS - SJ, then Gram-Schmidt.
    let jm = j.matrix();
    let mut system = RatMatrix::zeros(n * n, n * n);
    for r in 0..n {
        for c in 0..n {
            let row = r * n + c;
            for k in 0..n {
                let jv = jm.get(r, k).clone();
                if !jv.is_zero() {
                    let cur = system.get(row, k * n + c) + &jv;
                    system.set(row, k * n + c, cur);
                }
                let jv = jm.get(k, c).clone();
                if !jv.is_zero() {
                    let cur = system.get(row, r * n + k) - &jv;
                    system.set(row, r * n + k, cur);
                }
            }
        }
    }
    let kernel = system.kernel();
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    for row in kernel.basis_rows() {
        let mut v: Vec<f64> = row
            .iter()
            .map(|x| x.to_f64().expect("f64 range"))
            .collect();
        for q in &ortho {
            let dot: f64 = v.iter().zip(q).map(|(a, b)| a * b).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= dot * qi;
            }
        }
        let norm: f64 = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-9 {
            for vi in v.iter_mut() {
                *vi /= norm;
            }
            ortho.push(v);
        }
    }
    ortho
        .into_iter()
        .map(|v| {
            v.into_iter()
                .enumerate()
                .filter(|(_, val)| *val != 0.0)
                .map(|(idx, val)| (idx / n, idx % n, val))
                .collect()
        })
        .collect()
}

/// SKT defect of an explicit float metric, checked for validity first.
pub fn skt_residual(
    algebra: &LieAlgebra,
    j: &ComplexStructure,
    g: &[Vec<f64>],
) -> Result<f64, SearchError> {
    let n = algebra.dim();
    if g.len() != n || g.iter().any(|row| row.len() != n) {
        return Err(SearchError::InvalidMetric(format!("metric must be {n}x{n}")));
    }
    let scale = g
        .iter()
        .flatten()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(1.0);
    for r in 0..n {
        for c in 0..n {
            if (g[r][c] - g[c][r]).abs() > 1e-9 * scale {
                return Err(SearchError::InvalidMetric(format!(
                    "not symmetric at ({r},{c})"
                )));
            }
        }
    }
    if cholesky(g).is_none() {
        return Err(SearchError::InvalidMetric(
            "not positive definite".to_string(),
        ));
    }
    let problem = SearchProblem::new(algebra, j)?;
    let defect = compat_defect(&problem.j_float, g);
    if defect > 1e-8 * scale {
        return Err(SearchError::InvalidMetric(format!(
            "not J-compatible: max defect {defect:e}"
        )));
    }
    Ok(problem.residual_of_metric(g))
}

fn compat_defect(j_float: &[Vec<f64>], g: &[Vec<f64>]) -> f64 {
    let n = g.len();
    let mut max_defect = 0.0f64;
    for r in 0..n {
        for c in 0..n {
            let mut jtgj = 0.0;
            for (a, ja) in j_float.iter().enumerate() {
                for (b, jb) in j_float.iter().enumerate() {
                    jtgj += ja[r] * g[a][b] * jb[c];
                }
            }
            max_defect = max_defect.max((jtgj - g[r][c]).abs());
        }
    }
    max_defect
}

fn cholesky(g: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = g.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = g[i][j];
            for k in 0..j {
                sum -= l[i][k] * l[j][k];
            }
            if i == j {
                if sum <= 0.0 {
                    return None;
                }
                l[i][j] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    Some(l)
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; u1 kept away from zero.
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn run_single_start(
    problem: &SearchProblem,
    config: &SearchConfig,
    start_index: usize,
) -> (StartRecord, Vec<f64>) {
    let seed = config.rng_seed.wrapping_add(start_index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut params: Vec<f64> = problem
        .identity_coords
        .iter()
        .map(|c| c + config.perturbation * standard_normal(&mut rng))
        .collect();

    let (mut value, mut grad) = problem.objective_with_grad(&params);
    let mut alpha = 1e-2;
    let mut history: Option<(Vec<f64>, Vec<f64>)> = None;
    let mut iterations = 0;
    for _ in 0..config.max_iters {
        if value < config.tol {
            break;
        }
        let gnorm2: f64 = grad.iter().map(|g| g * g).sum();
        if gnorm2 < 1e-32 {
            break;
        }
        // Barzilai-Borwein step length when history is available.
        if let Some((s, y)) = &history {
            let sy: f64 = s.iter().zip(y).map(|(a, b)| a * b).sum();
            let ss: f64 = s.iter().map(|a| a * a).sum();
            alpha = if sy > 1e-300 {
                (ss / sy).clamp(1e-12, 1e4)
            } else {
                (alpha * 2.0).min(1.0)
            };
        }
        // Armijo backtracking keeps the step a strict descent; a failed
        // line search ends the start (flat region).
        let mut step = alpha;
        let mut accepted = None;
        for _ in 0..60 {
            let candidate: Vec<f64> = params
                .iter()
                .zip(&grad)
                .map(|(p, g)| p - step * g)
                .collect();
            let cand_value = problem.objective(&candidate);
            if cand_value <= value - 1e-4 * step * gnorm2 {
                accepted = Some(candidate);
                break;
            }
            step *= 0.5;
        }
        let Some(new_params) = accepted else {
            break;
        };
        let (new_value, new_grad) = problem.objective_with_grad(&new_params);
        let s: Vec<f64> = new_params
            .iter()
            .zip(&params)
            .map(|(a, b)| a - b)
            .collect();
        let y: Vec<f64> = new_grad.iter().zip(&grad).map(|(a, b)| a - b).collect();
        history = Some((s, y));
        params = new_params;
        value = new_value;
        grad = new_grad;
        iterations += 1;
    }
    (
        StartRecord {
            seed,
            residual: problem.normalized_residual(&params),
            iterations,
        },
        params,
    )
}

fn thread_cap(starts: usize) -> usize {
    let env_cap = std::env::var("SKT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1);
    let hw = std::thread::available_parallelism()
        .map(std::num::NonZeroUsize::get)
        .unwrap_or(1);
    env_cap.unwrap_or(hw).min(starts.max(1))
}

/// Multi-start descent over J-compatible metrics. Deterministic for a
/// fixed config: per-start work is independent of scheduling, each start
/// owns its RNG stream, and the merge sorts by (residual, seed).
pub fn search_metric(
    algebra: &LieAlgebra,
    j: &ComplexStructure,
    config: &SearchConfig,
) -> Result<SearchResult, SearchError> {
    if config.starts == 0 {
        return Err(SearchError::BadConfig("starts must be >= 1".to_string()));
    }
    if config.tol <= 0.0 {
        return Err(SearchError::BadConfig("tol must be positive".to_string()));
    }
    let problem = SearchProblem::new(algebra, j)?;

    let threads = thread_cap(config.starts);
    let mut outcomes: Vec<Option<(StartRecord, Vec<f64>)>> = vec![None; config.starts];
    if threads <= 1 {
        for (i, slot) in outcomes.iter_mut().enumerate() {
            *slot = Some(run_single_start(&problem, config, i));
        }
    } else {
        let chunks: Vec<Vec<usize>> = (0..threads)
            .map(|t| (t..config.starts).step_by(threads).collect())
            .collect();
        let results: Vec<Vec<(usize, (StartRecord, Vec<f64>))>> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|chunk| {
                    let problem = &problem;
                    scope.spawn(move || {
                        chunk
                            .iter()
                            .map(|&i| (i, run_single_start(problem, config, i)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for chunk in results {
            for (i, outcome) in chunk {
                outcomes[i] = Some(outcome);
            }
        }
    }
    let outcomes: Vec<(StartRecord, Vec<f64>)> =
        outcomes.into_iter().map(Option::unwrap).collect();

    let best_index = (0..outcomes.len())
        .min_by(|&a, &b| {
            let ra = &outcomes[a].0;
            let rb = &outcomes[b].0;
            ra.residual
                .total_cmp(&rb.residual)
                .then(ra.seed.cmp(&rb.seed))
        })
        .expect("at least one start");
    let (best_record, best_params) = &outcomes[best_index];
    let best_metric = problem.normalized_metric(best_params);
    let best_residual = best_record.residual;
    let converged = best_residual < config.tol;

    let metric_positive_definite = cholesky(&best_metric).is_some();
    let metric_compat_error = compat_defect(&problem.j_float, &best_metric);

    let mut per_start: Vec<StartRecord> = outcomes.iter().map(|(r, _)| r.clone()).collect();
    per_start.sort_by(|a, b| a.residual.total_cmp(&b.residual).then(a.seed.cmp(&b.seed)));

    // Exact recheck when a convergence would contradict the step bound.
    let step_three_plus = match algebra.nilpotency() {
        Nilpotency::Step(k) => k >= 3,
        Nilpotency::NotNilpotent => true,
    };
    let falsification = if converged && step_three_plus {
        exact_recheck(algebra, j, &problem, best_params)
    } else {
        None
    };

    Ok(SearchResult {
        best_metric,
        best_residual,
        converged,
        per_start,
        metric_positive_definite,
        metric_compat_error,
        falsification,
    })
}

/// Rationalizes the candidate `S`, projects it exactly onto the
/// commutant, and runs the exact verdict. Returns a falsification
/// message only on an exact SKT confirmation.
fn exact_recheck(
    algebra: &LieAlgebra,
    j: &ComplexStructure,
    problem: &SearchProblem,
    params: &[f64],
) -> Option<String> {
    let n = problem.dim;
    let s_float = problem.s_matrix(params);
    let mut s_rat = RatMatrix::zeros(n, n);
    for (r, row) in s_float.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            s_rat.set(r, c, Rational::from_float(*v)?);
        }
    }
    let jm = j.matrix();
    let s_rat = s_rat.sub(&jm.mul(&s_rat).mul(jm)).scale(&rat(1, 2));
    if s_rat.rank() != n {
        return None;
    }
    let g0 = RatMatrix::identity(n)
        .add(&jm.transpose().mul(jm))
        .scale(&rat(1, 2));
    let g_rat = s_rat.transpose().mul(&g0).mul(&s_rat);
    let metric = Metric::new(g_rat).ok()?;
    let triple = HermitianTriple::new(algebra.clone(), j.clone(), metric).ok()?;
    let verdict = bismut::is_skt(&triple).ok()?;
    verdict.is_skt.then(|| {
        format!(
            "exact SKT certificate confirmed on a {:?} algebra — this contradicts the step bound",
            algebra.nilpotency()
        )
    })
}
