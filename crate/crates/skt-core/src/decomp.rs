//! Codimension-2 analysis: splitting an algebra along a J-invariant plane
//! into `(A, B, X, n)` data, restricting Hermitian structures to ideals,
//! the v ⊕ z splitting of a 2-step algebra, and the structural checks that
//! accompany an SKT verdict on such data.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::bismut;
use crate::exactnum::{RatMatrix, Rational, Subspace};
use crate::hermitian::{ComplexStructure, HermitianError, HermitianTriple, Metric};
use crate::liealg::{LieAlgebra, LieError, Nilpotency};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("complement index {0} out of range")]
    BadComplementIndex(usize),
    #[error("complement pair must be two distinct indices")]
    DegenerateComplement,
    #[error("complement plane span{{e{a}, e{b}}} is not J-invariant")]
    ComplementNotJInvariant { a: usize, b: usize },
    #[error(
        "complement pair (e{a}, e{b}) is not metric-orthogonal to the remaining \
         basis vectors, so the complementary ideal is not spanned by basis vectors"
    )]
    ComplementNotOrthogonal { a: usize, b: usize },
    #[error("[e{a}, e{b}] has a component along the complement plane")]
    BracketLeavesIdeal { a: usize, b: usize },
    #[error("the complementary subspace is not an ideal (bracket ({i},{j}) escapes)")]
    NotAnIdeal { i: usize, j: usize },
    #[error("subspace is not an ideal")]
    SubspaceNotIdeal,
    #[error("subspace is not J-invariant")]
    SubspaceNotJInvariant,
    #[error("extracted A/B are not derivations of n at pair ({i},{j}); ambient Jacobi must have failed")]
    NotDerivation { i: usize, j: usize },
    #[error("restricted data fails validation: {0}")]
    RestrictionInvalid(#[from] HermitianError),
    #[error("restricted bracket table invalid: {0}")]
    RestrictionBracket(#[from] LieError),
}

/// Data determining an algebra relative to a codimension-2 splitting:
/// the ideal `n` with its own bracket, the projected adjoints
/// `A = ad(e_a)|_n`, `B = ad(e_b)|_n`, and `X = [e_a, e_b]` (which lies in
/// `n`). `embedding[l]` is the 1-based ambient index of the l-th basis
/// vector of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codim2Data {
    pub n: LieAlgebra,
    pub a_mat: RatMatrix,
    pub b_mat: RatMatrix,
    pub x_vec: Vec<Rational>,
    pub embedding: Vec<usize>,
    pub complement: (usize, usize),
}

/// v ⊕ z splitting of an at-most-2-step algebra: `z` is the center,
/// `v` its metric-orthogonal complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VZSplit {
    pub v: Subspace,
    pub z: Subspace,
}

/// True iff every stored coefficient `c^k_{ij}` has `i < k` and `j < k`,
/// i.e. each differential `d e^k` only involves `e^{ij}` with smaller
/// indices. All catalog tables are printed in such a basis.
pub fn is_adapted_triangular(algebra: &LieAlgebra) -> bool {
    algebra
        .bracket_pairs()
        .all(|(&(i, j), targets)| targets.iter().all(|(k, _)| i < *k && j < *k))
}

/// Splits a validated triple along the plane `span{e_a, e_b}`.
///
/// Preconditions checked: the plane is J-invariant, metric-orthogonal to
/// the remaining basis vectors (so `n` is spanned by them), `n` is an
/// ideal, and `[e_a, e_b]` lies in `n`. The extracted `A`, `B` are
/// verified to be derivations of `n`.
pub fn split_codim2(
    triple: &HermitianTriple,
    complement: (usize, usize),
) -> Result<Codim2Data, DecompError> {
    let (a, b) = complement;
    let dim = triple.dim();
    for idx in [a, b] {
        if idx == 0 || idx > dim {
            return Err(DecompError::BadComplementIndex(idx));
        }
    }
    if a == b {
        return Err(DecompError::DegenerateComplement);
    }

    // J-invariance of the plane: columns a and b of J supported in {a,b}.
    let j = triple.j();
    for col in [a, b] {
        if j
            .apply_basis(col)
            .iter()
            .any(|(row, _)| *row != a && *row != b)
        {
            return Err(DecompError::ComplementNotJInvariant { a, b });
        }
    }

    // Orthogonality of the plane to every other basis vector.
    let g = triple.metric().matrix();
    let embedding: Vec<usize> = (1..=dim).filter(|&i| i != a && i != b).collect();
    for &i in &embedding {
        if !g.get(a - 1, i - 1).is_zero() || !g.get(b - 1, i - 1).is_zero() {
            return Err(DecompError::ComplementNotOrthogonal { a, b });
        }
    }

    let local = |ambient: usize| embedding.iter().position(|&e| e == ambient);
    let m = dim - 2;
    let algebra = triple.algebra();

    // n must absorb brackets: anything bracketed with an n-vector stays in n.
    for (&(i, j), targets) in algebra.bracket_pairs() {
        let touches_n = local(i).is_some() || local(j).is_some();
        if touches_n && targets.iter().any(|(k, _)| *k == a || *k == b) {
            return Err(DecompError::NotAnIdeal { i, j });
        }
    }
    // [e_a, e_b] itself has to land inside n for the data to be lossless.
    if algebra
        .bracket_basis(a, b)
        .iter()
        .any(|(k, _)| *k == a || *k == b)
    {
        return Err(DecompError::BracketLeavesIdeal { a, b });
    }

    // Restricted bracket table of n, in local indices.
    let mut n_brackets = Vec::new();
    for (&(i, j), targets) in algebra.bracket_pairs() {
        let (Some(li), Some(lj)) = (local(i), local(j)) else {
            continue;
        };
        let local_targets: Vec<(usize, Rational)> = targets
            .iter()
            .map(|(k, c)| (local(*k).expect("ideal check passed") + 1, c.clone()))
            .collect();
        n_brackets.push(((li + 1, lj + 1), local_targets));
    }
    let n = LieAlgebra::new(m, n_brackets)?;

    let adjoint_on_n = |source: usize| {
        let mut mat = RatMatrix::zeros(m, m);
        for (lj, &ambient_j) in embedding.iter().enumerate() {
            for (k, c) in algebra.bracket_basis(source, ambient_j) {
                let lk = local(k).expect("ideal check passed");
                mat.set(lk, lj, c);
            }
        }
        mat
    };
    let a_mat = adjoint_on_n(a);
    let b_mat = adjoint_on_n(b);

    let mut x_vec = vec![Rational::zero(); m];
    for (k, c) in algebra.bracket_basis(a, b) {
        x_vec[local(k).expect("checked above")] = c;
    }

    let data = Codim2Data {
        n,
        a_mat,
        b_mat,
        x_vec,
        embedding,
        complement: (a, b),
    };
    if let Some((i, j)) = first_derivation_failure(&data.n, &data.a_mat)
        .or_else(|| first_derivation_failure(&data.n, &data.b_mat))
    {
        return Err(DecompError::NotDerivation { i, j });
    }
    Ok(data)
}

fn first_derivation_failure(n: &LieAlgebra, d: &RatMatrix) -> Option<(usize, usize)> {
    let m = n.dim();
    let basis = |i: usize| {
        let mut v = vec![Rational::zero(); m];
        v[i - 1] = Rational::one();
        v
    };
    for i in 1..=m {
        for j in i + 1..=m {
            let lhs = {
                let mut bracket = vec![Rational::zero(); m];
                for (k, c) in n.bracket_basis(i, j) {
                    bracket[k - 1] = c;
                }
                d.mul_vec(&bracket)
            };
            let di = d.mul_vec(&basis(i));
            let dj = d.mul_vec(&basis(j));
            let rhs: Vec<Rational> = n
                .bracket(&di, &basis(j))
                .unwrap()
                .iter()
                .zip(&n.bracket(&basis(i), &dj).unwrap())
                .map(|(x, y)| x + y)
                .collect();
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

/// Rebuilds the ambient algebra from codimension-2 data. Inverse of
/// [`split_codim2`] on its success domain.
pub fn reassemble(data: &Codim2Data) -> Result<LieAlgebra, LieError> {
    let m = data.n.dim();
    let dim = m + 2;
    let (a, b) = data.complement;
    let amb = |local: usize| data.embedding[local - 1];
    let mut brackets: Vec<((usize, usize), Vec<(usize, Rational)>)> = Vec::new();
    for (&(i, j), targets) in data.n.bracket_pairs() {
        brackets.push((
            (amb(i), amb(j)),
            targets.iter().map(|(k, c)| (amb(*k), c.clone())).collect(),
        ));
    }
    let mut push_adjoint = |source: usize, mat: &RatMatrix| {
        for lj in 1..=m {
            let targets: Vec<(usize, Rational)> = (1..=m)
                .filter(|&lk| !mat.get(lk - 1, lj - 1).is_zero())
                .map(|lk| (amb(lk), mat.get(lk - 1, lj - 1).clone()))
                .collect();
            if targets.is_empty() {
                continue;
            }
            let other = amb(lj);
            if source < other {
                brackets.push(((source, other), targets));
            } else {
                brackets.push((
                    (other, source),
                    targets.into_iter().map(|(k, c)| (k, -c)).collect(),
                ));
            }
        }
    };
    push_adjoint(a, &data.a_mat);
    push_adjoint(b, &data.b_mat);
    let x_targets: Vec<(usize, Rational)> = data
        .x_vec
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(l, c)| (amb(l + 1), c.clone()))
        .collect();
    if !x_targets.is_empty() {
        if a < b {
            brackets.push(((a, b), x_targets));
        } else {
            brackets.push(((b, a), x_targets.into_iter().map(|(k, c)| (k, -c)).collect()));
        }
    }
    LieAlgebra::new(dim, brackets)
}

/// Restricts a validated triple to a J-invariant ideal, re-validating the
/// result. The subspace basis (reduced echelon rows) becomes the basis of
/// the restricted algebra.
pub fn restrict_to_ideal(
    triple: &HermitianTriple,
    n: &Subspace,
) -> Result<HermitianTriple, DecompError> {
    let algebra = triple.algebra();
    if !algebra.is_ideal(n).map_err(|_| DecompError::SubspaceNotIdeal)? {
        return Err(DecompError::SubspaceNotIdeal);
    }
    let rows = n.basis_rows();
    for row in &rows {
        if !n.contains(&triple.j().apply(row)) {
            return Err(DecompError::SubspaceNotJInvariant);
        }
    }
    let m = n.dim();
    let mut brackets = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            let w = algebra.bracket(&rows[i - 1], &rows[j - 1]).unwrap();
            let coords = n.coordinates_of(&w).expect("ideal bracket stays inside");
            let targets: Vec<(usize, Rational)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k + 1, c))
                .collect();
            if !targets.is_empty() {
                brackets.push(((i, j), targets));
            }
        }
    }
    let restricted_algebra = LieAlgebra::new(m, brackets)?;

    let mut j_mat = RatMatrix::zeros(m, m);
    for (col, row_vec) in rows.iter().enumerate() {
        let image = triple.j().apply(row_vec);
        let coords = n.coordinates_of(&image).expect("J-invariance checked");
        for (r, c) in coords.into_iter().enumerate() {
            if !c.is_zero() {
                j_mat.set(r, col, c);
            }
        }
    }
    let restricted_j = ComplexStructure::new(j_mat)?;

    let mut g_mat = RatMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            g_mat.set(i, j, triple.metric().inner(&rows[i], &rows[j]));
        }
    }
    let restricted_g = Metric::new(g_mat)?;

    Ok(HermitianTriple::new(
        restricted_algebra,
        restricted_j,
        restricted_g,
    )?)
}

/// Center and its metric-orthogonal complement.
pub fn vz_split(triple: &HermitianTriple) -> VZSplit {
    let z = triple.algebra().center();
    let v = z
        .orth_complement(triple.metric().matrix())
        .expect("metric dimension matches");
    VZSplit { v, z }
}

/// One structural check with its outcome plus context when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureCheck {
    pub name: &'static str,
    pub passed: bool,
    pub details: Option<String>,
}

/// Outcome of the codimension-2 structural checks for an SKT triple:
/// the J/A/B commutation relation, the vanishing of A and B on both the
/// center and its complement, and `X` lying in the center. Failures are
/// falsifications of expected structure theory and carry full context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codim2Report {
    pub checks: Vec<StructureCheck>,
}

impl Codim2Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn falsifications(&self) -> Vec<&StructureCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Runs the structural checks for codimension-2 data extracted from an
/// SKT triple whose ideal is at most 2-step. The caller is responsible
/// for having verified the SKT hypothesis (these identities are theorems
/// under it, so a failure means a bug or a falsification — both worth a
/// loud report).
pub fn codim2_checks(data: &Codim2Data, triple: &HermitianTriple) -> Codim2Report {
    let m = data.n.dim();
    let mut checks = Vec::new();

    // Restriction of J to n, in local coordinates, plus the scale lambda
    // with J e_a = lambda e_b.
    let (a, b) = data.complement;
    let mut j_n = RatMatrix::zeros(m, m);
    for (lj, &ambient_j) in data.embedding.iter().enumerate() {
        for (row, coeff) in triple.j().apply_basis(ambient_j) {
            if let Some(lr) = data.embedding.iter().position(|&e| e == row) {
                j_n.set(lr, lj, coeff);
            }
        }
    }
    let lambda = triple
        .j()
        .apply_basis(a)
        .into_iter()
        .find(|(row, _)| *row == b)
        .map(|(_, c)| c)
        .unwrap_or_else(Rational::zero);

    // [J, A] = lambda * J [B, J] on n, which encodes integrability against
    // the complement direction.
    {
        let lhs = j_n.mul(&data.a_mat).sub(&data.a_mat.mul(&j_n));
        let bj = data.b_mat.mul(&j_n).sub(&j_n.mul(&data.b_mat));
        let rhs = j_n.mul(&bj).scale(&lambda);
        checks.push(StructureCheck {
            name: "complement_integrability_relation",
            passed: lhs == rhs,
            details: (lhs != rhs).then(|| {
                format!(
                    "[J,A] != {}*J[B,J] on the ideal; A={:?} B={:?}",
                    lambda, data.a_mat, data.b_mat
                )
            }),
        });
    }

    // v/z splitting of n under the restricted metric.
    let z = data.n.center();
    let mut g_n = RatMatrix::zeros(m, m);
    for (li, &ai) in data.embedding.iter().enumerate() {
        for (lj, &aj) in data.embedding.iter().enumerate() {
            g_n.set(li, lj, triple.metric().matrix().get(ai - 1, aj - 1).clone());
        }
    }
    let v = z.orth_complement(&g_n).expect("dimensions agree");
    let proj_z = z.orthogonal_projection(&g_n);
    let proj_v = v.orthogonal_projection(&g_n);

    let block_vanishes = |mat: &RatMatrix, space: &Subspace, proj: &RatMatrix| {
        space
            .basis_rows()
            .iter()
            .all(|u| proj.mul_vec(&mat.mul_vec(u)).iter().all(Zero::is_zero))
    };

    for (name, mat) in [("adjoint_a", &data.a_mat), ("adjoint_b", &data.b_mat)] {
        let on_z = block_vanishes(mat, &z, &proj_z);
        checks.push(StructureCheck {
            name: match name {
                "adjoint_a" => "a_vanishes_on_center",
                _ => "b_vanishes_on_center",
            },
            passed: on_z,
            details: (!on_z).then(|| format!("{name} has a nonzero center block: {mat:?}")),
        });
        let on_v = block_vanishes(mat, &v, &proj_v);
        checks.push(StructureCheck {
            name: match name {
                "adjoint_a" => "a_vanishes_on_complement",
                _ => "b_vanishes_on_complement",
            },
            passed: on_v,
            details: (!on_v).then(|| format!("{name} has a nonzero v block: {mat:?}")),
        });
    }

    let x_in_z = z.contains(&data.x_vec);
    checks.push(StructureCheck {
        name: "x_lies_in_center",
        passed: x_in_z,
        details: (!x_in_z).then(|| format!("X = {:?} is outside the center", data.x_vec)),
    });

    Codim2Report { checks }
}

/// Convenience: is the triple at most 2-step (torus included)?
pub fn at_most_two_step(triple: &HermitianTriple) -> bool {
    matches!(triple.algebra().nilpotency(), Nilpotency::Step(k) if k <= 2)
}

/// Restriction through every coordinate-plane complement whose plane is
/// J-invariant and whose complementary ideal exists; used by the law
/// harness. Returns the list of complements that admit a split.
pub fn available_coordinate_splits(triple: &HermitianTriple) -> Vec<(usize, usize)> {
    let dim = triple.dim();
    let mut found = Vec::new();
    for a in 1..=dim {
        for b in a + 1..=dim {
            if split_codim2(triple, (a, b)).is_ok() {
                found.push((a, b));
            }
        }
    }
    found
}

/// The restricted triple for a coordinate complement, built through
/// [`restrict_to_ideal`] so both paths stay consistent.
pub fn restrict_by_complement(
    triple: &HermitianTriple,
    complement: (usize, usize),
) -> Result<HermitianTriple, DecompError> {
    let data = split_codim2(triple, complement)?;
    let mut rows = Vec::new();
    for &ambient in &data.embedding {
        let mut v = vec![Rational::zero(); triple.dim()];
        v[ambient - 1] = Rational::one();
        rows.push(v);
    }
    let n = Subspace::from_rows(triple.dim(), rows);
    restrict_to_ideal(triple, &n)
}

/// SKT status of every available codimension-2 restriction; the
/// structural expectation is that restrictions of SKT triples are SKT.
pub fn restrictions_are_skt(triple: &HermitianTriple) -> Result<bool, DecompError> {
    for complement in available_coordinate_splits(triple) {
        let restricted = restrict_by_complement(triple, complement)?;
        let verdict = bismut::is_skt(&restricted).expect("routes agree");
        if !verdict.is_skt {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_int;
    use crate::liealg::algebra;

    fn n4_triple() -> HermitianTriple {
        HermitianTriple::new(
            algebra(4, &[(1, 2, &[(3, 1, 1)])]),
            ComplexStructure::from_pairs(4, &[(1, 2), (3, 4)]).unwrap(),
            Metric::identity(4),
        )
        .unwrap()
    }

    fn n6_triple() -> HermitianTriple {
        HermitianTriple::new(
            algebra(
                6,
                &[
                    (1, 2, &[(5, 1, 1)]),
                    (1, 4, &[(5, -1, 1)]),
                    (2, 3, &[(5, 1, 1)]),
                    (3, 4, &[(5, 1, 1)]),
                ],
            ),
            ComplexStructure::from_pairs(6, &[(1, 2), (3, 4), (5, 6)]).unwrap(),
            Metric::identity(6),
        )
        .unwrap()
    }

    #[test]
    fn triangularity_check() {
        assert!(is_adapted_triangular(&LieAlgebra::abelian(4)));
        assert!(is_adapted_triangular(n4_triple().algebra()));
        assert!(is_adapted_triangular(n6_triple().algebra()));
        // Reordered basis (e3, e1, e2, e4): the bracket target now has a
        // smaller index than the inputs.
        let reordered = algebra(4, &[(2, 3, &[(1, 1, 1)])]);
        assert!(!is_adapted_triangular(&reordered));
    }

    #[test]
    fn split_of_dim4_at_first_pair() {
        let t = n4_triple();
        let d = split_codim2(&t, (1, 2)).unwrap();
        assert_eq!(d.embedding, vec![3, 4]);
        assert!(d.a_mat.is_zero());
        assert!(d.b_mat.is_zero());
        assert_eq!(d.x_vec, vec![rat_int(1), rat_int(0)]);
        assert!(d.n.bracket_pairs().next().is_none());
        let rebuilt = reassemble(&d).unwrap();
        assert_eq!(&rebuilt, t.algebra());
    }

    #[test]
    fn split_with_nonzero_adjoints_reconstructs() {
        // The 6-dimensional algebra split along its first pair has
        // nonzero A and B.
        let t = n6_triple();
        let d = split_codim2(&t, (1, 2)).unwrap();
        assert_eq!(d.embedding, vec![3, 4, 5, 6]);
        assert!(!d.a_mat.is_zero());
        assert!(!d.b_mat.is_zero());
        assert_eq!(reassemble(&d).unwrap(), t.algebra().clone());
    }

    #[test]
    fn split_rejects_non_invariant_plane() {
        let t = n4_triple();
        assert_eq!(
            split_codim2(&t, (1, 3)),
            Err(DecompError::ComplementNotJInvariant { a: 1, b: 3 })
        );
    }

    #[test]
    fn split_rejects_complement_hit_by_brackets() {
        // [e3,e4] = e1 escapes span{e2,...}: plane (1,2) complement is not
        // an ideal.
        let l = algebra(4, &[(3, 4, &[(1, 1, 1)])]);
        let t = HermitianTriple::new(
            l,
            ComplexStructure::from_pairs(4, &[(1, 2), (3, 4)]).unwrap(),
            Metric::identity(4),
        )
        .unwrap();
        assert_eq!(
            split_codim2(&t, (1, 2)),
            Err(DecompError::NotAnIdeal { i: 3, j: 4 })
        );
    }

    #[test]
    fn restrict_to_center_pair_of_dim6() {
        let t = n6_triple();
        // span{f1..f4} is not an ideal (brackets land on f5); the ideal
        // complement of the (1,2) plane is span{f3..f6}.
        let n = Subspace::from_rows(
            6,
            (3..=6)
                .map(|i| {
                    let mut v = vec![rat_int(0); 6];
                    v[i - 1] = rat_int(1);
                    v
                })
                .collect(),
        );
        let restricted = restrict_to_ideal(&t, &n).unwrap();
        assert_eq!(restricted.dim(), 4);
        // [f3, f4] = f5 survives as the only bracket.
        let pairs: Vec<_> = restricted.algebra().bracket_pairs().collect();
        assert_eq!(pairs.len(), 1);
        assert_eq!(*pairs[0].0, (1, 2));
    }

    #[test]
    fn restrict_rejects_non_ideal() {
        let t = n4_triple();
        let plane = Subspace::from_rows(4, vec![vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0)], vec![rat_int(0), rat_int(1), rat_int(0), rat_int(0)]]);
        assert_eq!(
            restrict_to_ideal(&t, &plane),
            Err(DecompError::SubspaceNotIdeal)
        );
    }

    #[test]
    fn vz_split_of_catalog_triples() {
        // The 6-dimensional algebra has the 4-dimensional center
        // span{f1+f3, f2+f4, f5, f6}; its complement is span{f1-f3, f2-f4}.
        let t = n6_triple();
        let split = vz_split(&t);
        assert_eq!(split.z.dim(), 4);
        assert_eq!(split.v.dim(), 2);
        assert!(split.z.contains(&{
            let mut v = vec![rat_int(0); 6];
            v[4] = rat_int(1);
            v
        }));
        assert!(split.v.contains(&{
            let mut v = vec![rat_int(0); 6];
            v[0] = rat_int(1);
            v[2] = rat_int(-1);
            v
        }));

        let abelian = HermitianTriple::new(
            LieAlgebra::abelian(4),
            ComplexStructure::from_pairs(4, &[(1, 2), (3, 4)]).unwrap(),
            Metric::identity(4),
        )
        .unwrap();
        let split = vz_split(&abelian);
        assert_eq!(split.z, Subspace::full(4));
        assert!(split.v.is_zero());
    }

    #[test]
    fn codim2_checks_pass_on_catalog_split() {
        let t = n4_triple();
        let d = split_codim2(&t, (1, 2)).unwrap();
        let report = codim2_checks(&d, &t);
        assert!(report.all_passed(), "{:?}", report.falsifications());
    }

    #[test]
    fn coordinate_splits_enumerate_j_invariant_planes() {
        let t = n6_triple();
        let splits = available_coordinate_splits(&t);
        // (1,2) and (3,4) planes split; (5,6) hits [f_i, f_j] = f5 targets.
        assert!(splits.contains(&(1, 2)));
        assert!(splits.contains(&(3, 4)));
        assert!(!splits.contains(&(5, 6)));
    }
}
