//! Torsion 3-form of the Bismut connection, its exterior derivative by two
//! independent routes, and the SKT verdict `dc = 0`.
//!
//! Route one computes the 3-form
//!
//! `c(U,Y,Z) = -<[JU,JY],Z> - <[JY,JZ],U> - <[JZ,JU],Y>`
//!
//! on basis triples and then applies the Chevalley–Eilenberg differential.
//! Route two evaluates the fully expanded 18-term derivative directly on
//! basis 4-tuples. The two are identical as multilinear algebra, so any
//! disagreement is a coding defect and is reported as a fatal internal
//! error rather than a verdict.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::Rational;
use crate::forms::AlternatingForm;
pub use crate::forms::theta_action;
use crate::hermitian::{ComplexStructure, HermitianTriple, Metric};
use crate::liealg::LieAlgebra;

/// Sparse coordinate vector as `(1-based index, coefficient)` pairs.
type Sparse = Vec<(usize, Rational)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BismutError {
    #[error(
        "internal inconsistency: the two dc routes disagree on tuple {tuple:?} \
         (direct {direct}, via differential {via_differential}); this is a bug, not a data condition"
    )]
    RouteDisagreement {
        tuple: Vec<usize>,
        direct: Rational,
        via_differential: Rational,
    },
    #[error("form dimension {form_dim} does not match algebra dimension {algebra_dim}")]
    DimensionMismatch { form_dim: usize, algebra_dim: usize },
}

/// SKT verdict with both the torsion form and its derivative attached.
/// `is_skt` holds exactly when `dc` has no nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SktVerdict {
    pub is_skt: bool,
    pub c: AlternatingForm,
    pub dc: AlternatingForm,
    pub failing_tuples: Vec<(Vec<usize>, Rational)>,
}

pub(crate) fn sparse_bracket(algebra: &LieAlgebra, u: &Sparse, v: &Sparse) -> Sparse {
    let mut dense: Vec<Rational> = vec![Rational::zero(); algebra.dim()];
    for (a, ca) in u {
        for (b, cb) in v {
            let scale = ca * cb;
            if scale.is_zero() {
                continue;
            }
            for (k, c) in algebra.bracket_basis(*a, *b) {
                dense[k - 1] = &dense[k - 1] + &scale * &c;
            }
        }
    }
    dense
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i + 1, c))
        .collect()
}

pub(crate) fn j_sparse(j: &ComplexStructure, v: &Sparse) -> Sparse {
    let mut dense: Vec<Rational> = vec![Rational::zero(); j.dim()];
    for (a, ca) in v {
        for (k, c) in j.apply_basis(*a) {
            dense[k - 1] = &dense[k - 1] + ca * &c;
        }
    }
    dense
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i + 1, c))
        .collect()
}

fn inner_sparse(g: &Metric, u: &Sparse, v: &Sparse) -> Rational {
    let mut total = Rational::zero();
    for (a, ca) in u {
        for (b, cb) in v {
            let entry = g.matrix().get(*a - 1, *b - 1);
            if !entry.is_zero() {
                total += ca * cb * entry;
            }
        }
    }
    total
}

fn unit(i: usize) -> Sparse {
    vec![(i, Rational::one())]
}

/// Torsion 3-form from raw parts. The triple-level wrapper
/// [`torsion_three_form`] enforces validity; this entry point exists so
/// that negative controls (for example deliberately non-integrable data)
/// can still be evaluated — the formula itself needs none of the axioms.
pub fn torsion_three_form_raw(
    algebra: &LieAlgebra,
    j: &ComplexStructure,
    g: &Metric,
) -> AlternatingForm {
    let n = algebra.dim();
    let j_cols: Vec<Sparse> = (1..=n).map(|i| j.apply_basis(i)).collect();
    let mut c = AlternatingForm::zero(n, 3);
    for a in 1..=n {
        for b in a + 1..=n {
            let jab = sparse_bracket(algebra, &j_cols[a - 1], &j_cols[b - 1]);
            if jab.is_empty() {
                continue;
            }
            // -<[Je_a, Je_b], e_k> contributes to c(e_a, e_b, e_k) for
            // every k; together with the cyclic images this covers all
            // three terms of the defining formula.
            for k in 1..=n {
                if k == a || k == b {
                    continue;
                }
                let value = -inner_sparse(g, &jab, &unit(k));
                c.add_term(&[a, b, k], value);
            }
        }
    }
    c
}

/// Torsion 3-form `c` of a validated Hermitian triple.
pub fn torsion_three_form(triple: &HermitianTriple) -> AlternatingForm {
    torsion_three_form_raw(triple.algebra(), triple.j(), triple.metric())
}

/// Chevalley–Eilenberg differential, with the convention
/// `d a(x, y) = -a([x, y])` on 1-forms, extended by
/// `d φ(x_0,…,x_k) = Σ_{i<j} (-1)^{i+j} φ([x_i,x_j], x_0,…,x̂_i,…,x̂_j,…,x_k)`.
pub fn ce_differential(
    algebra: &LieAlgebra,
    form: &AlternatingForm,
) -> Result<AlternatingForm, BismutError> {
    if form.dim() != algebra.dim() {
        return Err(BismutError::DimensionMismatch {
            form_dim: form.dim(),
            algebra_dim: algebra.dim(),
        });
    }
    let n = algebra.dim();
    let k = form.degree();
    let mut out = AlternatingForm::zero(n, k + 1);
    for tuple in increasing_tuples(n, k + 1) {
        let mut value = Rational::zero();
        for i in 0..tuple.len() {
            for j in i + 1..tuple.len() {
                let bracket = algebra.bracket_basis(tuple[i], tuple[j]);
                if bracket.is_empty() {
                    continue;
                }
                let rest: Vec<usize> = tuple
                    .iter()
                    .enumerate()
                    .filter(|(pos, _)| *pos != i && *pos != j)
                    .map(|(_, &idx)| idx)
                    .collect();
                let mut inner = Rational::zero();
                let mut args = Vec::with_capacity(k);
                for (m, coeff) in &bracket {
                    args.clear();
                    args.push(*m);
                    args.extend_from_slice(&rest);
                    let phi = form.coefficient(&args);
                    if !phi.is_zero() {
                        inner += coeff * phi;
                    }
                }
                if (i + j) % 2 == 1 {
                    inner = -inner;
                }
                value += inner;
            }
        }
        out.add_term(&tuple, value);
    }
    Ok(out)
}

/// The 18-term expansion of `dc` evaluated verbatim on every increasing
/// basis 4-tuple. Independent of [`ce_differential`] by construction.
pub fn dc_direct_raw(algebra: &LieAlgebra, j: &ComplexStructure, g: &Metric) -> AlternatingForm {
    let n = algebra.dim();
    let j_cols: Vec<Sparse> = (1..=n).map(|i| j.apply_basis(i)).collect();
    let mut dc = AlternatingForm::zero(n, 4);
    for tuple in increasing_tuples(n, 4) {
        let mut value = Rational::zero();
        // Pairs in slot order with signs +,-,+,+,-,+; (r, s) are the two
        // remaining slots in order. Each line below contributes the three
        // terms <[J[p,q],Jr],s> + <[Jr,Js],[p,q]> + <[Js,J[p,q]],r>.
        const PAIRS: [((usize, usize), (usize, usize), i8); 6] = [
            ((0, 1), (2, 3), 1),
            ((0, 2), (1, 3), -1),
            ((0, 3), (1, 2), 1),
            ((1, 2), (0, 3), 1),
            ((1, 3), (0, 2), -1),
            ((2, 3), (0, 1), 1),
        ];
        for ((pi, qi), (ri, si), sign) in PAIRS {
            let (p, q, r, s) = (tuple[pi], tuple[qi], tuple[ri], tuple[si]);
            let pq = algebra.bracket_basis(p, q);
            if pq.is_empty() {
                continue;
            }
            let j_pq = j_sparse(j, &pq);
            let jr = &j_cols[r - 1];
            let js = &j_cols[s - 1];
            let term_a = inner_sparse(g, &sparse_bracket(algebra, &j_pq, jr), &unit(s));
            let term_b = inner_sparse(g, &sparse_bracket(algebra, jr, js), &pq);
            let term_c = inner_sparse(g, &sparse_bracket(algebra, js, &j_pq), &unit(r));
            let line = term_a + term_b + term_c;
            value += if sign < 0 { -line } else { line };
        }
        dc.add_term(&tuple, value);
    }
    dc
}

pub fn dc_direct(triple: &HermitianTriple) -> AlternatingForm {
    dc_direct_raw(triple.algebra(), triple.j(), triple.metric())
}

/// Computes `c` and `dc` by both routes and returns the SKT verdict.
/// A disagreement between the routes aborts with
/// [`BismutError::RouteDisagreement`].
pub fn is_skt(triple: &HermitianTriple) -> Result<SktVerdict, BismutError> {
    is_skt_raw(triple.algebra(), triple.j(), triple.metric())
}

pub fn is_skt_raw(
    algebra: &LieAlgebra,
    j: &ComplexStructure,
    g: &Metric,
) -> Result<SktVerdict, BismutError> {
    let c = torsion_three_form_raw(algebra, j, g);
    let via_differential = ce_differential(algebra, &c)?;
    let direct = dc_direct_raw(algebra, j, g);
    if direct != via_differential {
        let tuple = first_difference(&direct, &via_differential);
        let d = direct.coefficient(&tuple);
        let v = via_differential.coefficient(&tuple);
        return Err(BismutError::RouteDisagreement {
            tuple,
            direct: d,
            via_differential: v,
        });
    }
    let failing_tuples = direct
        .terms()
        .map(|(t, coeff)| (t.to_vec(), coeff.clone()))
        .collect::<Vec<_>>();
    Ok(SktVerdict {
        is_skt: failing_tuples.is_empty(),
        c,
        dc: direct,
        failing_tuples,
    })
}

fn first_difference(a: &AlternatingForm, b: &AlternatingForm) -> Vec<usize> {
    for (t, coeff) in a.terms() {
        if &b.coefficient(t) != coeff {
            return t.to_vec();
        }
    }
    for (t, coeff) in b.terms() {
        if &a.coefficient(t) != coeff {
            return t.to_vec();
        }
    }
    unreachable!("forms differ but no differing tuple found")
}

/// All strictly increasing `k`-tuples from `1..=n`.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut current: Vec<usize> = (1..=k).collect();
    loop {
        out.push(current.clone());
        // Advance the rightmost index that can still grow.
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if current[pos] < n - (k - 1 - pos) {
                current[pos] += 1;
                for p in pos + 1..k {
                    current[p] = current[p - 1] + 1;
                }
                break;
            }
            if pos == 0 {
                return out;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};
    use crate::liealg::algebra;

    fn n4() -> HermitianTriple {
        HermitianTriple::new(
            algebra(4, &[(1, 2, &[(3, 1, 1)])]),
            ComplexStructure::from_pairs(4, &[(1, 2), (3, 4)]).unwrap(),
            Metric::identity(4),
        )
        .unwrap()
    }

    fn n6() -> HermitianTriple {
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

    fn form(dim: usize, degree: usize, terms: &[(&[usize], i64, i64)]) -> AlternatingForm {
        let mut f = AlternatingForm::zero(dim, degree);
        for (t, n, d) in terms {
            f.add_term(t, rat(*n, *d));
        }
        f
    }

    #[test]
    fn increasing_tuples_counts() {
        assert_eq!(increasing_tuples(4, 3).len(), 4);
        assert_eq!(increasing_tuples(8, 3).len(), 56);
        assert_eq!(increasing_tuples(4, 4), vec![vec![1, 2, 3, 4]]);
        assert!(increasing_tuples(3, 4).is_empty());
    }

    #[test]
    fn torsion_of_dim4_algebra() {
        let c = torsion_three_form(&n4());
        assert_eq!(c, form(4, 3, &[(&[1, 2, 3], -1, 1)]));
    }

    #[test]
    fn torsion_of_abelian_is_zero() {
        let t = HermitianTriple::new(
            crate::liealg::LieAlgebra::abelian(4),
            ComplexStructure::from_pairs(4, &[(1, 2), (3, 4)]).unwrap(),
            Metric::identity(4),
        )
        .unwrap();
        assert!(torsion_three_form(&t).is_zero());
    }

    #[test]
    fn torsion_of_dim6_algebra() {
        let c = torsion_three_form(&n6());
        assert_eq!(
            c,
            form(
                6,
                3,
                &[
                    (&[1, 2, 5], -1, 1),
                    (&[1, 4, 5], 1, 1),
                    (&[2, 3, 5], -1, 1),
                    (&[3, 4, 5], -1, 1),
                ]
            )
        );
    }

    #[test]
    fn differential_reproduces_bracket_table() {
        let t = n4();
        let de3 = ce_differential(t.algebra(), &AlternatingForm::dual(4, 3)).unwrap();
        assert_eq!(de3, form(4, 2, &[(&[1, 2], -1, 1)]));
        // e^1 is never a bracket target.
        let de1 = ce_differential(t.algebra(), &AlternatingForm::dual(4, 1)).unwrap();
        assert!(de1.is_zero());
        // d(e^{12}) = de^1 ∧ e^2 - e^1 ∧ de^2 = 0 here.
        let e12 = AlternatingForm::dual(4, 1).wedge(&AlternatingForm::dual(4, 2));
        assert!(ce_differential(t.algebra(), &e12).unwrap().is_zero());
    }

    #[test]
    fn differential_dimension_mismatch() {
        let t = n4();
        let bad = AlternatingForm::dual(6, 1);
        assert!(matches!(
            ce_differential(t.algebra(), &bad),
            Err(BismutError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn d_squared_vanishes_when_jacobi_holds() {
        let t = n6();
        for i in 1..=6 {
            let de = ce_differential(t.algebra(), &AlternatingForm::dual(6, i)).unwrap();
            let dde = ce_differential(t.algebra(), &de).unwrap();
            assert!(dde.is_zero(), "d(d e^{i}) != 0");
        }
    }

    #[test]
    fn d_squared_detects_jacobi_failure() {
        // Jacobi fails for this table, and d∘d sees it on e^3.
        let l = algebra(3, &[(1, 2, &[(3, 1, 1)]), (1, 3, &[(1, 1, 1)])]);
        assert!(!l.jacobi_check().is_ok());
        let de3 = ce_differential(&l, &AlternatingForm::dual(3, 3)).unwrap();
        let dde3 = ce_differential(&l, &de3).unwrap();
        assert!(!dde3.is_zero());
    }

    #[test]
    fn catalog_style_triples_are_skt() {
        for t in [n4(), n6()] {
            let verdict = is_skt(&t).unwrap();
            assert!(verdict.is_skt);
            assert!(verdict.dc.is_zero());
            assert!(verdict.failing_tuples.is_empty());
        }
    }

    #[test]
    fn metric_scaling_scales_c_and_dc_linearly() {
        let t = n6();
        let lam = rat_int(3);
        let scaled = t.with_metric(t.metric().scale(&lam).unwrap()).unwrap();
        let c1 = torsion_three_form(&t);
        let c2 = torsion_three_form(&scaled);
        assert_eq!(c2, c1.scale(&lam));
        let v1 = is_skt(&t).unwrap();
        let v2 = is_skt(&scaled).unwrap();
        assert_eq!(v2.dc, v1.dc.scale(&lam));
        assert_eq!(v1.is_skt, v2.is_skt);
    }

    #[test]
    fn perturbed_bracket_gives_nonzero_dc_by_both_routes() {
        // The 6-dimensional catalog algebra with [f1,f2] bumped to 2*f5.
        // The change leaves J abelian (the (1,2) identity is automatic),
        // so the triple stays fully valid, but dc picks up 2*e^{1234}.
        let l = algebra(
            6,
            &[
                (1, 2, &[(5, 2, 1)]),
                (1, 4, &[(5, -1, 1)]),
                (2, 3, &[(5, 1, 1)]),
                (3, 4, &[(5, 1, 1)]),
            ],
        );
        let j = ComplexStructure::from_pairs(6, &[(1, 2), (3, 4), (5, 6)]).unwrap();
        let t = HermitianTriple::new(l, j, Metric::identity(6)).unwrap();
        let verdict = is_skt(&t).unwrap();
        assert!(!verdict.is_skt);
        assert_eq!(verdict.dc, form(6, 4, &[(&[1, 2, 3, 4], 2, 1)]));
        let via = ce_differential(t.algebra(), &verdict.c).unwrap();
        assert_eq!(via, verdict.dc);
        assert_eq!(verdict.failing_tuples.len(), 1);
    }
}
