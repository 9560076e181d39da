//! Structural laws that every SKT-verified triple is expected to satisfy.
//!
//! These are theorems about SKT nilpotent algebras, rerun as checks: a
//! failure means either a bug in this library or a genuine falsification,
//! and both deserve a loud report rather than a quiet error path. Hard
//! failures are collected as falsification events; the one soft check
//! (restriction through higher-codimension ideals) only warns.

use num_traits::{One, Zero};

use crate::bismut::{self, SktVerdict};
use crate::decomp;
use crate::exactnum::{Rational, Subspace};
use crate::forms::AlternatingForm;
use crate::hermitian::HermitianTriple;
use crate::liealg::Nilpotency;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Hard,
    Soft,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawCheck {
    pub name: &'static str,
    pub passed: bool,
    pub severity: Severity,
    pub details: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LawReport {
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    pub fn falsifications(&self) -> Vec<&LawCheck> {
        self.checks
            .iter()
            .filter(|c| !c.passed && c.severity == Severity::Hard)
            .collect()
    }

    pub fn warnings(&self) -> Vec<&LawCheck> {
        self.checks
            .iter()
            .filter(|c| !c.passed && c.severity == Severity::Soft)
            .collect()
    }

    pub fn all_hard_passed(&self) -> bool {
        self.falsifications().is_empty()
    }
}

fn basis_vector(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i - 1] = Rational::one();
    v
}

/// Sample vectors for the quadratic center characterization: basis
/// vectors plus pairwise sums.
fn sample_vectors(dim: usize) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = (1..=dim).map(|i| basis_vector(dim, i)).collect();
    for i in 1..=dim {
        for j in i + 1..=dim {
            let mut v = basis_vector(dim, i);
            v[j - 1] = Rational::one();
            out.push(v);
        }
    }
    out
}

/// Center is J-invariant on SKT triples.
pub fn center_j_invariance(triple: &HermitianTriple) -> LawCheck {
    let z = triple.algebra().center();
    let failure = z
        .basis_rows()
        .into_iter()
        .find(|row| !z.contains(&triple.j().apply(row)));
    LawCheck {
        name: "center_j_invariance",
        passed: failure.is_none(),
        severity: Severity::Hard,
        details: failure.map(|row| format!("J maps center vector {row:?} outside the center")),
    }
}

/// On a 2-step SKT triple, `[Y, JY] = 0` exactly characterizes central
/// vectors; sampled over basis vectors and pairwise sums.
pub fn center_bracket_criterion(triple: &HermitianTriple) -> LawCheck {
    let z = triple.algebra().center();
    let mut detail = None;
    let mut passed = true;
    for y in sample_vectors(triple.dim()) {
        let jy = triple.j().apply(&y);
        let bracket = triple.algebra().bracket(&y, &jy).unwrap();
        let bracket_zero = bracket.iter().all(Zero::is_zero);
        let central = z.contains(&y);
        if bracket_zero != central {
            passed = false;
            detail = Some(format!(
                "vector {y:?}: [Y,JY] zero = {bracket_zero}, central = {central}"
            ));
            break;
        }
    }
    LawCheck {
        name: "center_bracket_criterion",
        passed,
        severity: Severity::Hard,
        details: detail,
    }
}

/// SKT implies at most 2-step nilpotent.
pub fn two_step_bound(triple: &HermitianTriple) -> LawCheck {
    let nilpotency = triple.algebra().nilpotency();
    let passed = matches!(nilpotency, Nilpotency::Step(k) if k <= 2);
    LawCheck {
        name: "two_step_bound",
        passed,
        severity: Severity::Hard,
        details: (!passed).then(|| format!("nilpotency is {nilpotency:?}")),
    }
}

/// Restrictions through codimension-2 J-invariant coordinate ideals stay
/// SKT.
pub fn codim2_restriction_skt(triple: &HermitianTriple) -> LawCheck {
    let mut detail = None;
    let mut passed = true;
    for complement in decomp::available_coordinate_splits(triple) {
        match decomp::restrict_by_complement(triple, complement) {
            Ok(restricted) => match bismut::is_skt(&restricted) {
                Ok(v) if v.is_skt => {}
                Ok(_) => {
                    passed = false;
                    detail = Some(format!("restriction at {complement:?} is not SKT"));
                    break;
                }
                Err(e) => {
                    passed = false;
                    detail = Some(format!("restriction at {complement:?}: {e}"));
                    break;
                }
            },
            Err(e) => {
                passed = false;
                detail = Some(format!("restriction at {complement:?} failed: {e}"));
                break;
            }
        }
    }
    LawCheck {
        name: "codim2_restriction_skt",
        passed,
        severity: Severity::Hard,
        details: detail,
    }
}

/// Soft variant for codimension-4 restrictions (two coordinate planes
/// removed): expected to stay SKT as well, but only reported as a
/// warning.
pub fn higher_codim_restriction_skt(triple: &HermitianTriple) -> LawCheck {
    let splits = decomp::available_coordinate_splits(triple);
    let mut detail = None;
    let mut passed = true;
    'outer: for &first in &splits {
        let Ok(restricted) = decomp::restrict_by_complement(triple, first) else {
            continue;
        };
        for inner in decomp::available_coordinate_splits(&restricted) {
            match decomp::restrict_by_complement(&restricted, inner) {
                Ok(twice) => match bismut::is_skt(&twice) {
                    Ok(v) if v.is_skt => {}
                    _ => {
                        passed = false;
                        detail =
                            Some(format!("codim-4 restriction via {first:?} then {inner:?}"));
                        break 'outer;
                    }
                },
                Err(_) => continue,
            }
        }
    }
    LawCheck {
        name: "higher_codim_restriction_skt",
        passed,
        severity: Severity::Soft,
        details: detail,
    }
}

/// Codimension-2 adjoint structure: for every available split of an SKT
/// triple, A and B vanish on center and complement blocks and X is
/// central.
pub fn codim2_structure(triple: &HermitianTriple) -> Vec<LawCheck> {
    let mut out = Vec::new();
    for complement in decomp::available_coordinate_splits(triple) {
        let Ok(data) = decomp::split_codim2(triple, complement) else {
            continue;
        };
        // The structural lemmas assume the ideal is at most 2-step.
        if !matches!(data.n.nilpotency(), Nilpotency::Step(k) if k <= 2) {
            continue;
        }
        let report = decomp::codim2_checks(&data, triple);
        for check in report.checks {
            out.push(LawCheck {
                name: check.name,
                passed: check.passed,
                severity: Severity::Hard,
                details: check
                    .details
                    .map(|d| format!("complement {complement:?}: {d}")),
            });
        }
    }
    out
}

/// The exterior-derivative decomposition against a codimension-2 split:
/// for every 1-form `a` supported on the ideal,
/// `d a = e^p ∧ θ(A)a + e^q ∧ θ(B)a - a(X) e^{pq} + d_n a`,
/// where `(p, q)` is the complement pair and `d_n` the differential of
/// the restricted algebra.
pub fn differential_decomposition(triple: &HermitianTriple) -> LawCheck {
    let dim = triple.dim();
    let mut detail = None;
    let mut passed = true;
    'outer: for complement in decomp::available_coordinate_splits(triple) {
        let Ok(data) = decomp::split_codim2(triple, complement) else {
            continue;
        };
        let (p, q) = complement;
        let ep = AlternatingForm::dual(dim, p);
        let eq = AlternatingForm::dual(dim, q);
        let epq = ep.wedge(&eq);
        // Ambient extensions of A and B: zero outside the ideal block.
        let embed_matrix = |mat: &crate::exactnum::RatMatrix| {
            let mut ambient = crate::exactnum::RatMatrix::zeros(dim, dim);
            for (r, &ar) in data.embedding.iter().enumerate() {
                for (c, &ac) in data.embedding.iter().enumerate() {
                    let v = mat.get(r, c);
                    if !v.is_zero() {
                        ambient.set(ar - 1, ac - 1, v.clone());
                    }
                }
            }
            ambient
        };
        let a_amb = embed_matrix(&data.a_mat);
        let b_amb = embed_matrix(&data.b_mat);
        let embed_form = |form: &AlternatingForm| {
            let mut out = AlternatingForm::zero(dim, form.degree());
            for (tuple, coeff) in form.terms() {
                let mapped: Vec<usize> = tuple.iter().map(|&i| data.embedding[i - 1]).collect();
                out.add_term(&mapped, coeff.clone());
            }
            out
        };
        for (local, &ambient_index) in data.embedding.iter().enumerate() {
            let alpha = AlternatingForm::dual(dim, ambient_index);
            let lhs = bismut::ce_differential(triple.algebra(), &alpha).unwrap();
            let theta_a = bismut::theta_action(&a_amb, &alpha);
            let theta_b = bismut::theta_action(&b_amb, &alpha);
            let alpha_x = data.x_vec[local].clone();
            let alpha_local = AlternatingForm::dual(dim - 2, local + 1);
            let dn = bismut::ce_differential(&data.n, &alpha_local).unwrap();
            let rhs = ep
                .wedge(&theta_a)
                .add(&eq.wedge(&theta_b))
                .sub(&epq.scale(&alpha_x))
                .add(&embed_form(&dn));
            if lhs != rhs {
                passed = false;
                detail = Some(format!(
                    "complement {complement:?}, 1-form e^{ambient_index}: ambient d differs from the decomposition"
                ));
                break 'outer;
            }
        }
    }
    LawCheck {
        name: "differential_decomposition",
        passed,
        severity: Severity::Hard,
        details: detail,
    }
}

/// Full law suite for a triple with a computed SKT verdict. Laws whose
/// hypotheses do not apply (non-SKT, wrong step) are skipped rather than
/// reported as failures.
pub fn check_all(triple: &HermitianTriple, verdict: &SktVerdict) -> LawReport {
    let mut report = LawReport::default();
    if !verdict.is_skt {
        // Nothing is claimed about non-SKT triples.
        return report;
    }
    report.checks.push(center_j_invariance(triple));
    report.checks.push(two_step_bound(triple));
    if matches!(triple.algebra().nilpotency(), Nilpotency::Step(k) if k <= 2) {
        report.checks.push(center_bracket_criterion(triple));
    }
    report.checks.push(codim2_restriction_skt(triple));
    report.checks.push(differential_decomposition(triple));
    report.checks.extend(codim2_structure(triple));
    report.checks.push(higher_codim_restriction_skt(triple));
    report
}

/// Convenience wrapper computing the verdict first.
pub fn verify_and_check(triple: &HermitianTriple) -> (SktVerdict, LawReport) {
    let verdict = bismut::is_skt(triple).expect("route agreement");
    let report = check_all(triple, &verdict);
    (verdict, report)
}

/// The v ⊕ z subspaces are J-invariant on SKT triples; exposed
/// separately because it needs the metric split.
pub fn vz_j_invariance(triple: &HermitianTriple) -> LawCheck {
    let split = decomp::vz_split(triple);
    let invariant = |s: &Subspace| {
        s.basis_rows()
            .into_iter()
            .all(|row| s.contains(&triple.j().apply(&row)))
    };
    let passed = invariant(&split.z) && invariant(&split.v);
    LawCheck {
        name: "vz_j_invariance",
        passed,
        severity: Severity::Hard,
        details: (!passed).then(|| "v or z is not J-invariant".to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::compose::{compose, CompositionSpec};

    #[test]
    fn all_catalog_entries_pass_the_law_suite() {
        for entry in catalog::all() {
            let (verdict, report) = verify_and_check(&entry.triple);
            assert!(verdict.is_skt, "{}", entry.name);
            assert!(
                report.all_hard_passed(),
                "{}: {:?}",
                entry.name,
                report.falsifications()
            );
            assert!(report.warnings().is_empty(), "{}", entry.name);
            assert!(vz_j_invariance(&entry.triple).passed, "{}", entry.name);
        }
    }

    #[test]
    fn composed_triple_passes_the_law_suite() {
        let spec = CompositionSpec::with_defaults(
            catalog::get("n4_abelian").unwrap().triple.clone(),
            catalog::get("n6_abelian").unwrap().triple.clone(),
        )
        .unwrap();
        let composed = compose(&spec).unwrap();
        let report = check_all(&composed.triple, &composed.verdict);
        assert!(report.all_hard_passed(), "{:?}", report.falsifications());
    }

    #[test]
    fn non_skt_triples_are_out_of_scope() {
        // The bumped-bracket variant is valid Hermitian but not SKT; the
        // law suite makes no claims there.
        let l = crate::liealg::algebra(
            6,
            &[
                (1, 2, &[(5, 2, 1)]),
                (1, 4, &[(5, -1, 1)]),
                (2, 3, &[(5, 1, 1)]),
                (3, 4, &[(5, 1, 1)]),
            ],
        );
        let j = crate::hermitian::ComplexStructure::from_pairs(6, &[(1, 2), (3, 4), (5, 6)])
            .unwrap();
        let t =
            HermitianTriple::new(l, j, crate::hermitian::Metric::identity(6)).unwrap();
        let (verdict, report) = verify_and_check(&t);
        assert!(!verdict.is_skt);
        assert!(report.checks.is_empty());
    }
}
