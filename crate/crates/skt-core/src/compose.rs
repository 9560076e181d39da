//! Fusing two SKT algebras into a larger one.
//!
//! Given SKT triples on `n1` and `n2` (each abelian or 2-step, with the
//! center strictly larger than the derived algebra), the construction
//! adjoins a plane `span{Z, W}` with `J Z = W`, declares `{Z, W}`
//! orthonormal and orthogonal to `n1 ⊕ n2`, and sets
//! `[Z, W] = r·x + s·y` for chosen central vectors `x`, `y` orthogonal to
//! the respective derived algebras. The output is SKT of dimension
//! `n1 + n2 + 2`, 2-step, and again satisfies the center/derived gap, so
//! the construction iterates to any reachable even dimension.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::bismut::{self, SktVerdict};
use crate::exactnum::{RatMatrix, Rational, Subspace};
use crate::hermitian::{ComplexStructure, HermitianTriple, Metric};
use crate::liealg::{LieAlgebra, Nilpotency};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("{side} factor is not SKT")]
    FactorNotSkt { side: Side },
    #[error("{side} factor is not abelian or 2-step nilpotent")]
    FactorNotTwoStep { side: Side },
    #[error("{side} factor violates the center/derived gap: dim center = {center} <= {derived} = dim derived")]
    CenterDerivedGap {
        side: Side,
        center: usize,
        derived: usize,
    },
    #[error("{side} transverse choice is zero")]
    ChoiceZero { side: Side },
    #[error("{side} transverse choice lies outside center ∩ derived-complement")]
    ChoiceOutsideIntersection { side: Side },
    #[error("{side} scale factor is zero")]
    ZeroScale { side: Side },
    #[error("{side} factor has no transverse direction: center ∩ derived-complement is zero")]
    NoTransverseDirection { side: Side },
    #[error("composed output failed re-verification ({0}); this contradicts the construction and is reported loudly")]
    OutputFalsification(String),
    #[error("composed triple does not match the composition data: {0}")]
    Mismatch(String),
    #[error(
        "target dimension {target} unreachable from seed dimensions {seeds:?}; reachable: {reachable:?}"
    )]
    UnreachableTarget {
        target: usize,
        seeds: Vec<usize>,
        reachable: Vec<usize>,
    },
    #[error(
        "greedy plan stranded at dimension {at} before reaching {target}; \
         the target is reachable by a non-greedy plan"
    )]
    GreedyStranded { at: usize, target: usize },
}

/// Inputs of one composition step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionSpec {
    pub left: HermitianTriple,
    pub right: HermitianTriple,
    /// Vector in the left factor, in its own coordinates.
    pub x_choice: Vec<Rational>,
    /// Vector in the right factor, in its own coordinates.
    pub y_choice: Vec<Rational>,
    pub r: Rational,
    pub s: Rational,
}

impl CompositionSpec {
    /// Default transverse choices (the last echelon basis vector of
    /// center ∩ derived-complement on each side) and unit scales.
    pub fn with_defaults(
        left: HermitianTriple,
        right: HermitianTriple,
    ) -> Result<Self, ComposeError> {
        let x_choice = default_transverse_vector(&left)
            .ok_or(ComposeError::NoTransverseDirection { side: Side::Left })?;
        let y_choice = default_transverse_vector(&right)
            .ok_or(ComposeError::NoTransverseDirection { side: Side::Right })?;
        Ok(Self {
            left,
            right,
            x_choice,
            y_choice,
            r: Rational::one(),
            s: Rational::one(),
        })
    }
}

/// Center ∩ (derived)^⊥ of a triple, the space of admissible transverse
/// choices.
pub fn transverse_space(triple: &HermitianTriple) -> Subspace {
    let z = triple.algebra().center();
    let derived_perp = triple
        .algebra()
        .derived()
        .orth_complement(triple.metric().matrix())
        .expect("metric dimension matches");
    z.intersect(&derived_perp)
}

/// The last echelon basis vector of [`transverse_space`], if nonzero.
pub fn default_transverse_vector(triple: &HermitianTriple) -> Option<Vec<Rational>> {
    let space = transverse_space(triple);
    space.basis_rows().pop()
}

/// A composed triple together with the data that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composed {
    pub triple: HermitianTriple,
    pub spec: CompositionSpec,
    pub verdict: SktVerdict,
}

impl Composed {
    pub fn left_dim(&self) -> usize {
        self.spec.left.dim()
    }

    pub fn right_dim(&self) -> usize {
        self.spec.right.dim()
    }

    /// 1-based ambient indices of the adjoined plane.
    pub fn plane_indices(&self) -> (usize, usize) {
        let z = self.left_dim() + self.right_dim() + 1;
        (z, z + 1)
    }
}

fn check_factor(triple: &HermitianTriple, side: Side) -> Result<(), ComposeError> {
    let verdict =
        bismut::is_skt(triple).map_err(|e| ComposeError::OutputFalsification(e.to_string()))?;
    if !verdict.is_skt {
        return Err(ComposeError::FactorNotSkt { side });
    }
    match triple.algebra().nilpotency() {
        Nilpotency::Step(k) if k <= 2 => {}
        _ => return Err(ComposeError::FactorNotTwoStep { side }),
    }
    let center = triple.algebra().center().dim();
    let derived = triple.algebra().derived().dim();
    if center <= derived {
        return Err(ComposeError::CenterDerivedGap {
            side,
            center,
            derived,
        });
    }
    Ok(())
}

/// Runs the construction and re-verifies every promised property of the
/// output: validity, SKT by both routes, 2-step, and the center/derived
/// gap. Each precondition failure is reported by name.
pub fn compose(spec: &CompositionSpec) -> Result<Composed, ComposeError> {
    check_factor(&spec.left, Side::Left)?;
    check_factor(&spec.right, Side::Right)?;
    for (side, choice, triple, scale) in [
        (Side::Left, &spec.x_choice, &spec.left, &spec.r),
        (Side::Right, &spec.y_choice, &spec.right, &spec.s),
    ] {
        if scale.is_zero() {
            return Err(ComposeError::ZeroScale { side });
        }
        if choice.iter().all(Zero::is_zero) {
            return Err(ComposeError::ChoiceZero { side });
        }
        if !transverse_space(triple).contains(choice) {
            return Err(ComposeError::ChoiceOutsideIntersection { side });
        }
    }

    let n1 = spec.left.dim();
    let n2 = spec.right.dim();
    let dim = n1 + n2 + 2;
    let (zi, wi) = (n1 + n2 + 1, n1 + n2 + 2);

    let mut brackets: Vec<((usize, usize), Vec<(usize, Rational)>)> = Vec::new();
    for (&(i, j), targets) in spec.left.algebra().bracket_pairs() {
        brackets.push(((i, j), targets.clone()));
    }
    for (&(i, j), targets) in spec.right.algebra().bracket_pairs() {
        brackets.push((
            (i + n1, j + n1),
            targets.iter().map(|(k, c)| (k + n1, c.clone())).collect(),
        ));
    }
    let mut zw: Vec<(usize, Rational)> = Vec::new();
    for (p, c) in spec.x_choice.iter().enumerate() {
        if !c.is_zero() {
            zw.push((p + 1, &spec.r * c));
        }
    }
    for (q, c) in spec.y_choice.iter().enumerate() {
        if !c.is_zero() {
            zw.push((n1 + q + 1, &spec.s * c));
        }
    }
    brackets.push(((zi, wi), zw));
    let algebra = LieAlgebra::new(dim, brackets)
        .map_err(|e| ComposeError::OutputFalsification(e.to_string()))?;

    let plane_j = {
        let mut m = RatMatrix::zeros(2, 2);
        m.set(1, 0, Rational::one());
        m.set(0, 1, -Rational::one());
        m
    };
    let j_mat = RatMatrix::block_diag(&[
        spec.left.j().matrix(),
        spec.right.j().matrix(),
        &plane_j,
    ]);
    let j = ComplexStructure::new(j_mat)
        .map_err(|e| ComposeError::OutputFalsification(e.to_string()))?;

    let g_mat = RatMatrix::block_diag(&[
        spec.left.metric().matrix(),
        spec.right.metric().matrix(),
        &RatMatrix::identity(2),
    ]);
    let metric =
        Metric::new(g_mat).map_err(|e| ComposeError::OutputFalsification(e.to_string()))?;

    let triple = HermitianTriple::new(algebra, j, metric)
        .map_err(|e| ComposeError::OutputFalsification(e.to_string()))?;

    let verdict =
        bismut::is_skt(&triple).map_err(|e| ComposeError::OutputFalsification(e.to_string()))?;
    if !verdict.is_skt {
        return Err(ComposeError::OutputFalsification(format!(
            "composed triple is not SKT; first failing tuple {:?}",
            verdict.failing_tuples.first()
        )));
    }
    match triple.algebra().nilpotency() {
        Nilpotency::Step(k) if k <= 2 => {}
        other => {
            return Err(ComposeError::OutputFalsification(format!(
                "composed triple is not 2-step: {other:?}"
            )))
        }
    }
    let center = triple.algebra().center().dim();
    let derived = triple.algebra().derived().dim();
    if center <= derived {
        return Err(ComposeError::OutputFalsification(format!(
            "composed center/derived gap fails: {center} <= {derived}"
        )));
    }

    Ok(Composed {
        triple,
        spec: spec.clone(),
        verdict,
    })
}

/// Predicted abelian-ness of the composed structure: the composition is
/// abelian exactly when both factors are.
pub fn abelian_propagation(spec: &CompositionSpec) -> bool {
    spec.left.is_abelian_j().abelian && spec.right.is_abelian_j().abelian
}

/// Irreducibility certificate for a composed triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateStatus {
    /// Both projections of `[Z, JZ]` are nonzero and both factors were
    /// asserted irreducible: no orthogonal J-invariant ideal splitting
    /// can separate the factors.
    Certified,
    /// A projection vanishes, exhibiting an orthogonal J-invariant ideal
    /// decomposition.
    Decomposable { zero_side: Side },
    /// A factor was not asserted irreducible, so nothing can be concluded.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityCertificate {
    pub status: CertificateStatus,
    /// Projections of `[Z, JZ]` onto the two factor blocks, in factor
    /// coordinates.
    pub evidence: (Vec<Rational>, Vec<Rational>),
    pub factor_irreducible_flags: (bool, bool),
}

/// Inspects `[Z, JZ]` of a composed triple. The bracket is read from the
/// triple itself (not from the spec), so hand-built variants with a
/// vanishing projection are classified as decomposable rather than
/// rejected.
pub fn certify_irreducible(
    composed: &HermitianTriple,
    spec: &CompositionSpec,
    factor_flags: (bool, bool),
) -> Result<IrreducibilityCertificate, ComposeError> {
    let n1 = spec.left.dim();
    let n2 = spec.right.dim();
    let dim = n1 + n2 + 2;
    if composed.dim() != dim {
        return Err(ComposeError::Mismatch(format!(
            "composed dimension {} != {} + {} + 2",
            composed.dim(),
            n1,
            n2
        )));
    }
    let expected_j = RatMatrix::block_diag(&[
        spec.left.j().matrix(),
        spec.right.j().matrix(),
        &{
            let mut m = RatMatrix::zeros(2, 2);
            m.set(1, 0, Rational::one());
            m.set(0, 1, -Rational::one());
            m
        },
    ]);
    if composed.j().matrix() != &expected_j {
        return Err(ComposeError::Mismatch(
            "complex structure is not the block extension of the factors".into(),
        ));
    }
    let zi = n1 + n2 + 1;
    let wi = zi + 1;
    let mut z_vec = vec![Rational::zero(); dim];
    z_vec[zi - 1] = Rational::one();
    let jz = composed.j().apply(&z_vec);
    let bracket = composed.algebra().bracket(&z_vec, &jz).unwrap();
    if !bracket[zi - 1].is_zero() || !bracket[wi - 1].is_zero() {
        return Err(ComposeError::Mismatch(
            "[Z, JZ] has a component along the adjoined plane".into(),
        ));
    }
    let left_part: Vec<Rational> = bracket[..n1].to_vec();
    let right_part: Vec<Rational> = bracket[n1..n1 + n2].to_vec();
    let left_zero = left_part.iter().all(Zero::is_zero);
    let right_zero = right_part.iter().all(Zero::is_zero);
    let status = if left_zero {
        CertificateStatus::Decomposable { zero_side: Side::Left }
    } else if right_zero {
        CertificateStatus::Decomposable { zero_side: Side::Right }
    } else if !(factor_flags.0 && factor_flags.1) {
        CertificateStatus::Inconclusive
    } else {
        CertificateStatus::Certified
    };
    Ok(IrreducibilityCertificate {
        status,
        evidence: (left_part, right_part),
        factor_irreducible_flags: factor_flags,
    })
}

/// Orthogonal direct sum of two triples (no adjoined plane): block
/// brackets, block J, block metric. Used as the comparison object for
/// restriction identities and as the trivial-product baseline.
pub fn orthogonal_direct_sum(
    left: &HermitianTriple,
    right: &HermitianTriple,
) -> HermitianTriple {
    let n1 = left.dim();
    let mut brackets: Vec<((usize, usize), Vec<(usize, Rational)>)> = Vec::new();
    for (&(i, j), targets) in left.algebra().bracket_pairs() {
        brackets.push(((i, j), targets.clone()));
    }
    for (&(i, j), targets) in right.algebra().bracket_pairs() {
        brackets.push((
            (i + n1, j + n1),
            targets.iter().map(|(k, c)| (k + n1, c.clone())).collect(),
        ));
    }
    let algebra = LieAlgebra::new(n1 + right.dim(), brackets).expect("valid factor tables");
    let j = ComplexStructure::new(RatMatrix::block_diag(&[
        left.j().matrix(),
        right.j().matrix(),
    ]))
    .expect("block J is almost complex");
    let metric = Metric::new(RatMatrix::block_diag(&[
        left.metric().matrix(),
        right.metric().matrix(),
    ]))
    .expect("block metric is positive definite");
    HermitianTriple::new(algebra, j, metric).expect("direct sum of valid triples is valid")
}

/// One step of an iterated composition plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanStep {
    pub left_dim: usize,
    pub seed_index: usize,
    pub result_dim: usize,
}

#[derive(Debug, Clone)]
pub struct IterationOutcome {
    pub triple: HermitianTriple,
    pub plan: Vec<PlanStep>,
}

/// Every dimension reachable from the seed dimensions by repeatedly
/// applying `d -> d + seed + 2`, up to `target`.
pub fn reachable_dims(seed_dims: &[usize], target: usize) -> Vec<usize> {
    let mut reachable: Vec<usize> = Vec::new();
    let mut frontier: Vec<usize> = seed_dims.iter().copied().filter(|&d| d <= target).collect();
    while let Some(d) = frontier.pop() {
        if reachable.contains(&d) {
            continue;
        }
        reachable.push(d);
        for &s in seed_dims {
            let next = d + s + 2;
            if next <= target && !reachable.contains(&next) {
                frontier.push(next);
            }
        }
    }
    reachable.sort_unstable();
    reachable
}

/// Builds an SKT triple of exactly `target_dim` from the seeds by a
/// deterministic greedy plan: start from the first seed, then repeatedly
/// compose with the largest seed that does not overshoot (ties broken by
/// list order). If `target_dim` equals a seed dimension the seed itself
/// is returned with an empty plan.
pub fn iterate_compose(
    seeds: &[HermitianTriple],
    target_dim: usize,
) -> Result<IterationOutcome, ComposeError> {
    let seed_dims: Vec<usize> = seeds.iter().map(HermitianTriple::dim).collect();
    if let Some(idx) = seed_dims.iter().position(|&d| d == target_dim) {
        return Ok(IterationOutcome {
            triple: seeds[idx].clone(),
            plan: Vec::new(),
        });
    }
    let reachable = reachable_dims(&seed_dims, target_dim);
    if !reachable.contains(&target_dim) {
        return Err(ComposeError::UnreachableTarget {
            target: target_dim,
            seeds: seed_dims,
            reachable,
        });
    }
    let mut acc = seeds
        .first()
        .cloned()
        .expect("reachability implies at least one seed");
    let mut plan = Vec::new();
    while acc.dim() != target_dim {
        let candidate = (0..seeds.len())
            .filter(|&i| acc.dim() + seed_dims[i] + 2 <= target_dim)
            .max_by_key(|&i| (seed_dims[i], std::cmp::Reverse(i)));
        let Some(idx) = candidate else {
            return Err(ComposeError::GreedyStranded {
                at: acc.dim(),
                target: target_dim,
            });
        };
        let spec = CompositionSpec::with_defaults(acc.clone(), seeds[idx].clone())?;
        let composed = compose(&spec)?;
        plan.push(PlanStep {
            left_dim: acc.dim(),
            seed_index: idx,
            result_dim: composed.triple.dim(),
        });
        acc = composed.triple;
    }
    Ok(IterationOutcome { triple: acc, plan })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};
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
    fn transverse_spaces_of_catalog_triples() {
        let t4 = transverse_space(&n4_triple());
        assert_eq!(t4.dim(), 1);
        let mut e4 = vec![rat_int(0); 4];
        e4[3] = rat_int(1);
        assert!(t4.contains(&e4));

        // The 6-dimensional factor has a 4-dimensional center, so the
        // transverse space is 3-dimensional; its last echelon vector is
        // still f6, which is what the construction uses.
        let t6 = transverse_space(&n6_triple());
        assert_eq!(t6.dim(), 3);
        let mut f6 = vec![rat_int(0); 6];
        f6[5] = rat_int(1);
        assert!(t6.contains(&f6));
        assert_eq!(default_transverse_vector(&n6_triple()).unwrap(), f6);
    }

    #[test]
    fn default_choices_are_last_basis_vectors() {
        let x = default_transverse_vector(&n4_triple()).unwrap();
        let mut e4 = vec![rat_int(0); 4];
        e4[3] = rat_int(1);
        assert_eq!(x, e4);
    }

    #[test]
    fn composition_of_four_and_six() {
        let spec = CompositionSpec::with_defaults(n4_triple(), n6_triple()).unwrap();
        let composed = compose(&spec).unwrap();
        assert_eq!(composed.triple.dim(), 12);
        assert!(composed.verdict.is_skt);
        // [Z, W] = e4 + f6, i.e. targets 4 and 10.
        let zw = composed.triple.algebra().bracket_basis(11, 12);
        assert_eq!(zw, vec![(4, rat_int(1)), (10, rat_int(1))]);
        assert_eq!(
            composed.triple.algebra().nilpotency(),
            Nilpotency::Step(2)
        );
    }

    #[test]
    fn composition_with_scales() {
        let mut spec = CompositionSpec::with_defaults(n4_triple(), n6_triple()).unwrap();
        spec.r = rat_int(2);
        spec.s = rat(5, 2);
        let composed = compose(&spec).unwrap();
        let zw = composed.triple.algebra().bracket_basis(11, 12);
        assert_eq!(zw, vec![(4, rat_int(2)), (10, rat(5, 2))]);
        assert!(composed.verdict.is_skt);
    }

    #[test]
    fn named_precondition_failures() {
        let mut spec = CompositionSpec::with_defaults(n4_triple(), n4_triple()).unwrap();
        spec.r = rat_int(0);
        assert_eq!(
            compose(&spec).unwrap_err(),
            ComposeError::ZeroScale { side: Side::Left }
        );

        let mut spec = CompositionSpec::with_defaults(n4_triple(), n4_triple()).unwrap();
        spec.x_choice = vec![rat_int(0); 4];
        assert_eq!(
            compose(&spec).unwrap_err(),
            ComposeError::ChoiceZero { side: Side::Left }
        );

        // e3 is central but not orthogonal to the derived algebra.
        let mut spec = CompositionSpec::with_defaults(n4_triple(), n4_triple()).unwrap();
        let mut e3 = vec![rat_int(0); 4];
        e3[2] = rat_int(1);
        spec.x_choice = e3;
        assert_eq!(
            compose(&spec).unwrap_err(),
            ComposeError::ChoiceOutsideIntersection { side: Side::Left }
        );
    }

    #[test]
    fn abelian_propagation_matches_output() {
        let spec = CompositionSpec::with_defaults(n4_triple(), n6_triple()).unwrap();
        let predicted = abelian_propagation(&spec);
        assert!(predicted);
        let composed = compose(&spec).unwrap();
        assert_eq!(composed.triple.is_abelian_j().abelian, predicted);
    }

    #[test]
    fn certificate_for_composed_triple() {
        let spec = CompositionSpec::with_defaults(n4_triple(), n6_triple()).unwrap();
        let composed = compose(&spec).unwrap();
        let cert = certify_irreducible(&composed.triple, &spec, (true, true)).unwrap();
        assert_eq!(cert.status, CertificateStatus::Certified);
        assert!(cert.evidence.0.iter().any(|c| !c.is_zero()));
        assert!(cert.evidence.1.iter().any(|c| !c.is_zero()));

        let cert = certify_irreducible(&composed.triple, &spec, (false, true)).unwrap();
        assert_eq!(cert.status, CertificateStatus::Inconclusive);
    }

    #[test]
    fn certificate_detects_decomposable_variant() {
        // Hand-built: same shape, but [Z, W] = f6 only. Then
        // n1 ⊕ (n2 + plane) is an orthogonal J-invariant ideal splitting.
        let spec = CompositionSpec::with_defaults(n4_triple(), n6_triple()).unwrap();
        let mut brackets: Vec<((usize, usize), Vec<(usize, Rational)>)> =
            vec![((1, 2), vec![(3, rat_int(1))])];
        for (&(i, j), targets) in n6_triple().algebra().bracket_pairs() {
            brackets.push((
                (i + 4, j + 4),
                targets.iter().map(|(k, c)| (k + 4, c.clone())).collect(),
            ));
        }
        brackets.push(((11, 12), vec![(10, rat_int(1))]));
        let l = LieAlgebra::new(12, brackets).unwrap();
        let j = ComplexStructure::from_pairs(
            12,
            &[(1, 2), (3, 4), (5, 6), (7, 8), (9, 10), (11, 12)],
        )
        .unwrap();
        let t = HermitianTriple::new(l, j, Metric::identity(12)).unwrap();
        let cert = certify_irreducible(&t, &spec, (true, true)).unwrap();
        assert_eq!(
            cert.status,
            CertificateStatus::Decomposable { zero_side: Side::Left }
        );
    }

    #[test]
    fn direct_sum_is_valid_and_skt() {
        let sum = orthogonal_direct_sum(&n4_triple(), &n6_triple());
        assert_eq!(sum.dim(), 10);
        assert!(bismut::is_skt(&sum).unwrap().is_skt);
    }

    #[test]
    fn reachable_dimensions_from_seed_four() {
        assert_eq!(reachable_dims(&[4], 23), vec![4, 10, 16, 22]);
        assert_eq!(reachable_dims(&[4, 8], 15), vec![4, 8, 10, 14]);
    }

    #[test]
    fn iterate_reaches_ten_and_sixteen() {
        let out = iterate_compose(&[n4_triple()], 10).unwrap();
        assert_eq!(out.triple.dim(), 10);
        assert_eq!(out.plan.len(), 1);
        let out = iterate_compose(&[n4_triple()], 16).unwrap();
        assert_eq!(out.triple.dim(), 16);
        assert_eq!(out.plan.len(), 2);
        assert!(bismut::is_skt(&out.triple).unwrap().is_skt);
    }

    #[test]
    fn iterate_returns_seed_for_matching_target() {
        let out = iterate_compose(&[n4_triple()], 4).unwrap();
        assert!(out.plan.is_empty());
        assert_eq!(out.triple, n4_triple());
    }

    #[test]
    fn iterate_reports_unreachable_targets() {
        let err = iterate_compose(&[n4_triple()], 12).unwrap_err();
        assert_eq!(
            err,
            ComposeError::UnreachableTarget {
                target: 12,
                seeds: vec![4],
                reachable: vec![4, 10],
            }
        );
    }
}
