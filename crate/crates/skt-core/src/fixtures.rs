//! Deterministic pseudo-random Hermitian data for stress tests.
//!
//! The generators produce validated triples: 2-step brackets are
//! symmetrized so the standard pairing becomes an abelian (hence
//! integrable) complex structure, and random metrics are built as
//! `S^T S` with `S` in the commutant of `J`, which keeps compatibility
//! exact. Everything is seeded, so failures reproduce.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{rat, RatMatrix, Rational};
use crate::hermitian::{ComplexStructure, HermitianTriple, Metric};
use crate::liealg::LieAlgebra;

/// Standard pairing `J e_{2i-1} = e_{2i}` in dimension `2m`.
pub fn standard_pairs(dim: usize) -> ComplexStructure {
    assert!(dim % 2 == 0);
    let pairs: Vec<(usize, usize)> = (1..=dim / 2).map(|i| (2 * i - 1, 2 * i)).collect();
    ComplexStructure::from_pairs(dim, &pairs).expect("standard pairing is almost complex")
}

/// Random 2-step triple: `v_pairs` J-pairs of non-central directions
/// bracketing into `z_pairs` J-pairs of central directions, symmetrized
/// to make the pairing abelian. Identity metric.
pub fn random_two_step(v_pairs: usize, z_pairs: usize, seed: u64) -> HermitianTriple {
    assert!(v_pairs >= 1 && z_pairs >= 1);
    let v_dim = 2 * v_pairs;
    let dim = v_dim + 2 * z_pairs;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Raw coefficients mu[(i,j)][k] for 1 <= i < j <= v_dim, targets in
    // the z block.
    let mut raw: std::collections::BTreeMap<(usize, usize), Vec<Rational>> =
        std::collections::BTreeMap::new();
    for i in 1..=v_dim {
        for j in i + 1..=v_dim {
            let mut targets = vec![Rational::zero(); 2 * z_pairs];
            for t in targets.iter_mut() {
                if rng.gen_bool(0.4) {
                    let numer = rng.gen_range(-2i64..=2);
                    let denom = [1i64, 2][rng.gen_range(0..2usize)];
                    *t = rat(numer, denom);
                }
            }
            raw.insert((i, j), targets);
        }
    }
    let eval_raw = |i: usize, j: usize| -> Vec<Rational> {
        if i == j {
            return vec![Rational::zero(); 2 * z_pairs];
        }
        if i < j {
            raw[&(i, j)].clone()
        } else {
            raw[&(j, i)].iter().map(|c| -c.clone()).collect()
        }
    };
    // J image inside the v block: 2k-1 -> (2k, +), 2k -> (2k-1, -).
    let j_image = |i: usize| -> (usize, i64) {
        if i % 2 == 1 {
            (i + 1, 1)
        } else {
            (i - 1, -1)
        }
    };

    let mut brackets = Vec::new();
    for i in 1..=v_dim {
        for j in i + 1..=v_dim {
            let (ji, si) = j_image(i);
            let (jj, sj) = j_image(j);
            let sign = rat(si * sj, 1);
            let direct = eval_raw(i, j);
            let twisted = eval_raw(ji, jj);
            let targets: Vec<(usize, Rational)> = (0..2 * z_pairs)
                .filter_map(|k| {
                    let value = &direct[k] + &sign * &twisted[k];
                    (!value.is_zero()).then(|| (v_dim + k + 1, value))
                })
                .collect();
            if !targets.is_empty() {
                brackets.push(((i, j), targets));
            }
        }
    }
    let algebra = LieAlgebra::new(dim, brackets).expect("generated table is well-formed");
    HermitianTriple::new(algebra, standard_pairs(dim), Metric::identity(dim))
        .expect("symmetrized brackets give an abelian, hence integrable, pairing")
}

/// Random invertible rational matrix commuting with `J`, built by
/// projecting a random matrix onto the commutant: `(K - J K J) / 2`.
pub fn random_commuting_matrix(j: &ComplexStructure, seed: u64) -> RatMatrix {
    let n = j.dim();
    for attempt in 0..64u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt * 0x9e37));
        let mut k = RatMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                if rng.gen_bool(0.3) {
                    k.set(r, c, rat(rng.gen_range(-2i64..=2), 4));
                }
            }
        }
        let jm = j.matrix();
        let projected = k.sub(&jm.mul(&k).mul(jm)).scale(&rat(1, 2));
        let s = RatMatrix::identity(n).add(&projected);
        if s.rank() == n {
            return s;
        }
    }
    unreachable!("a perturbation of the identity is invertible");
}

/// Random metric compatible with `j`, exactly: `g = S^T g0 S` with `S`
/// commuting with `J` and `g0 = (I + J^T J)/2` (the identity whenever `J`
/// is orthogonal in the given basis).
pub fn random_compatible_metric(j: &ComplexStructure, seed: u64) -> Metric {
    let s = random_commuting_matrix(j, seed);
    let jm = j.matrix();
    let g0 = RatMatrix::identity(j.dim())
        .add(&jm.transpose().mul(jm))
        .scale(&rat(1, 2));
    Metric::new(s.transpose().mul(&g0).mul(&s)).expect("S^T g0 S is positive definite")
}

/// A 6-dimensional 3-step nilpotent algebra carrying an integrable
/// (in fact abelian) pairing: brackets
/// `[e1,e2] = 2e4`, `[e1,e3] = e5`, `[e2,e4] = e5`, `[e1,e4] = e6`,
/// `[e2,e3] = -e6`. No compatible metric makes it SKT (it is 3-step),
/// which makes it the negative control for the metric search.
pub fn three_step_six_dim() -> HermitianTriple {
    let algebra = crate::liealg::algebra(
        6,
        &[
            (1, 2, &[(4, 2, 1)]),
            (1, 3, &[(5, 1, 1)]),
            (1, 4, &[(6, 1, 1)]),
            (2, 3, &[(6, -1, 1)]),
            (2, 4, &[(5, 1, 1)]),
        ],
    );
    HermitianTriple::new(algebra, standard_pairs(6), Metric::identity(6))
        .expect("three-step fixture is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bismut;
    use crate::liealg::Nilpotency;

    #[test]
    fn random_triples_are_two_step_and_abelian() {
        for seed in 0..8 {
            let t = random_two_step(2, 1, seed);
            assert!(matches!(
                t.algebra().nilpotency(),
                Nilpotency::Step(k) if k <= 2
            ));
            assert!(t.is_abelian_j().abelian);
        }
    }

    #[test]
    fn random_metrics_are_compatible_and_vary() {
        let j = standard_pairs(6);
        let g1 = random_compatible_metric(&j, 1);
        let g2 = random_compatible_metric(&j, 2);
        assert_ne!(g1, g2);
        assert_eq!(crate::hermitian::compatibility_defect(&j, &g1), None);
    }

    #[test]
    fn determinism_per_seed() {
        assert_eq!(random_two_step(2, 2, 7), random_two_step(2, 2, 7));
        let j = standard_pairs(4);
        assert_eq!(
            random_compatible_metric(&j, 9),
            random_compatible_metric(&j, 9)
        );
    }

    #[test]
    fn three_step_fixture_shape() {
        let t = three_step_six_dim();
        assert_eq!(t.algebra().nilpotency(), Nilpotency::Step(3));
        assert!(t.is_abelian_j().abelian);
        // Valid but not SKT with the identity metric.
        let verdict = bismut::is_skt(&t).unwrap();
        assert!(!verdict.is_skt);
    }
}
