//! Built-in library of known SKT algebras.
//!
//! Entries are TOML data files embedded in the crate and loaded through
//! the public parser, so the catalog exercises exactly the code path user
//! files take. Each file carries the expected torsion form; [`self_check`]
//! recomputes it and runs the SKT verdict by both routes.

use std::sync::OnceLock;

use thiserror::Error;

use crate::bismut;
use crate::forms::AlternatingForm;
use crate::hermitian::HermitianTriple;
use crate::io::{parse_algebra, ParsedAlgebra};
use crate::liealg::Nilpotency;

const ENTRY_SOURCES: [(&str, &str); 6] = [
    ("n4_abelian", include_str!("../data/n4_abelian.toml")),
    ("n6_abelian", include_str!("../data/n6_abelian.toml")),
    ("n8_nonabelian", include_str!("../data/n8_nonabelian.toml")),
    ("n6_nonabelian", include_str!("../data/n6_nonabelian.toml")),
    ("n10_nonabelian", include_str!("../data/n10_nonabelian.toml")),
    ("n12_nonabelian", include_str!("../data/n12_nonabelian.toml")),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{name}`; available: {available:?}")]
    UnknownName {
        name: String,
        available: Vec<&'static str>,
    },
    #[error("catalog entry `{name}` fails its self-check: {detail}")]
    SelfCheck { name: String, detail: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub triple: HermitianTriple,
    pub expected_c: AlternatingForm,
    pub abelian_j: bool,
    pub dim: usize,
    pub description: String,
}

/// Row of the summary table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogRow {
    pub name: &'static str,
    pub dim: usize,
    pub step: usize,
    pub abelian_j: bool,
    pub is_skt: bool,
}

pub fn names() -> Vec<&'static str> {
    ENTRY_SOURCES.iter().map(|(n, _)| *n).collect()
}

/// Raw file text of an entry, byte-identical to the shipped data file.
pub fn source(name: &str) -> Result<&'static str, CatalogError> {
    ENTRY_SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .ok_or_else(|| CatalogError::UnknownName {
            name: name.to_string(),
            available: names(),
        })
}

fn entries() -> &'static Vec<CatalogEntry> {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        ENTRY_SOURCES
            .iter()
            .map(|(name, text)| {
                let ParsedAlgebra {
                    triple,
                    provenance,
                    expected_c,
                } = parse_algebra(text)
                    .unwrap_or_else(|e| panic!("embedded catalog entry {name} invalid: {e}"));
                let expected_c = expected_c
                    .unwrap_or_else(|| panic!("catalog entry {name} lacks expected_c"));
                let abelian_j = triple.is_abelian_j().abelian;
                CatalogEntry {
                    name,
                    dim: triple.dim(),
                    abelian_j,
                    expected_c,
                    description: provenance.get("description").cloned().unwrap_or_default(),
                    triple,
                }
            })
            .collect()
    })
}

pub fn get(name: &str) -> Result<&'static CatalogEntry, CatalogError> {
    entries()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::UnknownName {
            name: name.to_string(),
            available: names(),
        })
}

pub fn all() -> &'static [CatalogEntry] {
    entries()
}

pub fn list() -> Vec<CatalogRow> {
    entries()
        .iter()
        .map(|e| {
            let step = match e.triple.algebra().nilpotency() {
                Nilpotency::Step(k) => k,
                Nilpotency::NotNilpotent => usize::MAX,
            };
            let is_skt = bismut::is_skt(&e.triple)
                .map(|v| v.is_skt)
                .unwrap_or(false);
            CatalogRow {
                name: e.name,
                dim: e.dim,
                step,
                abelian_j: e.abelian_j,
                is_skt,
            }
        })
        .collect()
}

/// Recomputes every entry's torsion form against the stored expectation
/// and verifies the SKT condition by both routes. Returns the first
/// failure, if any.
pub fn self_check() -> Result<(), CatalogError> {
    for entry in entries() {
        let c = bismut::torsion_three_form(&entry.triple);
        if c != entry.expected_c {
            return Err(CatalogError::SelfCheck {
                name: entry.name.to_string(),
                detail: format!(
                    "recomputed torsion differs from expectation: {:?} vs {:?}",
                    c.terms().collect::<Vec<_>>(),
                    entry.expected_c.terms().collect::<Vec<_>>()
                ),
            });
        }
        let verdict = bismut::is_skt(&entry.triple).map_err(|e| CatalogError::SelfCheck {
            name: entry.name.to_string(),
            detail: e.to_string(),
        })?;
        if !verdict.is_skt {
            return Err(CatalogError::SelfCheck {
                name: entry.name.to_string(),
                detail: format!("not SKT: {:?}", verdict.failing_tuples),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compose::{self, ComposeError, CompositionSpec, Side};
    use crate::exactnum::{rat_int, Subspace};

    #[test]
    fn six_entries_with_expected_tags() {
        let rows = list();
        assert_eq!(rows.len(), 6);
        for row in &rows {
            assert!(row.is_skt, "{} must be SKT", row.name);
            assert_eq!(row.step, 2, "{} must be 2-step", row.name);
        }
        let abelians: Vec<&str> = rows
            .iter()
            .filter(|r| r.abelian_j)
            .map(|r| r.name)
            .collect();
        assert_eq!(abelians, vec!["n4_abelian", "n6_abelian"]);
    }

    #[test]
    fn lookup_and_unknown_name() {
        let entry = get("n4_abelian").unwrap();
        assert_eq!(entry.dim, 4);
        assert!(entry.abelian_j);
        let entry = get("n8_nonabelian").unwrap();
        assert_eq!(entry.dim, 8);
        assert!(!entry.abelian_j);
        let err = get("nonexistent").unwrap_err();
        match err {
            CatalogError::UnknownName { available, .. } => assert_eq!(available.len(), 6),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn self_check_passes() {
        self_check().unwrap();
    }

    #[test]
    fn transverse_directions_match_expectations() {
        // The last transverse basis vector is the final basis vector for
        // every composable entry.
        for (name, expected_index) in [
            ("n4_abelian", 4usize),
            ("n6_abelian", 6),
            ("n8_nonabelian", 8),
            ("n10_nonabelian", 10),
            ("n12_nonabelian", 12),
        ] {
            let entry = get(name).unwrap();
            let x = compose::default_transverse_vector(&entry.triple).unwrap();
            let mut expected = vec![rat_int(0); entry.dim];
            expected[expected_index - 1] = rat_int(1);
            assert_eq!(x, expected, "{name}");
        }
    }

    #[test]
    fn centers_match_hand_computation() {
        let span_of = |dim: usize, indices: &[usize]| {
            Subspace::from_rows(
                dim,
                indices
                    .iter()
                    .map(|&i| {
                        let mut v = vec![rat_int(0); dim];
                        v[i - 1] = rat_int(1);
                        v
                    })
                    .collect(),
            )
        };
        assert_eq!(
            get("n4_abelian").unwrap().triple.algebra().center(),
            span_of(4, &[3, 4])
        );
        assert_eq!(
            get("n8_nonabelian").unwrap().triple.algebra().center(),
            span_of(8, &[5, 6, 7, 8])
        );
        assert_eq!(
            get("n6_nonabelian").unwrap().triple.algebra().center(),
            span_of(6, &[5, 6])
        );
        assert_eq!(
            get("n10_nonabelian").unwrap().triple.algebra().center(),
            span_of(10, &[7, 8, 9, 10])
        );
        assert_eq!(
            get("n12_nonabelian").unwrap().triple.algebra().center(),
            span_of(12, &[7, 8, 9, 10, 11, 12])
        );
        // The 6-dimensional abelian-J entry has the larger center
        // span{f1+f3, f2+f4, f5, f6}.
        let z = get("n6_abelian").unwrap().triple.algebra().center();
        assert_eq!(z.dim(), 4);
        let mut diag = vec![rat_int(0); 6];
        diag[0] = rat_int(1);
        diag[2] = rat_int(1);
        assert!(z.contains(&diag));
    }

    #[test]
    fn center_equals_derived_blocks_composition() {
        // n6_nonabelian has center = derived algebra = span{e5, e6}, so
        // the center/derived gap precondition rejects it by name.
        let entry = get("n6_nonabelian").unwrap();
        assert_eq!(
            entry.triple.algebra().center(),
            entry.triple.algebra().derived()
        );
        let seed = get("n4_abelian").unwrap();
        let mut e4 = vec![rat_int(0); 4];
        e4[3] = rat_int(1);
        let spec = CompositionSpec {
            left: entry.triple.clone(),
            right: seed.triple.clone(),
            x_choice: {
                let mut v = vec![rat_int(0); 6];
                v[5] = rat_int(1);
                v
            },
            y_choice: e4,
            r: rat_int(1),
            s: rat_int(1),
        };
        assert_eq!(
            compose::compose(&spec).unwrap_err(),
            ComposeError::CenterDerivedGap {
                side: Side::Left,
                center: 2,
                derived: 2
            }
        );
    }

    #[test]
    fn sources_round_trip_through_parser() {
        for name in names() {
            let text = source(name).unwrap();
            let parsed = parse_algebra(text).unwrap();
            let re = crate::io::serialize_algebra(
                &parsed.triple,
                &parsed.provenance,
                parsed.expected_c.as_ref(),
            );
            let reparsed = parse_algebra(&re).unwrap();
            assert_eq!(reparsed.triple, parsed.triple, "{name}");
            assert_eq!(reparsed.expected_c, parsed.expected_c, "{name}");
        }
    }
}
