//! Conformance corpus for the algebra file format: every `good_*` file
//! parses and round-trips, every `bad_*` file fails with the expected
//! error variant naming the violated axiom and a witness.

use skt_core::hermitian::HermitianError;
use skt_core::io::{parse_algebra, serialize_algebra, ParseError};
use skt_core::liealg::LieError;

fn corpus(name: &str) -> String {
    let path = format!("{}/tests/conformance/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {path}: {e}"))
}

#[test]
fn good_files_parse_and_round_trip() {
    for name in [
        "good_torus.toml",
        "good_full_matrix.toml",
        "good_heisenberg.toml",
    ] {
        let text = corpus(name);
        let parsed = parse_algebra(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let once = serialize_algebra(&parsed.triple, &parsed.provenance, None);
        let reparsed = parse_algebra(&once).unwrap();
        assert_eq!(reparsed.triple, parsed.triple, "{name}");
        let twice = serialize_algebra(&reparsed.triple, &reparsed.provenance, None);
        assert_eq!(once, twice, "{name}: serialization is not canonical");
    }
}

#[test]
fn syntax_error_is_reported_as_syntax() {
    assert!(matches!(
        parse_algebra(&corpus("bad_syntax.toml")),
        Err(ParseError::Syntax(_))
    ));
}

#[test]
fn version_mismatch() {
    assert!(matches!(
        parse_algebra(&corpus("bad_version.toml")),
        Err(ParseError::Version(9))
    ));
}

#[test]
fn zero_denominator() {
    match parse_algebra(&corpus("bad_rational.toml")) {
        Err(ParseError::BadRational { i: 1, j: 2, k: 3, text }) => assert_eq!(text, "1/0"),
        other => panic!("unexpected: {other:?}"),
    }
}

#[test]
fn index_out_of_range() {
    assert!(matches!(
        parse_algebra(&corpus("bad_index.toml")),
        Err(ParseError::BracketTable(LieError::IndexOutOfRange {
            index: 9,
            dim: 4
        }))
    ));
}

#[test]
fn duplicate_pair() {
    assert!(matches!(
        parse_algebra(&corpus("bad_duplicate_pair.toml")),
        Err(ParseError::BracketTable(LieError::DuplicatePair { i: 1, j: 2 }))
    ));
}

#[test]
fn pair_order_enforced() {
    assert!(matches!(
        parse_algebra(&corpus("bad_pair_order.toml")),
        Err(ParseError::BracketTable(LieError::PairOrder { i: 2, j: 1 }))
    ));
}

#[test]
fn jacobi_violation_names_triple() {
    assert!(matches!(
        parse_algebra(&corpus("bad_jacobi.toml")),
        Err(ParseError::Validation(HermitianError::JacobiViolation((
            1, 2, 3
        ))))
    ));
}

#[test]
fn j_square_failure_names_entry() {
    assert!(matches!(
        parse_algebra(&corpus("bad_j_square.toml")),
        Err(ParseError::Validation(HermitianError::NotAlmostComplex {
            ..
        }))
    ));
}

#[test]
fn pair_cover_failure_names_index() {
    assert!(matches!(
        parse_algebra(&corpus("bad_j_pairs_cover.toml")),
        Err(ParseError::Validation(HermitianError::BadPairCover(2)))
    ));
}

#[test]
fn integrability_failure_names_pair() {
    assert!(matches!(
        parse_algebra(&corpus("bad_nijenhuis.toml")),
        Err(ParseError::Validation(HermitianError::NotIntegrable((1, 2))))
    ));
}

#[test]
fn metric_failures_name_witnesses() {
    assert!(matches!(
        parse_algebra(&corpus("bad_metric_not_pd.toml")),
        Err(ParseError::Validation(
            HermitianError::MetricNotPositiveDefinite { order: 2 }
        ))
    ));
    assert!(matches!(
        parse_algebra(&corpus("bad_metric_asymmetric.toml")),
        Err(ParseError::Validation(HermitianError::MetricNotSymmetric {
            ..
        }))
    ));
    assert!(matches!(
        parse_algebra(&corpus("bad_incompatible.toml")),
        Err(ParseError::Validation(HermitianError::NotCompatible { .. }))
    ));
}

#[test]
fn error_messages_carry_the_witness() {
    let err = parse_algebra(&corpus("bad_jacobi.toml")).unwrap_err();
    let message = err.to_string();
    assert!(message.contains("(1, 2, 3)"), "{message}");
    let err = parse_algebra(&corpus("bad_rational.toml")).unwrap_err();
    assert!(err.to_string().contains("1/0"));
}
