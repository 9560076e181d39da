//! The algebra file format: a TOML document carrying structure constants,
//! the complex structure (pair shorthand or full matrix), the metric, and
//! optional provenance and expected-torsion metadata.
//!
//! Rationals are strings (`"p"` or `"p/q"`), never floats. Parsing runs
//! the full validation stack and reports the violated axiom with a
//! concrete witness; serialization is canonical and byte-deterministic,
//! so `serialize ∘ parse ∘ serialize` is the identity on bytes.

use std::collections::BTreeMap;

use num_traits::One;
use serde::Deserialize;
use thiserror::Error;

use crate::exactnum::{parse_rational, RatMatrix, Rational};
use crate::forms::AlternatingForm;
use crate::hermitian::{ComplexStructure, HermitianError, HermitianTriple, Metric};
use crate::liealg::{LieAlgebra, LieError};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("TOML syntax error: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error("unsupported format_version {0} (this build reads version 1)")]
    Version(u32),
    #[error("dimension must be positive")]
    ZeroDim,
    #[error("bracket ({i},{j}): {source}")]
    Bracket {
        i: usize,
        j: usize,
        source: LieError,
    },
    #[error("bracket ({i},{j}) target {k}: bad rational `{text}`")]
    BadRational {
        i: usize,
        j: usize,
        k: usize,
        text: String,
    },
    #[error("matrix entry ({row},{col}): bad rational `{text}`")]
    BadMatrixRational { row: usize, col: usize, text: String },
    #[error("metric must set `identity = true` or give `rows`")]
    MetricShape,
    #[error("j must give exactly one of `pairs` or `matrix`")]
    JShape,
    #[error("matrix has {got} rows/columns, expected {expected}")]
    MatrixShape { got: usize, expected: usize },
    #[error("expected_c entry {position}: {source}")]
    ExpectedForm {
        position: usize,
        source: crate::forms::FormError,
    },
    #[error("expected_c entry {position}: bad rational `{text}`")]
    ExpectedFormRational { position: usize, text: String },
    #[error("structure validation failed: {0}")]
    Validation(#[from] HermitianError),
    #[error("bracket table invalid: {0}")]
    BracketTable(#[from] LieError),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    format_version: u32,
    dim: usize,
    #[serde(default)]
    brackets: Vec<BracketRec>,
    j: JSpec,
    metric: MetricSpec,
    #[serde(default)]
    provenance: BTreeMap<String, String>,
    #[serde(default)]
    expected_c: Vec<FormTermRec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketRec {
    i: usize,
    j: usize,
    targets: Vec<TargetRec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TargetRec {
    k: usize,
    coeff: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct JSpec {
    pairs: Option<Vec<(usize, usize)>>,
    matrix: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricSpec {
    identity: Option<bool>,
    rows: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormTermRec {
    indices: Vec<usize>,
    coeff: String,
}

/// A parsed and fully validated document.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedAlgebra {
    pub triple: HermitianTriple,
    pub provenance: BTreeMap<String, String>,
    /// Optional expected torsion form carried as metadata (used by the
    /// catalog self-checks).
    pub expected_c: Option<AlternatingForm>,
}

fn parse_matrix(rows: &[Vec<String>], expected: usize) -> Result<RatMatrix, ParseError> {
    if rows.len() != expected || rows.iter().any(|r| r.len() != expected) {
        return Err(ParseError::MatrixShape {
            got: rows.len(),
            expected,
        });
    }
    let mut m = RatMatrix::zeros(expected, expected);
    for (r, row) in rows.iter().enumerate() {
        for (c, text) in row.iter().enumerate() {
            let value = parse_rational(text).map_err(|_| ParseError::BadMatrixRational {
                row: r + 1,
                col: c + 1,
                text: text.clone(),
            })?;
            m.set(r, c, value);
        }
    }
    Ok(m)
}

pub fn parse_algebra(text: &str) -> Result<ParsedAlgebra, ParseError> {
    let doc: AlgebraDoc = toml::from_str(text)?;
    if doc.format_version != FORMAT_VERSION {
        return Err(ParseError::Version(doc.format_version));
    }
    if doc.dim == 0 {
        return Err(ParseError::ZeroDim);
    }

    let mut brackets = Vec::with_capacity(doc.brackets.len());
    for rec in &doc.brackets {
        let mut targets = Vec::with_capacity(rec.targets.len());
        for t in &rec.targets {
            let coeff = parse_rational(&t.coeff).map_err(|_| ParseError::BadRational {
                i: rec.i,
                j: rec.j,
                k: t.k,
                text: t.coeff.clone(),
            })?;
            targets.push((t.k, coeff));
        }
        brackets.push(((rec.i, rec.j), targets));
    }
    let algebra = LieAlgebra::new(doc.dim, brackets)?;

    let j = match (&doc.j.pairs, &doc.j.matrix) {
        (Some(pairs), None) => ComplexStructure::from_pairs(doc.dim, pairs)?,
        (None, Some(rows)) => ComplexStructure::new(parse_matrix(rows, doc.dim)?)?,
        _ => return Err(ParseError::JShape),
    };

    let metric = match (&doc.metric.identity, &doc.metric.rows) {
        (Some(true), None) => Metric::identity(doc.dim),
        (None, Some(rows)) => Metric::new(parse_matrix(rows, doc.dim)?)?,
        _ => return Err(ParseError::MetricShape),
    };

    let triple = HermitianTriple::new(algebra, j, metric)?;

    let expected_c = if doc.expected_c.is_empty() {
        None
    } else {
        let mut terms = Vec::with_capacity(doc.expected_c.len());
        for (pos, rec) in doc.expected_c.iter().enumerate() {
            let coeff =
                parse_rational(&rec.coeff).map_err(|_| ParseError::ExpectedFormRational {
                    position: pos,
                    text: rec.coeff.clone(),
                })?;
            terms.push((rec.indices.clone(), coeff));
        }
        Some(
            AlternatingForm::from_terms(doc.dim, 3, terms)
                .map_err(|source| ParseError::ExpectedForm { position: 0, source })?,
        )
    };

    Ok(ParsedAlgebra {
        triple,
        provenance: doc.provenance,
        expected_c,
    })
}

fn toml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Canonical serialization. Brackets come out in pair order with targets
/// sorted by index, `J` uses the pair shorthand whenever it is exactly of
/// that shape, and the identity metric is written symbolically, so the
/// output is byte-deterministic for a given triple.
pub fn serialize_algebra(
    triple: &HermitianTriple,
    provenance: &BTreeMap<String, String>,
    expected_c: Option<&AlternatingForm>,
) -> String {
    let mut out = String::new();
    out.push_str(&format!("format_version = {FORMAT_VERSION}\n"));
    out.push_str(&format!("dim = {}\n", triple.dim()));

    for (&(i, j), targets) in triple.algebra().bracket_pairs() {
        out.push_str("\n[[brackets]]\n");
        out.push_str(&format!("i = {i}\nj = {j}\n"));
        let rendered: Vec<String> = targets
            .iter()
            .map(|(k, c)| format!("{{ k = {k}, coeff = \"{c}\" }}"))
            .collect();
        out.push_str(&format!("targets = [{}]\n", rendered.join(", ")));
    }

    out.push_str("\n[j]\n");
    match triple.j().as_pairs() {
        Some(pairs) => {
            let rendered: Vec<String> =
                pairs.iter().map(|(a, b)| format!("[{a}, {b}]")).collect();
            out.push_str(&format!("pairs = [{}]\n", rendered.join(", ")));
        }
        None => {
            out.push_str("matrix = [\n");
            for r in 0..triple.dim() {
                let row: Vec<String> = (0..triple.dim())
                    .map(|c| format!("\"{}\"", triple.j().matrix().get(r, c)))
                    .collect();
                out.push_str(&format!("  [{}],\n", row.join(", ")));
            }
            out.push_str("]\n");
        }
    }

    out.push_str("\n[metric]\n");
    if triple.metric().matrix() == &RatMatrix::identity(triple.dim()) {
        out.push_str("identity = true\n");
    } else {
        out.push_str("rows = [\n");
        for r in 0..triple.dim() {
            let row: Vec<String> = (0..triple.dim())
                .map(|c| format!("\"{}\"", triple.metric().matrix().get(r, c)))
                .collect();
            out.push_str(&format!("  [{}],\n", row.join(", ")));
        }
        out.push_str("]\n");
    }

    if !provenance.is_empty() {
        out.push_str("\n[provenance]\n");
        for (key, value) in provenance {
            out.push_str(&format!("{key} = \"{}\"\n", toml_escape(value)));
        }
    }

    if let Some(form) = expected_c {
        for (indices, coeff) in form.terms() {
            out.push_str("\n[[expected_c]]\n");
            let idx: Vec<String> = indices.iter().map(usize::to_string).collect();
            out.push_str(&format!("indices = [{}]\n", idx.join(", ")));
            out.push_str(&format!("coeff = \"{coeff}\"\n"));
        }
    }

    out
}

/// Provenance block for a composed algebra: factor names, transverse
/// choices and scales, rendered deterministically.
pub fn composition_provenance(
    left_name: &str,
    right_name: &str,
    spec: &crate::compose::CompositionSpec,
) -> BTreeMap<String, String> {
    let mut p = BTreeMap::new();
    p.insert("construction".to_string(), "composition".to_string());
    p.insert("left_factor".to_string(), left_name.to_string());
    p.insert("right_factor".to_string(), right_name.to_string());
    p.insert("x_choice".to_string(), render_vector(&spec.x_choice));
    p.insert("y_choice".to_string(), render_vector(&spec.y_choice));
    p.insert("r".to_string(), spec.r.to_string());
    p.insert("s".to_string(), spec.s.to_string());
    p
}

fn render_vector(v: &[Rational]) -> String {
    use num_traits::Zero;
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            if c.is_one() {
                format!("e{}", i + 1)
            } else {
                format!("{}*e{}", c, i + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_int;
    use crate::liealg::algebra;

    const MINIMAL: &str = r#"
format_version = 1
dim = 4

[[brackets]]
i = 1
j = 2
targets = [{ k = 3, coeff = "1" }]

[j]
pairs = [[1, 2], [3, 4]]

[metric]
identity = true
"#;

    #[test]
    fn parses_minimal_document() {
        let parsed = parse_algebra(MINIMAL).unwrap();
        assert_eq!(parsed.triple.dim(), 4);
        assert_eq!(
            parsed.triple.algebra().bracket_basis(1, 2),
            vec![(3, rat_int(1))]
        );
        assert!(parsed.expected_c.is_none());
    }

    #[test]
    fn empty_bracket_list_is_a_torus() {
        let text = r#"
format_version = 1
dim = 2

[j]
pairs = [[1, 2]]

[metric]
identity = true
"#;
        let parsed = parse_algebra(text).unwrap();
        assert!(parsed.triple.algebra().bracket_pairs().next().is_none());
    }

    #[test]
    fn jacobi_violation_reported_with_triple() {
        let text = MINIMAL.replace(
            "[j]",
            "[[brackets]]\ni = 1\nj = 3\ntargets = [{ k = 1, coeff = \"1\" }]\n\n[j]",
        );
        let err = parse_algebra(&text).unwrap_err();
        assert!(
            matches!(
                err,
                ParseError::Validation(HermitianError::JacobiViolation((1, 2, 3)))
            ),
            "got {err:?}"
        );
    }

    #[test]
    fn zero_denominator_rational_rejected() {
        let text = MINIMAL.replace("coeff = \"1\"", "coeff = \"1/0\"");
        let err = parse_algebra(&text).unwrap_err();
        assert!(matches!(err, ParseError::BadRational { text, .. } if text == "1/0"));
    }

    #[test]
    fn duplicate_bracket_pair_rejected() {
        let text = MINIMAL.replace(
            "[j]",
            "[[brackets]]\ni = 1\nj = 2\ntargets = [{ k = 4, coeff = \"1\" }]\n\n[j]",
        );
        let err = parse_algebra(&text).unwrap_err();
        assert!(matches!(
            err,
            ParseError::BracketTable(LieError::DuplicatePair { i: 1, j: 2 })
        ));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_algebra("format_version = ").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("TOML syntax error"), "{msg}");
    }

    #[test]
    fn round_trip_is_exact_and_canonical() {
        let triple = HermitianTriple::new(
            algebra(4, &[(1, 2, &[(3, 1, 1)])]),
            ComplexStructure::from_pairs(4, &[(1, 2), (3, 4)]).unwrap(),
            Metric::identity(4),
        )
        .unwrap();
        let mut provenance = BTreeMap::new();
        provenance.insert("name".to_string(), "roundtrip".to_string());
        let once = serialize_algebra(&triple, &provenance, None);
        let parsed = parse_algebra(&once).unwrap();
        assert_eq!(parsed.triple, triple);
        assert_eq!(parsed.provenance, provenance);
        let twice = serialize_algebra(&parsed.triple, &parsed.provenance, None);
        assert_eq!(once, twice);
    }

    #[test]
    fn full_matrix_forms_parse() {
        let text = r#"
format_version = 1
dim = 2

[j]
matrix = [["0", "-1"], ["1", "0"]]

[metric]
rows = [["2", "0"], ["0", "2"]]
"#;
        let parsed = parse_algebra(text).unwrap();
        assert_eq!(parsed.triple.metric().matrix().get(0, 0), &rat_int(2));
        // A pairs-shaped J serializes back to the shorthand.
        let text2 = serialize_algebra(&parsed.triple, &parsed.provenance, None);
        assert!(text2.contains("pairs = [[1, 2]]"));
    }
}
