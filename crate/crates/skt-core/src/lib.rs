//! Exact-arithmetic verification and construction of SKT (pluriclosed)
//! Hermitian structures on nilpotent Lie algebras.
//!
//! The library works with a Lie algebra given by rational structure
//! constants, a complex structure `J` with `J^2 = -Id`, and a compatible
//! positive-definite metric. From these it computes the torsion 3-form of
//! the Bismut connection and its exterior derivative by two independent
//! routes, and decides the SKT condition `dc = 0` exactly — no floating
//! point is involved in any verdict.
//!
//! On top of the exact core sit:
//!
//! * [`decomp`] — codimension-2 splitting of an algebra into
//!   `(A, B, X, n)` data and restriction of Hermitian structures to ideals;
//! * [`compose`] — a doubling construction that fuses two SKT algebras of
//!   dimensions `n1`, `n2` into an SKT algebra of dimension `n1 + n2 + 2`,
//!   iterable to any even dimension;
//! * [`catalog`] — a small library of known SKT algebras shipped as data
//!   files, used both as test vectors and as seeds for composition;
//! * [`search`] — a floating-point multi-start descent over the cone of
//!   `J`-compatible metrics, for algebras without a known exact certificate;
//! * [`io`] — the algebra file format (TOML) and deterministic serializer.
//!
//! All basis indices in the public API are 1-based, matching the labels
//! used in structure-constant tables.

pub mod bismut;
pub mod catalog;
pub mod compose;
pub mod decomp;
pub mod exactnum;
pub mod fixtures;
pub mod forms;
pub mod hermitian;
pub mod io;
pub mod laws;
pub mod liealg;
pub mod report;
pub mod search;

pub use exactnum::{rat, rat_int, RatMatrix, Rational, Subspace};
pub use forms::AlternatingForm;
pub use hermitian::{ComplexStructure, HermitianTriple, Metric};
pub use liealg::LieAlgebra;
